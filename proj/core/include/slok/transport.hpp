#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slok/body.hpp"
#include "slok/errors.hpp"
#include "slok/sphere.hpp"

namespace slok {

// -log<x,y>, +inf when <x,y> <= 1e-12
double cost(const UnitVector& x, const UnitVector& y);

struct CostMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> c;  // row major, +inf on forbidden pairs
  double operator()(int i, int j) const { return c[static_cast<std::size_t>(i) * cols + j]; }
  bool allowed(int i, int j) const;
};

CostMatrix log_cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
// cost as a function of <x,y>; used for the comparison distances
CostMatrix cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const std::function<double(double)>& of_dot);
double chordal_cost(double d);    // |x - y|^2 = 2 - 2<x,y>
double geodesic_cost(double d);   // arccos<x,y>

struct FeasibilityResult {
  bool feasible = false;
  double flow = 0.0;
  InfeasibleWitness witness;
};
FeasibilityResult feasibility_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
FeasibilityResult feasibility_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                    const CostMatrix& c);

struct PlanEntry {
  int i = 0;
  int j = 0;
  double mass = 0.0;
};

struct TransportPlan {
  int rows = 0;
  int cols = 0;
  std::vector<PlanEntry> entries;  // nonzero masses only
  double K = 0.0;
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
};

enum class Gauge { h0_equals_1, unit_volume };
std::string gauge_name(Gauge g);

// phi = log h on source points, psi = log r on target points
struct DualPair {
  std::vector<double> phi;
  std::vector<double> psi;
  Gauge gauge = Gauge::h0_equals_1;
  double K = 0.0;
  double dual_value(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const;
};

struct SolveStats {
  long pivots = 0;
  long degenerate_pivots = 0;
  int components = 0;
  bool centered = false;
  bool symmetrized = false;
};

struct TransportSolution {
  TransportPlan plan;
  DualPair duals;
  SolveStats stats;
};

TransportSolution solve_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
TransportSolution solve_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const CostMatrix& c);
double transport_value(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct SinkhornResult {
  TransportPlan plan;
  double value = 0.0;
  int iterations = 0;
  double marginal_error = 0.0;
  bool converged = false;
  double guardrail = 0.0;  // n * eps * log(size)
};
SinkhornResult sinkhorn(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double eps,
                        int max_iter = 100000);

struct TransportBody {
  SupportFn h;        // polytope regime, normals at the source points
  RadialFn r;         // at the target points
  double volume = 0.0;
  bool grid_quadrature = false;  // radial quadrature on a circle-grid target
  Gauge gauge = Gauge::unit_volume;
  DualPair duals;     // rescaled to the gauge
  // values in the point order of the measures
  std::vector<double> h_at_sources() const;
  std::vector<double> r_at_targets() const;
};
TransportBody duals_to_body(const DualPair& d, const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, Gauge gauge = Gauge::unit_volume);

// T(theta) = theta + atan(h'/h), h' by central difference
UnitVector transport_map(const SupportFn& h, int node);
std::vector<double> transport_angles(const SupportFn& h);
double ma_residual(const SupportFn& h, const GridDensity& rho_mu, const GridDensity& rho_nu);

struct VariationField {
  std::vector<double> values;
  std::vector<double> reference;  // masses of the reference measure
  bool zero_mean = false;
  double mean() const;
};
// subtracts the reference mean; if antipode is given, checks evenness
VariationField make_variation(std::vector<double> values, std::vector<double> reference,
                              const std::vector<int>& antipode = {});

// -sum log h v dmu
double variation_source(const DualPair& d, const VariationField& v);
// sum log r w dnu
double variation_target(const DualPair& d, const VariationField& w);

// i -> index of -x_i, -1 when missing
std::vector<int> antipode_map(const DiscreteMeasure& m);
bool is_circle_grid(const DiscreteMeasure& m);

}  // namespace slok
