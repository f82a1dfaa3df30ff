#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slok/body.hpp"
#include "slok/sphere.hpp"

namespace slok {

struct Margin {
  double value = 0.0;     // >= 0 means the inequality holds
  double tolerance = 0.0; // pass iff value >= -tolerance
  bool equality = false;  // |value| <= 1e-8
  bool constant = false;  // input h is constant within 1e-5
  bool equality_checked = false;  // equality must come with constant h
  std::string note;
  bool pass() const { return value >= -tolerance; }
  bool consistent() const { return !equality_checked || !equality || constant; }
};

// Ent(nu)/n - K(sigma, nu), exact LP
Margin verify_entropy_transport(const GridDensity& nu);
// -int log((h + h'')/h) dsigma
Margin verify_leblog(const SupportFn& h);
// int 1/(h + h'') dsigma - int 1/h dsigma
Margin verify_trace(const SupportFn& h);
// n = 2 smooth pairs on one grid, or n = 3 polytopes sharing a normal fan
Margin verify_trfh(const SupportFn& f, const SupportFn& h);
// conjectured form: int Tr ... dmu - int h/f dmu; asserted only for n = 2, f constant
Margin verify_trfh2(const SupportFn& f, const SupportFn& h);
// int k^2 ds - pi |dOmega| / |Omega|
Margin verify_gage(const SupportFn& h);
// min over boundary nodes of h |dOmega| - |Omega| - pi h^2
Margin verify_bonnesen(const SupportFn& h);
// |B|^2 - |Omega| |Omega polar|
Margin verify_santalo(const SupportFn& h);

// trace ratios and cone weights used by verify_trfh in the polytope case
struct FacetTrace {
  std::vector<double> trace;  // (n-1) V(F_j(f), F_j(h)) / |F_j(f)|
  std::vector<double> mu;     // cone weights of h
  std::vector<double> ratio;  // h_j / f_j
  double volume_f = 0.0;
  double volume_h = 0.0;
};
FacetTrace facet_trace(const SupportFn& f, const SupportFn& h);

struct CounterexampleReport {
  double R = 0.0;
  double lhs = 0.0;  // integral of <x,n>^2 over the boundary
  double rhs = 0.0;  // (2/sqrt(pi)) |Omega|^{3/2}
  bool violated = false;
};
// rectangle [-1,1] x [-R,R]
CounterexampleReport rectangle_counterexample(double R);
// R where both sides agree, by bisection on [lo, hi]
double counterexample_threshold(double lo = 1.0, double hi = 10.0);

// f(t) = int log((1-t) + t(h+h'')) - (n-1) log((1-t) + t h) dsigma
double interpolation_value(const SupportFn& h, double t);
double interpolation_derivative(const SupportFn& h, double t);  // closed form
double interpolation_derivative_fd(const SupportFn& h, double t, double dt = 1e-5);

enum class Suite {
  entropy_transport,
  leblog,
  trace,
  trfh,
  trfh_polytope,  // n = 3 shared-fan pairs
  trfh2,          // f constant, asserted
  trfh2_explore,  // random pairs, logged only
  gage,
  bonnesen,
  santalo
};
std::string suite_name(Suite s);
std::vector<Suite> all_suites();
bool parse_suite(const std::string& name, Suite& out);

struct SweepRow {
  int index = 0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  bool asserted = true;
  bool pass = true;
};
struct SweepResult {
  Suite suite = Suite::leblog;
  int M = 0;
  std::vector<SweepRow> rows;
  double min_margin = 0.0;
  bool pass = true;
};
// random instances seeded by instance_seed(seed, i); jobs > 1 runs instances on threads
SweepResult run_sweep(Suite suite, int count, std::uint64_t seed, int M, int jobs = 1);

}  // namespace slok
