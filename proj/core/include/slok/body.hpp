#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slok/sphere.hpp"

namespace slok {

enum class Regime { smooth_circle, polytope };

// even samples over a symmetric direction set, one value per antipodal pair
class EvenSamples {
 public:
  Regime regime() const { return regime_; }
  int dim() const { return n_; }
  int size() const { return static_cast<int>(dirs_.size()); }
  int pair_count() const { return static_cast<int>(half_.size()); }
  int pair_of(int i) const { return pair_[i]; }
  const std::vector<UnitVector>& directions() const { return dirs_; }
  const UnitVector& direction(int i) const { return dirs_[i]; }
  // smooth regime only
  const DirectionGrid& grid() const { return grid_; }
  double value(int i) const { return half_[pair_[i]]; }
  std::vector<double> values() const;
  const std::vector<double>& half_values() const { return half_; }
  double min_value() const;
  double max_value() const;

 protected:
  void init_smooth(const DirectionGrid& grid, const std::vector<double>& full, const char* what);
  void init_polytope(const std::vector<UnitVector>& dirs, const std::vector<double>& vals,
                     const char* what);
  void init_half(Regime r, int n, DirectionGrid grid, std::vector<UnitVector> dirs,
                 std::vector<int> pair, std::vector<double> half);

  Regime regime_ = Regime::smooth_circle;
  int n_ = 2;
  DirectionGrid grid_;
  std::vector<UnitVector> dirs_;
  std::vector<int> pair_;
  std::vector<double> half_;
};

class SupportFn : public EvenSamples {
 public:
  // full per-node samples; must be even and positive
  static SupportFn smooth(const DirectionGrid& grid, const std::vector<double>& h);
  static SupportFn smooth(const DirectionGrid& grid, const std::function<double(double)>& h);
  // one entry per direction; a direction and its antipode may both appear with equal values
  static SupportFn polytope(const std::vector<UnitVector>& normals, const std::vector<double>& h);

  SupportFn scaled(double lambda) const;
  SupportFn with_half_values(std::vector<double> half) const;
};

class RadialFn : public EvenSamples {
 public:
  static RadialFn smooth(const DirectionGrid& grid, const std::vector<double>& r);
  static RadialFn on_directions(const std::vector<UnitVector>& dirs, const std::vector<double>& r);
};

struct Facet {
  UnitVector normal;
  double h = 0.0;
  int direction = -1;            // index into SupportFn::directions()
  std::vector<int> vertex_ids;   // ordered around the facet
  double area = 0.0;             // length for n = 2
};

struct Body {
  SupportFn support;
  double volume = 0.0;
  std::vector<Vec3> vertices;    // polytope regime
  std::vector<Facet> facets;     // active facets only
  std::vector<int> inactive;     // directions dropped as degenerate
  double boundary_measure() const;
};

// periodic central second difference, h + h''; no sign check
std::vector<double> d2h_raw(const std::vector<double>& h, double step);
// periodic central first difference
std::vector<double> d1_central(const std::vector<double>& h, double step);
// trigonometric-interpolant derivative (Nyquist mode dropped)
std::vector<double> d1_spectral(const std::vector<double>& h);

// h + h'' at every node, NonConvex if any entry <= 0
std::vector<double> d2h(const SupportFn& h);
bool is_admissible(const SupportFn& h, double floor = 0.0);

Body make_body(const SupportFn& h);
double body_volume(const SupportFn& h);
double perimeter(const SupportFn& h);  // n = 2

struct ConeMeasure {
  Regime regime = Regime::smooth_circle;
  GridDensity density;     // smooth regime
  AtomicMeasure atoms;     // polytope regime, active normals only
  std::vector<int> atom_direction;  // direction index of each atom
  bool dropped_degenerate = false;
  DiscreteMeasure discrete() const;
};
ConeMeasure cone_measure(const SupportFn& h);

RadialFn radial_from_support(const SupportFn& h);
SupportFn support_from_radial(const RadialFn& r);
// exact for polytopes: min over <u_j,y> > 0 of h_j / <u_j,y>
double radial_at(const SupportFn& h, const UnitVector& y);
double support_at(const RadialFn& r, const UnitVector& x);

double polar_volume(const SupportFn& h);
std::vector<double> curvature(const SupportFn& h);

// standard shapes used by tests and the CLI
SupportFn ball_support(const DirectionGrid& grid, double radius = 1.0);
SupportFn ellipse_support(const DirectionGrid& grid, double a, double b);
SupportFn box_support(const std::vector<double>& half_widths);  // n = 2 or 3

std::string regime_name(Regime r);

}  // namespace slok
