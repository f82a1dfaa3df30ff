#pragma once

#include <array>
#include <span>
#include <vector>

namespace slok {

using Vec3 = std::array<double, 3>;

struct UnitVector {
  int n = 2;
  Vec3 c{1.0, 0.0, 0.0};

  // renormalizes; throws InvalidInput on zero or wrong length
  static UnitVector from(std::span<const double> coords);
  static UnitVector from(const Vec3& v, int n);
  static UnitVector angle(double theta);

  double operator[](int i) const { return c[i]; }
  UnitVector operator-() const {
    UnitVector u = *this;
    for (double& x : u.c) x = -x;
    return u;
  }
  bool operator==(const UnitVector&) const = default;
};

double dot(const UnitVector& a, const UnitVector& b);
double angle_of(const UnitVector& u);  // n = 2 only, in [0, 2pi)
double angular_distance(const UnitVector& a, const UnitVector& b);

class DirectionGrid {
 public:
  DirectionGrid() = default;

  int size() const { return static_cast<int>(nodes_.size()); }
  int dim() const { return 2; }
  const std::vector<UnitVector>& nodes() const { return nodes_; }
  const UnitVector& node(int i) const { return nodes_[i]; }
  const std::vector<double>& sigma_weights() const { return weights_; }
  double weight(int i) const { return weights_[i]; }
  const std::vector<int>& antipode_index() const { return antipode_; }
  int antipode(int i) const { return antipode_[i]; }
  double step() const;
  double angle(int i) const;
  bool operator==(const DirectionGrid& o) const { return nodes_.size() == o.nodes_.size(); }

 private:
  friend DirectionGrid make_circle_grid(int M);
  std::vector<UnitVector> nodes_;
  std::vector<double> weights_;
  std::vector<int> antipode_;
};

// M even, M >= 8; nodes at 2 pi k / M
DirectionGrid make_circle_grid(int M);

struct AtomicMeasure {
  int n = 2;
  std::vector<UnitVector> points;
  std::vector<double> weights;
  bool symmetric = false;

  int size() const { return static_cast<int>(points.size()); }
  double mass() const;
};

struct GridDensity {
  DirectionGrid grid;
  std::vector<double> rho;
  bool symmetric = false;

  int size() const { return grid.size(); }
  double mass() const;
  double weight(int i) const { return rho[i] * grid.weight(i); }
  std::vector<double> weights() const;
  // V = -log rho
  std::vector<double> potential() const;
};

// validates mass and sign; symmetric flag detected
GridDensity make_grid_density(const DirectionGrid& grid, std::vector<double> rho);
// rescales to unit mass first
GridDensity normalized_density(const DirectionGrid& grid, std::vector<double> rho);

AtomicMeasure make_atomic(int n, std::vector<UnitVector> points, std::vector<double> weights);
AtomicMeasure make_sym_directions(const std::vector<UnitVector>& points,
                                  const std::vector<double>& weights);
GridDensity uniform_density(const DirectionGrid& grid);
GridDensity bin_to_grid(const AtomicMeasure& m, const DirectionGrid& grid);
int nearest_node(const DirectionGrid& grid, const UnitVector& u);

bool is_symmetric(const AtomicMeasure& m, double tol = 1e-12);
bool is_symmetric(const GridDensity& g);

// points with masses, zero masses allowed; common input to the transport code
struct DiscreteMeasure {
  int n = 2;
  std::vector<UnitVector> points;
  std::vector<double> mass;
};

DiscreteMeasure discrete(const AtomicMeasure& m);
DiscreteMeasure discrete(const GridDensity& g);

}  // namespace slok
