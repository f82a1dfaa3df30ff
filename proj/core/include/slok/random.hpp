#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slok/body.hpp"
#include "slok/sphere.hpp"

namespace slok {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double a = 0.0, double b = 1.0) {
    return std::uniform_real_distribution<double>(a, b)(eng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// seed for instance i of a sweep started from base
std::uint64_t instance_seed(std::uint64_t base, int i);
// SLOK_SEED if set and parseable, else fallback
std::uint64_t seed_from_env(std::uint64_t fallback);

// h(t) = 1 + sum a_k cos(2 k t + p_k)
struct FourierShape {
  std::vector<int> k;
  std::vector<double> a;
  std::vector<double> phase;
  double h(double t) const;
  double dh(double t) const;
  double d2(double t) const;  // h''
  double radius_of_curvature(double t) const { return h(t) + d2(t); }
  SupportFn sample(const DirectionGrid& grid) const;
  std::vector<double> exact_d2h(const DirectionGrid& grid) const;
};

// even, with h + h'' >= floor everywhere
FourierShape random_shape(Rng& rng, int kmax = 6, double floor = 0.05);

// symmetric density exp(sum b_k cos(2kt + p_k)), unit mass on the grid
GridDensity random_density(Rng& rng, const DirectionGrid& grid, int kmax = 4, double amp = 0.5);

struct ShapeGenOptions {
  int min_normals = 4;   // antipodal pairs
  int max_normals = 8;
  double h_spread = 0.3;
};

// n = 3: random symmetric normal set with support numbers 1 + U(0, spread);
// every vertex lies on exactly three facets
SupportFn random_simple_polytope(Rng& rng, const ShapeGenOptions& opt = {});
// same normals, h_j (1 + U(-delta, delta)) per pair
SupportFn perturb(Rng& rng, const SupportFn& h, double delta);

}  // namespace slok
