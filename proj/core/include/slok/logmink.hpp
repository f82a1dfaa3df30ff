#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slok/body.hpp"
#include "slok/sphere.hpp"
#include "slok/transport.hpp"

namespace slok {

struct MinimizeOptions {
  int max_iter = 5000;
  double tol = 1e-9;        // L1 norm of the gradient
  double step = 1.0;        // initial trial step
  int memory = 8;           // quasi-Newton pairs
};

struct LogMinkResult {
  SupportFn h;                 // rescaled to |Omega_h| = 1
  std::vector<double> trace;   // scale-free objective per accepted step
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
  double F0 = 0.0;             // int log h dmu at unit volume
  double stationarity = 0.0;
};

// smooth regime on the grid of mu
LogMinkResult minimize_F0(const GridDensity& mu, const SupportFn& init, const MinimizeOptions& opt = {});
LogMinkResult minimize_F0(const GridDensity& mu, const MinimizeOptions& opt = {});
// polytope regime, atoms are the candidate normals
LogMinkResult minimize_F0(const AtomicMeasure& mu, std::optional<SupportFn> init = std::nullopt,
                          const MinimizeOptions& opt = {});

// clip h + h'' at floor and integrate back (even Fourier modes)
SupportFn repair_admissible(const SupportFn& h, double floor = 1e-6);

struct FixedPointOptions {
  int max_iter = 200;
  double tol = 1e-9;       // max change of log rho
  double alpha = 0.5;      // damping
};

struct FixedPointResult {
  GridDensity nu;
  SupportFn h;                 // unit volume, radial-quadrature gauge
  std::vector<double> trace;   // F(nu_k)
  int iterations = 0;
  bool converged = false;
  double F = 0.0;
  double F0 = 0.0;
  double ent_m = 0.0;          // relative entropy of nu against r^n sigma / C
};

FixedPointResult fixed_point_F(const GridDensity& mu, const FixedPointOptions& opt = {},
                               std::optional<GridDensity> start = std::nullopt);

// total variation distance between mu and the cone measure of h
double stationarity_residual(const SupportFn& h, const DiscreteMeasure& mu);
double stationarity_residual(const SupportFn& h, const GridDensity& mu);

struct FireyReport {
  int M = 0;
  std::uint64_t seed = 0;
  std::vector<double> deviation;   // per start, max |h - mean h|
  std::vector<double> volume_error;
  std::vector<bool> converged;
  double max_deviation = 0.0;
  double max_volume_error = 0.0;
  bool pass = false;
};
FireyReport firey_uniqueness_check(int M, int starts = 20, std::uint64_t seed = 1);

}  // namespace slok
