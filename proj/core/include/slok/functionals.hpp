#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slok/body.hpp"
#include "slok/sphere.hpp"
#include "slok/transport.hpp"

namespace slok {

// int rho log rho dsigma, 0 log 0 = 0
double entropy(const GridDensity& nu);
// atoms carry no density: +inf
double entropy(const AtomicMeasure& nu);
// int log(dnu/dm) dnu for densities on the same grid; +inf if nu is not << m
double relative_entropy(const GridDensity& nu, const GridDensity& m);

struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass() const { return value <= tolerance; }
};

struct FunctionalReport {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> terms;
  std::vector<Residual> residuals;
  double term(const std::string& key) const;
};

// Ent(nu)/n - K(mu, nu), K by the exact LP
FunctionalReport F(const GridDensity& nu, const DiscreteMeasure& mu);

// int log h dmu; atoms of mu must sit on directions of h
double F0(const SupportFn& h, const DiscreteMeasure& mu);
double F0(const SupportFn& h, const GridDensity& mu);
// int log h dmu - (1/n) log |Omega_h|, flat under scaling
double scale_free_F0(const SupportFn& h, const DiscreteMeasure& mu);

// |F(nu; mu) - Ent(mu)/n + (1/n) int log((h+h'')/h) dmu|; nu should be the image of mu under the map of h
double ek_identity_residual(const SupportFn& h, const GridDensity& mu, const GridDensity& nu);

// terms F0 (unit volume gauge), log|B|/n, Ent_m(nu)/n and their sum against the direct F
FunctionalReport duality_decomposition(const GridDensity& mu, const GridDensity& nu);

struct WBounds {
  double entropy = 0.0;
  double w2_bound = 0.0;   // 1 - exp(-Ent/n) bounds W2~^2 / 2
  double w1_bound = 0.0;   // arccos exp(-Ent/n)
  double w2_squared = 0.0; // chordal cost LP against sigma
  double w1 = 0.0;         // geodesic cost LP against sigma
  bool holds() const { return 0.5 * w2_squared <= w2_bound + 1e-10 && w1 <= w1_bound + 1e-10; }
};
WBounds w_bounds(const GridDensity& nu);

}  // namespace slok
