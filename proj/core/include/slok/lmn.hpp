#pragma once

#include <vector>

#include "slok/body.hpp"
#include "slok/sphere.hpp"

namespace slok {

// g = (h + h'') / h per node
struct MetricField {
  DirectionGrid grid;
  std::vector<double> g;
};
MetricField metric_field(const SupportFn& h);

// (u + u'')/(h + h'') - u/h, second differences on the grid of h
std::vector<double> apply_L_cone(const SupportFn& h, const std::vector<double>& u);

// (u + u'')/(h + h'') - [W'(T)(u'h - u h') + n(uh + u'h')]/(h^2 + h'^2) + u/h,
// W = -log rho_nu, W' interpolated linearly at T
std::vector<double> apply_L_general(const SupportFn& h, const GridDensity& nu,
                                    const std::vector<double>& u);

// int h g' f' / (h + h'') dmu on the staggered grid, f = u/h
double dirichlet_form(const SupportFn& h, const std::vector<double>& f, const std::vector<double>& g,
                      const GridDensity& mu);
// |E(f, g) + int g L_cone(f) dmu|
double dirichlet_residual(const SupportFn& h, const std::vector<double>& f,
                          const std::vector<double>& g, const GridDensity& mu);

// int ((u + u'')/(h + h''))^2 dmu - (n - 1) int (u/h)^2 dmu
double infinitesimal_uniqueness_gap(const SupportFn& h, const GridDensity& mu,
                                    const std::vector<double>& u);

}  // namespace slok
