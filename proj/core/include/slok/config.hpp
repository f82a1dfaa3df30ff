#pragma once

namespace slok {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// volume of the unit ball
inline constexpr double unit_ball_volume(int n) {
  return n == 2 ? kPi : 4.0 * kPi / 3.0;
}

namespace tol {
inline constexpr double unit_norm = 1e-12;
inline constexpr double weight_sum = 1e-12;
inline constexpr double mass = 1e-10;
inline constexpr double merge_angle = 1e-10;
// <x,y> at or below this counts as orthogonal (cost +inf)
inline constexpr double orthogonal = 1e-12;
inline constexpr double feasible_flow = 1e-10;
inline constexpr double dual_feasibility = 1e-8;
inline constexpr double slackness = 1e-6;
inline constexpr double degenerate_facet = 1e-12;
inline constexpr double admissibility_floor = 1e-6;
}  // namespace tol

}  // namespace slok
