#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slok/errors.hpp"

namespace slok::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NetworkSimplex::NetworkSimplex(std::vector<double> supply, std::vector<double> demand,
                               std::vector<int> arc_src, std::vector<int> arc_dst,
                               std::vector<double> arc_cost)
    : R_(static_cast<int>(supply.size())),
      C_(static_cast<int>(demand.size())),
      N_(R_ + C_),
      root_(R_ + C_),
      E_(static_cast<int>(arc_src.size())) {
  if (arc_dst.size() != arc_src.size() || arc_cost.size() != arc_src.size())
    throw InvalidInput("arc arrays differ in length");
  const int total = E_ + N_;
  src_.resize(total);
  dst_.resize(total);
  cost_.resize(total);
  flow_.assign(total, 0.0);
  in_tree_.assign(total, 0);
  double cmax = 0.0;
  for (int e = 0; e < E_; ++e) {
    if (arc_src[e] < 0 || arc_src[e] >= R_ || arc_dst[e] < 0 || arc_dst[e] >= C_)
      throw InvalidInput("arc endpoint out of range");
    if (!std::isfinite(arc_cost[e]) || arc_cost[e] < 0)
      throw InvalidInput("arc costs must be finite and nonnegative");
    src_[e] = arc_src[e];
    dst_[e] = R_ + arc_dst[e];
    cost_[e] = arc_cost[e];
    cmax = std::max(cmax, arc_cost[e]);
  }
  // artificial cost large enough that no optimal flow uses the root
  const double art = (cmax + 1.0) * (N_ + 1);
  adj_.assign(N_ + 1, {});
  for (int u = 0; u < N_; ++u) {
    const int e = E_ + u;
    if (u < R_) {
      src_[e] = u;
      dst_[e] = root_;
      cost_[e] = 0.0;
      flow_[e] = supply[u];
    } else {
      src_[e] = root_;
      dst_[e] = u;
      cost_[e] = art;
      flow_[e] = demand[u - R_];
    }
    in_tree_[e] = 1;
    adj_[u].push_back(e);
    adj_[root_].push_back(e);
  }
  parent_.assign(N_ + 1, -1);
  pred_.assign(N_ + 1, -1);
  depth_.assign(N_ + 1, 0);
  up_.assign(N_ + 1, 0);
  pi_.assign(N_ + 1, 0.0);
  block_ = std::max(10, static_cast<int>(std::sqrt(static_cast<double>(std::max(E_, 1)))));
  eps_ = 1e-14 * art + 1e-13;
}

void NetworkSimplex::rebuild_tree() {
  std::vector<int> stack;
  stack.reserve(N_ + 1);
  parent_[root_] = -1;
  pred_[root_] = -1;
  depth_[root_] = 0;
  pi_[root_] = 0.0;
  stack.push_back(root_);
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    for (int e : adj_[p]) {
      if (e == pred_[p]) continue;
      const int v = src_[e] == p ? dst_[e] : src_[e];
      parent_[v] = p;
      pred_[v] = e;
      depth_[v] = depth_[p] + 1;
      up_[v] = src_[e] == v;
      pi_[v] = up_[v] ? pi_[p] - cost_[e] : pi_[p] + cost_[e];
      stack.push_back(v);
    }
  }
}

bool NetworkSimplex::find_entering(int& in_arc) {
  if (E_ == 0) return false;
  double best = 0.0;
  int cnt = block_;
  int e = next_arc_;
  for (int scanned = 0; scanned < E_; ++scanned) {
    if (!in_tree_[e]) {
      const double rc = cost_[e] + pi_[src_[e]] - pi_[dst_[e]];
      if (rc < best) {
        best = rc;
        in_arc = e;
      }
    }
    if (++e == E_) e = 0;
    if (--cnt == 0) {
      if (best < -eps_) {
        next_arc_ = e;
        return true;
      }
      cnt = block_;
    }
  }
  next_arc_ = e;
  return best < -eps_;
}

bool NetworkSimplex::find_entering_bland(int& in_arc) {
  for (int e = 0; e < E_; ++e) {
    if (in_tree_[e]) continue;
    if (cost_[e] + pi_[src_[e]] - pi_[dst_[e]] < -eps_) {
      in_arc = e;
      return true;
    }
  }
  return false;
}

int NetworkSimplex::lca(int a, int b) const {
  while (a != b) {
    if (depth_[a] > depth_[b])
      a = parent_[a];
    else if (depth_[b] > depth_[a])
      b = parent_[b];
    else {
      a = parent_[a];
      b = parent_[b];
    }
  }
  return a;
}

bool NetworkSimplex::run(long max_pivots) {
  optimal_ = false;
  rebuild_tree();
  long degenerate_run = 0;
  const long stall_limit = 2L * N_ + 10;
  while (max_pivots < 0 || pivots_ < max_pivots) {
    int in_arc = -1;
    const bool found = bland_ ? find_entering_bland(in_arc) : find_entering(in_arc);
    if (!found) {
      optimal_ = true;
      break;
    }
    const int first = src_[in_arc], second = dst_[in_arc];
    const int join = lca(first, second);
    double delta = kInf;
    int u_out = -1;
    // strongly feasible tree: last blocking arc in cycle orientation
    for (int u = first; u != join; u = parent_[u]) {
      const double d = up_[u] ? flow_[pred_[u]] : kInf;
      if (d < delta) {
        delta = d;
        u_out = u;
      }
    }
    for (int u = second; u != join; u = parent_[u]) {
      const double d = up_[u] ? kInf : flow_[pred_[u]];
      if (d <= delta) {
        delta = d;
        u_out = u;
      }
    }
    if (u_out < 0) throw Error("unbounded transportation cycle");
    if (delta > 0) {
      for (int u = first; u != join; u = parent_[u]) flow_[pred_[u]] += up_[u] ? -delta : delta;
      for (int u = second; u != join; u = parent_[u]) flow_[pred_[u]] += up_[u] ? delta : -delta;
      flow_[in_arc] += delta;
      degenerate_run = 0;
      bland_ = false;
    } else {
      ++degenerate_;
      if (++degenerate_run > stall_limit) bland_ = true;
    }
    const int out_arc = pred_[u_out];
    flow_[out_arc] = 0.0;
    in_tree_[out_arc] = 0;
    in_tree_[in_arc] = 1;
    for (int end : {src_[out_arc], dst_[out_arc]}) {
      auto& a = adj_[end];
      a.erase(std::find(a.begin(), a.end(), out_arc));
    }
    adj_[src_[in_arc]].push_back(in_arc);
    adj_[dst_[in_arc]].push_back(in_arc);
    ++pivots_;
    rebuild_tree();
  }
  return artificial_flow() <= 1e-12;
}

double NetworkSimplex::artificial_flow() const {
  double s = 0.0;
  for (int u = 0; u < N_; ++u) s += flow_[E_ + u];
  return s;
}

std::vector<double> NetworkSimplex::source_potentials() const {
  std::vector<double> u(R_);
  for (int i = 0; i < R_; ++i) u[i] = -pi_[i];
  return u;
}

std::vector<double> NetworkSimplex::sink_potentials() const {
  std::vector<double> v(C_);
  for (int j = 0; j < C_; ++j) v[j] = pi_[R_ + j];
  return v;
}

}  // namespace slok::detail
