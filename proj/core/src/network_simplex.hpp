#pragma once

#include <vector>

namespace slok::detail {

// Uncapacitated transportation problem on a bipartite arc list.
// Sources 0..R-1 with positive supply, sinks 0..C-1 with positive demand,
// equal totals.  Artificial root arcs start the basis; forbidden pairs are
// simply absent from the arc list.
class NetworkSimplex {
 public:
  NetworkSimplex(std::vector<double> supply, std::vector<double> demand, std::vector<int> arc_src,
                 std::vector<int> arc_dst, std::vector<double> arc_cost);

  // false when artificial flow remains (infeasible)
  bool run(long max_pivots = -1);

  const std::vector<double>& flow() const { return flow_; }  // real arcs first
  // u_i + v_j <= c_ij, equality on basic real arcs
  std::vector<double> source_potentials() const;
  std::vector<double> sink_potentials() const;
  bool optimal() const { return optimal_; }
  long pivots() const { return pivots_; }
  long degenerate_pivots() const { return degenerate_; }
  double artificial_flow() const;

 private:
  void rebuild_tree();
  bool find_entering(int& in_arc);
  bool find_entering_bland(int& in_arc);
  int lca(int a, int b) const;

  int R_, C_, N_, root_, E_;
  std::vector<int> src_, dst_;
  std::vector<double> cost_, flow_;
  std::vector<char> in_tree_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> parent_, pred_, depth_;
  std::vector<char> up_;  // pred arc points from node to parent
  std::vector<double> pi_;
  int next_arc_ = 0;
  int block_ = 10;
  double eps_ = 1e-12;
  long pivots_ = 0;
  long degenerate_ = 0;
  bool bland_ = false;
  bool optimal_ = false;
};

}  // namespace slok::detail
