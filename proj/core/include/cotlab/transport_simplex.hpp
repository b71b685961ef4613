#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "cotlab/errors.hpp"
#include "cotlab/lp.hpp"

namespace cotlab {

template <typename T>
struct TransportArc {
  int from;
  int to;
  T flow;
};

template <typename T>
struct TransportSolution {
  T value;
  std::vector<TransportArc<T>> plan;  // positive flows only
};

// Transportation simplex with an explicit spanning-tree basis. Northwest
// corner start; Dantzig pricing through a top-K candidate list in floating
// mode, Bland's smallest-index rule in exact mode and as the anti-cycling
// fallback after a run of degenerate pivots. Supplies and demands must have
// equal totals; costs are row-major m*n.
template <typename T>
class TransportSimplex {
 public:
  TransportSimplex(std::vector<T> supply, std::vector<T> demand, std::vector<T> cost)
      : supply_(std::move(supply)), demand_(std::move(demand)), cost_(std::move(cost)),
        m_(static_cast<int>(supply_.size())), n_(static_cast<int>(demand_.size())) {
    if (static_cast<long>(cost_.size()) != static_cast<long>(m_) * n_)
      throw ShapeMismatch("cost matrix size mismatch");
  }

  TransportSolution<T> solve() {
    TransportSolution<T> out;
    out.value = T(0);
    if (m_ == 0 || n_ == 0) return out;
    least_cost_basis();
    basic_.assign(static_cast<size_t>(m_) * n_, 0);
    for (const Arc& a : arcs_) basic_[flat(a)] = 1;
    adjacency_.assign(m_ + n_, {});

    // Block pricing while progress is strict; a stall of degenerate pivots
    // switches to Bland's rule until the next strict improvement, which
    // keeps the objective a strictly decreasing ladder between finite
    // Bland excursions. Exact mode runs Bland throughout.
    const bool exact = std::is_same_v<T, Rational>;
    int degenerate_run = 0;
    bool bland = exact;
    for (;;) {
      compute_potentials();
      const int enter = find_entering(bland);
      if (enter < 0) break;
      const T theta = pivot(enter / n_, enter % n_);
      if (theta == T(0)) {
        if (++degenerate_run > m_ + n_) bland = true;
      } else {
        degenerate_run = 0;
        bland = exact;
      }
    }
    for (const Arc& a : arcs_) {
      out.value += a.flow * cost_[flat(a)];
      if (a.flow > T(0)) out.plan.push_back({a.i, a.j, a.flow});
    }
    return out;
  }

 private:
  struct Arc {
    int i;
    int j;
    T flow;
  };

  static T eps() { return detail::SimplexTraits<T>::eps(); }
  long flat(const Arc& a) const { return static_cast<long>(a.i) * n_ + a.j; }

  // Least-cost start: assign cells in increasing cost order, then complete
  // the forest into a spanning tree with zero-flow arcs (cheapest first).
  void least_cost_basis() {
    const long total = static_cast<long>(m_) * n_;
    std::vector<int> order(total);
    for (long f = 0; f < total; ++f) order[f] = static_cast<int>(f);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cost_[a] != cost_[b] ? cost_[a] < cost_[b] : a < b; });

    std::vector<T> rem_s = supply_;
    std::vector<T> rem_d = demand_;
    std::vector<int> parent(m_ + n_);
    for (int k = 0; k < m_ + n_; ++k) parent[k] = k;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };

    // Each assignment saturates a row or a column, so the chosen cells form
    // a forest and the pass leaves nothing behind.
    int components = m_ + n_;
    for (int f : order) {
      const int i = f / n_;
      const int j = f % n_;
      if (rem_s[i] <= eps() || rem_d[j] <= eps()) continue;
      const T flow = std::min(rem_s[i], rem_d[j]);
      parent[find(i)] = find(m_ + j);
      --components;
      arcs_.push_back({i, j, flow});
      rem_s[i] -= flow;
      rem_d[j] -= flow;
    }
    // Complete the forest into a spanning tree with degenerate arcs,
    // cheapest first.
    for (int f : order) {
      if (components == 1) break;
      const int i = f / n_;
      const int j = f % n_;
      const int a = find(i);
      const int b = find(m_ + j);
      if (a == b) continue;
      parent[a] = b;
      --components;
      arcs_.push_back({i, j, T(0)});
    }
  }

  // Refill the node adjacency of the basis tree in the reused buffers.
  void rebuild_adjacency() {
    for (auto& list : adjacency_) list.clear();
    for (int k = 0; k < static_cast<int>(arcs_.size()); ++k) {
      adjacency_[arcs_[k].i].push_back({k, m_ + arcs_[k].j});
      adjacency_[m_ + arcs_[k].j].push_back({k, arcs_[k].i});
    }
  }

  void compute_potentials() {
    rebuild_adjacency();
    u_.assign(m_, T(0));
    v_.assign(n_, T(0));
    seen_.assign(m_ + n_, 0);
    std::deque<int> queue{0};
    seen_[0] = 1;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      for (auto [arc, other] : adjacency_[node]) {
        if (seen_[other]) continue;
        seen_[other] = 1;
        const Arc& a = arcs_[arc];
        if (other >= m_)
          v_[other - m_] = cost_[flat(a)] - u_[a.i];
        else
          u_[other] = cost_[flat(a)] - v_[a.j];
        queue.push_back(other);
      }
    }
  }

  T reduced(long flat_idx) const {
    return cost_[flat_idx] - u_[flat_idx / n_] - v_[flat_idx % n_];
  }

  // Entering variable as a flat index, or -1 at optimality. Block pricing:
  // scan a bounded window of cells from a wrapping cursor and return the
  // most negative arc inside it; only a fully clean wrap proves optimality.
  int find_entering(bool bland) {
    const long total = static_cast<long>(m_) * n_;
    if (bland) {
      for (int i = 0; i < m_; ++i) {
        const T* row = &cost_[static_cast<long>(i) * n_];
        const char* brow = &basic_[static_cast<long>(i) * n_];
        const T& ui = u_[i];
        for (int j = 0; j < n_; ++j)
          if (!brow[j] && row[j] - ui - v_[j] < -eps())
            return static_cast<int>(static_cast<long>(i) * n_ + j);
      }
      return -1;
    }
    const long window = std::max<long>(8192, total / 32);
    long scanned = 0;
    while (scanned < total) {
      int best = -1;
      T best_red(0);
      const long stop = std::min(cursor_ + window, total);
      for (long f = cursor_; f < stop; ++f) {
        if (basic_[f]) continue;
        const T red = reduced(f);
        if (red < -eps() && (best < 0 || red < best_red)) {
          best_red = red;
          best = static_cast<int>(f);
        }
      }
      scanned += stop - cursor_;
      cursor_ = stop == total ? 0 : stop;
      if (best >= 0) return best;
    }
    return -1;
  }

  // Pivot on entering arc (ei, ej); returns the flow change.
  T pivot(int ei, int ej) {
    rebuild_adjacency();
    const int target = m_ + ej;
    parent_node_.assign(m_ + n_, -1);
    parent_arc_.assign(m_ + n_, -1);
    seen_.assign(m_ + n_, 0);
    std::deque<int> queue{ei};
    seen_[ei] = 1;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop_front();
      if (node == target) break;
      for (auto [arc, other] : adjacency_[node]) {
        if (seen_[other]) continue;
        seen_[other] = 1;
        parent_node_[other] = node;
        parent_arc_[other] = arc;
        queue.push_back(other);
      }
    }
    // Path from the sink back toward ei alternates -, +, -, ...
    std::vector<int> minus, plus;
    bool negative = true;
    for (int node = target; node != ei; node = parent_node_[node]) {
      (negative ? minus : plus).push_back(parent_arc_[node]);
      negative = !negative;
    }
    int leave = -1;
    for (int arc : minus) {
      if (leave < 0 || arcs_[arc].flow < arcs_[leave].flow ||
          (arcs_[arc].flow == arcs_[leave].flow && flat(arcs_[arc]) < flat(arcs_[leave])))
        leave = arc;
    }
    const T theta = arcs_[leave].flow;
    for (int arc : minus) arcs_[arc].flow -= theta;
    for (int arc : plus) arcs_[arc].flow += theta;
    basic_[flat(arcs_[leave])] = 0;
    arcs_[leave] = {ei, ej, theta};
    basic_[static_cast<long>(ei) * n_ + ej] = 1;
    return theta;
  }

  std::vector<T> supply_, demand_, cost_;
  int m_, n_;
  std::vector<Arc> arcs_;
  std::vector<T> u_, v_;
  std::vector<char> basic_;
  std::vector<char> seen_;
  std::vector<int> parent_node_, parent_arc_;
  long cursor_ = 0;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

}  // namespace cotlab
