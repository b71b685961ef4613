#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cotlab/errors.hpp"
#include "cotlab/rational.hpp"

namespace cotlab {

/// One equality row: sum of coeff * x[var] == rhs. Nonnegativity of all
/// variables is implicit in every LinearSystem.
struct LinearRow {
  std::vector<std::pair<int, Rational>> coeffs;
  Rational rhs;
  std::string label;
};

struct LinearSystem {
  int num_vars = 0;
  std::vector<LinearRow> rows;
  std::vector<std::string> var_labels;
};

enum class Sense { minimize, maximize };
enum class LpMode { exact, floating };

struct LpResult {
  Rational value;
  std::vector<Rational> solution;
};

/// Row residuals (lhs - rhs) of a candidate point; exact.
std::vector<Rational> residuals(const LinearSystem& sys, const std::vector<Rational>& x);
Rational max_abs_residual(const LinearSystem& sys, const std::vector<Rational>& x);

/// Dense two-phase simplex. Exact mode pivots in rationals with the
/// smallest-index (Bland) anti-cycling rule; floating mode uses doubles with
/// tolerance 1e-9. Throws Infeasible / Unbounded.
LpResult lp_solve(const LinearSystem& sys, const std::vector<Rational>& objective,
                  Sense sense, LpMode mode = LpMode::exact);

namespace detail {

template <typename T>
struct SimplexTraits;

template <>
struct SimplexTraits<Rational> {
  static Rational eps() { return Rational(0); }
};

template <>
struct SimplexTraits<double> {
  static double eps() { return 1e-9; }
};

// Tableau simplex over an ordered field. Solves min c.x s.t. Ax = b, x >= 0.
template <typename T>
class Simplex {
 public:
  Simplex(std::vector<std::vector<T>> a, std::vector<T> b, std::vector<T> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)),
        m_(static_cast<int>(a_.size())), n_(static_cast<int>(c_.size())) {}

  // Returns (objective value, primal solution).
  std::pair<T, std::vector<T>> solve() {
    const T eps = SimplexTraits<T>::eps();
    for (int i = 0; i < m_; ++i) {
      if (b_[i] < 0) {
        b_[i] = -b_[i];
        for (T& v : a_[i]) v = -v;
      }
    }
    // Phase 1 tableau: columns [real vars | artificials | rhs].
    const int total = n_ + m_;
    tab_.assign(m_ + 1, std::vector<T>(total + 1, T(0)));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = a_[i][j];
      tab_[i][n_ + i] = T(1);
      tab_[i][total] = b_[i];
      basis_[i] = n_ + i;
    }
    // Phase-1 objective: minimize sum of artificials -> reduced-cost row is
    // minus the sum of constraint rows on real columns.
    for (int j = 0; j <= total; ++j) {
      T s(0);
      for (int i = 0; i < m_; ++i) s += tab_[i][j];
      if (j < n_) tab_[m_][j] = -s;
      if (j == total) tab_[m_][j] = -s;
    }
    iterate(n_ + m_, eps);
    if (tab_[m_][total] < -eps || tab_[m_][total] > eps)
      throw Infeasible("phase-1 optimum " + describe(tab_[m_][total]));
    purge_artificials(eps);

    // Phase 2 on the surviving rows: reduced costs for objective c.
    const int rows = static_cast<int>(basis_.size());
    for (int j = 0; j <= n_; ++j) {
      const int col = j == n_ ? total : j;
      T red = j == n_ ? T(0) : c_[j];
      for (int i = 0; i < rows; ++i) {
        if (basis_[i] < n_) red -= c_[basis_[i]] * tab_[i][col];
      }
      tab_[rows][col] = j == n_ ? -red : red;
    }
    // Hide artificial columns from phase 2.
    phase2_ = true;
    iterate(n_, eps);

    std::vector<T> x(n_, T(0));
    for (int i = 0; i < rows; ++i)
      if (basis_[i] < n_) x[basis_[i]] = tab_[i][total];
    T value(0);
    for (int j = 0; j < n_; ++j) value += c_[j] * x[j];
    return {value, x};
  }

 private:
  static std::string describe(const T& v) {
    if constexpr (std::is_same_v<T, Rational>) return v.str();
    else return std::to_string(v);
  }

  // Bland's rule: entering = smallest-index column with negative reduced
  // cost; leaving = lexicographic min ratio with smallest basis index ties.
  void iterate(int usable_cols, const T& eps) {
    const int rows = static_cast<int>(basis_.size());
    const int rhs = n_ + m_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < usable_cols; ++j) {
        if (phase2_ && j >= n_) break;
        if (tab_[rows][j] < -eps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      T best_ratio(0);
      for (int i = 0; i < rows; ++i) {
        if (tab_[i][enter] > eps) {
          T ratio = tab_[i][rhs] / tab_[i][enter];
          if (leave < 0 || ratio < best_ratio ||
              (ratio == best_ratio && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) throw Unbounded("objective unbounded on the feasible region");
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    const int rows = static_cast<int>(basis_.size());
    const int width = n_ + m_ + 1;
    const T p = tab_[row][col];
    for (int j = 0; j < width; ++j) tab_[row][j] /= p;
    for (int i = 0; i <= rows; ++i) {
      if (i == row) continue;
      const T f = tab_[i][col];
      if (f == T(0)) continue;
      for (int j = 0; j < width; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  // After phase 1, pivot basic artificials onto real columns; rows that
  // cannot be pivoted are redundant and get dropped.
  void purge_artificials(const T& eps) {
    for (int i = static_cast<int>(basis_.size()) - 1; i >= 0; --i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j) {
        if (tab_[i][j] > eps || tab_[i][j] < -eps) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        tab_.erase(tab_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  std::vector<std::vector<T>> a_;
  std::vector<T> b_;
  std::vector<T> c_;
  int m_;
  int n_;
  std::vector<std::vector<T>> tab_;
  std::vector<int> basis_;
  bool phase2_ = false;
};

}  // namespace detail

}  // namespace cotlab
