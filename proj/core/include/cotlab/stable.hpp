#pragma once

#include "cotlab/measure.hpp"

namespace cotlab {

/// Bounded test functional on a product space: measurable in the row
/// coordinate, continuous in the column coordinate. Either a dense table
/// phi(x, y) or a product f(x) g(y).
class TestFunction {
 public:
  static TestFunction table(SpacePtr row_space, SpacePtr col_space,
                            std::vector<std::vector<Rational>> values, Rational bound,
                            std::string name = "table");
  static TestFunction product(SpacePtr row_space, SpacePtr col_space,
                              std::vector<Rational> f, std::vector<Rational> g,
                              Rational bound, std::string name = "product");

  Rational operator()(int row, int col) const {
    return is_table_ ? table_[row][col] : f_[row] * g_[col];
  }
  const Rational& bound() const { return bound_; }
  const std::string& name() const { return name_; }
  const SpacePtr& row_space() const { return row_space_; }
  const SpacePtr& col_space() const { return col_space_; }

 private:
  TestFunction() = default;

  SpacePtr row_space_, col_space_;
  bool is_table_ = false;
  std::vector<std::vector<Rational>> table_;
  std::vector<Rational> f_, g_;
  Rational bound_;
  std::string name_;
};

/// Exact integral of phi against the coupling.
Rational eval_test(const Coupling& p, const TestFunction& phi);

/// Finite surrogate for the stable topology: sup over the family of
/// |int phi dP - int phi dQ|. Pseudo-metric on couplings over shared spaces.
Rational stable_gap(const Coupling& p, const Coupling& q,
                    const std::vector<TestFunction>& family);

/// Deterministic test family: every row-atom indicator f, times a hierarchy
/// of 1-Lipschitz hinges on the column space. For each coordinate c and each
/// threshold t in {k/2^L : k = 0..2^L-1}, g(y) = max(y_c - t, 0); the
/// constant 1 closes the list. All members are bounded by 1.
std::vector<TestFunction> default_family(SpacePtr x, SpacePtr y, int levels);

/// Largest within-cell oscillation of phi over row cells:
/// max over cells A, x, x' in A, y of |phi(x,y) - phi(x',y)|. This bounds the
/// stable gap of any coupling pair that agrees on sigma(cells) x Borel.
Rational oscillation(const TestFunction& phi, const std::vector<std::vector<int>>& cells);

Rational family_oscillation_bound(const std::vector<TestFunction>& family,
                                  const std::vector<std::vector<int>>& cells);

/// Mass-weighted oscillation bound for the default family: for couplings
/// that agree on sigma(cells) x Borel and share row marginal mu,
/// |int f x g d(P - Q)| <= mu(A) for the cell A holding the f-atom (and 0 on
/// singleton cells). Returns max over non-singleton cells of mu(A).
Rational stable_gap_bound(const DiscreteMeasure& mu, const std::vector<std::vector<int>>& cells);

/// The default family's column factors (hinges then the constant 1).
std::vector<std::vector<Rational>> hinge_hierarchy(const FiniteSpace& y, int levels);

/// Gap over {row-atom indicator} x {gs} computed by grouping support rows;
/// equals stable_gap against the materialized family.
Rational stable_gap_fast(const Coupling& p, const Coupling& q,
                         const std::vector<std::vector<Rational>>& gs);

}  // namespace cotlab
