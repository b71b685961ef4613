#include "cotlab/stable.hpp"

#include "cotlab/errors.hpp"

namespace cotlab {

TestFunction TestFunction::table(SpacePtr row_space, SpacePtr col_space,
                                 std::vector<std::vector<Rational>> values,
                                 Rational bound, std::string name) {
  TestFunction t;
  t.row_space_ = std::move(row_space);
  t.col_space_ = std::move(col_space);
  t.is_table_ = true;
  if (static_cast<int>(values.size()) != t.row_space_->size())
    throw ShapeMismatch("table rows do not match row space");
  for (const auto& row : values) {
    if (static_cast<int>(row.size()) != t.col_space_->size())
      throw ShapeMismatch("table cols do not match col space");
    for (const Rational& v : row)
      if (rational_abs(v) > bound) throw ValidationError("table entry exceeds bound");
  }
  t.table_ = std::move(values);
  t.bound_ = std::move(bound);
  t.name_ = std::move(name);
  return t;
}

TestFunction TestFunction::product(SpacePtr row_space, SpacePtr col_space,
                                   std::vector<Rational> f, std::vector<Rational> g,
                                   Rational bound, std::string name) {
  TestFunction t;
  t.row_space_ = std::move(row_space);
  t.col_space_ = std::move(col_space);
  if (static_cast<int>(f.size()) != t.row_space_->size() ||
      static_cast<int>(g.size()) != t.col_space_->size())
    throw ShapeMismatch("product factors do not match spaces");
  for (const Rational& a : f)
    for (const Rational& b : g)
      if (rational_abs(a * b) > bound) throw ValidationError("product entry exceeds bound");
  t.f_ = std::move(f);
  t.g_ = std::move(g);
  t.bound_ = std::move(bound);
  t.name_ = std::move(name);
  return t;
}

Rational eval_test(const Coupling& p, const TestFunction& phi) {
  if (phi.row_space().get() != p.row_space().get() ||
      phi.col_space().get() != p.col_space().get())
    throw ShapeMismatch("test function and coupling live on different spaces");
  Rational acc = 0;
  for (const Coupling::Entry& e : p.entries()) acc += e.w * phi(e.row, e.col);
  return acc;
}

Rational stable_gap(const Coupling& p, const Coupling& q,
                    const std::vector<TestFunction>& family) {
  if (family.empty()) throw EmptyFamily("stable_gap needs a nonempty family");
  Rational gap = 0;
  for (const TestFunction& phi : family)
    gap = std::max(gap, rational_abs(eval_test(p, phi) - eval_test(q, phi)));
  return gap;
}

std::vector<std::vector<Rational>> hinge_hierarchy(const FiniteSpace& y, int levels) {
  if (levels < 0) throw ValidationError("levels must be nonnegative");
  std::vector<std::vector<Rational>> gs;
  const long denom = 1L << levels;
  for (int c = 0; c < y.dim(); ++c) {
    for (long k = 0; k < denom; ++k) {
      Rational t(k, denom);
      std::vector<Rational> g(y.size());
      for (int j = 0; j < y.size(); ++j) {
        Rational val = rational_from_double(y.atom(j).coord[c]) - t;
        g[j] = val > 0 ? val : Rational(0);
      }
      gs.push_back(std::move(g));
    }
  }
  gs.push_back(std::vector<Rational>(y.size(), Rational(1)));
  return gs;
}

std::vector<TestFunction> default_family(SpacePtr x, SpacePtr y, int levels) {
  // Column-space hierarchy: hinge at every threshold k/2^L per coordinate,
  // then the constant 1.
  std::vector<std::vector<Rational>> gs = hinge_hierarchy(*y, levels);
  std::vector<std::string> g_names;
  const long denom = 1L << levels;
  for (int c = 0; c < y->dim(); ++c)
    for (long k = 0; k < denom; ++k)
      g_names.push_back("hinge(c=" + std::to_string(c) + ",t=" + Rational(k, denom).str() +
                        ")");
  g_names.push_back("one");

  std::vector<TestFunction> family;
  for (int i = 0; i < x->size(); ++i) {
    std::vector<Rational> f(x->size(), Rational(0));
    f[i] = 1;
    for (size_t k = 0; k < gs.size(); ++k)
      family.push_back(TestFunction::product(x, y, f, gs[k], Rational(1),
                                             "1{x=" + x->atom(i).label + "}*" + g_names[k]));
  }
  return family;
}

Rational oscillation(const TestFunction& phi, const std::vector<std::vector<int>>& cells) {
  Rational worst = 0;
  const int cols = phi.col_space()->size();
  for (const std::vector<int>& cell : cells) {
    for (size_t a = 0; a < cell.size(); ++a) {
      for (size_t b = a + 1; b < cell.size(); ++b) {
        for (int y = 0; y < cols; ++y)
          worst = std::max(worst, rational_abs(phi(cell[a], y) - phi(cell[b], y)));
      }
    }
  }
  return worst;
}

Rational family_oscillation_bound(const std::vector<TestFunction>& family,
                                  const std::vector<std::vector<int>>& cells) {
  if (family.empty()) throw EmptyFamily("oscillation bound needs a family");
  Rational worst = 0;
  for (const TestFunction& phi : family)
    worst = std::max(worst, oscillation(phi, cells));
  return worst;
}

Rational stable_gap_bound(const DiscreteMeasure& mu,
                          const std::vector<std::vector<int>>& cells) {
  Rational worst = 0;
  for (const std::vector<int>& cell : cells) {
    if (cell.size() < 2) continue;
    Rational mass = 0;
    for (int atom : cell) mass += mu.weight(atom);
    worst = std::max(worst, mass);
  }
  return worst;
}

Rational stable_gap_fast(const Coupling& p, const Coupling& q,
                         const std::vector<std::vector<Rational>>& gs) {
  if (gs.empty()) throw EmptyFamily("stable_gap_fast needs column factors");
  const int rows = p.row_space()->size();
  Rational gap = 0;
  // Per row atom: accumulate signed column masses of P - Q, then evaluate
  // every g on the difference.
  std::vector<std::vector<std::pair<int, Rational>>> diff(rows);
  for (const Coupling::Entry& e : p.entries()) diff[e.row].push_back({e.col, e.w});
  for (const Coupling::Entry& e : q.entries()) diff[e.row].push_back({e.col, -e.w});
  for (int r = 0; r < rows; ++r) {
    if (diff[r].empty()) continue;
    for (const auto& g : gs) {
      Rational acc = 0;
      for (const auto& [col, w] : diff[r]) acc += w * g[col];
      gap = std::max(gap, rational_abs(acc));
    }
  }
  return gap;
}

}  // namespace cotlab
