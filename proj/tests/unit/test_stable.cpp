#include "doctest.h"

#include "cotlab/errors.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/rng.hpp"
#include "cotlab/rotation.hpp"
#include "cotlab/stable.hpp"

using namespace cotlab;

namespace {

SpacePtr two_atoms() { return make_space({{"a", {0.0}}, {"b", {1.0}}}, 1); }

Coupling regression_coupling() {
  SpacePtr s = two_atoms();
  return Coupling(s, s,
                  {{0, 0, Rational(1, 4)}, {0, 1, Rational(1, 4)}, {1, 1, Rational(1, 2)}});
}

TestFunction diag_indicator(SpacePtr s) {
  std::vector<std::vector<Rational>> table(s->size(), std::vector<Rational>(s->size(), 0));
  for (int i = 0; i < s->size(); ++i) table[i][i] = 1;
  return TestFunction::table(s, s, std::move(table), Rational(1), "1{x=y}");
}

Coupling random_coupling(SplitMix64& rng, SpacePtr row, SpacePtr col) {
  std::vector<Coupling::Entry> entries;
  std::vector<Rational> w = instances::random_simplex(rng, row->size() * col->size());
  size_t k = 0;
  for (int i = 0; i < row->size(); ++i)
    for (int j = 0; j < col->size(); ++j) entries.push_back({i, j, w[k++]});
  return Coupling(row, col, std::move(entries));
}

}  // namespace

TEST_CASE("eval_test on elementary functionals") {
  SpacePtr s = two_atoms();
  Coupling p(s, s,
             {{0, 0, Rational(1, 4)}, {0, 1, Rational(1, 4)}, {1, 1, Rational(1, 2)}});

  TestFunction one = TestFunction::product(s, s, {Rational(1), Rational(1)},
                                           {Rational(1), Rational(1)}, Rational(1));
  CHECK(eval_test(p, one) == 1);

  Coupling diag = Coupling::from_map(DiscreteMeasure::uniform(s), s, {0, 1});
  CHECK(eval_test(diag, diag_indicator(s)) == 1);

  TestFunction fg = TestFunction::product(s, s, {Rational(1), Rational(0)},
                                          {Rational(0), Rational(1)}, Rational(1));
  CHECK(eval_test(p, fg) == Rational(1, 4));
}

TEST_CASE("stable_gap basics") {
  SpacePtr s = two_atoms();
  Coupling diag = Coupling::from_map(DiscreteMeasure::uniform(s), s, {0, 1});
  Coupling anti = Coupling::from_map(DiscreteMeasure::uniform(s), s, {1, 0});

  std::vector<TestFunction> family{diag_indicator(s)};
  CHECK(stable_gap(diag, diag, family) == 0);
  CHECK(stable_gap(diag, anti, family) == 1);

  TestFunction one = TestFunction::product(s, s, {Rational(1), Rational(1)},
                                           {Rational(1), Rational(1)}, Rational(1));
  CHECK(stable_gap(diag, anti, {one}) == 0);
  CHECK_THROWS_AS(stable_gap(diag, anti, {}), EmptyFamily);
}

TEST_CASE("default family shape") {
  SpacePtr x = two_atoms();
  SpacePtr y = two_atoms();
  auto family = default_family(x, y, 1);
  // |X| * (thresholds {0, 1/2} + constant) = 2 * 3.
  CHECK(family.size() == 6);

  // First member is the first atom indicator times the raw coordinate.
  Coupling diag = Coupling::from_map(DiscreteMeasure::uniform(x), y, {0, 1});
  CHECK(eval_test(diag, family[0]) == 0);          // atom a sits at coordinate 0
  CHECK(eval_test(diag, family[3]) == Rational(1, 2));  // atom b maps to coordinate 1

  // f x 1 recovers row-marginal masses.
  CHECK(eval_test(diag, family[2]) == Rational(1, 2));
  CHECK(eval_test(diag, family[5]) == Rational(1, 2));
}

TEST_CASE("stable_gap is a pseudo-metric and respects bounds") {
  SplitMix64 rng(21);
  SpacePtr row = make_space({{"a", {0.0}}, {"b", {0.5}}, {"c", {1.0}}}, 1);
  SpacePtr col = two_atoms();
  auto family = default_family(row, col, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Coupling p = random_coupling(rng, row, col);
    Coupling q = random_coupling(rng, row, col);
    Coupling r = random_coupling(rng, row, col);
    CHECK(stable_gap(p, p, family) == 0);
    CHECK(stable_gap(p, q, family) == stable_gap(q, p, family));
    CHECK(stable_gap(p, q, family) <= stable_gap(p, r, family) + stable_gap(r, q, family));
    for (const TestFunction& phi : family)
      CHECK(rational_abs(eval_test(p, phi)) <= phi.bound());

    // Fast path agrees with the materialized family.
    CHECK(stable_gap_fast(p, q, hinge_hierarchy(*col, 2)) == stable_gap(p, q, family));
  }
}

TEST_CASE("x-marginal information alone cannot separate couplings") {
  SplitMix64 rng(22);
  SpacePtr s = two_atoms();
  DiscreteMeasure mu = instances::random_measure(rng, s);
  // Two couplings with the same row marginal, different kernels.
  std::map<int, DiscreteMeasure> rows_a, rows_b;
  rows_a.emplace(0, DiscreteMeasure::point_mass(s, 0));
  rows_a.emplace(1, DiscreteMeasure::point_mass(s, 1));
  rows_b.emplace(0, DiscreteMeasure::point_mass(s, 1));
  rows_b.emplace(1, DiscreteMeasure::point_mass(s, 0));
  Coupling p = compose(mu, Kernel(s, s, std::move(rows_a)));
  Coupling q = compose(mu, Kernel(s, s, std::move(rows_b)));

  std::vector<TestFunction> marginal_family;
  for (int i = 0; i < 2; ++i) {
    std::vector<Rational> f(2, 0);
    f[i] = 1;
    marginal_family.push_back(
        TestFunction::product(s, s, f, {Rational(1), Rational(1)}, Rational(1)));
  }
  CHECK(stable_gap(p, q, marginal_family) == 0);
}

TEST_CASE("rotation demo reproduces the exact diagonal masses") {
  RotationReport report = rotation_demo(4, 8);
  CHECK(report.diag_identity == 1);
  CHECK(report.diag_exact == 0);  // even grid: no atom at the origin
  CHECK(report.diag_snapped == report.fixed_atom_mass);
  CHECK(report.diag_snapped < 1);
  CHECK(report.w1_gap > 0.0);
}

TEST_CASE("odd grids place an atom at the origin") {
  RotationReport report = rotation_demo(4, 9);
  DiscreteMeasure gauss = rotation_gaussian(9);
  // Center cell index (4,4) is the unique rotation fixed point.
  CHECK(report.diag_exact == gauss.weight(4 * 9 + 4));
  CHECK(report.diag_exact > 0);
}

TEST_CASE("snapped rotation gap shrinks as the angle shrinks") {
  RotationReport coarse = rotation_demo(2, 16);
  RotationReport fine = rotation_demo(8, 16);
  CHECK(fine.w1_gap <= coarse.w1_gap);
}
