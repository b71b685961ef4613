#include "doctest.h"

#include "cotlab/errors.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/measure.hpp"
#include "cotlab/rng.hpp"
#include "cotlab/transport_simplex.hpp"
#include "cotlab/wasserstein.hpp"

using namespace cotlab;

namespace {

SpacePtr two_atoms() { return make_space({{"a", {0.0}}, {"b", {1.0}}}, 1); }

Coupling regression_coupling() {
  // mass [[1/4, 1/4], [0, 1/2]]
  SpacePtr s = two_atoms();
  return Coupling(s, s,
                  {{0, 0, Rational(1, 4)}, {0, 1, Rational(1, 4)}, {1, 1, Rational(1, 2)}});
}

Coupling random_coupling(SplitMix64& rng, SpacePtr row, SpacePtr col) {
  std::vector<Coupling::Entry> entries;
  std::vector<Rational> w =
      instances::random_simplex(rng, row->size() * col->size());
  size_t k = 0;
  for (int i = 0; i < row->size(); ++i)
    for (int j = 0; j < col->size(); ++j) entries.push_back({i, j, w[k++]});
  return Coupling(row, col, std::move(entries));
}

}  // namespace

TEST_CASE("marginals of elementary couplings") {
  SpacePtr s = two_atoms();
  DiscreteMeasure mu(s, {Rational(1, 2), Rational(1, 2)});
  DiscreteMeasure nu(s, {Rational(1, 3), Rational(2, 3)});

  Coupling product = Coupling::product(mu, nu);
  CHECK(marginal(product, Axis::row) == mu);
  CHECK(marginal(product, Axis::col) == nu);

  Coupling diagonal = Coupling::from_map(DiscreteMeasure::uniform(s), s, {0, 1});
  CHECK(marginal(diagonal, Axis::col) == DiscreteMeasure::uniform(s));

  Coupling p = regression_coupling();
  CHECK(marginal(p, Axis::row) == DiscreteMeasure(s, {Rational(1, 2), Rational(1, 2)}));
  CHECK(marginal(p, Axis::col) == DiscreteMeasure(s, {Rational(1, 4), Rational(3, 4)}));
}

TEST_CASE("disintegration of the regression matrix") {
  Coupling p = regression_coupling();
  auto [mu, kernel] = disintegrate(p, Axis::row);
  CHECK(mu.weights() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(kernel.row(0).weights() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(kernel.row(1).weights() == std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(compose(mu, kernel) == p);
}

TEST_CASE("disintegration of a product coupling gives constant rows") {
  SpacePtr s = two_atoms();
  DiscreteMeasure mu(s, {Rational(1, 2), Rational(1, 2)});
  DiscreteMeasure nu(s, {Rational(1, 3), Rational(2, 3)});
  auto [base, kernel] = disintegrate(Coupling::product(mu, nu), Axis::row);
  CHECK(kernel.row(0) == nu);
  CHECK(kernel.row(1) == nu);
}

TEST_CASE("null atoms lose their kernel row but recompose exactly") {
  SpacePtr s = two_atoms();
  Coupling p(s, s, {{0, 0, Rational(1, 2)}, {0, 1, Rational(1, 2)}});
  auto [mu, kernel] = disintegrate(p, Axis::row);
  CHECK(!kernel.has_row(1));
  CHECK_THROWS_AS(kernel.row(1), MissingKernelRow);
  CHECK(compose(mu, kernel) == p);
}

TEST_CASE("compose validates kernel coverage") {
  SpacePtr s = two_atoms();
  DiscreteMeasure mu = DiscreteMeasure::uniform(s);
  std::map<int, DiscreteMeasure> rows;
  rows.emplace(0, DiscreteMeasure::point_mass(s, 1));
  Kernel k(s, s, std::move(rows));
  CHECK_THROWS_AS(compose(mu, k), MissingKernelRow);
}

TEST_CASE("deterministic kernels produce graph couplings") {
  SpacePtr s = two_atoms();
  DiscreteMeasure mu = DiscreteMeasure::uniform(s);
  std::map<int, DiscreteMeasure> rows;
  rows.emplace(0, DiscreteMeasure::point_mass(s, 1));
  rows.emplace(1, DiscreteMeasure::point_mass(s, 0));
  Coupling graph = compose(mu, Kernel(s, s, std::move(rows)));
  CHECK(graph == Coupling::from_map(mu, s, {1, 0}));
}

TEST_CASE("constructors reject bad weights") {
  SpacePtr s = two_atoms();
  CHECK_THROWS_AS(DiscreteMeasure(s, {Rational(-1, 2), Rational(3, 2)}), ValidationError);
  CHECK_THROWS_AS(DiscreteMeasure(s, {Rational(1, 2), Rational(1, 3)}), ValidationError);
  CHECK_THROWS_AS(Coupling(s, s, {{0, 0, Rational(1, 2)}}), ValidationError);
  CHECK_THROWS_AS(Coupling(s, s, {{0, 0, Rational(-1)}, {0, 1, Rational(2)}}),
                  ValidationError);
}

TEST_CASE("disintegrate/compose round trip on random couplings") {
  SplitMix64 rng(11);
  SpacePtr row = make_space({{"a", {0.0}}, {"b", {0.5}}, {"c", {1.0}}}, 1);
  SpacePtr col = two_atoms();
  for (int trial = 0; trial < 50; ++trial) {
    Coupling p = random_coupling(rng, row, col);
    for (Axis axis : {Axis::row, Axis::col}) {
      auto [base, kernel] = disintegrate(p, axis);
      Coupling back = compose(base, kernel);
      if (axis == Axis::col) {
        // compose returns the conditioning side as rows; flip to compare.
        std::vector<Coupling::Entry> flipped;
        for (const auto& e : back.entries()) flipped.push_back({e.col, e.row, e.w});
        back = Coupling(p.row_space(), p.col_space(), std::move(flipped));
      }
      CHECK(back == p);
      CHECK(marginal(compose(base, kernel), Axis::row) == base);
    }
  }
}

TEST_CASE("wasserstein1 on point masses and translations") {
  SpacePtr line = make_space({{"0", {0.0}}, {"1", {1.0}}, {"2", {2.0}}}, 1);
  DiscreteMeasure d0 = DiscreteMeasure::point_mass(line, 0);
  DiscreteMeasure d1 = DiscreteMeasure::point_mass(line, 1);
  CHECK(wasserstein1_exact(d0, d1) == 1);
  CHECK(wasserstein1_exact(d0, d0) == 0);

  DiscreteMeasure lo(line, {Rational(1, 2), Rational(1, 2), Rational(0)});
  DiscreteMeasure hi(line, {Rational(0), Rational(1, 2), Rational(1, 2)});
  CHECK(wasserstein1_exact(lo, hi) == 1);
}

TEST_CASE("wasserstein1 rejects dimension mismatches") {
  SpacePtr line = two_atoms();
  SpacePtr plane = make_space({{"p", {0.0, 0.0}}, {"q", {1.0, 1.0}}}, 2);
  CHECK_THROWS_AS(wasserstein1(DiscreteMeasure::uniform(line), DiscreteMeasure::uniform(plane)),
                  DimensionMismatch);
}

TEST_CASE("wasserstein1 is a metric on random triples") {
  SplitMix64 rng(12);
  SpacePtr s = make_space({{"a", {0.0}}, {"b", {0.25}}, {"c", {0.875}}, {"d", {1.0}}}, 1);
  for (int trial = 0; trial < 30; ++trial) {
    DiscreteMeasure a = instances::random_measure(rng, s);
    DiscreteMeasure b = instances::random_measure(rng, s);
    DiscreteMeasure c = instances::random_measure(rng, s);
    Rational ab = wasserstein1_exact(a, b);
    Rational ba = wasserstein1_exact(b, a);
    Rational ac = wasserstein1_exact(a, c);
    Rational cb = wasserstein1_exact(c, b);
    CHECK(ab == ba);
    CHECK(ab <= ac + cb);
    CHECK(wasserstein1_exact(a, a) == 0);
    CHECK(std::abs(wasserstein1(a, b) - to_double(ab)) <= 1e-9);
  }
}

TEST_CASE("transport simplex double mode tracks the exact mode") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 30, n = 35;
    std::vector<Rational> supply = instances::random_simplex(rng, m);
    std::vector<Rational> demand = instances::random_simplex(rng, n);
    std::vector<Rational> cost_q(static_cast<size_t>(m) * n);
    std::vector<double> supply_d(m), demand_d(n), cost_d(cost_q.size());
    for (size_t k = 0; k < cost_q.size(); ++k) {
      cost_q[k] = Rational(rng.in_range(0, 50), 7);
      cost_d[k] = to_double(cost_q[k]);
    }
    for (int i = 0; i < m; ++i) supply_d[i] = to_double(supply[i]);
    for (int j = 0; j < n; ++j) demand_d[j] = to_double(demand[j]);

    TransportSimplex<Rational> exact(supply, demand, cost_q);
    TransportSimplex<double> fast(std::move(supply_d), std::move(demand_d), std::move(cost_d));
    CHECK(std::abs(to_double(exact.solve().value) - fast.solve().value) <= 1e-9);
  }
}

TEST_CASE("point-mass composition concentrates on one row") {
  SpacePtr s = make_space({{"a", {0.0}}, {"b", {1.0}}}, 1);
  DiscreteMeasure delta = DiscreteMeasure::point_mass(s, 0);
  std::map<int, DiscreteMeasure> rows;
  rows.emplace(0, DiscreteMeasure(s, {Rational(1, 3), Rational(2, 3)}));
  Coupling p = compose(delta, Kernel(s, s, std::move(rows)));
  for (const Coupling::Entry& e : p.entries()) CHECK(e.row == 0);
  CHECK(marginal(p, Axis::col) == DiscreteMeasure(s, {Rational(1, 3), Rational(2, 3)}));
}
