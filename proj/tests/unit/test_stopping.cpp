#include "doctest.h"

#include "cotlab/compatibility.hpp"
#include "cotlab/errors.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/rng.hpp"
#include "cotlab/stopping.hpp"

using namespace cotlab;
using namespace cotlab::instances;

namespace {

// Random randomized stopping time via per-prefix hazards: the CDF at t
// depends only on the length-t prefix by construction.
RandomizedStoppingTime random_rst(SplitMix64& rng, const PathDist& mu) {
  const int horizon = mu.space.horizon();
  std::map<Path, Rational> hazard;
  for (int t = 1; t <= horizon; ++t)
    for (const Path& p : mu.prefix_support(t))
      hazard[p] = Rational(rng.in_range(0, 4), 4);
  RandomizedStoppingTime tau;
  tau.y_space = mu.space;
  for (const auto& [y, w] : mu.atoms) {
    std::vector<Rational> row(horizon + 1, Rational(0));
    Rational alive = 1;
    for (int t = 1; t <= horizon; ++t) {
      const Rational h = hazard.at(Path(y.begin(), y.begin() + t));
      row[t - 1] = alive * h;
      alive *= 1 - h;
    }
    row[horizon] = alive;
    tau.kernel[y] = std::move(row);
  }
  return tau;
}

RandomizedStoppingTime random_kernel(SplitMix64& rng, const PathDist& mu) {
  const int horizon = mu.space.horizon();
  RandomizedStoppingTime tau;
  tau.y_space = mu.space;
  for (const auto& [y, w] : mu.atoms) {
    std::vector<Rational> row = random_simplex(rng, horizon + 1);
    tau.kernel[y] = std::move(row);
  }
  return tau;
}

}  // namespace

TEST_CASE("is_randomized_st on the canonical trio") {
  const PathDist mu = fair_coins(2);

  CHECK(is_randomized_st(independent_uniform_stop(), mu).ok);

  StoppingTime pure;
  pure.y_space = mu.space;
  for (const auto& [y, w] : mu.atoms) pure.rule[y] = y[0] == 0 ? 1 : 2;
  CHECK(is_stopping_time(pure, mu));
  CHECK(is_randomized_st(lift_stopping(pure, mu), mu).ok);

  RstCheck bad = is_randomized_st(anticipative_stop(), mu);
  CHECK(!bad.ok);
  CHECK(bad.max_violation == 1);
  CHECK(bad.t == 1);
}

TEST_CASE("decompose_stopping on the canonical instances") {
  const PathDist mu = fair_coins(2);

  SUBCASE("independent uniform splits into the two constant rules") {
    auto components = decompose_stopping(independent_uniform_stop(), mu);
    REQUIRE(components.size() == 2);
    CHECK(components[0].first == Rational(1, 2));
    CHECK(components[1].first == Rational(1, 2));
    for (const auto& [y, w] : mu.atoms) {
      CHECK(components[0].second.at(y) == 1);
      CHECK(components[1].second.at(y) == 2);
    }
  }

  SUBCASE("pure stopping times decompose into themselves") {
    StoppingTime pure;
    pure.y_space = mu.space;
    for (const auto& [y, w] : mu.atoms) pure.rule[y] = y[0] == 0 ? 1 : kTimeInfinity;
    auto components = decompose_stopping(lift_stopping(pure, mu), mu);
    REQUIRE(components.size() == 1);
    CHECK(components[0].first == 1);
    for (const auto& [y, w] : mu.atoms) CHECK(components[0].second.at(y) == pure.at(y));
  }

  SUBCASE("half-head stop") {
    auto components = decompose_stopping(half_head_stop(), mu);
    REQUIRE(components.size() == 2);
    CHECK(components[0].first == Rational(1, 2));
    for (const auto& [y, w] : mu.atoms)
      CHECK(components[0].second.at(y) == (y[0] == 0 ? 1 : 2));
    CHECK(components[1].first == Rational(1, 2));
    for (const auto& [y, w] : mu.atoms) CHECK(components[1].second.at(y) == 2);
  }

  SUBCASE("anticipative kernels are rejected") {
    CHECK_THROWS_AS(decompose_stopping(anticipative_stop(), mu), NotRandomizedST);
  }
}

TEST_CASE("decomposition reconstructs every kernel CDF exactly") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const int horizon = 1 + static_cast<int>(rng.below(3));
    const PathDist mu = fair_coins(horizon);
    RandomizedStoppingTime tau = random_rst(rng, mu);
    auto components = decompose_stopping(tau, mu);
    for (const auto& [w, st] : components) CHECK(is_stopping_time(st, mu));
    for (const auto& [y, kw] : mu.atoms) {
      for (int t = 1; t <= horizon; ++t) {
        Rational acc = 0;
        for (const auto& [w, st] : components)
          if (st.at(y) <= t) acc += w;
        CHECK(acc == tau.cdf(y, t));
      }
    }
  }
}

TEST_CASE("indicator_process links compatibility and the RST property") {
  const PathDist mu = fair_coins(2);
  CHECK(check_ci(indicator_process(independent_uniform_stop(), mu)).ok);
  CHECK(check_ci(indicator_process(half_head_stop(), mu)).ok);
  CHECK(!check_ci(indicator_process(anticipative_stop(), mu)).ok);

  // Cross-module equivalence on random kernels.
  SplitMix64 rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const PathDist base = fair_coins(2);
    RandomizedStoppingTime tau =
        (trial % 2 == 0) ? random_rst(rng, base) : random_kernel(rng, base);
    CHECK(is_randomized_st(tau, base).ok == check_ci(indicator_process(tau, base)).ok);
  }

  // Indicator paths are monotone 0/1.
  JointPathLaw j = indicator_process(half_head_stop(), mu);
  for (const auto& e : j.support())
    for (size_t t = 1; t < e.x.size(); ++t) CHECK(e.x[t - 1] <= e.x[t]);
}

TEST_CASE("first_crossing") {
  CHECK(first_crossing({Rational(0), Rational(0), Rational(1), Rational(1)}) == 3);
  CHECK(first_crossing({Rational(0), Rational(0)}) == kTimeInfinity);
  CHECK(first_crossing({Rational(2, 5), Rational(1, 2)}) == 2);
  for (int s = 1; s <= 5; ++s) {
    std::vector<Rational> step(5, Rational(0));
    for (int t = s; t <= 5; ++t) step[t - 1] = 1;
    CHECK(first_crossing(step) == s);
  }
}

TEST_CASE("approximate_stopping") {
  SUBCASE("pure stopping times come back unchanged") {
    const PathDist mu = fair_coins(2);
    StoppingTime pure;
    pure.y_space = mu.space;
    for (const auto& [y, w] : mu.atoms) pure.rule[y] = y[0] == 0 ? 1 : 2;
    StoppingApprox res = approximate_stopping(lift_stopping(pure, mu), mu);
    CHECK(res.w1_gap == 0.0);
    for (const auto& [y, w] : mu.atoms) CHECK(res.st.at(y) == pure.at(y));
  }

  SUBCASE("anticipative inputs are rejected") {
    CHECK_THROWS_AS(approximate_stopping(anticipative_stop(), fair_coins(2)),
                    NotRandomizedST);
  }

  SUBCASE("gap shrinks along the uniform family") {
    double previous = -1.0;
    for (int m : {2, 4}) {
      auto [tau, mu] = uniform_stop_family(m);
      StoppingApprox res = approximate_stopping(tau, mu);
      CHECK(is_stopping_time(res.st, mu));
      if (previous >= 0.0) CHECK(res.w1_gap <= previous);
      previous = res.w1_gap;
    }
  }
}
