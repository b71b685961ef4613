#include "doctest.h"

#include <set>

#include "cotlab/compatibility.hpp"
#include "cotlab/errors.hpp"
#include "cotlab/extreme_points.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/rng.hpp"
#include "cotlab/transport.hpp"

using namespace cotlab;
using namespace cotlab::instances;

namespace {

// Upper bound on the component count: each step multiplies the interval
// count by at most 1 + sum over prefixes of (conditional support size - 1).
long component_bound(const JointPathLaw& j) {
  const PathDist mu = y_marginal(j);
  long bound = 1;
  for (int n = 1; n <= j.horizon(); ++n) {
    long cuts = 0;
    for (const Path& p : mu.prefix_support(n)) {
      size_t widest = 1;
      std::map<Path, std::set<int>> by_xprefix;
      for (const auto& e : j.support()) {
        if (!std::equal(p.begin(), p.end(), e.y.begin())) continue;
        by_xprefix[Path(e.x.begin(), e.x.begin() + n - 1)].insert(e.x[n - 1]);
      }
      for (const auto& [q, atoms] : by_xprefix) widest = std::max(widest, atoms.size());
      cuts += static_cast<long>(widest) - 1;
    }
    bound *= 1 + cuts;
  }
  return bound;
}

}  // namespace

TEST_CASE("shared-CDF split at N=1") {
  // Y uniform bit; X1 | y uniform for both y-values.
  const PathDist mu = fair_coins(1);
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms)
    for (int bit = 0; bit < 2; ++bit) support.push_back({y, {bit}, w / 2});
  JointPathLaw j(mu.space, mu.space, std::move(support));

  MixtureDecomposition d = decompose_compatible(j);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0].weight == Rational(1, 2));
  CHECK(d.components[1].weight == Rational(1, 2));
  // Canonical atom order: the first component maps every y to atom 0.
  CHECK(d.components[0].map.step(1, {0}) == 0);
  CHECK(d.components[0].map.step(1, {1}) == 0);
  CHECK(d.components[1].map.step(1, {0}) == 1);
  CHECK(d.components[1].map.step(1, {1}) == 1);
  CHECK(recompose(d, mu).support() == j.support());
}

TEST_CASE("adapted laws decompose into themselves") {
  JointPathLaw j = xor_law();
  MixtureDecomposition d = decompose_compatible(j);
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0].weight == 1);
  CHECK(d.components[0].map == *to_adapted_map(j));
}

TEST_CASE("the two-component copy mixture") {
  JointPathLaw j = n2_copy_mixture();
  MixtureDecomposition d = decompose_compatible(j);
  REQUIRE(d.components.size() == 2);
  CHECK(d.components[0].weight == Rational(1, 2));
  CHECK(d.components[1].weight == Rational(1, 2));
  CHECK(recompose(d, y_marginal(j)).support() == j.support());
}

TEST_CASE("incompatible laws are rejected") {
  CHECK_THROWS_AS(decompose_compatible(anticipative_law()), NotCompatible);
}

TEST_CASE("decompose/recompose identity on random compatible laws") {
  SplitMix64 rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    JointPathLaw j = trial % 3 == 0   ? random_compatible_law(rng, 3, 3, 3)
                     : trial % 3 == 1 ? random_compatible_law(rng, 2, 2, 2)
                                      : random_mixture_law(rng, 2, 3, 2, 3);
    MixtureDecomposition d = decompose_compatible(j);

    // Intervals partition [0,1) and weights equal interval lengths.
    Rational cursor = 0;
    for (size_t i = 0; i < d.components.size(); ++i) {
      CHECK(d.u_intervals[i].first == cursor);
      CHECK(d.u_intervals[i].second - d.u_intervals[i].first == d.components[i].weight);
      cursor = d.u_intervals[i].second;
    }
    CHECK(cursor == 1);

    const PathDist mu = y_marginal(j);
    CHECK(recompose(d, mu).support() == j.support());
    CHECK(static_cast<long>(d.components.size()) <= component_bound(j));

    for (const MixtureComponent& comp : d.components) {
      JointPathLaw part = push_adapted(mu, comp.map);
      CHECK(is_adapted(part));
      CHECK(check_ci(part).ok);
    }
  }
}

TEST_CASE("linear optimization over adapted maps") {
  SUBCASE("N=1 diagonal reward is achieved by the copy map") {
    const PathDist mu = fair_coins(1);
    auto reward = [](const Path& y, const Path& x) {
      return Rational(y == x ? 1 : 0);
    };
    LinearOptResult res = linear_opt_via_extremes(mu, mu.space, reward);
    CHECK(res.value == 1);
    CHECK(res.map.step(1, {0}) == 0);
    CHECK(res.map.step(1, {1}) == 1);
  }

  SUBCASE("constant objectives are flat") {
    const PathDist mu = fair_coins(2);
    auto constant = [](const Path&, const Path&) { return Rational(7, 3); };
    CHECK(linear_opt_via_extremes(mu, mu.space, constant).value == Rational(7, 3));
  }

  SUBCASE("no adapted map can read the future") {
    const PathDist mu = fair_coins(2);
    auto reward = [](const Path& y, const Path& x) {
      return Rational(x[0] == y[1] ? 1 : 0);
    };
    CHECK(linear_opt_via_extremes(mu, mu.space, reward).value == Rational(1, 2));
  }

  SUBCASE("enumeration cap throws") {
    const PathDist mu = fair_coins(2);
    CHECK_THROWS_AS(enumerate_adapted_maps(mu, mu.space, 3), InstanceTooLarge);
  }
}

TEST_CASE("causal LP equals the extreme-point brute force") {
  SplitMix64 rng(56);
  const PathDist mu = fair_coins(2);
  for (int trial = 0; trial < 25; ++trial) {
    PathObjective c = random_objective(rng, mu.space, mu.space);
    const Rational lp = causal_value(mu, mu.space, c, Sense::maximize).value;
    const Rational brute = linear_opt_via_extremes(mu, mu.space, c).value;
    CHECK(lp == brute);
  }
}
