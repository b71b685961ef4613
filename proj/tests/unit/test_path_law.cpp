#include "doctest.h"

#include "cotlab/errors.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/path_law.hpp"
#include "cotlab/rng.hpp"

using namespace cotlab;
using namespace cotlab::instances;

TEST_CASE("y_marginal in elementary cases") {
  const PathDist mu = fair_coins(2);

  JointPathLaw point(mu.space, mu.space, {{{0, 1}, {1, 0}, Rational(1)}});
  PathDist m = y_marginal(point);
  CHECK(m.atoms.size() == 1);
  CHECK(m.mass({0, 1}) == 1);

  CHECK(y_marginal(copy_law(2)).atoms == mu.atoms);
  CHECK(y_marginal(n2_copy_mixture()).atoms == mu.atoms);
}

TEST_CASE("prefix conditionals on canonical laws") {
  SUBCASE("adapted laws give matching point masses") {
    JointPathLaw j = xor_law();
    for (const auto& e : j.support()) {
      for (int n = 1; n <= 2; ++n) {
        PrefixConditional full = prefix_conditional(j, n, e.y, Scope::full_path);
        PrefixConditional pref = prefix_conditional(j, n, e.y, Scope::prefix);
        CHECK(full.dist.size() == 1);
        CHECK(full.dist == pref.dist);
      }
    }
  }

  SUBCASE("independent products reproduce the x-prefix marginal") {
    JointPathLaw j = independent_coin_product(2);
    PrefixConditional full = prefix_conditional(j, 1, {0, 0}, Scope::full_path);
    PrefixConditional pref = prefix_conditional(j, 1, {0, 0}, Scope::prefix);
    CHECK(full.mass({0}) == Rational(1, 2));
    CHECK(full.mass({1}) == Rational(1, 2));
    CHECK(full.dist == pref.dist);
  }

  SUBCASE("anticipative law separates the two scopes") {
    JointPathLaw j = anticipative_law();
    PrefixConditional full = prefix_conditional(j, 1, {0, 1}, Scope::full_path);
    CHECK(full.mass({1}) == 1);  // x1 = y2 deterministically
    PrefixConditional pref = prefix_conditional(j, 1, {0, 1}, Scope::prefix);
    CHECK(pref.mass({0}) == Rational(1, 2));
    CHECK(pref.mass({1}) == Rational(1, 2));
    CHECK(total_variation(full, pref) == Rational(1, 2));
  }

  SUBCASE("null conditioning paths are rejected") {
    JointPathLaw point(coin_paths(2), coin_paths(2), {{{0, 1}, {1, 0}, Rational(1)}});
    CHECK_THROWS_AS(prefix_conditional(point, 1, {1, 1}, Scope::full_path), NullPath);
  }
}

TEST_CASE("push_adapted builds graph laws") {
  const PathDist mu = fair_coins(2);

  SUBCASE("copy map gives the diagonal") {
    AdaptedMap copy;
    copy.x_space = mu.space;
    copy.steps.resize(2);
    for (int n = 1; n <= 2; ++n)
      for (const Path& p : mu.prefix_support(n)) copy.steps[n - 1][p] = p[n - 1];
    JointPathLaw j = push_adapted(mu, copy);
    CHECK(j.support().size() == 4);
    for (const auto& e : j.support()) CHECK(e.y == e.x);
    CHECK(is_adapted(j));
  }

  SUBCASE("constant map gives a product with a point mass") {
    AdaptedMap constant;
    constant.x_space = mu.space;
    constant.steps.resize(2);
    for (int n = 1; n <= 2; ++n)
      for (const Path& p : mu.prefix_support(n)) constant.steps[n - 1][p] = 0;
    JointPathLaw j = push_adapted(mu, constant);
    for (const auto& e : j.support()) CHECK(e.x == Path{0, 0});
    CHECK(y_marginal(j).atoms == mu.atoms);
  }

  SUBCASE("xor map enumerates four equal atoms") {
    JointPathLaw j = xor_law();
    CHECK(j.support().size() == 4);
    for (const auto& e : j.support()) {
      CHECK(e.w == Rational(1, 4));
      CHECK(e.x[0] == e.y[0]);
      CHECK(e.x[1] == (e.y[0] ^ e.y[1]));
    }
  }

  SUBCASE("maps must cover the support") {
    AdaptedMap partial;
    partial.x_space = mu.space;
    partial.steps.resize(2);
    partial.steps[0][{0}] = 0;  // missing prefix {1}
    CHECK_THROWS_AS(push_adapted(mu, partial), UndefinedPrefix);
  }
}

TEST_CASE("is_adapted detects graph structure and prefix-measurability") {
  CHECK(is_adapted(copy_law(2)));
  CHECK(is_adapted(xor_law()));
  CHECK(!is_adapted(n2_copy_mixture()));       // two x-paths per y-path
  CHECK(!is_adapted(anticipative_law()));      // x1 depends on y2
  CHECK(!is_adapted(independent_coin_product(2)));

  AdaptedMap recovered = *to_adapted_map(xor_law());
  CHECK(recovered.step(2, {1, 0}) == 1);
  CHECK(recovered.step(2, {1, 1}) == 0);
}

TEST_CASE("tower property of prefix conditionals") {
  // Averaging the full-path conditional over suffixes recovers the prefix
  // conditional, for arbitrary joint laws.
  SplitMix64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    JointPathLaw j = random_joint_law(rng, 2, 2, 2);
    const PathDist mu = y_marginal(j);
    for (int n = 1; n <= 2; ++n) {
      for (const Path& prefix : mu.prefix_support(n)) {
        const Rational prefix_mass = mu.prefix_mass(prefix);
        std::map<Path, Rational> averaged;
        Path witness;
        for (const auto& [y, w] : mu.atoms) {
          if (!std::equal(prefix.begin(), prefix.end(), y.begin())) continue;
          witness = y;
          PrefixConditional full = prefix_conditional(j, n, y, Scope::full_path);
          for (const auto& [x, q] : full.dist) averaged[x] += (w / prefix_mass) * q;
        }
        PrefixConditional pref = prefix_conditional(j, n, witness, Scope::prefix);
        for (const auto& [x, q] : pref.dist) CHECK(averaged[x] == q);
      }
    }
  }
}

TEST_CASE("duplicate support entries merge without changing results") {
  const PathDist mu = fair_coins(1);
  std::vector<JointPathLaw::Entry> split;
  split.push_back({{0}, {0}, Rational(1, 4)});
  split.push_back({{0}, {0}, Rational(1, 4)});
  split.push_back({{1}, {1}, Rational(1, 2)});
  JointPathLaw merged(mu.space, mu.space, std::move(split));
  CHECK(merged.support().size() == 2);
  CHECK(merged.support()[0].w == Rational(1, 2));
}

TEST_CASE("joint_w1 vanishes exactly on equal laws") {
  JointPathLaw a = xor_law();
  CHECK(joint_w1(a, a) == 0.0);
  CHECK(joint_w1(a, copy_law(2)) > 0.0);
}
