#include "doctest.h"

#include "cotlab/adapted_approx.hpp"
#include "cotlab/compatibility.hpp"
#include "cotlab/errors.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/monge.hpp"
#include "cotlab/rng.hpp"
#include "cotlab/stable.hpp"

using namespace cotlab;
using namespace cotlab::instances;

TEST_CASE("adapted inputs are fixed points") {
  for (const JointPathLaw& j : {copy_law(2), xor_law()}) {
    AdaptedResult res = approximate_adapted(j, Schedule::automatic(2));
    CHECK(res.stable_gap == 0);
    CHECK(res.w1_gap == 0.0);
    CHECK(res.law.support() == j.support());
    CHECK(res.map == *to_adapted_map(j));
  }
}

TEST_CASE("incompatible inputs are refused") {
  CHECK_THROWS_AS(approximate_adapted(anticipative_law(), Schedule::automatic(2)),
                  NotCompatible);
}

TEST_CASE("refusal agrees exactly with check_ci") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    JointPathLaw j = (trial % 2 == 0) ? random_joint_law(rng, 2, 2, 2)
                                      : random_compatible_law(rng, 2, 2, 2);
    bool refused = false;
    try {
      approximate_adapted(j, Schedule::automatic(2));
    } catch (const NotCompatible&) {
      refused = true;
    } catch (const GranularityError&) {
      continue;  // compatible but not representable at any level
    }
    CHECK(refused == !check_ci(j).ok);
  }
}

TEST_CASE("one_step_lift reproduces functions and quantile-alternates") {
  SUBCASE("deterministic step is recovered at the singleton level") {
    JointPathLaw j = xor_law();
    StepLift lift = one_step_lift(j, 2);
    CHECK(lift.step_gap == 0);
    for (size_t k = 0; k < lift.conditioning.size(); ++k) {
      const auto& [yp, xp] = lift.conditioning[k];
      CHECK(lift.targets[k] == (yp[0] ^ yp[1]));
    }
  }

  SUBCASE("independent fair bit over a uniform conditioning grid") {
    // N=1, Y uniform on 4 atoms, X1 an independent fair bit.
    PathSpace y_space{{grid_space(4)}};
    PathSpace x_space{{bit_space()}};
    std::vector<JointPathLaw::Entry> support;
    for (int a = 0; a < 4; ++a)
      for (int bit = 0; bit < 2; ++bit)
        support.push_back({{a}, {bit}, Rational(1, 8)});
    JointPathLaw j(y_space, x_space, std::move(support));

    StepLift lift = one_step_lift(j, 1);
    CHECK(lift.targets == std::vector<int>{0, 1, 0, 1});

    // N=1 reduction: the lift equals one_marginal_approx on the flattened
    // conditioning coupling.
    SpacePtr rows = grid_space(4);
    Coupling flat(rows, bit_space(),
                  {{0, 0, Rational(1, 8)}, {0, 1, Rational(1, 8)},
                   {1, 0, Rational(1, 8)}, {1, 1, Rational(1, 8)},
                   {2, 0, Rational(1, 8)}, {2, 1, Rational(1, 8)},
                   {3, 0, Rational(1, 8)}, {3, 1, Rational(1, 8)}});
    MongeMap direct = one_marginal_approx(flat, lift.level_used);
    CHECK(direct.targets == lift.targets);
  }
}

TEST_CASE("independent product family: gaps shrink with refinement") {
  std::vector<ConvergenceRow> rows =
      convergence_report(independent_product_instance, {2, 4, 8});
  REQUIRE(rows.size() == 3);
  for (size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].w1_gap <= rows[k - 1].w1_gap);
    CHECK(rows[k].stable_gap <= rows[k - 1].stable_gap);
  }
  for (const ConvergenceRow& row : rows) {
    CHECK(row.stable_gap <= row.osc_bound);
    CHECK(row.w1_gap > 0.0);
  }
}

TEST_CASE("per-step lift gaps respect their oscillation bounds") {
  for (int m : {2, 4, 8}) {
    AdaptedResult res =
        approximate_adapted(independent_product_instance(m), Schedule::automatic(2));
    for (const StepLift& lift : res.lifts) CHECK(lift.step_gap <= lift.osc_bound);
    CHECK(y_marginal(res.law).atoms ==
          y_marginal(independent_product_instance(m)).atoms);
    CHECK(is_adapted(res.law));
  }
}

TEST_CASE("fixed schedules propagate granularity errors") {
  JointPathLaw j = independent_coin_product(2);
  // Requesting singleton cells on a law whose kernels split mass must fail.
  PartitionSequence parts = dyadic_partitions(grid_space(2));
  CHECK_THROWS_AS(approximate_adapted(j, Schedule::fixed({parts.top_level() + 5,
                                                          parts.top_level() + 5})),
                  GranularityError);
}

TEST_CASE("composed law keeps the step-1 cell masses of the input") {
  // For test functions constant on the schedule's step-1 conditioning cells,
  // expectations under J_f and J agree exactly.
  for (int m : {4, 8}) {
    JointPathLaw j = independent_product_instance(m);
    AdaptedResult res = approximate_adapted(j, Schedule::automatic(2));
    const StepLift& lift = res.lifts[0];
    PartitionSequence parts =
        dyadic_partitions(grid_space(static_cast<int>(lift.conditioning.size())));
    for (const auto& cell : parts.cells(lift.level_used)) {
      for (int x1 = 0; x1 < 2; ++x1) {
        Rational original = 0, composed = 0;
        auto in_cell = [&](const Path& y) {
          for (int idx : cell)
            if (lift.conditioning[idx].first == Path{y[0]}) return true;
          return false;
        };
        for (const auto& e : j.support())
          if (in_cell(e.y) && e.x[0] == x1) original += e.w;
        for (const auto& e : res.law.support())
          if (in_cell(e.y) && e.x[0] == x1) composed += e.w;
        CHECK(original == composed);
      }
    }
  }
}

TEST_CASE("flatten bridges agree with the engine's joint gap") {
  JointPathLaw j = independent_product_instance(4);
  AdaptedResult res = approximate_adapted(j, Schedule::automatic(2));
  SpacePtr y_flat = flatten_path_space(j.y_space());
  SpacePtr x_flat = flatten_path_space(j.x_space());
  Rational via_coupling =
      stable_gap_fast(to_coupling(res.law, y_flat, x_flat), to_coupling(j, y_flat, x_flat),
                      hinge_hierarchy(*x_flat, 2));
  CHECK(via_coupling == res.stable_gap);
}

TEST_CASE("convergence report on an adapted family is identically zero") {
  auto adapted_family = [](int m) {
    PathSpace y_space = iid_path_space(grid_space(m), 2);
    PathDist mu = uniform_path_dist(y_space);
    AdaptedMap parity;
    parity.x_space = iid_path_space(bit_space(), 2);
    parity.steps.resize(2);
    for (int n = 1; n <= 2; ++n)
      for (const Path& p : mu.prefix_support(n)) parity.steps[n - 1][p] = p[n - 1] % 2;
    return push_adapted(mu, parity);
  };
  for (const ConvergenceRow& row : convergence_report(adapted_family, {2, 4, 8})) {
    CHECK(row.stable_gap == 0);
    CHECK(row.w1_gap == 0.0);
  }
}
