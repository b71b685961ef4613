#include "cotlab/suite.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "cotlab/adapted_approx.hpp"
#include "cotlab/compatibility.hpp"
#include "cotlab/errors.hpp"
#include "cotlab/extreme_points.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/monge.hpp"
#include "cotlab/rotation.hpp"
#include "cotlab/stable.hpp"
#include "cotlab/stopping.hpp"
#include "cotlab/transport.hpp"

namespace cotlab::suite {

namespace {

using namespace cotlab::instances;

// Regression thresholds frozen from the first implementation run: the
// independent-product family (criterion 4) and the uniform stopping family
// (criterion 7) both end at joint W1 gap 0.03125 for m = 16. Tiny headroom
// covers floating-point noise in the solver.
constexpr double kFrozenAdaptedW1 = 0.0312501;
constexpr double kFrozenStoppingW1 = 0.0312501;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
};

std::string fmt(const Rational& r) { return r.str(); }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

// --- criterion 1: Gaussian rotation ---------------------------------------

CriterionResult rotation_values(uint64_t) {
  CriterionResult r;
  r.name = "rotation-demo";
  r.csv_header = {"n", "grid", "diag_identity", "diag_exact", "diag_snapped",
                  "fixed_mass", "w1_gap"};
  Check check;
  double previous = -1.0;
  for (int n : {4, 8, 16}) {
    RotationReport report = rotation_demo(n, 32);
    check.expect(report.diag_identity == 1, "identity coupling must have diagonal mass 1");
    check.expect(report.diag_exact == 0, "exact rotation coupling must have diagonal mass 0");
    check.expect(report.diag_snapped <= report.fixed_atom_mass,
                 "snapped diagonal mass exceeds the fixed-atom bound");
    if (previous >= 0.0)
      check.expect(report.w1_gap <= previous, "w1 gap must not grow with n");
    previous = report.w1_gap;
    r.rows.push_back({std::to_string(n), "32", fmt(report.diag_identity),
                      fmt(report.diag_exact), fmt(report.diag_snapped),
                      fmt(report.fixed_atom_mass), fmt(report.w1_gap)});
  }
  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

// --- criterion 2: Monge density -------------------------------------------

CriterionResult monge_density(uint64_t) {
  CriterionResult r;
  r.name = "monge-density";
  r.csv_header = {"m", "level", "stable_gap", "gap_bound"};
  Check check;
  SpacePtr targets = make_space({{"u", {0.0}}, {"v", {1.0}}}, 1);
  for (int m : {4, 8, 16}) {
    SpacePtr row = grid_space(m);
    DiscreteMeasure mu = DiscreteMeasure::uniform(row);
    DiscreteMeasure nu = DiscreteMeasure::uniform(targets);
    Coupling p = Coupling::product(mu, nu);
    PartitionSequence parts = dyadic_partitions(row);
    auto family = default_family(row, targets, 2);

    Rational previous_gap(-1);
    for (int level = 0; level < parts.num_levels(); ++level) {
      MongeApproximation approx = [&]() {
        try {
          return monge_approximate(p, parts, level);
        } catch (const GranularityError&) {
          return monge_approximate(p, parts, level - 1);  // top achievable
        }
      }();
      if (approx.level != level) break;  // deeper levels are unrepresentable

      check.expect(marginal(approx.coupling, Axis::row) == mu, "row marginal broken");
      check.expect(marginal(approx.coupling, Axis::col) == nu, "col marginal broken");
      // Exact cell agreement on every level-k cell.
      for (const auto& cell : parts.cells(level)) {
        for (int y = 0; y < targets->size(); ++y) {
          Rational a = 0, b = 0;
          for (int atom : cell) {
            a += approx.coupling.mass(atom, y);
            b += p.mass(atom, y);
          }
          check.expect(a == b, "cell agreement identity broken");
        }
      }
      const Rational gap = stable_gap(approx.coupling, p, family);
      const Rational bound = stable_gap_bound(mu, parts.cells(level));
      check.expect(gap <= bound, "stable gap exceeds the oscillation bound");
      if (previous_gap >= 0)
        check.expect(gap <= previous_gap, "gap table must be nonincreasing in level");
      previous_gap = gap;
      r.rows.push_back({std::to_string(m), std::to_string(level), fmt(gap), fmt(bound)});
    }
  }
  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

// --- criterion 3: checker agreement ---------------------------------------

CriterionResult checker_agreement(uint64_t seed) {
  CriterionResult r;
  r.name = "compatibility-equivalence";
  r.csv_header = {"instances", "compatible", "incompatible", "disagreements"};
  SplitMix64 rng(seed);
  int compatible = 0, incompatible = 0, disagreements = 0;
  const int total = 1000;
  for (int trial = 0; trial < total; ++trial) {
    const int horizon = 1 + static_cast<int>(rng.below(3));
    const int y_alpha = 2 + static_cast<int>(rng.below(2));
    const int x_alpha = 2 + static_cast<int>(rng.below(2));
    JointPathLaw j = [&]() {
      switch (rng.below(4)) {
        case 0: return random_joint_law(rng, horizon, y_alpha, x_alpha);
        case 1: return random_compatible_law(rng, horizon, y_alpha, x_alpha);
        case 2: return random_adapted_law(rng, horizon, y_alpha, x_alpha);
        default: return random_mixture_law(rng, horizon, y_alpha, x_alpha, 3);
      }
    }();
    const bool ci = check_ci(j).ok;
    const bool agree = ci == check_mgale(j).ok && ci == check_proj(j).ok &&
                       ci == check_reverse(j).ok;
    if (!agree) ++disagreements;
    (ci ? compatible : incompatible)++;
  }
  r.rows.push_back({std::to_string(total), std::to_string(compatible),
                    std::to_string(incompatible), std::to_string(disagreements)});
  r.pass = disagreements == 0 && compatible > 100 && incompatible > 100;
  if (!r.pass) r.detail = "checker verdicts disagreed or the mix degenerated";
  return r;
}

// --- criterion 4: adapted approximation engine ------------------------------

CriterionResult adapted_engine(uint64_t seed) {
  CriterionResult r;
  r.name = "adapted-approximation";
  r.csv_header = {"m", "stable_gap", "w1_gap", "osc_bound"};
  Check check;
  SplitMix64 rng(seed);

  // Adapted inputs are fixed points.
  for (int trial = 0; trial < 20; ++trial) {
    JointPathLaw j = random_adapted_law(rng, 2, 2, 2);
    AdaptedResult res = approximate_adapted(j, Schedule::automatic(2));
    check.expect(res.stable_gap == 0 && res.w1_gap == 0.0,
                 "adapted input must be a fixed point");
  }

  // NotCompatible is raised exactly when check_ci fails.
  for (int trial = 0; trial < 40; ++trial) {
    JointPathLaw j = (trial % 2 == 0) ? random_joint_law(rng, 2, 2, 2)
                                      : random_compatible_law(rng, 2, 2, 2);
    bool refused = false;
    bool ran = true;
    try {
      approximate_adapted(j, Schedule::automatic(2));
    } catch (const NotCompatible&) {
      refused = true;
    } catch (const GranularityError&) {
      ran = false;
    }
    if (ran) check.expect(refused == !check_ci(j).ok, "refusal must match check_ci");
  }

  // Refinement family: W1 gap nonincreasing and below the frozen threshold.
  double previous = -1.0;
  double last = 0.0;
  for (int m : {4, 8, 16}) {
    AdaptedResult res =
        approximate_adapted(independent_product_instance(m), Schedule::automatic(2));
    if (previous >= 0.0)
      check.expect(res.w1_gap <= previous, "w1 gap must not grow with m");
    previous = res.w1_gap;
    last = res.w1_gap;
    r.rows.push_back({std::to_string(m), fmt(res.stable_gap), fmt(res.w1_gap),
                      fmt(res.max_osc_bound)});
  }
  check.expect(last <= kFrozenAdaptedW1, "w1 gap above the frozen regression threshold");

  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

// --- criterion 5: extreme-point decomposition -------------------------------

CriterionResult extreme_points(uint64_t seed) {
  CriterionResult r;
  r.name = "extreme-point-decomposition";
  r.csv_header = {"what", "count", "failures"};
  Check check;
  SplitMix64 rng(seed);

  int reconstructions = 0;
  for (int trial = 0; trial < 120; ++trial) {
    JointPathLaw j = [&]() {
      switch (rng.below(4)) {
        case 0: return random_compatible_law(rng, 2, 2, 2);
        case 1: return random_mixture_law(rng, 2, 3, 2, 3);
        case 2: return random_compatible_law(rng, 3, 3, 3);
        default: return random_adapted_law(rng, 2, 2, 3);
      }
    }();
    MixtureDecomposition d = decompose_compatible(j);
    const PathDist mu = y_marginal(j);
    check.expect(recompose(d, mu).support() == j.support(),
                 "recompose(decompose(J)) must equal J exactly");
    for (const MixtureComponent& comp : d.components) {
      JointPathLaw part = push_adapted(mu, comp.map);
      check.expect(is_adapted(part), "every component must be adapted");
      check.expect(check_ci(part).ok, "every component must be compatible");
    }
    ++reconstructions;
  }
  r.rows.push_back({"reconstruction", std::to_string(reconstructions),
                    check.ok ? "0" : "1"});

  const PathDist mu = fair_coins(2);
  int objectives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    PathObjective c = random_objective(rng, mu.space, mu.space);
    const Rational lp = causal_value(mu, mu.space, c, Sense::maximize).value;
    const Rational brute = linear_opt_via_extremes(mu, mu.space, c).value;
    check.expect(lp == brute, "causal LP must equal the adapted brute force");
    ++objectives;
  }
  r.rows.push_back({"lp-vs-extremes", std::to_string(objectives), check.ok ? "0" : "1"});

  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

// --- criterion 6: stopping-time decomposition -------------------------------

CriterionResult stopping_decomposition(uint64_t seed) {
  CriterionResult r;
  r.name = "stopping-decomposition";
  r.csv_header = {"what", "count", "failures"};
  Check check;
  SplitMix64 rng(seed);

  int reconstructed = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int horizon = 1 + static_cast<int>(rng.below(3));
    const PathDist mu = fair_coins(horizon);
    // Hazard construction: the CDF at t reads only the length-t prefix.
    std::map<Path, Rational> hazard;
    for (int t = 1; t <= horizon; ++t)
      for (const Path& p : mu.prefix_support(t)) hazard[p] = Rational(rng.in_range(0, 4), 4);
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

    auto components = decompose_stopping(tau, mu);
    for (const auto& [w, st] : components)
      check.expect(is_stopping_time(st, mu), "component is not a stopping time");
    for (const auto& [y, kw] : mu.atoms) {
      for (int t = 1; t <= horizon; ++t) {
        Rational acc = 0;
        for (const auto& [w, st] : components)
          if (st.at(y) <= t) acc += w;
        check.expect(acc == tau.cdf(y, t), "kernel CDF reconstruction broke");
      }
    }
    ++reconstructed;
  }
  r.rows.push_back({"random-rst", std::to_string(reconstructed), check.ok ? "0" : "1"});

  // Pure stopping times decompose into themselves.
  const PathDist mu = fair_coins(2);
  int pure_cases = 0;
  for (int trial = 0; trial < 20; ++trial) {
    StoppingTime pure;
    pure.y_space = mu.space;
    const int choice = static_cast<int>(rng.below(3));
    for (const auto& [y, w] : mu.atoms)
      pure.rule[y] = choice == 0 ? 1 : (choice == 1 ? (y[0] == 0 ? 1 : 2) : kTimeInfinity);
    auto components = decompose_stopping(lift_stopping(pure, mu), mu);
    check.expect(components.size() == 1 && components[0].first == 1,
                 "pure stopping time must decompose into itself");
    for (const auto& [y, w] : mu.atoms)
      check.expect(components[0].second.at(y) == pure.at(y),
                   "pure decomposition changed the rule");
    ++pure_cases;
  }
  r.rows.push_back({"pure", std::to_string(pure_cases), check.ok ? "0" : "1"});

  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

// --- criterion 7: stopping-time approximation -------------------------------

CriterionResult stopping_approximation(uint64_t seed) {
  CriterionResult r;
  r.name = "stopping-approximation";
  r.csv_header = {"m", "w1_gap"};
  Check check;
  SplitMix64 rng(seed);

  // Pure inputs come back unchanged.
  const PathDist mu = fair_coins(2);
  for (int trial = 0; trial < 10; ++trial) {
    StoppingTime pure;
    pure.y_space = mu.space;
    for (const auto& [y, w] : mu.atoms)
      pure.rule[y] = rng.next() & 1 ? 1 : (y[0] == 0 ? 2 : kTimeInfinity);
    if (!is_stopping_time(pure, mu)) continue;
    StoppingApprox res = approximate_stopping(lift_stopping(pure, mu), mu);
    check.expect(res.w1_gap == 0.0, "pure input must come back with gap 0");
    for (const auto& [y, w] : mu.atoms)
      check.expect(res.st.at(y) == pure.at(y), "pure input must come back unchanged");
  }

  // Anticipative inputs are rejected.
  bool rejected = false;
  try {
    approximate_stopping(anticipative_stop(), mu);
  } catch (const NotRandomizedST&) {
    rejected = true;
  }
  check.expect(rejected, "anticipative input must be rejected");

  // Refinement family.
  double previous = -1.0;
  double last = 0.0;
  for (int m : {4, 8, 16}) {
    auto [tau, family_mu] = uniform_stop_family(m);
    StoppingApprox res = approximate_stopping(tau, family_mu);
    check.expect(is_stopping_time(res.st, family_mu), "output must be a stopping time");
    if (previous >= 0.0) check.expect(res.w1_gap <= previous, "gap must not grow with m");
    previous = res.w1_gap;
    last = res.w1_gap;
    r.rows.push_back({std::to_string(m), fmt(res.w1_gap)});
  }
  check.expect(last <= kFrozenStoppingW1, "w1 gap above the frozen regression threshold");

  // Cross-check: indicator-process compatibility iff the RST property.
  for (int trial = 0; trial < 40; ++trial) {
    RandomizedStoppingTime tau;
    tau.y_space = mu.space;
    for (const auto& [y, w] : mu.atoms) tau.kernel[y] = random_simplex(rng, 3);
    check.expect(is_randomized_st(tau, mu).ok == check_ci(indicator_process(tau, mu)).ok,
                 "indicator-process compatibility must match the RST property");
  }

  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

// --- criterion 8: control relaxation ----------------------------------------

CriterionResult control_relaxation(uint64_t seed) {
  CriterionResult r;
  r.name = "control-relaxation";
  r.csv_header = {"instances", "max_gap"};
  Check check;
  SplitMix64 rng(seed);
  int instances = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int horizon = 1 + static_cast<int>(rng.below(2));
    const int actions = 2 + static_cast<int>(rng.below(2));
    const PathDist noise = fair_coins(horizon);
    const PathSpace action_space = iid_path_space(grid_space(actions), horizon);
    ControlModel model{noise, action_space,
                       random_objective(rng, noise.space, action_space),
                       ControlModel::Kind::linear, Rational(0)};
    ControlValues values = control_values(model);
    check.expect(values.gap == 0, "linear relaxation gap must vanish exactly");
    ++instances;
  }
  r.rows.push_back({std::to_string(instances), "0"});
  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

// --- criterion 9: causality gap regression ----------------------------------

CriterionResult causality_gap(uint64_t) {
  CriterionResult r;
  r.name = "causality-gap";
  r.csv_header = {"causal_value", "unconstrained_value"};
  const PathDist mu = fair_coins(2);
  auto cost = [](const Path& y, const Path& x) {
    return Rational(x[0] != y[1] ? 1 : 0);
  };
  const Rational causal = causal_value(mu, mu.space, cost, Sense::minimize).value;
  const Rational unconstrained = unconstrained_value(mu, mu.space, cost, Sense::minimize);
  r.rows.push_back({fmt(causal), fmt(unconstrained)});
  r.pass = causal == Rational(1, 2) && unconstrained == 0;
  if (!r.pass) r.detail = "expected causal value 1/2 and unconstrained value 0";
  return r;
}

// --- criterion 10: LP vs vertex enumeration ---------------------------------

bool oracle_vertex(const std::vector<int>& cells, const std::vector<Rational>& row_sums,
                   const std::vector<Rational>& col_sums, std::vector<Rational>& out) {
  const int rows = 6;
  const int cols = static_cast<int>(cells.size());
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1, Rational(0)));
  for (int c = 0; c < cols; ++c) {
    a[cells[c] / 3][c] = 1;
    a[3 + cells[c] % 3][c] = 1;
  }
  for (int i = 0; i < 3; ++i) a[i][cols] = row_sums[i];
  for (int i = 0; i < 3; ++i) a[3 + i][cols] = col_sums[i];
  int rank = 0;
  for (int c = 0; c < cols; ++c) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return false;
    std::swap(a[rank], a[pivot]);
    Rational p = a[rank][c];
    for (int k = 0; k <= cols; ++k) a[rank][k] /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == rank) continue;
      Rational f = a[i][c];
      if (f == 0) continue;
      for (int k = 0; k <= cols; ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  for (int i = rank; i < rows; ++i)
    if (a[i][cols] != 0) return false;
  out.assign(cols, Rational(0));
  for (int c = 0; c < cols; ++c) out[c] = a[c][cols];
  for (const Rational& v : out)
    if (v < 0) return false;
  return true;
}

CriterionResult lp_correctness(uint64_t seed) {
  CriterionResult r;
  r.name = "lp-vertex-oracle";
  r.csv_header = {"instances", "mismatches"};
  Check check;
  SplitMix64 rng(seed);
  const int total = 60;
  for (int trial = 0; trial < total; ++trial) {
    std::vector<Rational> row_sums = random_simplex(rng, 3);
    std::vector<Rational> col_sums = random_simplex(rng, 3);
    std::vector<Rational> cost(9);
    for (Rational& c : cost) c = Rational(rng.in_range(0, 20));

    LinearSystem sys;
    sys.num_vars = 9;
    for (int i = 0; i < 3; ++i) {
      LinearRow row;
      row.rhs = row_sums[i];
      for (int c = 0; c < 3; ++c) row.coeffs.push_back({3 * i + c, Rational(1)});
      sys.rows.push_back(row);
    }
    for (int c = 0; c < 3; ++c) {
      LinearRow row;
      row.rhs = col_sums[c];
      for (int i = 0; i < 3; ++i) row.coeffs.push_back({3 * i + c, Rational(1)});
      sys.rows.push_back(row);
    }
    LpResult lp = lp_solve(sys, cost, Sense::minimize);

    bool found = false;
    Rational best = 0;
    for (int a = 0; a < 9; ++a)
      for (int b = a + 1; b < 9; ++b)
        for (int c = b + 1; c < 9; ++c)
          for (int d = c + 1; d < 9; ++d)
            for (int e = d + 1; e < 9; ++e) {
              std::vector<int> cells{a, b, c, d, e};
              std::vector<Rational> x;
              if (!oracle_vertex(cells, row_sums, col_sums, x)) continue;
              Rational value = 0;
              for (size_t k = 0; k < cells.size(); ++k) value += x[k] * cost[cells[k]];
              if (!found || value < best) {
                best = value;
                found = true;
              }
            }
    check.expect(found && lp.value == best, "simplex disagrees with vertex enumeration");
  }
  r.rows.push_back({std::to_string(total), check.ok ? "0" : ">0"});
  r.pass = check.ok;
  r.detail = check.detail;
  return r;
}

struct Registered {
  CriterionResult (*run)(uint64_t);
  double time_limit;  // seconds; 0 = no limit stated
};

const Registered kCriteria[kNumCriteria] = {
    {rotation_values, 5.0},        // 1
    {monge_density, 10.0},         // 2
    {checker_agreement, 60.0},     // 3
    {adapted_engine, 60.0},        // 4
    {extreme_points, 120.0},       // 5
    {stopping_decomposition, 10.0},// 6
    {stopping_approximation, 0.0}, // 7
    {control_relaxation, 0.0},     // 8
    {causality_gap, 0.0},          // 9
    {lp_correctness, 0.0},         // 10
};

}  // namespace

CriterionResult run_criterion(int id, uint64_t seed) {
  if (id < 1 || id > kNumCriteria) throw ValidationError("criterion id out of range");
  const Registered& reg = kCriteria[id - 1];
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result = reg.run(seed + static_cast<uint64_t>(id));
  result.id = id;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (reg.time_limit > 0.0 && result.seconds >= reg.time_limit) {
    result.pass = false;
    result.detail = "runtime " + std::to_string(result.seconds) + "s over the limit of " +
                    std::to_string(reg.time_limit) + "s";
  }
  return result;
}

std::vector<CriterionResult> run_all(uint64_t seed) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kNumCriteria; ++id) results.push_back(run_criterion(id, seed));
  return results;
}

void write_csv(const std::string& path, const CriterionResult& result) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  for (size_t c = 0; c < result.csv_header.size(); ++c)
    out << (c ? "," : "") << result.csv_header[c];
  out << "\n";
  for (const auto& row : result.rows) {
    for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
}

}  // namespace cotlab::suite
