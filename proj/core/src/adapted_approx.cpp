#include "cotlab/adapted_approx.hpp"

#include <algorithm>

#include "cotlab/compatibility.hpp"
#include "cotlab/errors.hpp"
#include "cotlab/stable.hpp"

namespace cotlab {

namespace {

constexpr int kFamilyLevels = 2;

Path prefix_of(const Path& p, int n) { return Path(p.begin(), p.begin() + n); }

// Default-family gap between two joint laws sharing spaces: f runs over
// y-path atom indicators, g over the hinge hierarchy on concatenated x-path
// coordinates. Evaluated on supports, no flattened space materialized.
Rational joint_stable_gap(const JointPathLaw& a, const JointPathLaw& b) {
  std::map<Path, std::vector<std::pair<std::vector<double>, Rational>>> diff;
  for (const auto& e : a.support()) diff[e.y].push_back({a.x_space().coords(e.x), e.w});
  for (const auto& e : b.support()) diff[e.y].push_back({b.x_space().coords(e.x), -e.w});
  const int dim = a.x_space().dim();
  const long denom = 1L << kFamilyLevels;
  Rational gap = 0;
  for (const auto& [y, terms] : diff) {
    for (int c = 0; c <= dim; ++c) {
      const long thresholds = c == dim ? 1 : denom;  // c == dim: constant g
      for (long k = 0; k < thresholds; ++k) {
        Rational t(k, denom);
        Rational acc = 0;
        for (const auto& [coords, w] : terms) {
          if (c == dim) {
            acc += w;
          } else {
            Rational v = rational_from_double(coords[c]) - t;
            if (v > 0) acc += w * v;
          }
        }
        gap = std::max(gap, rational_abs(acc));
      }
    }
  }
  return gap;
}

// Ad-hoc FiniteSpace over conditioning atoms; coordinates concatenate the
// y-prefix and x-prefix ambient coordinates.
SpacePtr conditioning_space(const JointPathLaw& j, int step,
                            const std::vector<std::pair<Path, Path>>& atoms) {
  std::vector<Atom> out;
  for (const auto& [yp, xp] : atoms) {
    Atom a;
    for (size_t k = 0; k < yp.size(); ++k)
      a.label += (k ? "." : "") + j.y_space().steps[k]->atom(yp[k]).label;
    a.label += "/";
    for (size_t k = 0; k < xp.size(); ++k)
      a.label += (k ? "." : "") + j.x_space().steps[k]->atom(xp[k]).label;
    a.coord = j.y_space().coords(yp);
    std::vector<double> xc = j.x_space().coords(xp);
    a.coord.insert(a.coord.end(), xc.begin(), xc.end());
    out.push_back(std::move(a));
  }
  int dim = 0;
  for (int k = 0; k < step; ++k) dim += j.y_space().steps[k]->dim();
  for (int k = 0; k + 1 < step; ++k) dim += j.x_space().steps[k]->dim();
  return make_space(std::move(out), dim);
}

}  // namespace

int StepLift::lookup(const Path& y_prefix, const Path& x_prefix) const {
  const auto key = std::make_pair(y_prefix, x_prefix);
  auto it = std::upper_bound(conditioning.begin(), conditioning.end(), key);
  if (it == conditioning.begin()) return targets.front();
  return targets[(it - conditioning.begin()) - 1];
}

StepLift one_step_lift(const JointPathLaw& j, int step, int level) {
  if (step < 1 || step > j.horizon()) throw ValidationError("step out of range");

  // Collect the step law: conditioning atoms (y^step, x^{step-1}) against
  // the step-x alphabet.
  std::map<std::pair<Path, Path>, std::map<int, Rational>> law;
  for (const auto& e : j.support())
    law[{prefix_of(e.y, step), prefix_of(e.x, step - 1)}][e.x[step - 1]] += e.w;

  StepLift lift;
  for (const auto& [key, dist] : law) lift.conditioning.push_back(key);

  SpacePtr rows = conditioning_space(j, step, lift.conditioning);
  SpacePtr cols = j.x_space().steps[step - 1];
  std::vector<Coupling::Entry> entries;
  for (int r = 0; r < static_cast<int>(lift.conditioning.size()); ++r)
    for (const auto& [atom, w] : law.at(lift.conditioning[r]))
      entries.push_back({r, atom, w});
  Coupling step_law(rows, cols, std::move(entries));

  PartitionSequence parts = dyadic_partitions(rows);
  MongeApproximation approx = [&] {
    if (level == Schedule::kAuto) {
      for (int k = parts.top_level(); k > 0; --k) {
        try {
          return monge_approximate(step_law, parts, k);
        } catch (const GranularityError&) {
        }
      }
      return monge_approximate(step_law, parts, 0);
    }
    return monge_approximate(step_law, parts, std::min(level, parts.top_level()));
  }();

  lift.targets = approx.map.targets;
  lift.level_used = approx.level;
  const auto gs = hinge_hierarchy(*cols, kFamilyLevels);
  lift.step_gap = stable_gap_fast(step_law, approx.coupling, gs);
  lift.osc_bound = stable_gap_bound(marginal(step_law, Axis::row),
                                    parts.cells(approx.level));
  return lift;
}

AdaptedResult approximate_adapted(const JointPathLaw& j, const Schedule& schedule) {
  if (static_cast<int>(schedule.levels.size()) != j.horizon())
    throw ValidationError("schedule length must equal the horizon");
  CheckResult ci = check_ci(j);
  if (!ci.ok)
    throw NotCompatible("law is incompatible, violation " + ci.max_violation.str() +
                        " at n=" + std::to_string(ci.witness.n));

  const PathDist mu = y_marginal(j);
  AdaptedResult out{AdaptedMap{j.x_space(), {}}, j, Rational(0), 0.0, Rational(0), {}};
  out.map.steps.resize(j.horizon());

  for (int step = 1; step <= j.horizon(); ++step) {
    StepLift lift = one_step_lift(j, step, schedule.levels[step - 1]);
    for (const Path& p : mu.prefix_support(step)) {
      Path q;
      for (int k = 1; k < step; ++k) q.push_back(out.map.steps[k - 1].at(prefix_of(p, k)));
      out.map.steps[step - 1][p] = lift.lookup(p, q);
    }
    out.max_osc_bound = std::max(out.max_osc_bound, lift.osc_bound);
    out.lifts.push_back(std::move(lift));
  }

  out.law = push_adapted(mu, out.map);
  out.w1_gap = joint_w1(out.law, j);
  out.stable_gap = joint_stable_gap(out.law, j);
  return out;
}

std::vector<ConvergenceRow> convergence_report(
    const std::function<JointPathLaw(int)>& family, const std::vector<int>& m_list,
    const Schedule* schedule) {
  std::vector<ConvergenceRow> rows;
  for (int m : m_list) {
    JointPathLaw j = family(m);
    Schedule s = schedule ? *schedule : Schedule::automatic(j.horizon());
    AdaptedResult res = approximate_adapted(j, s);
    rows.push_back({m, res.stable_gap, res.w1_gap, res.max_osc_bound});
  }
  return rows;
}

JointPathLaw independent_product_instance(int m) {
  const PathSpace y_space = iid_path_space(grid_space(m), 2);
  const PathSpace x_space = iid_path_space(bit_space(), 2);
  std::vector<JointPathLaw::Entry> support;
  const Rational y_w(1, static_cast<long>(m) * m);
  for (const Path& y : y_space.all_paths()) {
    support.push_back({y, {0, 0}, y_w / 2});
    support.push_back({y, {1, 1}, y_w / 2});
  }
  return JointPathLaw(y_space, x_space, std::move(support));
}

}  // namespace cotlab
