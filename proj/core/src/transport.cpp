#include "cotlab/transport.hpp"

#include <algorithm>

#include "cotlab/errors.hpp"

namespace cotlab {

std::vector<std::vector<Rational>> l1_cost(const FiniteSpace& x, const FiniteSpace& y) {
  std::vector<std::vector<Rational>> cost(x.size(), std::vector<Rational>(y.size()));
  for (int i = 0; i < x.size(); ++i) {
    for (int j = 0; j < y.size(); ++j) {
      Rational d = 0;
      for (int k = 0; k < x.dim(); ++k)
        d += rational_abs(rational_from_double(x.atom(i).coord[k]) -
                          rational_from_double(y.atom(j).coord[k]));
      cost[i][j] = d;
    }
  }
  return cost;
}

KantorovichResult kantorovich(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const std::vector<std::vector<Rational>>& cost,
                              Sense sense, LpMode mode) {
  const std::vector<int> rows = mu.support();
  const std::vector<int> cols = nu.support();
  if (static_cast<long>(rows.size()) * cols.size() > 4096)
    throw InstanceTooLarge("transport LP over the dense simplex is capped at 4096 vars");

  LinearSystem sys;
  sys.num_vars = static_cast<int>(rows.size() * cols.size());
  auto var = [&](size_t r, size_t c) { return static_cast<int>(r * cols.size() + c); };
  for (size_t r = 0; r < rows.size(); ++r) {
    LinearRow row;
    row.rhs = mu.weight(rows[r]);
    row.label = "row " + std::to_string(rows[r]);
    for (size_t c = 0; c < cols.size(); ++c) row.coeffs.push_back({var(r, c), Rational(1)});
    sys.rows.push_back(std::move(row));
  }
  for (size_t c = 0; c < cols.size(); ++c) {
    LinearRow row;
    row.rhs = nu.weight(cols[c]);
    row.label = "col " + std::to_string(cols[c]);
    for (size_t r = 0; r < rows.size(); ++r) row.coeffs.push_back({var(r, c), Rational(1)});
    sys.rows.push_back(std::move(row));
  }
  std::vector<Rational> objective(sys.num_vars);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c)
      objective[var(r, c)] = cost.at(rows[r]).at(cols[c]);

  LpResult lp = lp_solve(sys, objective, sense, mode);
  std::vector<Coupling::Entry> entries;
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c)
      if (lp.solution[var(r, c)] > 0)
        entries.push_back({rows[r], cols[c], lp.solution[var(r, c)]});
  return {lp.value, Coupling(mu.space(), nu.space(), std::move(entries))};
}

namespace {

struct MongeSearch {
  const std::vector<int>& sources;
  const DiscreteMeasure& mu;
  const DiscreteMeasure& nu;
  const std::vector<std::vector<Rational>>& cost;
  long cap;
  bool nonnegative;
  std::vector<Rational> suffix_min;  // sum of per-source minimal costs

  long expansions = 0;
  std::vector<Rational> remaining;
  std::vector<int> choice;
  MongeSearchResult best;

  // Depth-first over target choices with capacity pruning (the pushforward
  // must match nu exactly) and, for nonnegative costs, cost-bound pruning.
  void descend(size_t depth, const Rational& partial) {
    if (++expansions > cap)
      throw InstanceTooLarge("monge_bruteforce exceeded " + std::to_string(cap) +
                             " search nodes");
    if (depth == sources.size()) {
      if (!best.feasible() || partial < best.value) {
        std::vector<int> total(mu.size(), 0);
        for (size_t s = 0; s < sources.size(); ++s) total[sources[s]] = choice[s];
        best.map = MongeMap{mu.space(), nu.space(), std::move(total)};
        best.value = partial;
      }
      return;
    }
    if (nonnegative && best.feasible() && partial + suffix_min[depth] >= best.value)
      return;
    const int src = sources[depth];
    const Rational& w = mu.weight(src);
    for (int t = 0; t < nu.size(); ++t) {
      if (remaining[t] < w) continue;
      remaining[t] -= w;
      choice[depth] = t;
      descend(depth + 1, partial + w * cost.at(src).at(t));
      remaining[t] += w;
    }
  }
};

}  // namespace

MongeSearchResult monge_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   const std::vector<std::vector<Rational>>& cost,
                                   long cap) {
  const std::vector<int> sources = mu.support();
  bool nonnegative = true;
  for (int src : sources)
    for (int t = 0; t < nu.size(); ++t)
      if (cost.at(src).at(t) < 0) nonnegative = false;

  MongeSearch search{sources, mu, nu, cost, cap, nonnegative, {}, 0, {}, {}, {}};
  search.suffix_min.assign(sources.size() + 1, Rational(0));
  for (int s = static_cast<int>(sources.size()) - 1; s >= 0; --s) {
    Rational lo = cost.at(sources[s]).at(0);
    for (int t = 1; t < nu.size(); ++t) lo = std::min(lo, cost.at(sources[s]).at(t));
    search.suffix_min[s] = search.suffix_min[s + 1] + mu.weight(sources[s]) * lo;
  }
  search.remaining.assign(nu.size(), Rational(0));
  for (int t = 0; t < nu.size(); ++t) search.remaining[t] = nu.weight(t);
  search.choice.assign(sources.size(), 0);
  search.descend(0, Rational(0));
  return search.best;
}

std::vector<GapRow> monge_gap_study(GapFamily family, const std::vector<int>& m_list) {
  std::vector<GapRow> rows;
  for (int m : m_list) {
    SpacePtr xs = grid_space(m);
    DiscreteMeasure mu = DiscreteMeasure::uniform(xs);
    std::optional<DiscreteMeasure> nu;
    switch (family) {
      case GapFamily::diagonal:
        nu = mu;
        break;
      case GapFamily::independent: {
        SpacePtr two = make_space({{"lo", {0.25}}, {"hi", {0.75}}}, 1);
        nu = DiscreteMeasure::uniform(two);
        break;
      }
      case GapFamily::granularity: {
        SpacePtr two = make_space({{"lo", {0.25}}, {"hi", {0.75}}}, 1);
        nu = DiscreteMeasure(two, {Rational(1, 4), Rational(3, 4)});
        break;
      }
    }
    const auto cost = l1_cost(*mu.space(), *nu->space());
    KantorovichResult kant = kantorovich(mu, *nu, cost);
    MongeSearchResult monge = monge_bruteforce(mu, *nu, cost);
    GapRow row{m, kant.value, monge.feasible(), Rational(0), Rational(0)};
    if (monge.feasible()) {
      row.monge_value = monge.value;
      row.gap = monge.value - kant.value;
    }
    rows.push_back(row);
  }
  return rows;
}

CausalValueResult causal_value(const PathDist& mu, const PathSpace& x_space,
                               const PathObjective& cost, Sense sense, LpMode mode) {
  CausalSystem cs = causal_constraints(mu, x_space);
  std::vector<Rational> objective(cs.num_vars());
  for (size_t yi = 0; yi < cs.y_paths.size(); ++yi)
    for (size_t xi = 0; xi < cs.x_paths.size(); ++xi)
      objective[yi * cs.x_paths.size() + xi] = cost(cs.y_paths[yi], cs.x_paths[xi]);

  LpResult lp = lp_solve(cs.sys, objective, sense, mode);
  std::vector<JointPathLaw::Entry> support;
  for (size_t yi = 0; yi < cs.y_paths.size(); ++yi)
    for (size_t xi = 0; xi < cs.x_paths.size(); ++xi) {
      const Rational& w = lp.solution[yi * cs.x_paths.size() + xi];
      if (w > 0) support.push_back({cs.y_paths[yi], cs.x_paths[xi], w});
    }
  return {lp.value, JointPathLaw(mu.space, x_space, std::move(support))};
}

Rational unconstrained_value(const PathDist& mu, const PathSpace& x_space,
                             const PathObjective& cost, Sense sense) {
  // Pi(mu) with a free x-marginal decouples path by path.
  Rational total = 0;
  const std::vector<Path> x_paths = x_space.all_paths();
  for (const auto& [y, w] : mu.atoms) {
    Rational best = cost(y, x_paths.front());
    for (const Path& x : x_paths) {
      Rational v = cost(y, x);
      if (sense == Sense::minimize ? v < best : v > best) best = v;
    }
    total += w * best;
  }
  return total;
}

TwoMarginalResult causal_two_marginal(const PathDist& mu, const PathDist& nu,
                                      const PathObjective& cost, Sense sense,
                                      LpMode mode, long cap) {
  CausalSystem cs = causal_constraints(mu, nu.space);
  // Pin the x-marginal on top of the causal rows.
  for (size_t xi = 0; xi < cs.x_paths.size(); ++xi) {
    LinearRow row;
    row.rhs = nu.mass(cs.x_paths[xi]);
    row.label = "x-marginal " + std::to_string(xi);
    for (size_t yi = 0; yi < cs.y_paths.size(); ++yi)
      row.coeffs.push_back({static_cast<int>(yi * cs.x_paths.size() + xi), Rational(1)});
    cs.sys.rows.push_back(std::move(row));
  }
  std::vector<Rational> objective(cs.num_vars());
  for (size_t yi = 0; yi < cs.y_paths.size(); ++yi)
    for (size_t xi = 0; xi < cs.x_paths.size(); ++xi)
      objective[yi * cs.x_paths.size() + xi] = cost(cs.y_paths[yi], cs.x_paths[xi]);
  LpResult lp = lp_solve(cs.sys, objective, sense, mode);

  std::vector<JointPathLaw::Entry> support;
  for (size_t yi = 0; yi < cs.y_paths.size(); ++yi)
    for (size_t xi = 0; xi < cs.x_paths.size(); ++xi) {
      const Rational& w = lp.solution[yi * cs.x_paths.size() + xi];
      if (w > 0) support.push_back({cs.y_paths[yi], cs.x_paths[xi], w});
    }
  TwoMarginalResult result{lp.value,
                           JointPathLaw(mu.space, nu.space, std::move(support)), false,
                           Rational(0)};

  // Adapted side: exhaustive over maps whose pushforward hits nu exactly.
  for (const AdaptedMap& map : enumerate_adapted_maps(mu, nu.space, cap)) {
    JointPathLaw law = push_adapted(mu, map);
    if (!(x_marginal(law).atoms == nu.atoms)) continue;
    Rational value = 0;
    for (const auto& [y, w] : mu.atoms) value += w * cost(y, map.apply(y));
    const bool better = sense == Sense::maximize ? value > result.adapted_value
                                                 : value < result.adapted_value;
    if (!result.adapted_feasible || better) {
      result.adapted_value = value;
      result.adapted_feasible = true;
    }
  }
  return result;
}

namespace {

struct VertexStats {
  Rational mean;         // E[c]
  Rational second;       // E[c^2]
};

Rational evaluate_functional(const ControlModel& model, const Rational& mean,
                             const Rational& second) {
  switch (model.kind) {
    case ControlModel::Kind::linear:
      return mean;
    case ControlModel::Kind::expected_cost_squared:
      return mean * mean;
    case ControlModel::Kind::variance_penalized:
      return mean - model.param * (second - mean * mean);
    case ControlModel::Kind::target_tracking: {
      Rational d = mean - model.param;
      return -d * d;
    }
  }
  throw ValidationError("unknown functional kind");
}

}  // namespace

ControlValues control_values(const ControlModel& model, long cap) {
  if (model.kind == ControlModel::Kind::linear) {
    const Rational relaxed =
        causal_value(model.noise, model.action_space, model.cost, Sense::maximize).value;
    const Rational pure =
        linear_opt_via_extremes(model.noise, model.action_space, model.cost,
                                Sense::maximize, cap)
            .value;
    return {relaxed, pure, relaxed - pure};
  }

  // Nonlinear functional: vertices of the compatible polytope plus a
  // pairwise-mixture grid. E[c] and E[c^2] mix linearly in the law.
  std::vector<AdaptedMap> maps = enumerate_adapted_maps(model.noise, model.action_space, cap);
  std::vector<VertexStats> stats;
  stats.reserve(maps.size());
  for (const AdaptedMap& map : maps) {
    VertexStats vs{Rational(0), Rational(0)};
    for (const auto& [y, w] : model.noise.atoms) {
      const Rational c = model.cost(y, map.apply(y));
      vs.mean += w * c;
      vs.second += w * c * c;
    }
    stats.push_back(vs);
  }
  Rational pure;
  bool first = true;
  for (const VertexStats& vs : stats) {
    Rational v = evaluate_functional(model, vs.mean, vs.second);
    if (first || v > pure) pure = v;
    first = false;
  }
  Rational relaxed = pure;
  constexpr int kGrid = 64;
  for (size_t i = 0; i < stats.size(); ++i) {
    for (size_t j = i + 1; j < stats.size(); ++j) {
      for (int g = 1; g < kGrid; ++g) {
        const Rational lambda(g, kGrid);
        const Rational mean = (1 - lambda) * stats[i].mean + lambda * stats[j].mean;
        const Rational second = (1 - lambda) * stats[i].second + lambda * stats[j].second;
        relaxed = std::max(relaxed, evaluate_functional(model, mean, second));
      }
    }
  }
  return {relaxed, pure, relaxed - pure};
}

}  // namespace cotlab
