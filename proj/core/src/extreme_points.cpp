#include "cotlab/extreme_points.hpp"

#include <algorithm>

#include "cotlab/compatibility.hpp"
#include "cotlab/errors.hpp"

namespace cotlab {

namespace {

struct IntervalState {
  Rational lo;
  Rational hi;
  AdaptedMap map;
};

Path prefix_of(const Path& p, int n) { return Path(p.begin(), p.begin() + n); }

}  // namespace

MixtureDecomposition decompose_compatible(const JointPathLaw& j) {
  if (!check_ci(j).ok)
    throw NotCompatible("decomposition requires a compatible law");

  const PathDist mu = y_marginal(j);
  const int horizon = j.horizon();

  AdaptedMap empty;
  empty.x_space = j.x_space();
  empty.steps.resize(horizon);
  std::vector<IntervalState> states{{Rational(0), Rational(1), empty}};

  for (int n = 1; n <= horizon; ++n) {
    const std::vector<Path> prefixes = mu.prefix_support(n);
    std::vector<IntervalState> next;
    for (const IntervalState& state : states) {
      const Rational len = state.hi - state.lo;
      // Conditional law of X_n given (Y^n = p, X^{n-1} as chosen on this
      // interval), one per y-prefix; collect every CDF cut inside [lo, hi).
      struct StepKernel {
        Path p;
        std::vector<std::pair<int, Rational>> cdf;  // (x atom, cumulative)
      };
      std::vector<StepKernel> kernels;
      std::vector<Rational> cuts{state.lo, state.hi};
      for (const Path& p : prefixes) {
        Path q;  // x-prefix forced by the maps built so far
        for (int k = 1; k < n; ++k) q.push_back(state.map.steps[k - 1].at(prefix_of(p, k)));
        std::map<int, Rational> dist;
        Rational total = 0;
        for (const auto& e : j.support()) {
          if (!std::equal(p.begin(), p.end(), e.y.begin())) continue;
          if (!std::equal(q.begin(), q.end(), e.x.begin())) continue;
          dist[e.x[n - 1]] += e.w;
          total += e.w;
        }
        if (total == 0)
          throw NotCompatible("conditioning event vanished during decomposition");
        StepKernel kernel;
        kernel.p = p;
        Rational cum = 0;
        for (const auto& [atom, w] : dist) {
          cum += w / total;
          kernel.cdf.push_back({atom, cum});
          Rational cut = state.lo + len * cum;
          cuts.push_back(cut);
        }
        kernels.push_back(std::move(kernel));
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        IntervalState sub{cuts[c], cuts[c + 1], state.map};
        // Position of the subinterval inside [lo, hi) in CDF units.
        const Rational rel = (sub.lo - state.lo) / len;
        for (const StepKernel& kernel : kernels) {
          int chosen = -1;
          for (const auto& [atom, cum] : kernel.cdf) {
            if (rel < cum) {
              chosen = atom;
              break;
            }
          }
          sub.map.steps[n - 1][kernel.p] = chosen;
        }
        next.push_back(std::move(sub));
      }
    }
    states = std::move(next);
  }

  MixtureDecomposition out;
  for (IntervalState& state : states) {
    if (!out.components.empty() && out.components.back().map == state.map) {
      out.components.back().weight += state.hi - state.lo;
      out.u_intervals.back().second = state.hi;
    } else {
      out.components.push_back({state.hi - state.lo, std::move(state.map)});
      out.u_intervals.push_back({state.lo, state.hi});
    }
  }
  return out;
}

JointPathLaw recompose(const MixtureDecomposition& d, const PathDist& mu) {
  std::vector<JointPathLaw::Entry> support;
  if (d.components.empty()) throw ValidationError("empty decomposition");
  for (const MixtureComponent& comp : d.components)
    for (const auto& [y, w] : mu.atoms)
      support.push_back({y, comp.map.apply(y), comp.weight * w});
  return JointPathLaw(mu.space, d.components.front().map.x_space, std::move(support));
}

std::vector<AdaptedMap> enumerate_adapted_maps(const PathDist& mu, const PathSpace& x_space,
                                               long cap) {
  const int horizon = mu.space.horizon();
  struct Slot {
    int n;
    Path prefix;
    int choices;
  };
  std::vector<Slot> slots;
  long combos = 1;
  for (int n = 1; n <= horizon; ++n) {
    const int alphabet = x_space.steps[n - 1]->size();
    for (const Path& p : mu.prefix_support(n)) {
      slots.push_back({n, p, alphabet});
      combos *= alphabet;
      if (combos > cap)
        throw InstanceTooLarge("adapted-map enumeration needs " + std::to_string(combos) +
                               " maps, cap is " + std::to_string(cap));
    }
  }
  std::vector<AdaptedMap> maps;
  maps.reserve(combos);
  std::vector<int> counter(slots.size(), 0);
  for (;;) {
    AdaptedMap map;
    map.x_space = x_space;
    map.steps.resize(horizon);
    for (size_t s = 0; s < slots.size(); ++s)
      map.steps[slots[s].n - 1][slots[s].prefix] = counter[s];
    maps.push_back(std::move(map));
    int s = static_cast<int>(slots.size()) - 1;
    while (s >= 0 && ++counter[s] == slots[s].choices) counter[s--] = 0;
    if (s < 0) break;
  }
  return maps;
}

LinearOptResult linear_opt_via_extremes(const PathDist& mu, const PathSpace& x_space,
                                        const PathObjective& objective, Sense sense,
                                        long cap) {
  std::vector<AdaptedMap> maps = enumerate_adapted_maps(mu, x_space, cap);
  LinearOptResult best;
  bool first = true;
  for (AdaptedMap& map : maps) {
    Rational value = 0;
    for (const auto& [y, w] : mu.atoms) value += w * objective(y, map.apply(y));
    const bool better = sense == Sense::maximize ? value > best.value : value < best.value;
    if (first || better) {
      best.value = value;
      best.map = std::move(map);
      first = false;
    }
  }
  return best;
}

}  // namespace cotlab
