#include "cotlab/stopping.hpp"

#include <algorithm>

#include "cotlab/adapted_approx.hpp"
#include "cotlab/errors.hpp"
#include "cotlab/wasserstein.hpp"

namespace cotlab {

double time_coord(int t) {
  if (t == kTimeInfinity) return 1.0;
  return static_cast<double>(t) / (1.0 + t);
}

Rational RandomizedStoppingTime::cdf(const Path& y, int t) const {
  auto it = kernel.find(y);
  if (it == kernel.end()) throw MissingKernelRow("no kernel row for the given path");
  Rational c = 0;
  for (int s = 1; s <= t; ++s) c += it->second[s - 1];
  return c;
}

void RandomizedStoppingTime::validate() const {
  for (const auto& [y, row] : kernel) {
    if (!y_space.valid(y) || static_cast<int>(y.size()) != horizon())
      throw ValidationError("kernel row keyed by an invalid path");
    if (static_cast<int>(row.size()) != horizon() + 1)
      throw ValidationError("kernel row must have N+1 slots (times 1..N and infinity)");
    Rational total = 0;
    for (const Rational& w : row) {
      if (w < 0) throw ValidationError("negative kernel mass");
      total += w;
    }
    if (total != 1) throw ValidationError("kernel row mass is " + total.str());
  }
}

int StoppingTime::at(const Path& y) const {
  auto it = rule.find(y);
  if (it == rule.end()) throw UndefinedPrefix("stopping rule undefined on the given path");
  return it->second;
}

RandomizedStoppingTime lift_stopping(const StoppingTime& st, const PathDist& mu) {
  RandomizedStoppingTime tau;
  tau.y_space = st.y_space;
  const int horizon = st.y_space.horizon();
  for (const auto& [y, w] : mu.atoms) {
    std::vector<Rational> row(horizon + 1, Rational(0));
    const int t = st.at(y);
    row[t == kTimeInfinity ? horizon : t - 1] = 1;
    tau.kernel[y] = std::move(row);
  }
  return tau;
}

RstCheck is_randomized_st(const RandomizedStoppingTime& tau, const PathDist& mu, double tol) {
  tau.validate();
  RstCheck result;
  result.max_violation = 0;
  const int horizon = tau.horizon();
  for (int t = 1; t <= horizon; ++t) {
    // Group positive-mass paths by length-t prefix and compare CDFs.
    std::map<Path, std::pair<Rational, Rational>> spread;  // prefix -> (min, max)
    for (const auto& [y, w] : mu.atoms) {
      const Rational c = tau.cdf(y, t);
      Path prefix(y.begin(), y.begin() + t);
      auto [it, fresh] = spread.try_emplace(prefix, std::make_pair(c, c));
      if (!fresh) {
        it->second.first = std::min(it->second.first, c);
        it->second.second = std::max(it->second.second, c);
      }
    }
    for (const auto& [prefix, mm] : spread) {
      const Rational gap = mm.second - mm.first;
      if (gap > result.max_violation) {
        result.max_violation = gap;
        result.t = t;
        result.witness_prefix = prefix;
      }
    }
  }
  result.ok = tol == 0.0 ? result.max_violation == 0
                         : result.max_violation <= rational_from_double(tol);
  return result;
}

bool is_stopping_time(const StoppingTime& st, const PathDist& mu) {
  const int horizon = st.y_space.horizon();
  for (int n = 1; n <= horizon; ++n) {
    std::map<Path, std::vector<int>> groups;
    for (const auto& [y, w] : mu.atoms)
      groups[Path(y.begin(), y.begin() + n)].push_back(st.at(y));
    for (const auto& [prefix, times] : groups) {
      int stopped = -1;
      bool any_late = false;
      for (int t : times) {
        if (t <= n) {
          if (stopped >= 0 && stopped != t) return false;
          stopped = t;
        } else {
          any_late = true;
        }
      }
      if (stopped >= 0 && any_late) return false;
    }
  }
  return true;
}

std::vector<std::pair<Rational, StoppingTime>> decompose_stopping(
    const RandomizedStoppingTime& tau, const PathDist& mu) {
  RstCheck check = is_randomized_st(tau, mu);
  if (!check.ok)
    throw NotRandomizedST("kernel CDF spreads " + check.max_violation.str() +
                          " at t=" + std::to_string(check.t));
  const int horizon = tau.horizon();

  std::vector<Rational> breakpoints{Rational(1)};
  for (const auto& [y, w] : mu.atoms)
    for (int t = 1; t <= horizon; ++t) {
      Rational c = tau.cdf(y, t);
      if (c > 0) breakpoints.push_back(c);
    }
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  std::vector<std::pair<Rational, StoppingTime>> components;
  Rational prev = 0;
  for (const Rational& b : breakpoints) {
    StoppingTime st;
    st.y_space = tau.y_space;
    for (const auto& [y, w] : mu.atoms) {
      int rule = kTimeInfinity;
      for (int t = 1; t <= horizon; ++t) {
        if (tau.cdf(y, t) >= b) {
          rule = t;
          break;
        }
      }
      st.rule[y] = rule;
    }
    components.push_back({b - prev, std::move(st)});
    prev = b;
  }
  return components;
}

JointPathLaw indicator_process(const RandomizedStoppingTime& tau, const PathDist& mu) {
  tau.validate();
  const int horizon = tau.horizon();
  const PathSpace h_space = iid_path_space(bit_space(), horizon);
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms) {
    const auto& row = tau.kernel.at(y);
    for (int slot = 0; slot <= horizon; ++slot) {
      if (row[slot] == 0) continue;
      const int stop = slot == horizon ? kTimeInfinity : slot + 1;
      Path h(horizon, 0);
      for (int t = 1; t <= horizon; ++t)
        if (stop != kTimeInfinity && t >= stop) h[t - 1] = 1;
      support.push_back({y, std::move(h), w * row[slot]});
    }
  }
  return JointPathLaw(tau.y_space, h_space, std::move(support));
}

int first_crossing(const std::vector<Rational>& h) {
  const Rational half(1, 2);
  for (size_t i = 0; i < h.size(); ++i)
    if (h[i] >= half) return static_cast<int>(i) + 1;
  return kTimeInfinity;
}

StoppingApprox approximate_stopping(const RandomizedStoppingTime& tau, const PathDist& mu) {
  RstCheck check = is_randomized_st(tau, mu);
  if (!check.ok)
    throw NotRandomizedST("kernel CDF spreads " + check.max_violation.str() +
                          " at t=" + std::to_string(check.t));
  const JointPathLaw j_h = indicator_process(tau, mu);
  AdaptedResult lifted = approximate_adapted(j_h, Schedule::automatic(tau.horizon()));

  StoppingApprox out;
  out.st.y_space = tau.y_space;
  for (const auto& [y, w] : mu.atoms) {
    const Path h = lifted.map.apply(y);
    std::vector<Rational> values;
    values.reserve(h.size());
    for (int bit : h) values.push_back(Rational(bit));
    out.st.rule[y] = first_crossing(values);
  }

  // W1 between the joint laws of (Y, time), time embedded via time_coord.
  std::vector<WeightedAtom> approx_cloud, target_cloud;
  for (const auto& [y, w] : mu.atoms) {
    std::vector<double> c = mu.space.coords(y);
    c.push_back(time_coord(out.st.at(y)));
    approx_cloud.push_back({std::move(c), w});
    const auto& row = tau.kernel.at(y);
    for (int slot = 0; slot <= tau.horizon(); ++slot) {
      if (row[slot] == 0) continue;
      std::vector<double> d = mu.space.coords(y);
      d.push_back(time_coord(slot == tau.horizon() ? kTimeInfinity : slot + 1));
      target_cloud.push_back({std::move(d), w * row[slot]});
    }
  }
  out.w1_gap = wasserstein1_points(std::move(approx_cloud), std::move(target_cloud));
  return out;
}

}  // namespace cotlab
