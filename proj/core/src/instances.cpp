#include "cotlab/instances.hpp"

#include <memory>

#include "cotlab/errors.hpp"

namespace cotlab::instances {

PathSpace coin_paths(int horizon) { return iid_path_space(grid_space(2), horizon); }

PathDist fair_coins(int horizon) { return uniform_path_dist(coin_paths(horizon)); }

JointPathLaw copy_law(int horizon) {
  const PathDist mu = fair_coins(horizon);
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms) support.push_back({y, y, w});
  return JointPathLaw(mu.space, mu.space, std::move(support));
}

JointPathLaw xor_law() {
  const PathDist mu = fair_coins(2);
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms)
    support.push_back({y, {y[0], y[0] ^ y[1]}, w});
  return JointPathLaw(mu.space, mu.space, std::move(support));
}

JointPathLaw anticipative_law() {
  const PathDist mu = fair_coins(2);
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms) support.push_back({y, {y[1], y[1]}, w});
  return JointPathLaw(mu.space, mu.space, std::move(support));
}

JointPathLaw n2_copy_mixture() {
  const PathDist mu = fair_coins(2);
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms)
    for (int bit = 0; bit < 2; ++bit)
      support.push_back({y, {bit, bit}, w / 2});
  return JointPathLaw(mu.space, mu.space, std::move(support));
}

JointPathLaw independent_coin_product(int horizon) {
  const PathDist mu = fair_coins(horizon);
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms)
    for (int bit = 0; bit < 2; ++bit)
      support.push_back({y, Path(horizon, bit), w / 2});
  return JointPathLaw(mu.space, mu.space, std::move(support));
}

std::vector<Rational> random_simplex(SplitMix64& rng, int k) {
  std::vector<Rational> out(k);
  Rational total = 0;
  for (Rational& w : out) {
    w = Rational(rng.in_range(1, 9));
    total += w;
  }
  for (Rational& w : out) w /= total;
  return out;
}

JointPathLaw random_joint_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha) {
  const PathSpace y_space = iid_path_space(grid_space(y_alpha), horizon);
  const PathSpace x_space = iid_path_space(grid_space(x_alpha), horizon);
  const std::vector<Path> ys = y_space.all_paths();
  const std::vector<Path> xs = x_space.all_paths();
  std::vector<std::pair<Path, Path>> picked;
  for (const Path& y : ys)
    for (const Path& x : xs)
      if (rng.next() & 1) picked.push_back({y, x});
  if (picked.empty()) picked.push_back({ys[0], xs[0]});
  const std::vector<Rational> weights = random_simplex(rng, static_cast<int>(picked.size()));
  std::vector<JointPathLaw::Entry> support;
  for (size_t i = 0; i < picked.size(); ++i)
    support.push_back({picked[i].first, picked[i].second, weights[i]});
  return JointPathLaw(y_space, x_space, std::move(support));
}

JointPathLaw random_compatible_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha) {
  const PathSpace y_space = iid_path_space(grid_space(y_alpha), horizon);
  const PathSpace x_space = iid_path_space(grid_space(x_alpha), horizon);
  const std::vector<Path> ys = y_space.all_paths();
  const std::vector<Rational> mu = random_simplex(rng, static_cast<int>(ys.size()));

  // One random kernel per (y-prefix, x-prefix) conditioning class; shared
  // across all paths extending the prefix, which is exactly compatibility.
  std::map<std::pair<Path, Path>, std::vector<std::pair<int, Rational>>> kernels;
  auto kernel_for = [&](const Path& yp, const Path& xp) {
    auto key = std::make_pair(yp, xp);
    auto it = kernels.find(key);
    if (it != kernels.end()) return it->second;
    std::vector<int> atoms;
    for (int a = 0; a < x_alpha; ++a)
      if (rng.next() & 1) atoms.push_back(a);
    if (atoms.empty()) atoms.push_back(static_cast<int>(rng.below(x_alpha)));
    std::vector<Rational> w = random_simplex(rng, static_cast<int>(atoms.size()));
    std::vector<std::pair<int, Rational>> kernel;
    for (size_t i = 0; i < atoms.size(); ++i) kernel.push_back({atoms[i], w[i]});
    kernels.emplace(key, kernel);
    return kernel;
  };

  std::vector<JointPathLaw::Entry> support;
  for (size_t yi = 0; yi < ys.size(); ++yi) {
    // Expand P(x | y) = prod_n kernel(x_n | y^n, x^{n-1}).
    std::vector<std::pair<Path, Rational>> partial{{Path{}, mu[yi]}};
    for (int n = 1; n <= horizon; ++n) {
      std::vector<std::pair<Path, Rational>> next;
      const Path yp(ys[yi].begin(), ys[yi].begin() + n);
      for (const auto& [xp, w] : partial) {
        for (const auto& [atom, kw] : kernel_for(yp, xp)) {
          Path ext = xp;
          ext.push_back(atom);
          next.push_back({std::move(ext), w * kw});
        }
      }
      partial = std::move(next);
    }
    for (auto& [x, w] : partial) support.push_back({ys[yi], std::move(x), w});
  }
  return JointPathLaw(y_space, x_space, std::move(support));
}

AdaptedMap random_adapted_map(SplitMix64& rng, const PathDist& mu, const PathSpace& x_space) {
  AdaptedMap map;
  map.x_space = x_space;
  map.steps.resize(mu.space.horizon());
  for (int n = 1; n <= mu.space.horizon(); ++n)
    for (const Path& p : mu.prefix_support(n))
      map.steps[n - 1][p] = static_cast<int>(rng.below(x_space.steps[n - 1]->size()));
  return map;
}

JointPathLaw random_adapted_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha) {
  const PathSpace y_space = iid_path_space(grid_space(y_alpha), horizon);
  const PathSpace x_space = iid_path_space(grid_space(x_alpha), horizon);
  const std::vector<Path> ys = y_space.all_paths();
  const std::vector<Rational> weights = random_simplex(rng, static_cast<int>(ys.size()));
  std::vector<std::pair<Path, Rational>> atoms;
  for (size_t i = 0; i < ys.size(); ++i) atoms.push_back({ys[i], weights[i]});
  PathDist mu = make_path_dist(y_space, std::move(atoms));
  return push_adapted(mu, random_adapted_map(rng, mu, x_space));
}

JointPathLaw random_mixture_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha,
                                int components) {
  const PathSpace y_space = iid_path_space(grid_space(y_alpha), horizon);
  const PathSpace x_space = iid_path_space(grid_space(x_alpha), horizon);
  const std::vector<Path> ys = y_space.all_paths();
  const std::vector<Rational> weights = random_simplex(rng, static_cast<int>(ys.size()));
  std::vector<std::pair<Path, Rational>> atoms;
  for (size_t i = 0; i < ys.size(); ++i) atoms.push_back({ys[i], weights[i]});
  PathDist mu = make_path_dist(y_space, std::move(atoms));

  const std::vector<Rational> lambda = random_simplex(rng, components);
  std::vector<JointPathLaw::Entry> support;
  for (int c = 0; c < components; ++c) {
    JointPathLaw part = push_adapted(mu, random_adapted_map(rng, mu, x_space));
    for (const auto& e : part.support()) support.push_back({e.y, e.x, e.w * lambda[c]});
  }
  return JointPathLaw(y_space, x_space, std::move(support));
}

PathObjective random_objective(SplitMix64& rng, const PathSpace& y_space,
                               const PathSpace& x_space, int lo, int hi) {
  auto table = std::make_shared<std::map<std::pair<Path, Path>, Rational>>();
  for (const Path& y : y_space.all_paths())
    for (const Path& x : x_space.all_paths())
      (*table)[{y, x}] = Rational(rng.in_range(lo, hi));
  return [table](const Path& y, const Path& x) { return table->at({y, x}); };
}

DiscreteMeasure random_measure(SplitMix64& rng, SpacePtr space) {
  return DiscreteMeasure(space, random_simplex(rng, space->size()));
}

RandomizedStoppingTime half_head_stop() {
  RandomizedStoppingTime tau;
  tau.y_space = coin_paths(2);
  for (const Path& y : tau.y_space.all_paths()) {
    if (y[0] == 0)
      tau.kernel[y] = {Rational(1, 2), Rational(1, 2), Rational(0)};
    else
      tau.kernel[y] = {Rational(0), Rational(1), Rational(0)};
  }
  return tau;
}

RandomizedStoppingTime independent_uniform_stop() {
  RandomizedStoppingTime tau;
  tau.y_space = coin_paths(2);
  for (const Path& y : tau.y_space.all_paths())
    tau.kernel[y] = {Rational(1, 2), Rational(1, 2), Rational(0)};
  return tau;
}

RandomizedStoppingTime anticipative_stop() {
  RandomizedStoppingTime tau;
  tau.y_space = coin_paths(2);
  for (const Path& y : tau.y_space.all_paths()) {
    if (y[1] == 0)
      tau.kernel[y] = {Rational(1), Rational(0), Rational(0)};
    else
      tau.kernel[y] = {Rational(0), Rational(1), Rational(0)};
  }
  return tau;
}

std::pair<RandomizedStoppingTime, PathDist> uniform_stop_family(int m) {
  PathSpace y_space{{grid_space(m), grid_space(m)}};
  PathDist mu = uniform_path_dist(y_space);
  RandomizedStoppingTime tau;
  tau.y_space = y_space;
  for (const auto& [y, w] : mu.atoms)
    tau.kernel[y] = {Rational(1, 2), Rational(1, 2), Rational(0)};
  return {std::move(tau), std::move(mu)};
}

}  // namespace cotlab::instances
