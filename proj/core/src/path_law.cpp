#include "cotlab/path_law.hpp"

#include <algorithm>

#include "cotlab/errors.hpp"
#include "cotlab/wasserstein.hpp"

namespace cotlab {

int PathSpace::dim() const {
  int d = 0;
  for (const SpacePtr& s : steps) d += s->dim();
  return d;
}

bool PathSpace::valid(const Path& p) const {
  if (p.size() > steps.size()) return false;
  for (size_t n = 0; n < p.size(); ++n)
    if (p[n] < 0 || p[n] >= steps[n]->size()) return false;
  return true;
}

long PathSpace::path_count() const {
  long count = 1;
  for (const SpacePtr& s : steps) {
    count *= s->size();
    if (count > 1000000000L) throw InstanceTooLarge("path space too large to count");
  }
  return count;
}

std::vector<double> PathSpace::coords(const Path& p) const {
  std::vector<double> c;
  for (size_t n = 0; n < p.size(); ++n) {
    const auto& atom = steps[n]->atom(p[n]).coord;
    c.insert(c.end(), atom.begin(), atom.end());
  }
  return c;
}

std::vector<Path> PathSpace::all_paths(long cap) const {
  if (path_count() > cap) throw InstanceTooLarge("path enumeration over cap");
  std::vector<Path> out;
  Path current(steps.size(), 0);
  for (;;) {
    out.push_back(current);
    int n = horizon() - 1;
    while (n >= 0 && ++current[n] == steps[n]->size()) current[n--] = 0;
    if (n < 0) break;
  }
  return out;
}

PathSpace iid_path_space(SpacePtr alphabet, int horizon) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  return PathSpace{std::vector<SpacePtr>(horizon, std::move(alphabet))};
}

Rational PathDist::mass(const Path& p) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), p,
                             [](const auto& a, const Path& b) { return a.first < b; });
  if (it != atoms.end() && it->first == p) return it->second;
  return Rational(0);
}

Rational PathDist::prefix_mass(const Path& prefix) const {
  Rational m = 0;
  for (const auto& [path, w] : atoms)
    if (std::equal(prefix.begin(), prefix.end(), path.begin())) m += w;
  return m;
}

std::vector<Path> PathDist::prefix_support(int length) const {
  std::vector<Path> out;
  for (const auto& [path, w] : atoms) {
    Path prefix(path.begin(), path.begin() + length);
    if (out.empty() || out.back() != prefix) out.push_back(std::move(prefix));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PathDist make_path_dist(PathSpace space, std::vector<std::pair<Path, Rational>> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  PathDist dist;
  dist.space = std::move(space);
  Rational total = 0;
  for (auto& [path, w] : atoms) {
    if (static_cast<int>(path.size()) != dist.space.horizon() || !dist.space.valid(path))
      throw ValidationError("invalid path in distribution");
    if (w < 0) throw ValidationError("negative path mass");
    if (w == 0) continue;
    if (!dist.atoms.empty() && dist.atoms.back().first == path)
      dist.atoms.back().second += w;
    else
      dist.atoms.push_back({path, w});
    total += w;
  }
  if (total != 1)
    throw ValidationError("path masses sum to " + total.str() + ", expected 1");
  return dist;
}

PathDist uniform_path_dist(const PathSpace& space) {
  const long count = space.path_count();
  std::vector<std::pair<Path, Rational>> atoms;
  for (const Path& p : space.all_paths()) atoms.push_back({p, Rational(1, count)});
  return make_path_dist(space, std::move(atoms));
}

JointPathLaw::JointPathLaw(PathSpace y_space, PathSpace x_space, std::vector<Entry> support)
    : y_space_(std::move(y_space)), x_space_(std::move(x_space)) {
  if (y_space_.horizon() != x_space_.horizon())
    throw ValidationError("y and x path spaces have different horizons");
  std::sort(support.begin(), support.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });
  Rational total = 0;
  for (Entry& e : support) {
    if (static_cast<int>(e.y.size()) != y_space_.horizon() || !y_space_.valid(e.y) ||
        static_cast<int>(e.x.size()) != x_space_.horizon() || !x_space_.valid(e.x))
      throw ValidationError("invalid path pair in joint law");
    if (e.w < 0) throw ValidationError("negative weight in joint law");
    if (e.w == 0) continue;
    total += e.w;
    if (!support_.empty() && support_.back().y == e.y && support_.back().x == e.x)
      support_.back().w += e.w;
    else
      support_.push_back(std::move(e));
  }
  if (total != 1)
    throw ValidationError("joint law mass is " + total.str() + ", expected 1");
}

int AdaptedMap::step(int n, const Path& y_prefix) const {
  const auto& table = steps.at(n - 1);
  auto it = table.find(y_prefix);
  if (it == table.end()) {
    std::string p;
    for (int a : y_prefix) p += std::to_string(a) + ",";
    throw UndefinedPrefix("adapted map has no value at step " + std::to_string(n) +
                          " for prefix [" + p + "]");
  }
  return it->second;
}

Path AdaptedMap::apply(const Path& y) const {
  Path x;
  x.reserve(steps.size());
  for (int n = 1; n <= horizon(); ++n)
    x.push_back(step(n, Path(y.begin(), y.begin() + n)));
  return x;
}

Rational PrefixConditional::mass(const Path& x_prefix) const {
  for (const auto& [p, w] : dist)
    if (p == x_prefix) return w;
  return Rational(0);
}

Rational total_variation(const PrefixConditional& a, const PrefixConditional& b) {
  Rational l1 = 0;
  size_t i = 0, j = 0;
  while (i < a.dist.size() || j < b.dist.size()) {
    if (j >= b.dist.size() || (i < a.dist.size() && a.dist[i].first < b.dist[j].first)) {
      l1 += a.dist[i++].second;
    } else if (i >= a.dist.size() || b.dist[j].first < a.dist[i].first) {
      l1 += b.dist[j++].second;
    } else {
      l1 += rational_abs(a.dist[i].second - b.dist[j].second);
      ++i;
      ++j;
    }
  }
  return l1 / 2;
}

PathDist y_marginal(const JointPathLaw& j) {
  std::vector<std::pair<Path, Rational>> atoms;
  for (const auto& e : j.support()) atoms.push_back({e.y, e.w});
  return make_path_dist(j.y_space(), std::move(atoms));
}

PathDist x_marginal(const JointPathLaw& j) {
  std::vector<std::pair<Path, Rational>> atoms;
  for (const auto& e : j.support()) atoms.push_back({e.x, e.w});
  return make_path_dist(j.x_space(), std::move(atoms));
}

PrefixConditional prefix_conditional(const JointPathLaw& j, int n, const Path& y_full,
                                     Scope scope) {
  if (n < 1 || n > j.horizon()) throw ValidationError("prefix length out of range");
  if (static_cast<int>(y_full.size()) != j.horizon())
    throw ValidationError("conditioning path must be a full path");
  std::map<Path, Rational> acc;
  Rational total = 0;
  for (const auto& e : j.support()) {
    const bool match = scope == Scope::full_path
                           ? e.y == y_full
                           : std::equal(y_full.begin(), y_full.begin() + n, e.y.begin());
    if (!match) continue;
    acc[Path(e.x.begin(), e.x.begin() + n)] += e.w;
    total += e.w;
  }
  if (total == 0) throw NullPath("conditioning event has probability zero");
  PrefixConditional out;
  out.y_prefix.assign(y_full.begin(), y_full.begin() + n);
  for (auto& [prefix, w] : acc) out.dist.push_back({prefix, w / total});
  return out;
}

JointPathLaw push_adapted(const PathDist& mu, const AdaptedMap& f) {
  if (f.horizon() != mu.space.horizon())
    throw ValidationError("adapted map horizon does not match measure");
  std::vector<JointPathLaw::Entry> support;
  for (const auto& [y, w] : mu.atoms) support.push_back({y, f.apply(y), w});
  return JointPathLaw(mu.space, f.x_space, std::move(support));
}

bool is_adapted(const JointPathLaw& j) { return to_adapted_map(j).has_value(); }

std::optional<AdaptedMap> to_adapted_map(const JointPathLaw& j) {
  const int horizon = j.horizon();
  AdaptedMap map;
  map.x_space = j.x_space();
  map.steps.resize(horizon);
  // Unique x per y, and prefix-measurability: shared y-prefix means shared
  // x-prefix. Build the tables and detect conflicts in one pass.
  std::map<Path, Path> x_of_y;
  for (const auto& e : j.support()) {
    auto [it, fresh] = x_of_y.try_emplace(e.y, e.x);
    if (!fresh) return std::nullopt;  // two x-paths for one y-path
  }
  for (const auto& [y, x] : x_of_y) {
    for (int n = 1; n <= horizon; ++n) {
      Path prefix(y.begin(), y.begin() + n);
      auto [it, fresh] = map.steps[n - 1].try_emplace(prefix, x[n - 1]);
      if (!fresh && it->second != x[n - 1]) return std::nullopt;
    }
  }
  return map;
}

SpacePtr flatten_path_space(const PathSpace& ps, long cap) {
  std::vector<Atom> atoms;
  for (const Path& p : ps.all_paths(cap)) {
    Atom a;
    for (size_t n = 0; n < p.size(); ++n) {
      if (n) a.label += ".";
      a.label += ps.steps[n]->atom(p[n]).label;
    }
    a.coord = ps.coords(p);
    atoms.push_back(std::move(a));
  }
  return make_space(std::move(atoms), ps.dim());
}

namespace {

long flat_index(const PathSpace& ps, const Path& p) {
  long idx = 0;
  for (size_t n = 0; n < p.size(); ++n) idx = idx * ps.steps[n]->size() + p[n];
  return idx;
}

}  // namespace

Coupling to_coupling(const JointPathLaw& j, const SpacePtr& y_flat, const SpacePtr& x_flat) {
  std::vector<Coupling::Entry> entries;
  for (const auto& e : j.support())
    entries.push_back({static_cast<int>(flat_index(j.y_space(), e.y)),
                       static_cast<int>(flat_index(j.x_space(), e.x)), e.w});
  return Coupling(y_flat, x_flat, std::move(entries));
}

double joint_w1(const JointPathLaw& a, const JointPathLaw& b) {
  auto cloud = [](const JointPathLaw& j) {
    std::vector<WeightedAtom> out;
    for (const auto& e : j.support()) {
      std::vector<double> c = j.y_space().coords(e.y);
      std::vector<double> cx = j.x_space().coords(e.x);
      c.insert(c.end(), cx.begin(), cx.end());
      out.push_back({std::move(c), e.w});
    }
    return out;
  };
  return wasserstein1_points(cloud(a), cloud(b));
}

}  // namespace cotlab
