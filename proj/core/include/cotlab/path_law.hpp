#pragma once

#include <map>
#include <optional>

#include "cotlab/measure.hpp"

namespace cotlab {

/// A path is one atom index per step.
using Path = std::vector<int>;

/// Discrete-time path space: a per-step alphabet for each of N steps.
struct PathSpace {
  std::vector<SpacePtr> steps;

  int horizon() const { return static_cast<int>(steps.size()); }
  int dim() const;
  bool valid(const Path& p) const;
  long path_count() const;

  /// Concatenated ambient coordinates of a full path or prefix.
  std::vector<double> coords(const Path& p) const;

  /// All paths in lexicographic order; InstanceTooLarge over the cap.
  std::vector<Path> all_paths(long cap = 200000) const;
};

PathSpace iid_path_space(SpacePtr alphabet, int horizon);

/// Exact probability measure on the paths of a PathSpace.
struct PathDist {
  PathSpace space;
  std::vector<std::pair<Path, Rational>> atoms;  // lex-sorted, merged, positive

  Rational mass(const Path& p) const;
  Rational prefix_mass(const Path& prefix) const;
  /// Positive-mass prefixes of the given length, lex order.
  std::vector<Path> prefix_support(int length) const;
};

PathDist make_path_dist(PathSpace space, std::vector<std::pair<Path, Rational>> atoms);
PathDist uniform_path_dist(const PathSpace& space);

/// Joint law of (Y, X) on y-paths x x-paths over a shared horizon, stored as
/// a sparse support list. Weights are positive and sum to one; duplicate
/// (y, x) pairs are merged.
///
/// All conditioning throughout the library is against the full y-path and
/// its prefixes. Side information beyond the path itself can ride along as
/// extra components of the final y-step's alphabet.
class JointPathLaw {
 public:
  struct Entry {
    Path y;
    Path x;
    Rational w;

    bool operator==(const Entry& other) const {
      return y == other.y && x == other.x && w == other.w;
    }
  };

  JointPathLaw(PathSpace y_space, PathSpace x_space, std::vector<Entry> support);

  const PathSpace& y_space() const { return y_space_; }
  const PathSpace& x_space() const { return x_space_; }
  const std::vector<Entry>& support() const { return support_; }
  int horizon() const { return y_space_.horizon(); }

 private:
  PathSpace y_space_;
  PathSpace x_space_;
  std::vector<Entry> support_;
};

/// Per-step lookup tables x_n = f_n(y_1..y_n), defined on every prefix that
/// carries mass. Structurally adapted: step n reads only the length-n prefix.
struct AdaptedMap {
  PathSpace x_space;
  std::vector<std::map<Path, int>> steps;

  int horizon() const { return static_cast<int>(steps.size()); }
  int step(int n, const Path& y_prefix) const;  // n is 1-based
  Path apply(const Path& y) const;              // UndefinedPrefix if missing

  bool operator==(const AdaptedMap& other) const { return steps == other.steps; }
  bool operator<(const AdaptedMap& other) const { return steps < other.steps; }
};

/// Conditional law of an x-prefix given y-information.
struct PrefixConditional {
  Path y_prefix;
  std::vector<std::pair<Path, Rational>> dist;  // over x-prefixes, lex-sorted

  Rational mass(const Path& x_prefix) const;
};

/// Half the L1 distance between two conditionals over x-prefixes.
Rational total_variation(const PrefixConditional& a, const PrefixConditional& b);

enum class Scope { full_path, prefix };

PathDist y_marginal(const JointPathLaw& j);
PathDist x_marginal(const JointPathLaw& j);

/// Law of (x_1..x_n) given the full y-path (Scope::full_path) or given only
/// its length-n prefix (Scope::prefix). NullPath if the conditioning event
/// has no mass.
PrefixConditional prefix_conditional(const JointPathLaw& j, int n, const Path& y_full,
                                     Scope scope);

/// mu(dy) delta_{f(y)}(dx); the y-marginal is exactly mu.
JointPathLaw push_adapted(const PathDist& mu, const AdaptedMap& f);

/// True when J is concentrated on the graph of an adapted map.
bool is_adapted(const JointPathLaw& j);

/// Extracts that map; std::nullopt when not adapted.
std::optional<AdaptedMap> to_adapted_map(const JointPathLaw& j);

// --- flattening bridges ---------------------------------------------------

/// FiniteSpace whose atoms are all paths of the space, in lex order. Labels
/// join step labels with '.', coordinates concatenate.
SpacePtr flatten_path_space(const PathSpace& ps, long cap = 200000);

/// The joint law as a Coupling on flattened path spaces.
Coupling to_coupling(const JointPathLaw& j, const SpacePtr& y_flat, const SpacePtr& x_flat);

/// W1 between two joint laws over the same spaces, on concatenated ambient
/// coordinates (sum metric). No flattened space is materialized.
double joint_w1(const JointPathLaw& a, const JointPathLaw& b);

}  // namespace cotlab
