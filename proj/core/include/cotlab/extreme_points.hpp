#pragma once

#include <functional>

#include "cotlab/lp.hpp"
#include "cotlab/path_law.hpp"

namespace cotlab {

/// Convex mixture of adapted laws together with the u-intervals realizing it
/// through a single uniform variable: component i is active on [lo_i, hi_i),
/// weight = interval length.
struct MixtureComponent {
  Rational weight;
  AdaptedMap map;
};

struct MixtureDecomposition {
  std::vector<MixtureComponent> components;
  std::vector<std::pair<Rational, Rational>> u_intervals;
};

/// Writes a compatible law as a finite mixture of adapted laws by the
/// stepwise inverse-CDF construction: intervals of [0,1) split at the
/// conditional CDF of X_n given (y-prefix, x-prefix chosen so far), x-atoms
/// assigned in canonical order. Recomposition is exact. NotCompatible when
/// the conditional-independence check fails.
///
/// The construction is inherently discrete-time: each step consumes the
/// compatibility of the conditioning event it splits on, and the induction
/// has no continuous-time counterpart. Compatibility is checked up front
/// rather than assumed.
MixtureDecomposition decompose_compatible(const JointPathLaw& j);

/// Sum of weight_i * push_adapted(mu, f_i); duplicates merged, exact.
JointPathLaw recompose(const MixtureDecomposition& d, const PathDist& mu);

using PathObjective = std::function<Rational(const Path& y, const Path& x)>;

/// Every adapted map on the prefixes of supp(mu); InstanceTooLarge above cap.
std::vector<AdaptedMap> enumerate_adapted_maps(const PathDist& mu, const PathSpace& x_space,
                                               long cap = 200000);

struct LinearOptResult {
  Rational value;
  AdaptedMap map;
};

/// Brute-force optimum of a linear objective over adapted laws. Serves as
/// the independent oracle for the causal LP.
LinearOptResult linear_opt_via_extremes(const PathDist& mu, const PathSpace& x_space,
                                        const PathObjective& objective,
                                        Sense sense = Sense::maximize, long cap = 200000);

}  // namespace cotlab
