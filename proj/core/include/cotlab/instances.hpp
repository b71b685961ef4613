#pragma once

#include "cotlab/extreme_points.hpp"
#include "cotlab/path_law.hpp"
#include "cotlab/rng.hpp"
#include "cotlab/stopping.hpp"

namespace cotlab::instances {

/// Canonical N=2 fair-coin instances used across tests and the suite.
PathSpace coin_paths(int horizon);
PathDist fair_coins(int horizon);

/// X copies Y step by step (adapted, diagonal).
JointPathLaw copy_law(int horizon);

/// x1 = y1, x2 = y1 xor y2 over fair coins (adapted, non-diagonal).
JointPathLaw xor_law();

/// x1 = x2 = y2 over fair coins: anticipative, fails every checker with
/// violation 1/2 at n = 1.
JointPathLaw anticipative_law();

/// Fair coins; X1 | y1 uniform, X2 = X1. Decomposes into two components.
JointPathLaw n2_copy_mixture();

/// Independent product of fair coins and a fixed two-path x-law.
JointPathLaw independent_coin_product(int horizon);

// --- randomized generators (deterministic in the seed) --------------------

/// k positive rationals with small numerators summing to one.
std::vector<Rational> random_simplex(SplitMix64& rng, int k);

/// Random support and weights over (y, x) path pairs; generically
/// incompatible.
JointPathLaw random_joint_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha);

/// Forward-kernel construction P(x_n | y^n, x^{n-1}): compatible by
/// construction.
JointPathLaw random_compatible_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha);

AdaptedMap random_adapted_map(SplitMix64& rng, const PathDist& mu, const PathSpace& x_space);

JointPathLaw random_adapted_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha);

/// Mixture of random adapted laws over a shared random mu.
JointPathLaw random_mixture_law(SplitMix64& rng, int horizon, int y_alpha, int x_alpha,
                                int components);

/// Dense random rational cost table over (y, x) paths.
PathObjective random_objective(SplitMix64& rng, const PathSpace& y_space,
                               const PathSpace& x_space, int lo = -9, int hi = 9);

/// Random probability measure with full support on a space.
DiscreteMeasure random_measure(SplitMix64& rng, SpacePtr space);

// --- stopping-time instances ----------------------------------------------

/// Stops at 1 with probability 1/2 when y1 is heads, else at 2 (fair coins).
RandomizedStoppingTime half_head_stop();

/// Uniform on {1, 2}, independent of the path (fair coins horizon 2).
RandomizedStoppingTime independent_uniform_stop();

/// Anticipative: stops at 1 iff y2 is heads.
RandomizedStoppingTime anticipative_stop();

/// Independent uniform{1,2} time over Y with m-atom first step (horizon 2);
/// the refinement family for the stopping experiments.
std::pair<RandomizedStoppingTime, PathDist> uniform_stop_family(int m);

}  // namespace cotlab::instances
