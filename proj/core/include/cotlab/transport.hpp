#pragma once

#include <optional>

#include "cotlab/compatibility.hpp"
#include "cotlab/extreme_points.hpp"
#include "cotlab/monge.hpp"
#include "cotlab/wasserstein.hpp"

namespace cotlab {

/// Pairwise ground costs between two spaces' atoms (L1 on coordinates).
std::vector<std::vector<Rational>> l1_cost(const FiniteSpace& x, const FiniteSpace& y);

struct KantorovichResult {
  Rational value;
  Coupling plan;
};

/// Optimal transport over the two-marginal polytope, via lp_solve. Costs are
/// indexed by full atom indices of each space.
KantorovichResult kantorovich(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const std::vector<std::vector<Rational>>& cost,
                              Sense sense = Sense::minimize, LpMode mode = LpMode::exact);

struct MongeSearchResult {
  std::optional<MongeMap> map;  // empty when no mass-preserving map exists
  Rational value;

  bool feasible() const { return map.has_value(); }
};

/// Exhaustive minimum over maps pushing mu onto nu exactly. The Monge set
/// may be empty (atom granularity); that is reported, not thrown.
/// InstanceTooLarge above cap candidate maps.
MongeSearchResult monge_bruteforce(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   const std::vector<std::vector<Rational>>& cost,
                                   long cap = 1 << 20);

enum class GapFamily { diagonal, independent, granularity };

struct GapRow {
  int m;
  Rational kantorovich_value;
  bool monge_feasible;
  Rational monge_value;
  Rational gap;
};

/// Kantorovich-vs-Monge values along a refinement family (L1 cost):
///  - diagonal: mu = nu = uniform on m grid atoms;
///  - independent: mu uniform on m grid atoms, nu uniform on two atoms;
///  - granularity: mu uniform on m, nu = (1/4, 3/4) on two atoms.
std::vector<GapRow> monge_gap_study(GapFamily family, const std::vector<int>& m_list);

struct CausalValueResult {
  Rational value;
  JointPathLaw law;
};

/// LP over the compatible polytope for a linear path objective.
CausalValueResult causal_value(const PathDist& mu, const PathSpace& x_space,
                               const PathObjective& cost, Sense sense = Sense::minimize,
                               LpMode mode = LpMode::exact);

/// Same objective over the unconstrained one-marginal polytope Pi(mu): the
/// per-path optimum of the cost, averaged.
Rational unconstrained_value(const PathDist& mu, const PathSpace& x_space,
                             const PathObjective& cost, Sense sense = Sense::minimize);

/// Causal transport with both marginals fixed: the compatible polytope
/// intersected with {x-marginal = nu}. Always feasible (the product coupling
/// qualifies). The adapted side is the brute-force optimum over adapted maps
/// pushing mu exactly onto nu; it can be empty, and no relation between the
/// two values beyond the subset inequality is claimed.
struct TwoMarginalResult {
  Rational lp_value;
  JointPathLaw lp_law;
  bool adapted_feasible = false;
  Rational adapted_value;
};

TwoMarginalResult causal_two_marginal(const PathDist& mu, const PathDist& nu,
                                      const PathObjective& cost,
                                      Sense sense = Sense::minimize,
                                      LpMode mode = LpMode::exact, long cap = 200000);

/// Finite controlled model: noise law on y-paths, per-step action alphabets,
/// a cost table, and the functional applied to the joint law.
struct ControlModel {
  enum class Kind { linear, expected_cost_squared, variance_penalized, target_tracking };

  PathDist noise;
  PathSpace action_space;
  PathObjective cost;
  Kind kind = Kind::linear;
  Rational param;  // penalty (variance_penalized) or target (target_tracking)
};

struct ControlValues {
  Rational relaxed;  // over the compatible polytope
  Rational pure;     // brute force over adapted maps
  Rational gap;      // relaxed - pure
};

/// Linear objectives: LP vs enumeration, gap exactly zero. Nonlinear
/// functionals: vertices plus a documented pairwise-mixture grid (step 1/64)
/// on the relaxed side; the gap is reported, never forced to zero.
ControlValues control_values(const ControlModel& model, long cap = 200000);

}  // namespace cotlab
