#pragma once

#include <functional>

#include "cotlab/monge.hpp"
#include "cotlab/path_law.hpp"

namespace cotlab {

/// Per-step partition depth fed to the one-step lifts. kAuto picks the
/// deepest level that is exactly representable.
struct Schedule {
  static constexpr int kAuto = -1;
  std::vector<int> levels;

  static Schedule automatic(int horizon) { return {std::vector<int>(horizon, kAuto)}; }
  static Schedule fixed(std::vector<int> levels) { return {std::move(levels)}; }
};

/// Result of lifting step n: a total-on-support map from conditioning atoms
/// (y-prefix of length n, x-prefix of length n-1, lex ordered y-major) to
/// the step-n x-alphabet, built by quantile assignment on partition cells.
struct StepLift {
  std::vector<std::pair<Path, Path>> conditioning;
  std::vector<int> targets;
  int level_used = 0;
  Rational step_gap;   // stable gap between the step law and its lift
  Rational osc_bound;  // cell-mass bound dominating step_gap

  /// Value at a query; off-support queries take the nearest conditioning
  /// atom at or below in lex order (wrapping to the first atom).
  int lookup(const Path& y_prefix, const Path& x_prefix) const;
};

/// Monge-izes the conditional law of X_n given (Y^n, X^{n-1}) under J at the
/// requested partition level of the conditioning space. GranularityError
/// when no exact assignment exists at that level.
StepLift one_step_lift(const JointPathLaw& j, int step, int level = Schedule::kAuto);

struct AdaptedResult {
  AdaptedMap map;
  JointPathLaw law;
  Rational stable_gap;  // against J, default joint family
  double w1_gap;        // against J, concatenated ambient coordinates
  Rational max_osc_bound;
  std::vector<StepLift> lifts;
};

/// Inductive construction of an adapted process approximating a compatible
/// law: each step's conditional kernel is lifted to a map, composed with the
/// maps already built. NotCompatible exactly when check_ci fails.
AdaptedResult approximate_adapted(const JointPathLaw& j, const Schedule& schedule);

struct ConvergenceRow {
  int m;
  Rational stable_gap;
  double w1_gap;
  Rational osc_bound;
};

/// Runs the engine on a refinement family: the instance at each m comes from
/// the generator, never from re-gridding an arbitrary law.
std::vector<ConvergenceRow> convergence_report(
    const std::function<JointPathLaw(int)>& family, const std::vector<int>& m_list,
    const Schedule* schedule = nullptr);

/// Documented instance family: Y i.i.d. uniform on m atoms per step, X an
/// independent path law uniform on two constant paths; horizon 2.
JointPathLaw independent_product_instance(int m);

}  // namespace cotlab
