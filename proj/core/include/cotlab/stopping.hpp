#pragma once

#include <limits>

#include "cotlab/path_law.hpp"

namespace cotlab {

/// Times live on {1..N, infinity}; infinity is a first-class atom.
constexpr int kTimeInfinity = std::numeric_limits<int>::max();

/// Bounded embedding t -> t/(1+t), infinity -> 1; the ambient coordinate
/// used for W1 on times.
double time_coord(int t);

/// Kernel from y-paths to distributions on the time grid. Row vectors have
/// length N+1: slots 0..N-1 carry times 1..N, slot N carries infinity.
/// On a discrete time grid the right-continuous enlargement of a filtration
/// is the filtration itself, so there is a single membership notion here.
struct RandomizedStoppingTime {
  PathSpace y_space;
  std::map<Path, std::vector<Rational>> kernel;

  int horizon() const { return y_space.horizon(); }
  /// CDF of the row at time t (1..N).
  Rational cdf(const Path& y, int t) const;
  void validate() const;  // rows normalized, nonnegative, right length
};

/// Pure stopping time: a rule y-path -> time, prefix-measurable.
struct StoppingTime {
  PathSpace y_space;
  std::map<Path, int> rule;

  int at(const Path& y) const;
};

/// Point-mass kernel of a pure stopping time.
RandomizedStoppingTime lift_stopping(const StoppingTime& st, const PathDist& mu);

struct RstCheck {
  bool ok = true;
  Rational max_violation;
  int t = 0;
  Path witness_prefix;
};

/// The defining property at desk scale: for each t, the kernel CDF at t is
/// constant across full paths sharing the length-t prefix. Violation = the
/// largest spread.
RstCheck is_randomized_st(const RandomizedStoppingTime& tau, const PathDist& mu,
                          double tol = 0.0);

/// Prefix-measurability of a pure rule: within a length-n prefix class,
/// either every path stops at the same time <= n or none has stopped yet.
bool is_stopping_time(const StoppingTime& st, const PathDist& mu);

/// Quantile decomposition: partition [0,1) at the union of all kernel-CDF
/// breakpoints; on each piece u -> inf{t : CDF(t) >= u} is a single pure
/// rule. Reconstructs every kernel CDF exactly. NotRandomizedST when the
/// input fails is_randomized_st.
std::vector<std::pair<Rational, StoppingTime>> decompose_stopping(
    const RandomizedStoppingTime& tau, const PathDist& mu);

/// Joint law of (Y, H) with H_t = 1{tau <= t}; x-alphabet {0,1} per step.
JointPathLaw indicator_process(const RandomizedStoppingTime& tau, const PathDist& mu);

/// First index (1-based) with value >= 1/2, else infinity.
int first_crossing(const std::vector<Rational>& h);

struct StoppingApprox {
  StoppingTime st;
  double w1_gap;  // between the joint laws of (Y, st) and (Y, tau)
};

/// Runs the adapted-process engine on the indicator process and thresholds
/// the result through first_crossing. Pure inputs come back unchanged.
StoppingApprox approximate_stopping(const RandomizedStoppingTime& tau, const PathDist& mu);

}  // namespace cotlab
