#pragma once

#include "cotlab/lp.hpp"
#include "cotlab/path_law.hpp"

namespace cotlab {

struct CheckWitness {
  int n = 0;
  Path y_path;
  Path x_prefix;
  std::string detail;
};

struct CheckResult {
  bool ok = true;
  Rational max_violation;
  CheckWitness witness;
};

/// Conditional-independence form: for every step n and positive-probability
/// y-path, the law of the x-prefix given the full path equals the law given
/// the length-n prefix. Violations in total variation.
CheckResult check_ci(const JointPathLaw& j, double tol = 0.0);

/// Martingale form: every closed martingale of a full-path atom indicator
/// keeps the one-step martingale property in the joint filtration.
CheckResult check_mgale(const JointPathLaw& j, double tol = 0.0);

/// Projection form: conditioning a terminal y-indicator on the joint
/// sigma-field adds nothing over conditioning on the y-prefix alone.
CheckResult check_proj(const JointPathLaw& j, double tol = 0.0);

/// Reverse form: for a joint-prefix indicator, conditioning on the y-prefix
/// equals conditioning on the full y-path.
CheckResult check_reverse(const JointPathLaw& j, double tol = 0.0);

/// The compatible polytope as equality rows over the variables P(y, x),
/// y in supp(mu), x ranging over all x-paths: marginal rows plus, for each
/// n < N, rows indexed by x-prefix, y-prefix and terminal test event (path
/// atoms and single-step cylinders; the cylinder rows are spanned by the
/// atom rows but make residuals directly interpretable).
struct CausalSystem {
  LinearSystem sys;
  PathSpace y_space;
  PathSpace x_space;
  std::vector<Path> y_paths;  // supp(mu), lex order
  std::vector<Path> x_paths;  // all x-paths, lex order

  int num_vars() const { return sys.num_vars; }
  int var(const Path& y, const Path& x) const;  // -1 when y carries no mass

  /// Support weights of J as a point of the variable space; ValidationError
  /// if J puts mass outside supp(mu).
  std::vector<Rational> embed(const JointPathLaw& j) const;

  /// Largest absolute row residual of the embedded law.
  Rational max_residual(const JointPathLaw& j) const;
};

CausalSystem causal_constraints(const PathDist& mu, const PathSpace& x_space);

}  // namespace cotlab
