#include "cotlab/compatibility.hpp"

#include <algorithm>

#include "cotlab/errors.hpp"

namespace cotlab {

namespace {

bool below_tol(const Rational& violation, double tol) {
  return tol == 0.0 ? violation == 0 : violation <= rational_from_double(tol);
}

void finish(CheckResult& r, double tol) { r.ok = below_tol(r.max_violation, tol); }

Path prefix_of(const Path& p, int n) { return Path(p.begin(), p.begin() + n); }

// Grouping of the support by (y-prefix, x-prefix) of length n.
struct JointAtoms {
  std::map<std::pair<Path, Path>, std::vector<const JointPathLaw::Entry*>> groups;
  std::map<std::pair<Path, Path>, Rational> mass;
};

JointAtoms group_by_joint_prefix(const JointPathLaw& j, int n) {
  JointAtoms atoms;
  for (const auto& e : j.support()) {
    auto key = std::make_pair(prefix_of(e.y, n), prefix_of(e.x, n));
    atoms.groups[key].push_back(&e);
    atoms.mass[key] += e.w;
  }
  return atoms;
}

}  // namespace

CheckResult check_ci(const JointPathLaw& j, double tol) {
  CheckResult result;
  result.max_violation = 0;
  const PathDist mu = y_marginal(j);
  for (int n = 1; n <= j.horizon(); ++n) {
    for (const auto& [y, w] : mu.atoms) {
      PrefixConditional full = prefix_conditional(j, n, y, Scope::full_path);
      PrefixConditional pref = prefix_conditional(j, n, y, Scope::prefix);
      Rational tv = total_variation(full, pref);
      if (tv > result.max_violation) {
        result.max_violation = tv;
        result.witness = {n, y, {}, "TV(full-path vs prefix conditional)"};
      }
    }
  }
  finish(result, tol);
  return result;
}

CheckResult check_mgale(const JointPathLaw& j, double tol) {
  CheckResult result;
  result.max_violation = 0;
  const PathDist mu = y_marginal(j);
  const int horizon = j.horizon();
  for (int n = 1; n < horizon; ++n) {
    JointAtoms atoms = group_by_joint_prefix(j, n);
    for (const auto& [key, entries] : atoms.groups) {
      const auto& [p, q] = key;
      const Rational denom = atoms.mass.at(key);
      const Rational mu_p = mu.prefix_mass(p);
      for (const auto& [target, w_target] : mu.atoms) {
        // One-step property: E[M_{n+1} | G_n] == M_n for the closed
        // martingale M_k = mu(Y = target | Y^k).
        if (!std::equal(p.begin(), p.end(), target.begin())) continue;
        const Path ext = prefix_of(target, n + 1);
        const Rational mu_ext = mu.prefix_mass(ext);
        Rational expectation = 0;
        for (const JointPathLaw::Entry* e : entries) {
          if (prefix_of(e->y, n + 1) == ext) expectation += e->w * (w_target / mu_ext);
        }
        expectation /= denom;
        const Rational m_n = w_target / mu_p;
        const Rational diff = rational_abs(expectation - m_n);
        if (diff > result.max_violation) {
          result.max_violation = diff;
          result.witness = {n, target, q, "one-step martingale property"};
        }
      }
    }
  }
  finish(result, tol);
  return result;
}

CheckResult check_proj(const JointPathLaw& j, double tol) {
  CheckResult result;
  result.max_violation = 0;
  const PathDist mu = y_marginal(j);
  for (int n = 1; n <= j.horizon(); ++n) {
    JointAtoms atoms = group_by_joint_prefix(j, n);
    for (const auto& [key, entries] : atoms.groups) {
      const auto& [p, q] = key;
      const Rational denom = atoms.mass.at(key);
      const Rational mu_p = mu.prefix_mass(p);
      for (const auto& [target, w_target] : mu.atoms) {
        if (!std::equal(p.begin(), p.end(), target.begin())) continue;
        // E[1{Y=target} | G_n] vs E[1{Y=target} | F^Y_n].
        Rational joint = 0;
        for (const JointPathLaw::Entry* e : entries)
          if (e->y == target) joint += e->w;
        const Rational diff = rational_abs(joint / denom - w_target / mu_p);
        if (diff > result.max_violation) {
          result.max_violation = diff;
          result.witness = {n, target, q, "projection onto the joint filtration"};
        }
      }
    }
  }
  finish(result, tol);
  return result;
}

CheckResult check_reverse(const JointPathLaw& j, double tol) {
  CheckResult result;
  result.max_violation = 0;
  const PathDist mu = y_marginal(j);
  for (int n = 1; n <= j.horizon(); ++n) {
    JointAtoms atoms = group_by_joint_prefix(j, n);
    for (const auto& [key, entries] : atoms.groups) {
      const auto& [p, q] = key;
      // Indicator of the joint atom (Y^n = p, X^n = q):
      // E[. | F^Y_n] == mass(p, q) / mu(p) on {Y^n = p};
      // E[. | F^Y_N](y) == P(X^n = q | Y = y).
      const Rational via_prefix = atoms.mass.at(key) / mu.prefix_mass(p);
      for (const auto& [y, w_y] : mu.atoms) {
        if (!std::equal(p.begin(), p.end(), y.begin())) continue;
        Rational joint = 0;
        for (const JointPathLaw::Entry* e : entries)
          if (e->y == y) joint += e->w;
        const Rational diff = rational_abs(joint / w_y - via_prefix);
        if (diff > result.max_violation) {
          result.max_violation = diff;
          result.witness = {n, y, q, "terminal vs step conditioning"};
        }
      }
    }
  }
  finish(result, tol);
  return result;
}

// ---------------------------------------------------------------------------
// Constraint emission
// ---------------------------------------------------------------------------

namespace {

std::vector<Path> all_prefixes(const PathSpace& space, int n) {
  PathSpace truncated{std::vector<SpacePtr>(space.steps.begin(), space.steps.begin() + n)};
  return truncated.all_paths();
}

std::string path_str(const Path& p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

}  // namespace

int CausalSystem::var(const Path& y, const Path& x) const {
  auto it = std::lower_bound(y_paths.begin(), y_paths.end(), y);
  if (it == y_paths.end() || *it != y) return -1;
  auto jt = std::lower_bound(x_paths.begin(), x_paths.end(), x);
  const long yi = it - y_paths.begin();
  const long xi = jt - x_paths.begin();
  return static_cast<int>(yi * static_cast<long>(x_paths.size()) + xi);
}

std::vector<Rational> CausalSystem::embed(const JointPathLaw& j) const {
  std::vector<Rational> x(sys.num_vars, Rational(0));
  for (const auto& e : j.support()) {
    const int idx = var(e.y, e.x);
    if (idx < 0)
      throw ValidationError("law puts mass on a y-path outside supp(mu): " + path_str(e.y));
    x[idx] += e.w;
  }
  return x;
}

Rational CausalSystem::max_residual(const JointPathLaw& j) const {
  return max_abs_residual(sys, embed(j));
}

CausalSystem causal_constraints(const PathDist& mu, const PathSpace& x_space) {
  CausalSystem cs;
  cs.y_space = mu.space;
  cs.x_space = x_space;
  for (const auto& [y, w] : mu.atoms) cs.y_paths.push_back(y);
  cs.x_paths = x_space.all_paths();
  const long vars = static_cast<long>(cs.y_paths.size()) * cs.x_paths.size();
  if (vars > 2000000) throw InstanceTooLarge("causal system has too many variables");
  cs.sys.num_vars = static_cast<int>(vars);

  const int horizon = mu.space.horizon();

  // (a) fixed y-marginal.
  for (size_t yi = 0; yi < cs.y_paths.size(); ++yi) {
    LinearRow row;
    row.rhs = mu.atoms[yi].second;
    row.label = "marginal y=" + path_str(cs.y_paths[yi]);
    for (size_t xi = 0; xi < cs.x_paths.size(); ++xi)
      row.coeffs.push_back({static_cast<int>(yi * cs.x_paths.size() + xi), Rational(1)});
    cs.sys.rows.push_back(std::move(row));
  }

  // (b) causality rows for each step n < N.
  for (int n = 1; n < horizon; ++n) {
    const std::vector<Path> x_prefixes = all_prefixes(x_space, n);
    const std::vector<Path> y_prefixes = mu.prefix_support(n);

    // Conditional terminal laws g_n(. | p) under mu.
    std::map<Path, Rational> mu_prefix;
    for (const Path& p : y_prefixes) mu_prefix[p] = mu.prefix_mass(p);

    for (const Path& q : x_prefixes) {
      auto matches_q = [&](const Path& x) {
        return std::equal(q.begin(), q.end(), x.begin());
      };
      for (const Path& p : y_prefixes) {
        // g ranges over full-path atom indicators.
        for (const auto& [target, w_target] : mu.atoms) {
          const bool target_in_p = std::equal(p.begin(), p.end(), target.begin());
          const Rational g_n = target_in_p ? w_target / mu_prefix[p] : Rational(0);
          LinearRow row;
          row.rhs = 0;
          row.label = "causal n=" + std::to_string(n) + " x<=" + path_str(q) +
                      " y<=" + path_str(p) + " g=atom(" + path_str(target) + ")";
          for (size_t yi = 0; yi < cs.y_paths.size(); ++yi) {
            const Path& y = cs.y_paths[yi];
            if (!std::equal(p.begin(), p.end(), y.begin())) continue;
            const Rational coeff = (y == target ? Rational(1) : Rational(0)) - g_n;
            if (coeff == 0) continue;
            for (size_t xi = 0; xi < cs.x_paths.size(); ++xi) {
              if (!matches_q(cs.x_paths[xi])) continue;
              row.coeffs.push_back(
                  {static_cast<int>(yi * cs.x_paths.size() + xi), coeff});
            }
          }
          if (!row.coeffs.empty()) cs.sys.rows.push_back(std::move(row));
        }
      }

      // g ranges over future single-step cylinders {Y_k = b}, tested
      // against the trivial y-prefix event.
      for (int k = n + 1; k <= horizon; ++k) {
        for (int b = 0; b < mu.space.steps[k - 1]->size(); ++b) {
          LinearRow row;
          row.rhs = 0;
          row.label = "causal n=" + std::to_string(n) + " x<=" + path_str(q) +
                      " g=cyl(Y" + std::to_string(k) + "=" + std::to_string(b) + ")";
          for (size_t yi = 0; yi < cs.y_paths.size(); ++yi) {
            const Path& y = cs.y_paths[yi];
            const Path p = prefix_of(y, n);
            Rational g_cond = 0;  // mu(Y_k = b | Y^n = p)
            for (const auto& [other, w_other] : mu.atoms)
              if (std::equal(p.begin(), p.end(), other.begin()) && other[k - 1] == b)
                g_cond += w_other;
            g_cond /= mu.prefix_mass(p);
            const Rational coeff = (y[k - 1] == b ? Rational(1) : Rational(0)) - g_cond;
            if (coeff == 0) continue;
            for (size_t xi = 0; xi < cs.x_paths.size(); ++xi) {
              if (!matches_q(cs.x_paths[xi])) continue;
              row.coeffs.push_back(
                  {static_cast<int>(yi * cs.x_paths.size() + xi), coeff});
            }
          }
          if (!row.coeffs.empty()) cs.sys.rows.push_back(std::move(row));
        }
      }
    }
  }
  return cs;
}

}  // namespace cotlab
