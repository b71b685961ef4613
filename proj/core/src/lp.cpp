#include "cotlab/lp.hpp"

namespace cotlab {

std::vector<Rational> residuals(const LinearSystem& sys, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != sys.num_vars)
    throw ShapeMismatch("candidate point has wrong dimension");
  std::vector<Rational> out;
  out.reserve(sys.rows.size());
  for (const LinearRow& row : sys.rows) {
    Rational lhs = 0;
    for (const auto& [var, coeff] : row.coeffs) lhs += coeff * x.at(var);
    out.push_back(lhs - row.rhs);
  }
  return out;
}

Rational max_abs_residual(const LinearSystem& sys, const std::vector<Rational>& x) {
  Rational best = 0;
  for (const Rational& r : residuals(sys, x)) best = std::max(best, rational_abs(r));
  return best;
}

namespace {

template <typename T>
LpResult run(const LinearSystem& sys, const std::vector<Rational>& objective, Sense sense) {
  const int n = sys.num_vars;
  const int m = static_cast<int>(sys.rows.size());
  std::vector<std::vector<T>> a(m, std::vector<T>(n, T(0)));
  std::vector<T> b(m, T(0));
  std::vector<T> c(n, T(0));
  for (int i = 0; i < m; ++i) {
    for (const auto& [var, coeff] : sys.rows[i].coeffs) {
      if constexpr (std::is_same_v<T, Rational>) a[i][var] += coeff;
      else a[i][var] += to_double(coeff);
    }
    if constexpr (std::is_same_v<T, Rational>) b[i] = sys.rows[i].rhs;
    else b[i] = to_double(sys.rows[i].rhs);
  }
  const int sign = sense == Sense::maximize ? -1 : 1;
  for (int j = 0; j < n; ++j) {
    if constexpr (std::is_same_v<T, Rational>) c[j] = sign * objective[j];
    else c[j] = sign * to_double(objective[j]);
  }
  detail::Simplex<T> simplex(std::move(a), std::move(b), std::move(c));
  auto [value, x] = simplex.solve();
  LpResult result;
  if constexpr (std::is_same_v<T, Rational>) {
    result.value = sign * value;
    result.solution = std::move(x);
  } else {
    result.value = rational_from_double(sign * value);
    result.solution.reserve(x.size());
    for (double v : x) result.solution.push_back(rational_from_double(v));
  }
  return result;
}

}  // namespace

LpResult lp_solve(const LinearSystem& sys, const std::vector<Rational>& objective,
                  Sense sense, LpMode mode) {
  if (static_cast<int>(objective.size()) != sys.num_vars)
    throw ShapeMismatch("objective has wrong dimension");
  return mode == LpMode::exact ? run<Rational>(sys, objective, sense)
                               : run<double>(sys, objective, sense);
}

}  // namespace cotlab
