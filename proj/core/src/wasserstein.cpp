#include "cotlab/wasserstein.hpp"

#include <algorithm>
#include <map>

#include "cotlab/transport_simplex.hpp"

namespace cotlab {

namespace {

constexpr long kExactSupportProduct = 4096;

// Merges duplicate coordinates, drops nulls, cancels mass shared between the
// two clouds (valid for a metric ground cost: some optimal plan keeps shared
// mass in place).
void cancel_common(std::vector<WeightedAtom>& mu, std::vector<WeightedAtom>& nu) {
  auto merge = [](std::vector<WeightedAtom>& cloud) {
    std::map<std::vector<double>, Rational> acc;
    for (WeightedAtom& a : cloud) acc[a.coord] += a.w;
    cloud.clear();
    for (auto& [coord, w] : acc)
      if (w > 0) cloud.push_back({coord, w});
  };
  merge(mu);
  merge(nu);
  auto it = mu.begin();
  auto jt = nu.begin();
  while (it != mu.end() && jt != nu.end()) {
    if (it->coord < jt->coord) ++it;
    else if (jt->coord < it->coord) ++jt;
    else {
      Rational common = std::min(it->w, jt->w);
      it->w -= common;
      jt->w -= common;
      ++it;
      ++jt;
    }
  }
  auto positive = [](const WeightedAtom& a) { return a.w > 0; };
  std::vector<WeightedAtom> mu2, nu2;
  std::copy_if(mu.begin(), mu.end(), std::back_inserter(mu2), positive);
  std::copy_if(nu.begin(), nu.end(), std::back_inserter(nu2), positive);
  mu = std::move(mu2);
  nu = std::move(nu2);
}

Rational coord_l1(const std::vector<double>& a, const std::vector<double>& b) {
  Rational d = 0;
  for (size_t k = 0; k < a.size(); ++k)
    d += rational_abs(rational_from_double(a[k]) - rational_from_double(b[k]));
  return d;
}

template <typename T>
T solve_clouds(const std::vector<WeightedAtom>& mu, const std::vector<WeightedAtom>& nu) {
  const int m = static_cast<int>(mu.size());
  const int n = static_cast<int>(nu.size());
  std::vector<T> supply(m), demand(n), cost(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    if constexpr (std::is_same_v<T, Rational>) supply[i] = mu[i].w;
    else supply[i] = to_double(mu[i].w);
  }
  for (int j = 0; j < n; ++j) {
    if constexpr (std::is_same_v<T, Rational>) demand[j] = nu[j].w;
    else demand[j] = to_double(nu[j].w);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if constexpr (std::is_same_v<T, Rational>) {
        cost[i * n + j] = coord_l1(mu[i].coord, nu[j].coord);
      } else {
        double d = 0;
        for (size_t k = 0; k < mu[i].coord.size(); ++k)
          d += std::abs(mu[i].coord[k] - nu[j].coord[k]);
        cost[i * n + j] = d;
      }
    }
  }
  TransportSimplex<T> solver(std::move(supply), std::move(demand), std::move(cost));
  return solver.solve().value;
}

std::vector<WeightedAtom> to_cloud(const DiscreteMeasure& mu) {
  std::vector<WeightedAtom> cloud;
  for (int i : mu.support()) cloud.push_back({mu.space()->atom(i).coord, mu.weight(i)});
  return cloud;
}

void check_dims(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.space()->dim() != nu.space()->dim())
    throw DimensionMismatch("ambient dimensions differ: " +
                            std::to_string(mu.space()->dim()) + " vs " +
                            std::to_string(nu.space()->dim()));
}

}  // namespace

double wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  check_dims(mu, nu);
  return wasserstein1_points(to_cloud(mu), to_cloud(nu));
}

Rational wasserstein1_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  check_dims(mu, nu);
  std::vector<WeightedAtom> a = to_cloud(mu), b = to_cloud(nu);
  cancel_common(a, b);
  if (a.empty()) return Rational(0);
  if (static_cast<long>(a.size()) * b.size() > kExactSupportProduct)
    throw InstanceTooLarge("exact W1 limited to support product " +
                           std::to_string(kExactSupportProduct));
  return solve_clouds<Rational>(a, b);
}

double wasserstein1_points(std::vector<WeightedAtom> mu, std::vector<WeightedAtom> nu) {
  cancel_common(mu, nu);
  if (mu.empty() && nu.empty()) return 0.0;
  if (mu.empty() != nu.empty())
    throw MassMismatch("point clouds have different total mass");
  if (!mu.empty() && mu[0].coord.size() != nu[0].coord.size())
    throw DimensionMismatch("point clouds have different ambient dimension");
  if (static_cast<long>(mu.size()) * nu.size() <= kExactSupportProduct)
    return to_double(solve_clouds<Rational>(mu, nu));
  return solve_clouds<double>(mu, nu);
}

}  // namespace cotlab
