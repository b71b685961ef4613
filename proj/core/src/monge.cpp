#include "cotlab/monge.hpp"

#include <algorithm>

#include "cotlab/errors.hpp"

namespace cotlab {

const std::vector<std::pair<int, int>>& CellTransport::require() const {
  if (!ok()) {
    std::string atoms;
    for (int b : split.boundary_atoms) atoms += " " + std::to_string(b);
    throw NotRepresentable("no exact assignment; straddling atoms:" + atoms);
  }
  return *assignment;
}

CellTransport cell_transport(const SubMeasure& mu_cell, const SubMeasure& nu_tilde) {
  if (mu_cell.total() != nu_tilde.total())
    throw MassMismatch("cell mass " + mu_cell.total().str() + " vs target mass " +
                       nu_tilde.total().str());
  CellTransport result;
  std::vector<std::pair<int, int>> assignment;
  SplitPlan plan;

  // Cumulative target intervals [starts[t], starts[t+1]).
  std::vector<Rational> starts{Rational(0)};
  for (const auto& [idx, w] : nu_tilde.atoms) {
    if (w <= 0) throw ValidationError("target atoms must carry positive mass");
    starts.push_back(starts.back() + w);
  }

  Rational cum = 0;
  size_t t = 0;
  for (const auto& [idx, w] : mu_cell.atoms) {
    if (w <= 0) throw ValidationError("source atoms must carry positive mass");
    const Rational hi = cum + w;
    while (t + 1 < starts.size() && starts[t + 1] <= cum) ++t;
    if (hi <= starts[t + 1]) {
      assignment.push_back({idx, nu_tilde.atoms[t].first});
    } else {
      plan.boundary_atoms.push_back(idx);
    }
    cum = hi;
  }
  if (plan.boundary_atoms.empty())
    result.assignment = std::move(assignment);
  else
    result.split = std::move(plan);
  return result;
}

MongeApproximation monge_approximate(const Coupling& p, const PartitionSequence& parts,
                                     int level) {
  if (parts.base_space.get() != p.row_space().get())
    throw ShapeMismatch("partition sequence built for a different space");
  if (level < 0 || level >= parts.num_levels())
    throw ValidationError("partition level out of range");

  const DiscreteMeasure mu = marginal(p, Axis::row);
  const int m = mu.size();
  const auto& cells = parts.cells(level);

  std::vector<int> cell_of(m, -1);
  for (int c = 0; c < static_cast<int>(cells.size()); ++c)
    for (int atom : cells[c]) cell_of[atom] = c;

  // Cell target measures nu_i(.) = P(A_i x .).
  std::vector<std::vector<Rational>> cell_target(
      cells.size(), std::vector<Rational>(p.col_space()->size(), Rational(0)));
  for (const Coupling::Entry& e : p.entries()) cell_target[cell_of[e.row]][e.col] += e.w;

  std::vector<int> targets(m, -1);
  for (size_t c = 0; c < cells.size(); ++c) {
    SubMeasure sources{p.row_space(), {}};
    for (int atom : cells[c])
      if (mu.weight(atom) > 0) sources.atoms.push_back({atom, mu.weight(atom)});
    if (sources.atoms.empty()) continue;
    SubMeasure targets_cell{p.col_space(), {}};
    for (int j = 0; j < p.col_space()->size(); ++j)
      if (cell_target[c][j] > 0) targets_cell.atoms.push_back({j, cell_target[c][j]});
    CellTransport ct = cell_transport(sources, targets_cell);
    try {
      for (const auto& [src, dst] : ct.require()) targets[src] = dst;
    } catch (const NotRepresentable& e) {
      throw GranularityError("cell " + std::to_string(c) + " at level " +
                             std::to_string(level) + ": " + e.what() +
                             " (refine the row grid)");
    }
  }

  // Null atoms take the nearest assigned target in atom order.
  int last = -1;
  for (int i = 0; i < m; ++i) {
    if (targets[i] >= 0) last = targets[i];
    else if (last >= 0) targets[i] = last;
  }
  for (int i = m - 1; i >= 0; --i) {
    if (targets[i] >= 0) last = targets[i];
    else targets[i] = last;
  }

  Coupling approx = Coupling::from_map(mu, p.col_space(), targets);
  return MongeApproximation{MongeMap{p.row_space(), p.col_space(), std::move(targets)},
                            std::move(approx), level};
}

MongeMap one_marginal_approx(const Coupling& p, int level) {
  return monge_approximate(p, dyadic_partitions(p.row_space()), level).map;
}

}  // namespace cotlab
