#pragma once

#include <optional>

#include "cotlab/measure.hpp"
#include "cotlab/partition.hpp"

namespace cotlab {

/// Total map between atom sets; the graph coupling mu(dx) delta_{phi(x)}(dy).
struct MongeMap {
  SpacePtr from_space;
  SpacePtr to_space;
  std::vector<int> targets;  // one target atom per source atom

  int operator()(int source) const { return targets.at(source); }
};

/// Sub-probability mass on selected atoms of a space; sorted by atom index.
struct SubMeasure {
  SpacePtr space;
  std::vector<std::pair<int, Rational>> atoms;

  Rational total() const {
    Rational t = 0;
    for (const auto& [idx, w] : atoms) t += w;
    return t;
  }
};

/// Atoms whose mass would have to be split for an exact assignment to exist;
/// refining the source grid removes the obstruction.
struct SplitPlan {
  std::vector<int> boundary_atoms;
};

struct CellTransport {
  std::optional<std::vector<std::pair<int, int>>> assignment;  // (source, target)
  SplitPlan split;

  bool ok() const { return assignment.has_value(); }
  /// The assignment, or NotRepresentable naming the straddling atoms.
  const std::vector<std::pair<int, int>>& require() const;
};

/// Quantile (sorted-order) pairing of a cell measure onto a target measure
/// of equal total mass. Exact when every source atom's cumulative interval
/// fits inside one target interval; otherwise reports the straddling atoms.
/// MassMismatch when totals differ.
CellTransport cell_transport(const SubMeasure& mu_cell, const SubMeasure& nu_tilde);

struct MongeApproximation {
  MongeMap map;
  Coupling coupling;  // P_k = mu o (id, map)^-1
  int level;
};

/// Partition-refinement construction: per level-k cell, pushes the cell's
/// share of mu onto the cell target measure P(A x .) by quantile assignment.
/// The result agrees with P on sigma(level-k cells) x (everything), and has
/// exactly the marginals of P. GranularityError when a cell measure is not
/// exactly representable; refining the row grid resolves it.
MongeApproximation monge_approximate(const Coupling& p, const PartitionSequence& parts,
                                     int level);

/// Same construction against P's own column marginal; returns only the map.
MongeMap one_marginal_approx(const Coupling& p, int level);

}  // namespace cotlab
