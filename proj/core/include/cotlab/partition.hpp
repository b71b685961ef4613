#pragma once

#include "cotlab/space.hpp"

namespace cotlab {

/// Nested partitions of the atom index range. Cells are contiguous index
/// ranges in atom order, each level refines the previous, and the final
/// level separates all atoms.
struct PartitionSequence {
  SpacePtr base_space;
  std::vector<std::vector<std::vector<int>>> levels;

  int num_levels() const { return static_cast<int>(levels.size()); }
  int top_level() const { return num_levels() - 1; }
  const std::vector<std::vector<int>>& cells(int level) const { return levels.at(level); }
};

/// Successive halving: cell of size s splits into ceil(s/2) + floor(s/2).
/// Level 0 is the trivial partition, the last level is all singletons.
PartitionSequence dyadic_partitions(SpacePtr space);

/// Checks the refinement invariants; ValidationError on violation.
void validate_partitions(const PartitionSequence& parts);

}  // namespace cotlab
