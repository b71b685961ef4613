#include "cotlab/partition.hpp"

#include "cotlab/errors.hpp"

namespace cotlab {

PartitionSequence dyadic_partitions(SpacePtr space) {
  PartitionSequence parts;
  parts.base_space = space;
  const int m = space->size();
  std::vector<std::vector<int>> level;
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  level.push_back(all);
  parts.levels.push_back(level);
  while (true) {
    bool all_singletons = true;
    for (const auto& cell : parts.levels.back())
      if (cell.size() > 1) all_singletons = false;
    if (all_singletons) break;
    std::vector<std::vector<int>> next;
    for (const auto& cell : parts.levels.back()) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      const size_t first = (cell.size() + 1) / 2;  // ceil
      next.emplace_back(cell.begin(), cell.begin() + first);
      next.emplace_back(cell.begin() + first, cell.end());
    }
    parts.levels.push_back(std::move(next));
  }
  return parts;
}

void validate_partitions(const PartitionSequence& parts) {
  if (!parts.base_space) throw ValidationError("partition sequence has no base space");
  const int m = parts.base_space->size();
  if (parts.levels.empty()) throw ValidationError("partition sequence has no levels");
  for (int k = 0; k < parts.num_levels(); ++k) {
    int expect = 0;
    for (const auto& cell : parts.cells(k)) {
      if (cell.empty()) throw ValidationError("empty partition cell");
      for (int idx : cell) {
        if (idx != expect++) throw ValidationError("cells must be contiguous in atom order");
      }
    }
    if (expect != m) throw ValidationError("partition does not cover the space");
  }
  // Each level refines the previous: cell boundaries are preserved.
  for (int k = 1; k < parts.num_levels(); ++k) {
    size_t coarse = 0;
    int remaining = static_cast<int>(parts.cells(k - 1)[0].size());
    for (const auto& cell : parts.cells(k)) {
      if (static_cast<int>(cell.size()) > remaining)
        throw ValidationError("level does not refine the previous one");
      remaining -= static_cast<int>(cell.size());
      if (remaining == 0 && ++coarse < parts.cells(k - 1).size())
        remaining = static_cast<int>(parts.cells(k - 1)[coarse].size());
    }
  }
  for (const auto& cell : parts.levels.back())
    if (cell.size() != 1) throw ValidationError("final level must separate all atoms");
}

}  // namespace cotlab
