#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cotlab/rational.hpp"

namespace cotlab {

struct Atom {
  std::string label;
  std::vector<double> coord;  // ambient position in [0,1]^d
};

/// Ordered finite set of labeled atoms with ambient coordinates. The atom
/// order is part of the identity: every quantile construction uses it as the
/// canonical total order.
class FiniteSpace {
 public:
  FiniteSpace(std::vector<Atom> atoms, int dim);

  int size() const { return static_cast<int>(atoms_.size()); }
  int dim() const { return dim_; }
  const Atom& atom(int i) const { return atoms_.at(i); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Index of a label; ValidationError if absent.
  int index_of(const std::string& label) const;

  /// Exact L1 distance between atom coordinates (doubles embed exactly).
  Rational l1_distance(int i, int j) const;

 private:
  std::vector<Atom> atoms_;
  int dim_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(std::vector<Atom> atoms, int dim);

/// Evenly spaced 1-d grid: m atoms at (k + 1/2)/m, labels "0".."m-1".
SpacePtr grid_space(int m);

/// Two-atom space {"0","1"} at coordinates 0 and 1.
SpacePtr bit_space();

/// Product space: atoms in lexicographic (row-major) order, labels joined
/// with '|', coordinates concatenated. Sum (L1) metric comes for free.
SpacePtr product_space(const FiniteSpace& a, const FiniteSpace& b);

}  // namespace cotlab
