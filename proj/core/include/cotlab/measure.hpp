#pragma once

#include <map>
#include <vector>

#include "cotlab/space.hpp"

namespace cotlab {

/// Probability vector over a FiniteSpace. Weights are exact rationals; they
/// must be nonnegative and sum to one.
class DiscreteMeasure {
 public:
  DiscreteMeasure(SpacePtr space, std::vector<Rational> weights);

  const SpacePtr& space() const { return space_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(int i) const { return weights_.at(i); }
  int size() const { return static_cast<int>(weights_.size()); }

  /// Indices with positive mass, in atom order.
  std::vector<int> support() const;

  static DiscreteMeasure point_mass(SpacePtr space, int atom);
  static DiscreteMeasure uniform(SpacePtr space);

  bool operator==(const DiscreteMeasure& other) const;

 private:
  SpacePtr space_;
  std::vector<Rational> weights_;
};

enum class Axis { row, col };

/// Joint probability on row_space x col_space, stored as sorted sparse
/// triplets. Total mass one; entries nonnegative.
class Coupling {
 public:
  struct Entry {
    int row;
    int col;
    Rational w;
  };

  Coupling(SpacePtr row_space, SpacePtr col_space, std::vector<Entry> entries);

  const SpacePtr& row_space() const { return row_space_; }
  const SpacePtr& col_space() const { return col_space_; }
  const std::vector<Entry>& entries() const { return entries_; }

  Rational mass(int row, int col) const;

  static Coupling product(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
  /// Graph of an atom map: mass(i, target[i]) = mu[i].
  static Coupling from_map(const DiscreteMeasure& mu, SpacePtr col_space,
                           const std::vector<int>& target);

  bool operator==(const Coupling& other) const;

 private:
  SpacePtr row_space_;
  SpacePtr col_space_;
  std::vector<Entry> entries_;  // sorted by (row, col), merged, positive
};

/// Transition kernel: one DiscreteMeasure per conditioning atom that carries
/// mass. Null atoms have no row (disintegration exists only a.s.).
class Kernel {
 public:
  Kernel(SpacePtr from_space, SpacePtr to_space,
         std::map<int, DiscreteMeasure> rows);

  const SpacePtr& from_space() const { return from_space_; }
  const SpacePtr& to_space() const { return to_space_; }
  const std::map<int, DiscreteMeasure>& rows() const { return rows_; }
  bool has_row(int atom) const { return rows_.count(atom) > 0; }
  const DiscreteMeasure& row(int atom) const;

 private:
  SpacePtr from_space_;
  SpacePtr to_space_;
  std::map<int, DiscreteMeasure> rows_;
};

DiscreteMeasure marginal(const Coupling& p, Axis axis);

/// Splits P along `axis` into (marginal, kernel); recomposition is exact.
std::pair<DiscreteMeasure, Kernel> disintegrate(const Coupling& p, Axis axis);

/// mass[i][j] = mu[i] * K[i][j]. MissingKernelRow if a positive-mass atom of
/// mu has no kernel row.
Coupling compose(const DiscreteMeasure& mu, const Kernel& k);

}  // namespace cotlab
