#pragma once

#include "cotlab/measure.hpp"

namespace cotlab {

/// Wasserstein-1 distance, L1 ground cost on ambient coordinates. Both
/// measures must share the ambient dimension (DimensionMismatch otherwise).
/// Small instances are solved in exact rationals, large ones in doubles.
double wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Exact value; InstanceTooLarge above the documented support bound.
Rational wasserstein1_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Weighted point cloud; the raw-support form of a discrete measure.
struct WeightedAtom {
  std::vector<double> coord;
  Rational w;
};

/// W1 between point clouds of equal total mass; atoms at identical
/// coordinates are merged and cancelled before solving.
double wasserstein1_points(std::vector<WeightedAtom> mu, std::vector<WeightedAtom> nu);

}  // namespace cotlab
