#pragma once

#include "cotlab/measure.hpp"

namespace cotlab {

/// Output of the discretized Gaussian-rotation demo. The identity coupling
/// carries full diagonal mass; the exact rotation coupling carries none
/// (a rotation by 1/n radians fixes only the origin); the snapped coupling
/// carries exactly the mass of the snap-fixed atoms.
struct RotationReport {
  int n = 0;
  int grid = 0;
  Rational diag_identity;      // always 1
  Rational diag_exact;         // exact rotation coupling
  Rational diag_snapped;       // nearest-atom snapped rotation coupling
  Rational fixed_atom_mass;    // mass of atoms fixed by the snapped rotation
  double w1_gap = 0.0;         // W1 between the identity and snapped couplings
};

/// Standard 2-d Gaussian truncated to [-3,3]^2, discretized on a grid x grid
/// cell-center lattice mapped affinely into [0,1]^2. The rotation coupling
/// rotates each atom by 1/n radians and snaps to the nearest atom (ties to
/// the lower index).
RotationReport rotation_demo(int n, int grid);

/// The discretized Gaussian itself (exposed for tests).
DiscreteMeasure rotation_gaussian(int grid);

}  // namespace cotlab
