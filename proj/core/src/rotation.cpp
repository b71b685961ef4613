#include "cotlab/rotation.hpp"

#include <cmath>

#include "cotlab/errors.hpp"
#include "cotlab/wasserstein.hpp"

namespace cotlab {

namespace {

constexpr double kHalfWidth = 3.0;  // truncation: [-3, 3]^2

// Cell-center position on one axis, in the original plane.
double center(int idx, int grid) {
  return -kHalfWidth + 2.0 * kHalfWidth * (idx + 0.5) / grid;
}

// Nearest cell index along one axis; exact midpoints go to the lower index.
int snap_axis(double v, int grid) {
  const double u = (v + kHalfWidth) / (2.0 * kHalfWidth) * grid - 0.5;
  double r = std::floor(u + 0.5);
  if (u + 0.5 == r) r -= 1.0;  // tie toward the lower index
  if (r < 0) r = 0;
  if (r >= grid) r = grid - 1;
  return static_cast<int>(r);
}

}  // namespace

DiscreteMeasure rotation_gaussian(int grid) {
  if (grid < 2) throw ValidationError("rotation demo needs grid >= 2");
  std::vector<Atom> atoms;
  std::vector<Rational> weights;
  Rational total = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = center(i, grid);
      const double y = center(j, grid);
      Atom a;
      a.label = std::to_string(i) + "," + std::to_string(j);
      a.coord = {(x + kHalfWidth) / (2 * kHalfWidth), (y + kHalfWidth) / (2 * kHalfWidth)};
      atoms.push_back(std::move(a));
      weights.push_back(rational_from_double(std::exp(-(x * x + y * y) / 2.0)));
      total += weights.back();
    }
  }
  for (Rational& w : weights) w /= total;
  return DiscreteMeasure(make_space(std::move(atoms), 2), std::move(weights));
}

RotationReport rotation_demo(int n, int grid) {
  if (n < 1) throw ValidationError("rotation demo needs n >= 1");
  DiscreteMeasure gauss = rotation_gaussian(grid);

  const double theta = 1.0 / n;
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  RotationReport report;
  report.n = n;
  report.grid = grid;
  report.diag_identity = 1;
  report.diag_exact = 0;
  report.diag_snapped = 0;
  report.fixed_atom_mass = 0;

  std::vector<int> snapped(grid * grid);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = center(i, grid);
      const double y = center(j, grid);
      const int idx = i * grid + j;
      // A rotation by 1/n in (0, pi) fixes only the origin.
      if (x == 0.0 && y == 0.0) report.diag_exact += gauss.weight(idx);
      const double rx = c * x - s * y;
      const double ry = s * x + c * y;
      snapped[idx] = snap_axis(rx, grid) * grid + snap_axis(ry, grid);
      if (snapped[idx] == idx) {
        report.diag_snapped += gauss.weight(idx);
        report.fixed_atom_mass += gauss.weight(idx);
      }
    }
  }

  // Joint laws on [0,1]^4: the identity graph and the snapped-rotation graph.
  std::vector<WeightedAtom> identity_cloud, rotated_cloud;
  const FiniteSpace& space = *gauss.space();
  for (int idx : gauss.support()) {
    std::vector<double> diag = space.atom(idx).coord;
    diag.insert(diag.end(), space.atom(idx).coord.begin(), space.atom(idx).coord.end());
    identity_cloud.push_back({std::move(diag), gauss.weight(idx)});
    std::vector<double> moved = space.atom(idx).coord;
    moved.insert(moved.end(), space.atom(snapped[idx]).coord.begin(),
                 space.atom(snapped[idx]).coord.end());
    rotated_cloud.push_back({std::move(moved), gauss.weight(idx)});
  }
  report.w1_gap = wasserstein1_points(std::move(identity_cloud), std::move(rotated_cloud));
  return report;
}

}  // namespace cotlab
