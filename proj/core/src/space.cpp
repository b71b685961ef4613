#include "cotlab/space.hpp"

#include <unordered_set>

#include "cotlab/errors.hpp"

namespace cotlab {

FiniteSpace::FiniteSpace(std::vector<Atom> atoms, int dim)
    : atoms_(std::move(atoms)), dim_(dim) {
  if (atoms_.empty()) throw ValidationError("FiniteSpace needs at least one atom");
  if (dim_ < 0) throw ValidationError("negative ambient dimension");
  std::unordered_set<std::string> seen;
  for (const Atom& a : atoms_) {
    if (!seen.insert(a.label).second)
      throw ValidationError("duplicate atom label: " + a.label);
    if (static_cast<int>(a.coord.size()) != dim_)
      throw ValidationError("atom '" + a.label + "' has coord length " +
                            std::to_string(a.coord.size()) + ", expected " +
                            std::to_string(dim_));
  }
}

int FiniteSpace::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (atoms_[i].label == label) return i;
  throw ValidationError("unknown atom label: " + label);
}

Rational FiniteSpace::l1_distance(int i, int j) const {
  const Atom& a = atom(i);
  const Atom& b = atom(j);
  Rational d = 0;
  for (int k = 0; k < dim_; ++k)
    d += rational_abs(rational_from_double(a.coord[k]) - rational_from_double(b.coord[k]));
  return d;
}

SpacePtr make_space(std::vector<Atom> atoms, int dim) {
  return std::make_shared<FiniteSpace>(std::move(atoms), dim);
}

SpacePtr grid_space(int m) {
  if (m < 1) throw ValidationError("grid_space needs m >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(m);
  for (int k = 0; k < m; ++k)
    atoms.push_back({std::to_string(k), {(k + 0.5) / m}});
  return make_space(std::move(atoms), 1);
}

SpacePtr bit_space() {
  return make_space({{"0", {0.0}}, {"1", {1.0}}}, 1);
}

SpacePtr product_space(const FiniteSpace& a, const FiniteSpace& b) {
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<size_t>(a.size()) * b.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      Atom atom;
      atom.label = a.atom(i).label + "|" + b.atom(j).label;
      atom.coord = a.atom(i).coord;
      atom.coord.insert(atom.coord.end(), b.atom(j).coord.begin(), b.atom(j).coord.end());
      atoms.push_back(std::move(atom));
    }
  }
  return make_space(std::move(atoms), a.dim() + b.dim());
}

}  // namespace cotlab
