#include "cotlab/measure.hpp"

#include <algorithm>

#include "cotlab/errors.hpp"

namespace cotlab {

DiscreteMeasure::DiscreteMeasure(SpacePtr space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) throw ValidationError("measure needs a space");
  if (static_cast<int>(weights_.size()) != space_->size())
    throw ValidationError("weight vector length does not match atom count");
  Rational total = 0;
  for (const Rational& w : weights_) {
    if (w < 0) throw ValidationError("negative weight in measure");
    total += w;
  }
  if (total != 1) throw ValidationError("weights sum to " + total.str() + ", expected 1");
}

std::vector<int> DiscreteMeasure::support() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i)
    if (weights_[i] > 0) idx.push_back(i);
  return idx;
}

DiscreteMeasure DiscreteMeasure::point_mass(SpacePtr space, int atom) {
  std::vector<Rational> w(space->size(), Rational(0));
  w.at(atom) = 1;
  return DiscreteMeasure(std::move(space), std::move(w));
}

DiscreteMeasure DiscreteMeasure::uniform(SpacePtr space) {
  const int n = space->size();
  std::vector<Rational> w(n, Rational(1, n));
  return DiscreteMeasure(std::move(space), std::move(w));
}

bool DiscreteMeasure::operator==(const DiscreteMeasure& other) const {
  return weights_ == other.weights_;
}

Coupling::Coupling(SpacePtr row_space, SpacePtr col_space, std::vector<Entry> entries)
    : row_space_(std::move(row_space)), col_space_(std::move(col_space)) {
  if (!row_space_ || !col_space_) throw ValidationError("coupling needs both spaces");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  Rational total = 0;
  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= row_space_->size() || e.col < 0 || e.col >= col_space_->size())
      throw ValidationError("coupling entry out of range");
    if (e.w < 0) throw ValidationError("negative mass in coupling");
    if (e.w == 0) continue;
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col)
      entries_.back().w += e.w;  // merge duplicates
    else
      entries_.push_back(e);
    total += e.w;
  }
  if (total != 1) throw ValidationError("coupling mass is " + total.str() + ", expected 1");
}

Rational Coupling::mass(int row, int col) const {
  Entry probe{row, col, Rational(0)};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe,
                             [](const Entry& a, const Entry& b) {
                               return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->w;
  return Rational(0);
}

Coupling Coupling::product(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<Entry> entries;
  for (int i : mu.support())
    for (int j : nu.support())
      entries.push_back({i, j, mu.weight(i) * nu.weight(j)});
  return Coupling(mu.space(), nu.space(), std::move(entries));
}

Coupling Coupling::from_map(const DiscreteMeasure& mu, SpacePtr col_space,
                            const std::vector<int>& target) {
  if (static_cast<int>(target.size()) != mu.size())
    throw ValidationError("map length does not match atom count");
  std::vector<Entry> entries;
  for (int i : mu.support()) entries.push_back({i, target[i], mu.weight(i)});
  return Coupling(mu.space(), std::move(col_space), std::move(entries));
}

bool Coupling::operator==(const Coupling& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (size_t k = 0; k < entries_.size(); ++k) {
    const Entry& a = entries_[k];
    const Entry& b = other.entries_[k];
    if (a.row != b.row || a.col != b.col || a.w != b.w) return false;
  }
  return true;
}

Kernel::Kernel(SpacePtr from_space, SpacePtr to_space, std::map<int, DiscreteMeasure> rows)
    : from_space_(std::move(from_space)), to_space_(std::move(to_space)), rows_(std::move(rows)) {
  for (const auto& [atom, row] : rows_) {
    if (atom < 0 || atom >= from_space_->size())
      throw ValidationError("kernel row index out of range");
    if (row.space().get() != to_space_.get())
      throw ValidationError("kernel row lives on the wrong space");
  }
}

const DiscreteMeasure& Kernel::row(int atom) const {
  auto it = rows_.find(atom);
  if (it == rows_.end())
    throw MissingKernelRow("no kernel row for atom " + std::to_string(atom));
  return it->second;
}

DiscreteMeasure marginal(const Coupling& p, Axis axis) {
  const SpacePtr& space = axis == Axis::row ? p.row_space() : p.col_space();
  std::vector<Rational> w(space->size(), Rational(0));
  for (const Coupling::Entry& e : p.entries())
    w[axis == Axis::row ? e.row : e.col] += e.w;
  return DiscreteMeasure(space, std::move(w));
}

std::pair<DiscreteMeasure, Kernel> disintegrate(const Coupling& p, Axis axis) {
  DiscreteMeasure base = marginal(p, axis);
  const SpacePtr& to = axis == Axis::row ? p.col_space() : p.row_space();
  std::map<int, std::vector<Rational>> raw;
  for (const Coupling::Entry& e : p.entries()) {
    const int from = axis == Axis::row ? e.row : e.col;
    const int dest = axis == Axis::row ? e.col : e.row;
    auto [it, fresh] = raw.try_emplace(from, std::vector<Rational>(to->size(), Rational(0)));
    it->second[dest] += e.w;
  }
  std::map<int, DiscreteMeasure> rows;
  for (auto& [from, weights] : raw) {
    const Rational& mass = base.weight(from);
    for (Rational& w : weights) w /= mass;
    rows.emplace(from, DiscreteMeasure(to, std::move(weights)));
  }
  Kernel kernel(base.space(), to, std::move(rows));
  return {std::move(base), std::move(kernel)};
}

Coupling compose(const DiscreteMeasure& mu, const Kernel& k) {
  if (mu.space().get() != k.from_space().get())
    throw ValidationError("measure and kernel disagree on the conditioning space");
  std::vector<Coupling::Entry> entries;
  for (int i : mu.support()) {
    if (!k.has_row(i))
      throw MissingKernelRow("positive-mass atom " + std::to_string(i) + " has no kernel row");
    const DiscreteMeasure& row = k.row(i);
    for (int j : row.support()) entries.push_back({i, j, mu.weight(i) * row.weight(j)});
  }
  return Coupling(mu.space(), k.to_space(), std::move(entries));
}

}  // namespace cotlab
