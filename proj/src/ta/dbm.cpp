#include "tsynth/ta/dbm.hpp"

namespace tsynth::ta {

Dbm::Dbm(int clocks)
    : dim_(clocks + 1), m_(static_cast<std::size_t>(dim_ * dim_),
                            Bound::weak(0)) {}

Dbm Dbm::zero(int clocks) { return Dbm(clocks); }

Dbm Dbm::universe(int clocks) {
  Dbm d(clocks);
  for (int i = 1; i < d.dim_; ++i) {
    d.ref(i, 0) = Bound::infinity();
    for (int j = 1; j < d.dim_; ++j)
      if (i != j)
        d.ref(i, j) = Bound::infinity();
  }
  return d;
}

void Dbm::close() {
  for (int k = 0; k < dim_; ++k)
    for (int i = 0; i < dim_; ++i) {
      if (at(i, k).is_infinite())
        continue;
      for (int j = 0; j < dim_; ++j) {
        auto via = at(i, k) + at(k, j);
        if (via < at(i, j))
          ref(i, j) = via;
      }
    }
  for (int i = 0; i < dim_; ++i)
    if (at(i, i) < Bound::weak(0))
      empty_ = true;
}

void Dbm::constrain(int i, int j, Bound b) {
  if (empty_ || !(b < at(i, j)))
    return;
  if (at(j, i) + b < Bound::weak(0)) {
    empty_ = true;
    return;
  }
  ref(i, j) = b;
  for (int k = 0; k < dim_; ++k) {
    auto ki = at(k, i);
    if (ki.is_infinite())
      continue;
    for (int l = 0; l < dim_; ++l) {
      auto via = ki + b + at(j, l);
      if (via < at(k, l))
        ref(k, l) = via;
    }
  }
}

void Dbm::constrain(int clock, Rel rel, std::int64_t c) {
  switch (rel) {
  case Rel::Lt:
    constrain(clock, 0, Bound::strict(c));
    break;
  case Rel::Le:
    constrain(clock, 0, Bound::weak(c));
    break;
  case Rel::Eq:
    constrain(clock, 0, Bound::weak(c));
    constrain(0, clock, Bound::weak(-c));
    break;
  case Rel::Ge:
    constrain(0, clock, Bound::weak(-c));
    break;
  case Rel::Gt:
    constrain(0, clock, Bound::strict(-c));
    break;
  }
}

void Dbm::up() {
  for (int i = 1; i < dim_; ++i)
    ref(i, 0) = Bound::infinity();
}

void Dbm::reset(int clock) {
  for (int j = 0; j < dim_; ++j) {
    ref(clock, j) = at(0, j);
    ref(j, clock) = at(j, 0);
  }
  ref(clock, clock) = Bound::weak(0);
}

void Dbm::extrapolate(const std::vector<std::int64_t> &max) {
  if (empty_)
    return;
  bool changed = false;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      if (i == j)
        continue;
      auto b = at(i, j);
      if (b.is_infinite())
        continue;
      if (i != 0 && Bound::weak(max[i]) < b) {
        ref(i, j) = Bound::infinity();
        changed = true;
      } else if (j != 0 && b < Bound::strict(-max[j])) {
        ref(i, j) = Bound::strict(-max[j]);
        changed = true;
      }
    }
  if (changed)
    close();
}

bool Dbm::includes(const Dbm &other) const {
  if (other.empty_)
    return true;
  if (empty_)
    return false;
  for (std::size_t k = 0; k < m_.size(); ++k)
    if (m_[k] < other.m_[k])
      return false;
  return true;
}

bool Dbm::contains(const std::vector<Rational> &point) const {
  if (empty_)
    return false;
  auto value = [&](int i) { return i == 0 ? Rational(0) : point.at(i - 1); };
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      auto b = at(i, j);
      if (b.is_infinite())
        continue;
      Rational diff = value(i) - value(j);
      if (b.is_strict() ? !(diff < b.value()) : !(diff <= b.value()))
        return false;
    }
  return true;
}

std::string Dbm::str() const {
  if (empty_)
    return "empty";
  std::string s;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      auto b = at(i, j);
      s += j ? " " : "";
      s += b.is_infinite() ? "inf"
                           : (b.is_strict() ? "<" : "<=") +
                                 std::to_string(b.value());
    }
    s += "\n";
  }
  return s;
}

} // namespace tsynth::ta
