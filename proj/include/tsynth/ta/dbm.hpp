#pragma once

#include "tsynth/core/clock.hpp"
#include "tsynth/core/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tsynth::ta {

// Upper bound on a clock difference: value with strictness, or infinity.
class Bound {
public:
  static Bound infinity() { return Bound(kInf); }
  static Bound weak(std::int64_t c) { return Bound(c * 2 + 1); }
  static Bound strict(std::int64_t c) { return Bound(c * 2); }

  bool is_infinite() const { return raw_ == kInf; }
  std::int64_t value() const { return raw_ >> 1; }
  bool is_strict() const { return (raw_ & 1) == 0; }

  friend Bound operator+(Bound a, Bound b) {
    if (a.is_infinite() || b.is_infinite())
      return infinity();
    return Bound(((a.value() + b.value()) << 1) | (a.raw_ & b.raw_ & 1));
  }
  auto operator<=>(const Bound &) const = default;

private:
  static constexpr std::int64_t kInf = INT64_MAX;
  explicit Bound(std::int64_t raw) : raw_(raw) {}
  std::int64_t raw_;
};

// Canonical difference-bound matrix over clocks 1..n with reference 0.
class Dbm {
public:
  static Dbm zero(int clocks);
  static Dbm universe(int clocks);

  int clocks() const { return dim_ - 1; }
  bool is_empty() const { return empty_; }
  Bound at(int i, int j) const { return m_[i * dim_ + j]; }

  // x_i - x_j <= b, keeping the matrix closed.
  void constrain(int i, int j, Bound b);
  // Clock indices are 1-based positions into the automaton's clock list.
  void constrain(int clock, Rel rel, std::int64_t constant);
  void up();
  void reset(int clock);
  // Classical maximal-constant extrapolation; max[0] is ignored.
  void extrapolate(const std::vector<std::int64_t> &max);
  bool includes(const Dbm &other) const;
  bool contains(const std::vector<Rational> &point) const;

  std::string str() const;
  friend bool operator==(const Dbm &, const Dbm &) = default;

private:
  explicit Dbm(int clocks);
  void close();
  Bound &ref(int i, int j) { return m_[i * dim_ + j]; }

  int dim_;
  bool empty_ = false;
  std::vector<Bound> m_;
};

} // namespace tsynth::ta
