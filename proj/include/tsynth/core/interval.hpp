#pragma once

#include "tsynth/core/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tsynth {

// Interval over non-negative time with natural endpoints; no upper bound
// means infinity (always open).
struct Interval {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;
  bool lo_open = false;
  bool hi_open = true;

  static Interval unbounded() { return {}; }
  static Interval closed(std::int64_t lo, std::int64_t hi) {
    return {lo, hi, false, false};
  }

  bool contains(const Rational &value) const;
  bool is_empty() const;
  bool is_full() const { return lo == 0 && !lo_open && !hi; }
  std::int64_t max_constant() const { return hi ? *hi : lo; }

  friend bool operator==(const Interval &, const Interval &) = default;
};

// "[0,2]", "(1,3]", "[0,inf)"; throws InputError.
Interval parse_interval(std::string_view text);
std::string to_string(const Interval &interval);

} // namespace tsynth
