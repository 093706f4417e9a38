#include "tsynth/core/interval.hpp"

#include "tsynth/core/errors.hpp"

#include <charconv>

namespace tsynth {

bool Interval::contains(const Rational &value) const {
  if (lo_open ? value <= lo : value < lo)
    return false;
  if (!hi)
    return true;
  return hi_open ? value < *hi : value <= *hi;
}

bool Interval::is_empty() const {
  if (!hi)
    return false;
  if (*hi < lo)
    return true;
  return *hi == lo && (lo_open || hi_open);
}

namespace {

std::int64_t parse_bound(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 0)
    throw InputError("bad interval bound in '" + std::string(whole) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ')
    s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ')
    s.remove_suffix(1);
  return s;
}

} // namespace

Interval parse_interval(std::string_view text) {
  auto t = trim(text);
  if (t.size() < 5 || (t.front() != '[' && t.front() != '(') ||
      (t.back() != ']' && t.back() != ')'))
    throw InputError("malformed interval '" + std::string(text) + "'");
  auto comma = t.find(',');
  if (comma == std::string_view::npos)
    throw InputError("malformed interval '" + std::string(text) + "'");
  Interval result;
  result.lo_open = t.front() == '(';
  result.hi_open = t.back() == ')';
  result.lo = parse_bound(trim(t.substr(1, comma - 1)), text);
  auto hi = trim(t.substr(comma + 1, t.size() - comma - 2));
  if (hi == "inf" || hi == "oo" || hi == "∞") {
    if (!result.hi_open)
      throw InputError("infinite bound must be open in '" +
                       std::string(text) + "'");
  } else {
    result.hi = parse_bound(hi, text);
    if (*result.hi < result.lo)
      throw InputError("interval upper bound below lower bound in '" +
                       std::string(text) + "'");
  }
  return result;
}

std::string to_string(const Interval &interval) {
  std::string s = interval.lo_open ? "(" : "[";
  s += std::to_string(interval.lo) + ",";
  if (interval.hi)
    s += std::to_string(*interval.hi) + (interval.hi_open ? ")" : "]");
  else
    s += "inf)";
  return s;
}

} // namespace tsynth
