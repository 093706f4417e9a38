#include "tsynth/core/region.hpp"

#include "tsynth/core/errors.hpp"

#include <map>

namespace tsynth {

RegionIndex region_of(const Rational &value, int max_constant) {
  if (value > max_constant)
    return {2 * max_constant + 1};
  auto whole = static_cast<int>(to_int64(floor_of(value)));
  return {is_integer(value) ? 2 * whole : 2 * whole + 1};
}

std::string to_string(RegionIndex r, int max_constant) {
  return is_unbounded(r, max_constant) ? "T" : std::to_string(r.value);
}

Rational bounded_fract(const Rational &value, int max_constant) {
  if (value > max_constant)
    return 0;
  return fract(value);
}

bool region_equivalent(const ClockSet &lhs, const ClockSet &rhs,
                       int max_constant) {
  std::multiset<std::string> ln, rn;
  for (const auto &e : lhs)
    ln.insert(e.first);
  for (const auto &e : rhs)
    rn.insert(e.first);
  if (ln != rn)
    throw InputError("region_equivalent: clock name multisets differ");
  return canonical_word(lhs, max_constant) == canonical_word(rhs, max_constant);
}

Rational region_increment(const std::vector<Rational> &values,
                          int max_constant) {
  bool all_top = true;
  bool integer_present = false;
  Rational mu = 0;
  for (const auto &v : values) {
    if (v > max_constant)
      continue;
    all_top = false;
    if (is_integer(v))
      integer_present = true;
    auto f = fract(v);
    if (f > mu)
      mu = f;
  }
  if (all_top)
    return 0;
  Rational inc = 1 - mu;
  if (integer_present)
    inc /= 2;
  return inc;
}

Rational region_increment(const ClockSet &values, int max_constant) {
  std::vector<Rational> vs;
  vs.reserve(values.size());
  for (const auto &e : values)
    vs.push_back(e.second);
  return region_increment(vs, max_constant);
}

std::vector<TimeSuccessor> time_successors(const ClockSet &values,
                                           int max_constant) {
  std::vector<TimeSuccessor> out;
  out.push_back({0, values});
  for (;;) {
    const auto &last = out.back();
    auto inc = region_increment(last.values, max_constant);
    if (inc == 0)
      break;
    TimeSuccessor next{last.delay + inc, last.values};
    for (auto &e : next.values)
      e.second += inc;
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<Rational> increment_sequence(std::vector<Rational> values,
                                         int max_constant) {
  std::vector<Rational> out{Rational(0)};
  for (;;) {
    auto inc = region_increment(values, max_constant);
    if (inc == 0)
      break;
    for (auto &v : values)
      v += inc;
    out.push_back(out.back() + inc);
  }
  return out;
}

void normalize_values(std::vector<Rational *> &values, int max_constant) {
  std::vector<Rational> fracs;
  for (auto *v : values) {
    if (*v > max_constant) {
      *v = max_constant + 1;
      continue;
    }
    auto f = fract(*v);
    if (f != 0)
      fracs.push_back(f);
  }
  std::sort(fracs.begin(), fracs.end());
  fracs.erase(std::unique(fracs.begin(), fracs.end()), fracs.end());
  if (fracs.empty())
    return;
  const auto denom = static_cast<long>(fracs.size() + 1);
  for (auto *v : values) {
    if (*v > max_constant)
      continue;
    auto f = fract(*v);
    if (f == 0)
      continue;
    auto rank = std::lower_bound(fracs.begin(), fracs.end(), f) - fracs.begin();
    *v = floor_of(*v) + ratio(rank + 1, denom);
  }
}

std::string to_string(const CanonicalWord &word, int max_constant) {
  std::string s = "(";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i)
      s += ",";
    s += "{";
    for (std::size_t j = 0; j < word[i].size(); ++j) {
      if (j)
        s += ",";
      s += "(" + word[i][j].name + "," +
           to_string(word[i][j].region, max_constant) + ")";
    }
    s += "}";
  }
  return s + ")";
}

} // namespace tsynth
