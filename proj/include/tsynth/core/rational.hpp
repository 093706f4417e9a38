#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tsynth {

using Rational = mpq_class;

// Accepts "p", "p/q" and decimal notation "1.25". Throws InputError.
Rational parse_rational(std::string_view text);
// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational &value);

// num/den in lowest terms; mpq_class's two-argument constructor does not
// canonicalize.
Rational ratio(std::int64_t num, std::int64_t den);

Rational floor_of(const Rational &value);
Rational fract(const Rational &value);
bool is_integer(const Rational &value);
std::int64_t to_int64(const Rational &integral);

} // namespace tsynth
