#include "tsynth/core/rational.hpp"

#include "tsynth/core/errors.hpp"

#include <cctype>

namespace tsynth {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw InputError("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0)
      throw InputError("zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw InputError("malformed rational '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    result = Rational(w * scale + mpz_class(std::string(frac)), scale);
  } else {
    if (!all_digits(body))
      throw InputError("malformed rational '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(body)));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational &value) {
  if (value.get_den() == 1)
    return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational ratio(std::int64_t num, std::int64_t den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

Rational floor_of(const Rational &value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

Rational fract(const Rational &value) { return value - floor_of(value); }

bool is_integer(const Rational &value) { return value.get_den() == 1; }

std::int64_t to_int64(const Rational &integral) {
  if (!is_integer(integral) || !integral.get_num().fits_slong_p())
    throw ContractError("rational " + to_string(integral) +
                        " is not a machine integer");
  return integral.get_num().get_si();
}

} // namespace tsynth
