#include "sadic/numeric.hpp"

#include "sadic/errors.hpp"

#include <cctype>
#include <string>

namespace sadic {

std::string to_fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  const bool negative = r < 0;
  const Rational magnitude = abs(r);
  const Integer whole = floor(magnitude);
  std::string out = negative ? "-" : "";
  out += whole.str();
  if (digits <= 0) return out;
  const Integer scale = pow(Integer(10), static_cast<unsigned>(digits));
  const Integer fraction = floor((magnitude - Rational(whole)) * Rational(scale));
  std::string frac = fraction.str();
  out += ".";
  out += std::string(static_cast<std::size_t>(digits) - frac.size(), '0');
  out += frac;
  if (negative && whole == 0 && fraction == 0) out.erase(0, 1);
  return out;
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw InputError("malformed number: '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw InputError("malformed number: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InputError("malformed number: '" + std::string(whole) + "'");
  // Leading zeros would otherwise select octal.
  const auto body = text.substr(start);
  const auto nz = body.find_first_not_of('0');
  const Integer value(nz == std::string_view::npos ? std::string("0") : std::string(body.substr(nz)));
  return text[0] == '-' ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer p = parse_integer(text.substr(0, slash), text);
    const Integer q = parse_integer(text.substr(slash + 1), text);
    if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  std::string_view mantissa = text;
  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<int>(parse_integer(text.substr(e + 1), text).convert_to<long>());
    mantissa = text.substr(0, e);
  }
  std::string digits;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = mantissa.substr(dot + 1);
    digits = std::string(mantissa.substr(0, dot)) + std::string(frac);
    if (digits.empty() || digits == "-" || digits == "+") throw InputError("malformed number: '" + std::string(text) + "'");
    exponent -= static_cast<int>(frac.size());
  } else {
    digits = std::string(mantissa);
  }
  return Rational(parse_integer(digits, text)) * pow10(exponent);
}

Integer pow(const Integer& base, unsigned exponent) { return mp::pow(base, exponent); }

Rational pow10(int exponent) {
  const Integer p = pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(Integer(1), p) : Rational(p);
}

Integer floor(const Rational& r) {
  const Integer n = numerator(r);
  const Integer d = denominator(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

}  // namespace sadic
