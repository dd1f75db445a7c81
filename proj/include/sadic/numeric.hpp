#pragma once

// Exact scalar types shared by every module, and the Eigen aliases built on them.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace sadic {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntegerMatrix = Matrix<Integer>;
using IntegerVector = Vector<Integer>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

inline Integer numerator(const Rational& r) { return mp::numerator(r); }
inline Integer denominator(const Rational& r) { return mp::denominator(r); }

/// "p/q", or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

/// Decimal rendering truncated toward zero after `digits` fractional digits.
std::string to_decimal_string(const Rational& r, int digits = 12);

/// Parses "p/q", an integer, or a decimal literal with optional exponent ("1e-8", "0.25").
/// Throws InputError on malformed text.
Rational parse_rational(std::string_view text);

Integer pow(const Integer& base, unsigned exponent);
Rational pow10(int exponent);

/// Largest integer not exceeding r.
Integer floor(const Rational& r);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }
inline Integer abs(const Integer& r) { return r < 0 ? Integer(-r) : r; }

}  // namespace sadic
