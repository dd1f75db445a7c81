#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt(D)), plus closed rational intervals.

#include "sadic/errors.hpp"
#include "sadic/numeric.hpp"

#include <compare>
#include <string>

namespace sadic {

/// Closed interval [lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
  Interval(Rational lower, Rational upper);

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  bool intersects(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend Interval operator*(const Rational& k, const Interval& a);
  friend bool operator==(const Interval&, const Interval&) = default;
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
};

/// Smallest interval containing both arguments.
Interval hull(const Interval& a, const Interval& b);

/// a + b*sqrt(D) with rational a, b and a squarefree radicand D >= 2.
/// D == 0 marks a purely rational value; such values mix freely with any field.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(int a) : a_(a) {}                  // NOLINT(google-explicit-constructor)
  QuadraticNumber(Rational a, Rational b, Integer radicand);

  /// sqrt(n) for a positive integer n, with square factors pulled out.
  static QuadraticNumber sqrt(const Integer& n);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const;
  QuadraticNumber conjugate() const;
  /// (a + b sqrt D)(a - b sqrt D) = a^2 - b^2 D.
  Rational norm() const;

  /// Rational interval containing the value, of width at most `width`.
  Interval enclose(const Rational& width) const;
  double to_double() const;
  /// "a + b*sqrt(D)" in fraction notation.
  std::string to_string() const;
  /// Inverse of to_string; also accepts "b*sqrt(D)", "sqrt(D)" and decimal rationals.
  /// Throws InputError.
  static QuadraticNumber parse(std::string_view text);

  QuadraticNumber operator-() const;
  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() == 0; }
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() <=> 0;
  }

 private:
  void unify(const QuadraticNumber& o);
  void normalize();

  Rational a_;
  Rational b_;
  Integer d_ = 0;
};

inline QuadraticNumber abs(const QuadraticNumber& x) { return x.sign() < 0 ? -x : x; }

/// Interval containing sqrt(n), of width at most `width`.
Interval sqrt_enclosure(const Integer& n, const Rational& width);

}  // namespace sadic

namespace Eigen {
template <>
struct NumTraits<sadic::QuadraticNumber> : GenericNumTraits<sadic::QuadraticNumber> {
  using Real = sadic::QuadraticNumber;
  using NonInteger = sadic::QuadraticNumber;
  using Nested = sadic::QuadraticNumber;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
