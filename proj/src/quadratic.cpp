#include "sadic/quadratic.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sadic {

Interval::Interval(Rational lower, Rational upper) : lo(std::move(lower)), hi(std::move(upper)) {
  if (hi < lo) throw InputError("interval with lo > hi");
}

Interval operator*(const Rational& k, const Interval& a) {
  if (k >= 0) return {k * a.lo, k * a.hi};
  return {k * a.hi, k * a.lo};
}

Interval hull(const Interval& a, const Interval& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

namespace {

// n = square^2 * rest with rest squarefree (trial division; radicands here are small).
std::pair<Integer, Integer> split_square(Integer n) {
  Integer square = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      square *= p;
    }
  }
  return {square, n};
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational a, Rational b, Integer radicand) : a_(std::move(a)), b_(std::move(b)) {
  if (radicand < 0) throw InputError("negative radicand");
  auto [square, rest] = split_square(std::move(radicand));
  if (rest == 1 || rest == 0) {
    a_ += b_ * Rational(rest == 1 ? square : Integer(0));
    b_ = 0;
  } else {
    b_ *= Rational(square);
    d_ = rest;
  }
  normalize();
}

QuadraticNumber QuadraticNumber::sqrt(const Integer& n) { return {Rational(0), Rational(1), n}; }

void QuadraticNumber::normalize() {
  if (b_ == 0) d_ = 0;
}

void QuadraticNumber::unify(const QuadraticNumber& o) {
  if (o.d_ == 0 || o.d_ == d_) return;
  if (d_ == 0) {
    d_ = o.d_;
    return;
  }
  throw InputError("arithmetic mixes Q(sqrt " + d_.str() + ") and Q(sqrt " + o.d_.str() + ")");
}

int QuadraticNumber::sign() const {
  const int sa = a_ > 0 ? 1 : (a_ < 0 ? -1 : 0);
  const int sb = b_ > 0 ? 1 : (b_ < 0 ? -1 : 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b*sqrt(D) have opposite signs; the larger magnitude wins (never tied: sqrt D irrational).
  return a_ * a_ > b_ * b_ * Rational(d_) ? sa : sb;
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber out = *this;
  out.b_ = -out.b_;
  return out;
}

Rational QuadraticNumber::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

Interval sqrt_enclosure(const Integer& n, const Rational& width) {
  if (n < 0) throw InputError("sqrt of a negative number");
  unsigned k = 0;
  while (Rational(1, pow(Integer(2), k)) > width) ++k;
  const Integer scale = pow(Integer(2), k);
  const Integer s = mp::sqrt(Integer(n * scale * scale));
  const Rational lo(s, scale);
  if (s * s == n * scale * scale) return {lo, lo};
  return {lo, Rational(Integer(s + 1), scale)};
}

Interval QuadraticNumber::enclose(const Rational& width) const {
  if (b_ == 0) return Interval(a_);
  const Interval root = sqrt_enclosure(d_, width / abs(b_));
  return Interval(a_) + b_ * root;
}

double QuadraticNumber::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(d_.convert_to<double>());
}

std::string QuadraticNumber::to_string() const {
  if (b_ == 0) return to_fraction_string(a_);
  std::string out = a_ == 0 ? std::string() : to_fraction_string(a_) + (b_ > 0 ? " + " : " - ");
  if (a_ == 0 && b_ < 0) out += "-";
  out += to_fraction_string(abs(b_)) + "*sqrt(" + d_.str() + ")";
  return out;
}

QuadraticNumber QuadraticNumber::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw InputError("empty quadratic number");
  const auto root = t.find("sqrt(");
  if (root == std::string::npos) return parse_rational(t);
  if (t.back() != ')') throw InputError("malformed quadratic number '" + std::string(text) + "'");
  const Rational r = parse_rational(t.substr(root + 5, t.size() - root - 6));
  if (denominator(r) != 1) throw InputError("radicand must be an integer in '" + std::string(text) + "'");
  const Integer radicand = numerator(r);
  // Split the head "a+b*" or "a-b*" or "b*" or "-" or "".
  std::string head = t.substr(0, root);
  if (!head.empty() && head.back() == '*') head.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;)
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != 'e' && head[i - 1] != 'E') {
      split = i;
      break;
    }
  Rational a = 0;
  std::string coef = head;
  if (split != std::string::npos) {
    a = parse_rational(head.substr(0, split));
    coef = head.substr(split);
  }
  Rational b = 1;
  if (coef == "-") b = -1;
  else if (!coef.empty() && coef != "+") b = parse_rational(coef[0] == '+' ? coef.substr(1) : coef);
  return {a, b, radicand};
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  unify(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  unify(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  unify(o);
  const Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d_);
  const Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  const Rational n = o.norm();
  if (n == 0) throw std::domain_error("division by zero in quadratic field");
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  normalize();
  return *this;
}

}  // namespace sadic
