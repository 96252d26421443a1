#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rmcert {

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator. Every closed-form moment and bound is carried as a Rational;
/// conversion to double happens only where statistics take over.
class Rational {
 public:
  Rational() = default;
  Rational(long num);  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class q);

  /// Parses "num/den" or "num".
  static Rational parse(std::string_view text);

  /// base^exp for a nonnegative integer exponent.
  static Rational power(long base, unsigned long exp);

  std::string numerator_string() const;
  std::string denominator_string() const;
  /// "num/den", or "num" when the denominator is 1.
  std::string str() const;

  /// Nearest double (round-to-nearest-even).
  double to_double() const;

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

Rational pow(const Rational& base, unsigned long exp);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace rmcert
