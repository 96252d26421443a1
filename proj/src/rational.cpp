#include "rmcert/rational.hpp"

#include <ostream>

#include <mpfr.h>

#include "rmcert/errors.hpp"

namespace rmcert {

Rational::Rational(long num) : q_(num) {}

Rational::Rational(long num, long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  mpq_class q;
  const std::string s(text);
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw ValidationError("not a rational number: '" + s + "'");
  }
  if (q.get_den() == 0) throw ValidationError("rational with zero denominator: '" + s + "'");
  return Rational(std::move(q));
}

Rational Rational::power(long base, unsigned long exp) {
  mpz_class z;
  mpz_pow_ui(z.get_mpz_t(), mpz_class(base).get_mpz_t(), exp);
  return Rational(mpq_class(z));
}

std::string Rational::numerator_string() const { return q_.get_num().get_str(); }
std::string Rational::denominator_string() const { return q_.get_den().get_str(); }

std::string Rational::str() const {
  if (q_.get_den() == 1) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

double Rational::to_double() const {
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q_.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ValidationError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational pow(const Rational& base, unsigned long exp) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exp);
  return Rational(mpq_class(num, den));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace rmcert
