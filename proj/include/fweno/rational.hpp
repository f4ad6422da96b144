#pragma once

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fweno {

/// Exact rational arithmetic for coefficient generation. Values are kept in
/// canonical form (gcd(num, den) == 1, den > 0) at all times; comparisons and
/// equality are exact.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  int sign() const { return sgn(v_); }

  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const { return v_.get_str(); }

  double to_double() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

/// Nearest double to q, ties to even. mpq_get_d truncates toward zero, so the
/// true nearest is either that value or one of its two neighbors; pick by
/// exact rational distance.
inline double to_nearest_double(const mpq_class& q) {
  double best = mpq_get_d(q.get_mpq_t());
  if (!std::isfinite(best)) return best;
  // The explicit return type forces evaluation; gmpxx expression templates
  // must not outlive the temporaries they reference.
  auto err = [&q](double c) -> mpq_class { return abs(mpq_class(c) - q); };
  auto even_mantissa = [](double c) { return (std::bit_cast<std::uint64_t>(c) & 1u) == 0; };
  mpq_class best_err = err(best);
  for (double c : {std::nextafter(best, HUGE_VAL), std::nextafter(best, -HUGE_VAL)}) {
    if (!std::isfinite(c)) continue;
    mpq_class e = err(c);
    if (e < best_err || (e == best_err && even_mantissa(c) && !even_mantissa(best))) {
      best = c;
      best_err = e;
    }
  }
  return best;
}

inline double Rational::to_double() const { return to_nearest_double(v_); }

}  // namespace fweno
