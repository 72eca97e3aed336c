#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace closure {

/// An exact rational exponent, always kept in lowest terms with a positive
/// denominator. Backed by GMP so denominators p^k never overflow.
class Exponent {
 public:
  Exponent() = default;
  Exponent(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Exponent(long num, long den);
  explicit Exponent(mpq_class q);

  /// Parses "n", "-n" or "n/d".
  static Exponent parse(std::string_view text);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  mpz_class floor() const;
  mpz_class ceil() const;
  /// Ceiling as a machine integer; throws InvalidInput if it does not fit.
  long ceil_long() const;
  long to_long() const;

  std::string to_string() const;

  Exponent& operator+=(const Exponent& o) { q_ += o.q_; return *this; }
  Exponent& operator-=(const Exponent& o) { q_ -= o.q_; return *this; }
  Exponent& operator*=(const Exponent& o) { q_ *= o.q_; return *this; }
  Exponent& operator/=(const Exponent& o);

  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
  friend Exponent operator*(Exponent a, const Exponent& b) { return a *= b; }
  friend Exponent operator/(Exponent a, const Exponent& b) { return a /= b; }
  friend Exponent operator-(const Exponent& a) { return Exponent(mpq_class(-a.q_)); }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Exponent& e) { return os << e.to_string(); }

 private:
  mpq_class q_{0};
};

inline Exponent min(const Exponent& a, const Exponent& b) { return b < a ? b : a; }
inline Exponent max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

}  // namespace closure
