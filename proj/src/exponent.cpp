#include "closure/exponent.hpp"

#include <climits>

#include "closure/error.hpp"

namespace closure {

Exponent::Exponent(long num, long den) {
  if (den == 0) throw DivisionByZero("exponent with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Exponent::Exponent(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Exponent Exponent::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw InvalidInput("empty exponent");
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& part) {
    mpz_class z;
    if (part.empty() || z.set_str(part, 10) != 0) throw InvalidInput("malformed exponent '" + part + "'");
    return z;
  };
  if (slash == std::string::npos) return Exponent(mpq_class(parse_int(s)));
  const mpz_class num = parse_int(s.substr(0, slash));
  const mpz_class den = parse_int(s.substr(slash + 1));
  if (den == 0) throw DivisionByZero("exponent '" + s + "'");
  return Exponent(mpq_class(num, den));
}

Exponent& Exponent::operator/=(const Exponent& o) {
  if (o.q_ == 0) throw DivisionByZero("exponent division");
  q_ /= o.q_;
  return *this;
}

mpz_class Exponent::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class Exponent::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

long Exponent::ceil_long() const {
  const mpz_class c = ceil();
  if (!c.fits_slong_p()) throw InvalidInput("exponent out of machine range: " + to_string());
  return c.get_si();
}

long Exponent::to_long() const {
  if (!is_integer()) throw InvalidInput("exponent is not an integer: " + to_string());
  return ceil_long();
}

std::string Exponent::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace closure
