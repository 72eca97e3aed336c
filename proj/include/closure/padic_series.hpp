#pragma once

// Elements of W(K)[[p^Q]] modulo p^N in Teichmuller-digit form
// sum [x_e] p^e, with the carry normalization that turns a Hahn series over
// a Galois ring into canonical digits (t -> p), and the mixed root solver.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "closure/exponent.hpp"
#include "closure/galois_ring.hpp"
#include "closure/gfield.hpp"
#include "closure/hahn.hpp"
#include "closure/newton.hpp"

namespace closure {

class DigitSeries {
 public:
  using Term = std::pair<Exponent, FqElem>;

  /// Zero modulo p^N.
  DigitSeries(std::shared_ptr<FieldTower> tower, Exponent N);
  /// Digits at distinct non-negative exponents; zero digits and exponents
  /// >= N are dropped. Throws InvalidInput on repeated or negative exponents.
  DigitSeries(std::shared_ptr<FieldTower> tower, std::vector<Term> terms, Exponent N);

  const std::shared_ptr<FieldTower>& tower() const { return tower_; }
  std::uint64_t p() const { return tower_->p(); }
  const std::vector<Term>& terms() const { return terms_; }
  /// Known modulo p^N.
  const Exponent& N() const { return N_; }
  bool is_zero() const { return terms_.empty(); }

  Valuation valuation() const;
  const Exponent& val_bound() const { return terms_.empty() ? N_ : terms_.front().first; }
  FqElem digit_at(const Exponent& e) const;
  std::vector<Exponent> support() const;

  std::string to_string() const;

  friend bool operator==(const DigitSeries& a, const DigitSeries& b);

 private:
  std::shared_ptr<FieldTower> tower_;
  std::vector<Term> terms_;
  Exponent N_;
};

/// Carry cascade realizing t -> p. Requires coefficient length m >= ceil(N).
DigitSeries normalize(const GrSeries& x, const Exponent& N);

/// Teichmuller Hahn form sum [x_e] t^e over W_m.
GrSeries ds_lift(const DigitSeries& x, unsigned m);

DigitSeries ds_add(const DigitSeries& x, const DigitSeries& y);
DigitSeries ds_neg(const DigitSeries& x);
DigitSeries ds_sub(const DigitSeries& x, const DigitSeries& y);
DigitSeries ds_mul(const DigitSeries& x, const DigitSeries& y);
/// x [c] p^e, exact.
DigitSeries ds_times_monomial(const DigitSeries& x, const FqElem& c, const Exponent& e);
DigitSeries ds_scale_int(const DigitSeries& x, const mpz_class& n);
Valuation v_p(const DigitSeries& x);

/// Digits of a Galois-ring element as an exact element of W(K) (no digits
/// beyond the ring length), known modulo p^N.
DigitSeries ds_from_gr(const GrElem& z, const Exponent& N);
/// Digitwise image of an equal-characteristic series: sum x_e t^e -> sum [x_e] p^e.
DigitSeries ds_from_series(const FqSeries& y);

template <>
struct SeriesOps<DigitSeries> {
  static Valuation val(const DigitSeries& x) { return x.valuation(); }
  static Exponent prec(const DigitSeries& x) { return x.N(); }
  static FqElem digit_at(const DigitSeries& x, const Exponent& e) { return x.digit_at(e); }
  static DigitSeries add(const DigitSeries& x, const DigitSeries& y) { return ds_add(x, y); }
  static DigitSeries times_monomial(const DigitSeries& x, const FqElem& c, const Exponent& e) {
    return ds_times_monomial(x, c, e);
  }
  static DigitSeries scale_int(const DigitSeries& x, const mpz_class& n) { return ds_scale_int(x, n); }
  static DigitSeries from_terms(const DigitSeries& like, std::vector<std::pair<Exponent, FqElem>> terms,
                                const Exponent& prec) {
    return DigitSeries(like.tower(), std::move(terms), prec);
  }
  static bool is_one(const DigitSeries& x) {
    return x.terms().size() == 1 && x.terms()[0].first == Exponent(0) && x.terms()[0].second.is_one();
  }
  static std::shared_ptr<FieldTower> tower(const DigitSeries& x) { return x.tower(); }
};

using DigitRoot = RootApprox<DigitSeries>;

/// Newton solver over W(K)[[p^Q]] for a monic polynomial, leading
/// coefficient first.
std::vector<DigitRoot> solve_roots_mixed(const SeriesPoly<DigitSeries>& Q, const Exponent& target,
                                         unsigned max_steps = kDefaultMaxSteps);

/// Roots of a monic polynomial with Galois-ring coefficients, taken as exact
/// elements of W(K). The working precision is the target plus the polygon
/// rise plus two guard digits.
std::vector<DigitRoot> solve_over_witt(const std::vector<GrElem>& Q, const Exponent& target,
                                       unsigned max_steps = kDefaultMaxSteps);

struct RootPair {
  FqSeries y;
  DigitSeries z;
  Exponent slope;
  /// Multiplicity of the slope in the common Newton polygon.
  unsigned slope_multiplicity;
  /// k / slope_multiplicity + slope.
  Exponent required;
  /// Exponent to which the digitwise image of y and z are shown to agree.
  Exponent certified;
  bool holds;
};

/// Pairs roots of P over K((t^Q)) with roots of Q over W(K)[[p^Q]] of the
/// same slope and certifies the congruence between them. Throws InvalidInput
/// when the polygons differ or the coefficient congruence mod p^k fails.
std::vector<RootPair> lift_root_pair(const SeriesPoly<FqSeries>& P, const SeriesPoly<DigitSeries>& Q,
                                     const Exponent& k, unsigned max_steps = kDefaultMaxSteps);

}  // namespace closure
