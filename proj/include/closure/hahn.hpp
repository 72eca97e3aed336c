#pragma once

// Truncated generalized power series sum c_e t^e with rational exponents,
// known modulo t^prec. Coefficients are FqElem or GrElem; every series
// carries a prototype coefficient so zeros and constants can be built at the
// right ring without a separate descriptor.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "closure/error.hpp"
#include "closure/exponent.hpp"
#include "closure/galois_ring.hpp"
#include "closure/gfield.hpp"

namespace closure {

inline FqElem zero_like(const FqElem& c) { return FqElem::zero(c.level()); }
inline FqElem from_int_like(const FqElem& c, long v) { return FqElem::from_int(c.level(), v); }
inline bool same_ring(const FqElem& a, const FqElem& b) { return a.p() == b.p() && a.tower() == b.tower(); }

inline GrElem zero_like(const GrElem& c) { return GrElem::zero(c.ring()); }
inline GrElem from_int_like(const GrElem& c, long v) { return GrElem::from_int(c.ring(), v); }
inline bool same_ring(const GrElem& a, const GrElem& b) {
  return a.p() == b.p() && a.m() == b.m() && a.ring()->tower() == b.ring()->tower();
}

/// v_t of a series: the least exponent, or a lower bound (the precision)
/// when no term survives.
struct Valuation {
  Exponent value;
  bool determined = true;

  std::string to_string() const { return determined ? value.to_string() : ">= " + value.to_string(); }
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

template <class C>
class HahnSeries {
 public:
  using Term = std::pair<Exponent, C>;

  /// Zero known modulo t^prec.
  HahnSeries(C proto, Exponent prec) : proto_(zero_like(proto)), prec_(std::move(prec)) {}

  HahnSeries(C proto, std::vector<Term> terms, Exponent prec) : proto_(zero_like(proto)), prec_(std::move(prec)) {
    std::map<Exponent, C> acc;
    for (auto& [e, c] : terms) {
      if (e >= prec_) continue;
      auto it = acc.find(e);
      if (it == acc.end()) acc.emplace(e, std::move(c));
      else it->second += c;
    }
    for (auto& [e, c] : acc)
      if (!c.is_zero()) terms_.emplace_back(e, std::move(c));
  }

  static HahnSeries monomial(C c, Exponent e, Exponent prec) {
    C proto = c;
    return HahnSeries(proto, {{std::move(e), std::move(c)}}, std::move(prec));
  }
  static HahnSeries constant(C c, Exponent prec) { return monomial(std::move(c), Exponent(0), std::move(prec)); }

  const std::vector<Term>& terms() const { return terms_; }
  const Exponent& prec() const { return prec_; }
  const C& proto() const { return proto_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Valuation valuation() const {
    if (terms_.empty()) return {prec_, false};
    return {terms_.front().first, true};
  }

  /// Lower bound on the valuation usable in precision arithmetic.
  const Exponent& val_bound() const { return terms_.empty() ? prec_ : terms_.front().first; }

  C coeff(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return proto_;
  }

  /// Coefficient of the least exponent; requires a nonzero series.
  const C& leading() const {
    if (terms_.empty()) throw InvalidInput("leading coefficient of a zero series");
    return terms_.front().second;
  }

  std::vector<Exponent> support() const {
    std::vector<Exponent> out;
    for (const auto& t : terms_) out.push_back(t.first);
    return out;
  }

  friend HahnSeries operator+(const HahnSeries& x, const HahnSeries& y) {
    check_rings(x, y);
    std::vector<Term> all = x.terms_;
    all.insert(all.end(), y.terms_.begin(), y.terms_.end());
    return HahnSeries(x.proto_, std::move(all), min(x.prec_, y.prec_));
  }

  friend HahnSeries operator-(const HahnSeries& x) {
    std::vector<Term> out;
    for (const auto& [e, c] : x.terms_) out.emplace_back(e, -c);
    return HahnSeries(x.proto_, std::move(out), x.prec_);
  }

  friend HahnSeries operator-(const HahnSeries& x, const HahnSeries& y) { return x + (-y); }

  friend HahnSeries operator*(const HahnSeries& x, const HahnSeries& y) {
    check_rings(x, y);
    const Exponent prec = min(x.prec_ + y.val_bound(), y.prec_ + x.val_bound());
    std::map<Exponent, C> acc;
    for (const auto& [ex, cx] : x.terms_) {
      for (const auto& [ey, cy] : y.terms_) {
        Exponent e = ex + ey;
        if (e >= prec) break;
        C c = cx * cy;
        auto it = acc.find(e);
        if (it == acc.end()) acc.emplace(std::move(e), std::move(c));
        else it->second += c;
      }
    }
    HahnSeries out(x.proto_, prec);
    for (auto& [e, c] : acc)
      if (!c.is_zero()) out.terms_.emplace_back(e, std::move(c));
    return out;
  }

  HahnSeries& operator+=(const HahnSeries& o) { return *this = *this + o; }
  HahnSeries& operator-=(const HahnSeries& o) { return *this = *this - o; }
  HahnSeries& operator*=(const HahnSeries& o) { return *this = *this * o; }

  /// Multiplies every coefficient by c.
  HahnSeries scale(const C& c) const {
    std::vector<Term> out;
    for (const auto& [e, x] : terms_) out.emplace_back(e, x * c);
    return HahnSeries(proto_, std::move(out), prec_);
  }

  /// Term lists and precisions identical.
  friend bool operator==(const HahnSeries& x, const HahnSeries& y) {
    if (x.prec_ != y.prec_ || x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i)
      if (x.terms_[i].first != y.terms_[i].first || !(x.terms_[i].second == y.terms_[i].second)) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [e, c] : terms_) s += (s.empty() ? "" : " + ") + c.to_string() + "*t^" + e.to_string();
    if (s.empty()) s = "0";
    return s + " + O(t^" + prec_.to_string() + ")";
  }

 private:
  static void check_rings(const HahnSeries& x, const HahnSeries& y) {
    if (!same_ring(x.proto_, y.proto_)) throw RingMismatch("series over different coefficient rings");
  }

  C proto_;
  std::vector<Term> terms_;
  Exponent prec_;
};

template <class C>
HahnSeries<C> hs_add(const HahnSeries<C>& x, const HahnSeries<C>& y) {
  return x + y;
}

template <class C>
HahnSeries<C> hs_mul(const HahnSeries<C>& x, const HahnSeries<C>& y) {
  return x * y;
}

template <class C>
Valuation v_t(const HahnSeries<C>& x) {
  return x.valuation();
}

/// Multiplies by t^s: every exponent and the precision move by s.
template <class C>
HahnSeries<C> hs_shift(const HahnSeries<C>& x, const Exponent& s) {
  std::vector<typename HahnSeries<C>::Term> out;
  for (const auto& [e, c] : x.terms()) out.emplace_back(e + s, c);
  return HahnSeries<C>(x.proto(), std::move(out), x.prec() + s);
}

/// Lowers the precision to min(prec, n).
template <class C>
HahnSeries<C> hs_truncate(const HahnSeries<C>& x, const Exponent& n) {
  return HahnSeries<C>(x.proto(), x.terms(), min(x.prec(), n));
}

/// Applies f to every coefficient; f must not introduce cancellation
/// between distinct exponents.
template <class C, class F>
auto hs_map(const HahnSeries<C>& x, F f) {
  using D = decltype(f(x.proto()));
  std::vector<std::pair<Exponent, D>> out;
  for (const auto& [e, c] : x.terms()) out.emplace_back(e, f(c));
  return HahnSeries<D>(f(x.proto()), std::move(out), x.prec());
}

using FqSeries = HahnSeries<FqElem>;
using GrSeries = HahnSeries<GrElem>;

}  // namespace closure
