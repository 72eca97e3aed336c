#pragma once

// Independent reference computations used by the tests. Everything here is
// brute force on purpose.

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "closure/gfield.hpp"

namespace oracle {

using closure::Coord;
using closure::FieldTower;
using closure::FqElem;
using closure::FqPoly;

inline FqPoly poly_mul(const FqPoly& a, const FqPoly& b) {
  FqPoly r(a.size() + b.size() - 1, a[0] - a[0]);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline std::vector<FqElem> all_elements(const std::shared_ptr<FieldTower>& T, unsigned d) {
  auto L = T->level(d);
  std::vector<FqElem> out;
  std::vector<Coord> c(d, 0);
  while (true) {
    out.emplace_back(L, c);
    unsigned i = 0;
    while (i < d && ++c[i] == T->p()) c[i++] = 0;
    if (i == d) break;
  }
  return out;
}

/// Random nonzero polynomial of the given degree over F_{p^d}, leading
/// coefficient nonzero.
inline FqPoly random_poly(const std::shared_ptr<FieldTower>& T, unsigned d, unsigned deg, std::mt19937_64& rng) {
  FqPoly f;
  for (unsigned i = 0; i <= deg; ++i) f.push_back(T->random(d, rng));
  while (f.back().is_zero()) f.back() = T->random(d, rng);
  return f;
}

/// Roots in F_{p^d} with multiplicities via repeated synthetic division.
inline std::vector<std::pair<FqElem, unsigned>> exhaustive_roots(const FqPoly& f,
                                                                  const std::shared_ptr<FieldTower>& T,
                                                                  unsigned d) {
  std::vector<std::pair<FqElem, unsigned>> out;
  for (const auto& a : all_elements(T, d)) {
    FqPoly g = f;
    for (auto& c : g) c = T->embed(c, d);
    unsigned mult = 0;
    while (g.size() > 1) {
      // Synthetic division by (x - a).
      FqPoly q(g.size() - 1, g[0] - g[0]);
      FqElem carry = g.back();
      for (std::size_t i = g.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = g[i] + carry * a;
      }
      if (!carry.is_zero()) break;
      g = std::move(q);
      ++mult;
    }
    if (mult) out.emplace_back(a, mult);
  }
  return out;
}

}  // namespace oracle

#include "closure/hahn.hpp"
#include "closure/newton.hpp"

namespace oracle {

using closure::Exponent;
using closure::FqSeries;

/// Expands prod (x - y_i), leading coefficient first.
template <class S>
std::vector<S> poly_from_roots(const std::vector<S>& roots, const S& one) {
  std::vector<S> P{one};
  for (const auto& y : roots) {
    std::vector<S> next;
    for (std::size_t i = 0; i <= P.size(); ++i) {
      if (i == 0) next.push_back(P[0]);
      else if (i == P.size()) next.push_back(-(P[i - 1] * y));
      else next.push_back(P[i] - P[i - 1] * y);
    }
    P = std::move(next);
  }
  return P;
}

/// Random series with 1-3 terms, exponents in [lo, lo + 4) with small
/// denominators.
inline FqSeries random_root(const std::shared_ptr<FieldTower>& T, unsigned d, std::mt19937_64& rng, long lo,
                            const Exponent& prec) {
  std::vector<FqSeries::Term> terms;
  const int n = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n; ++i) {
    const long den = 1 + static_cast<long>(rng() % 3);
    Exponent e = Exponent(lo) + Exponent(static_cast<long>(rng() % (4 * den)), den);
    FqElem c = T->random(d, rng);
    while (c.is_zero()) c = T->random(d, rng);
    terms.emplace_back(e, c);
  }
  return FqSeries(T->from_int(0), std::move(terms), prec);
}

inline bool agree_below(const FqSeries& a, const FqSeries& b, const Exponent& n) {
  auto ta = closure::hs_truncate(a, n).terms();
  auto tb = closure::hs_truncate(b, n).terms();
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (ta[i].first != tb[i].first || !(ta[i].second == tb[i].second)) return false;
  return true;
}

}  // namespace oracle
