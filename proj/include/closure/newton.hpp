#pragma once

// Newton polygons and the finite-budget Newton root solver over truncated
// series. Polynomials are stored leading coefficient first: P = sum a_i
// x^{n-i}, a_0 = 1. With that convention the slopes of the lower convex hull
// of (i, v(a_i)) are the valuations of the roots.
//
// The solver is generic in the series type through SeriesOps<S>; the
// equal-characteristic instance lives here and the p-adic digit-series one
// in padic_series.hpp.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "closure/error.hpp"
#include "closure/exponent.hpp"
#include "closure/gfield.hpp"
#include "closure/hahn.hpp"

namespace closure {

struct PolygonPoint {
  int index;
  /// An undetermined valuation is a lower bound (coefficient zero at its
  /// precision).
  Valuation val;
};

struct PolygonSegment {
  int left;
  int right;
  Exponent slope;
  /// Both endpoints have exact valuations.
  bool determined;
  unsigned length() const { return static_cast<unsigned>(right - left); }
};

struct NewtonPolygon {
  std::vector<PolygonPoint> vertices;
  std::vector<PolygonSegment> segments;

  /// (slope, multiplicity) pairs in increasing slope order.
  std::vector<std::pair<Exponent, unsigned>> slopes() const;
  std::string to_string() const;
};

/// Lower convex hull of the points, sorted by index. Throws DegeneratePolygon
/// with fewer than two points.
NewtonPolygon newton_polygon(std::vector<PolygonPoint> points);

/// Exact-valuation front end: nullopt marks a zero coefficient, which is
/// excluded from the hull.
NewtonPolygon newton_polygon(const std::vector<std::pair<int, std::optional<Exponent>>>& vals);

mpz_class binomial(unsigned n, unsigned k);

enum class RootStatus { certified, step_budget, precision };

std::string to_string(RootStatus s);

template <class S>
struct RootApprox {
  S value;
  /// Certified lower bound on the valuation of P(value), by substitution.
  Exponent slope_reached;
  /// Lower bound on v(root - value).
  Exponent accuracy;
  unsigned multiplicity = 1;
  /// Valuation of the root itself.
  Valuation valuation;
  RootStatus status = RootStatus::certified;
  bool exhausted = false;
  unsigned steps = 0;
};

template <class S>
struct SeriesOps;

template <>
struct SeriesOps<FqSeries> {
  static Valuation val(const FqSeries& x) { return x.valuation(); }
  static Exponent prec(const FqSeries& x) { return x.prec(); }
  static FqElem digit_at(const FqSeries& x, const Exponent& e) { return x.coeff(e); }
  static FqSeries add(const FqSeries& x, const FqSeries& y) { return x + y; }
  static FqSeries times_monomial(const FqSeries& x, const FqElem& c, const Exponent& e) {
    return hs_shift(x.scale(c), e);
  }
  static FqSeries scale_int(const FqSeries& x, const mpz_class& n) {
    const mpz_class r = n % mpz_class(static_cast<unsigned long>(x.proto().p()));
    return x.scale(from_int_like(x.proto(), r.get_si()));
  }
  static FqSeries from_terms(const FqSeries& like, std::vector<std::pair<Exponent, FqElem>> terms,
                             const Exponent& prec) {
    return FqSeries(like.proto(), std::move(terms), prec);
  }
  static bool is_one(const FqSeries& x) {
    return x.size() == 1 && x.terms()[0].first == Exponent(0) && x.terms()[0].second.is_one();
  }
  static std::shared_ptr<FieldTower> tower(const FqSeries& x) { return x.proto().tower(); }
};

template <class S>
using SeriesPoly = std::vector<S>;

template <class S>
std::vector<PolygonPoint> polygon_points(const SeriesPoly<S>& P, int from = 0) {
  std::vector<PolygonPoint> pts;
  for (int i = from; i < static_cast<int>(P.size()); ++i) pts.push_back({i, SeriesOps<S>::val(P[i])});
  return pts;
}

template <class S>
NewtonPolygon polygon_of(const SeriesPoly<S>& P) {
  return newton_polygon(polygon_points(P));
}

namespace detail {

/// Value of the segment's supporting line at index i.
inline Exponent line_at(const PolygonSegment& seg, const Exponent& left_val, int i) {
  return left_val + seg.slope * Exponent(i - seg.left);
}

/// A segment is resolved when its endpoints are exact and no imprecise
/// coefficient could still contribute to the residual polynomial.
inline bool segment_resolved(const PolygonSegment& seg, const std::vector<PolygonPoint>& pts, const Exponent& left_val) {
  if (!seg.determined) return false;
  for (const auto& pt : pts) {
    if (pt.index <= seg.left || pt.index >= seg.right || pt.val.determined) continue;
    if (pt.val.value <= line_at(seg, left_val, pt.index)) return false;
  }
  return true;
}

inline Exponent vertex_value(const NewtonPolygon& poly, int index) {
  for (const auto& v : poly.vertices)
    if (v.index == index) return v.val.value;
  throw InternalError("missing polygon vertex");
}

}  // namespace detail

/// Residual polynomial of the segment of slope s starting at index m,
/// coefficient of x^k at position k.
template <class S>
FqPoly residual_poly_of(const SeriesPoly<S>& P, const NewtonPolygon& poly, const PolygonSegment& seg) {
  const Exponent v0 = detail::vertex_value(poly, seg.left);
  FqPoly A;
  for (int i = seg.right; i >= seg.left; --i) A.push_back(SeriesOps<S>::digit_at(P[i], detail::line_at(seg, v0, i)));
  return A;
}

template <class S>
FqPoly residual_poly(const SeriesPoly<S>& P, int m, const Exponent& s) {
  const NewtonPolygon poly = polygon_of(P);
  for (const auto& seg : poly.segments)
    if (seg.left == m && seg.slope == s) return residual_poly_of(P, poly, seg);
  throw InvalidInput("no polygon segment of slope " + s.to_string() + " starts at index " + std::to_string(m));
}

/// Q(x) = P(x + c t^s) through the b_i expansion.
template <class S>
SeriesPoly<S> substitute(const SeriesPoly<S>& P, const FqElem& c, const Exponent& s) {
  using Ops = SeriesOps<S>;
  const int n = static_cast<int>(P.size()) - 1;
  std::vector<FqElem> cpow{from_int_like(c, 1)};
  for (int j = 1; j <= n; ++j) cpow.push_back(cpow.back() * c);
  SeriesPoly<S> Q;
  for (int i = 0; i <= n; ++i) {
    S b = P[i];
    for (int j = 1; j <= i; ++j) {
      S term = Ops::times_monomial(P[i - j], cpow[j], s * Exponent(j));
      const mpz_class binom = binomial(static_cast<unsigned>(n - i + j), static_cast<unsigned>(j));
      if (binom != 1) term = Ops::scale_int(term, binom);
      b = Ops::add(b, term);
    }
    Q.push_back(std::move(b));
  }
  return Q;
}

/// P evaluated at the exact finite series sum c_k t^{e_k}.
template <class S>
S evaluate(const SeriesPoly<S>& P, const std::vector<std::pair<Exponent, FqElem>>& value) {
  using Ops = SeriesOps<S>;
  S acc = P[0];
  for (std::size_t i = 1; i < P.size(); ++i) {
    if (value.empty()) {
      acc = P[i];
      continue;
    }
    S next = Ops::times_monomial(acc, value[0].second, value[0].first);
    for (std::size_t k = 1; k < value.size(); ++k)
      next = Ops::add(next, Ops::times_monomial(acc, value[k].second, value[k].first));
    acc = Ops::add(next, P[i]);
  }
  return acc;
}

struct StepReport {
  NewtonPolygon before;
  NewtonPolygon after;
  unsigned residual_multiplicity = 0;
  bool lower_slopes_unchanged = false;
  bool slope_multiplicity_ok = false;
  bool upper_count_ok = false;
  bool ok() const { return lower_slopes_unchanged && slope_multiplicity_ok && upper_count_ok; }
};

template <class S>
struct StepResult {
  SeriesPoly<S> Q;
  StepReport report;
};

/// One Newton step: Q(x) = P(x + r t^s) for a residual root r of the segment
/// of slope s, with the slope changes checked on the recomputed polygon.
template <class S>
StepResult<S> newton_step(const SeriesPoly<S>& P, const FqElem& r, const Exponent& s) {
  StepReport rep;
  rep.before = polygon_of(P);
  const PolygonSegment* seg = nullptr;
  for (const auto& g : rep.before.segments)
    if (g.slope == s) seg = &g;
  if (!seg) throw InvalidInput("slope " + s.to_string() + " does not occur in the Newton polygon");
  const FqPoly A = residual_poly_of(P, rep.before, *seg);
  for (const auto& [root, mult] : poly_roots(A, r.tower()))
    if (root == r) rep.residual_multiplicity = mult;
  if (rep.residual_multiplicity == 0) throw InvalidInput(r.to_string() + " is not a root of the residual polynomial");

  StepResult<S> out{substitute(P, r, s), {}};
  rep.after = polygon_of(out.Q);
  const unsigned n = static_cast<unsigned>(P.size() - 1);
  const unsigned q = rep.residual_multiplicity;
  auto lower = [&](const NewtonPolygon& poly) {
    std::vector<std::pair<Exponent, unsigned>> v;
    for (const auto& sm : poly.slopes())
      if (sm.first < s) v.push_back(sm);
    return v;
  };
  rep.lower_slopes_unchanged = lower(rep.before) == lower(rep.after);
  unsigned at_s = 0, above = 0;
  for (const auto& [slope, mult] : rep.after.slopes()) {
    if (slope == s) at_s += mult;
    if (slope > s) above += mult;
  }
  rep.slope_multiplicity_ok = at_s == seg->length() - q + (n - static_cast<unsigned>(seg->right));
  rep.upper_count_ok = above == q;
  out.report = std::move(rep);
  return out;
}

/// Branching Newton solver. Each branch follows the roots of its polynomial
/// whose valuation exceeds the last slope used; a branch stops when its
/// segments reach the target, when precision runs out, or when the step
/// budget is spent.
template <class S>
class RootSolver {
 public:
  using Ops = SeriesOps<S>;
  using Terms = std::vector<std::pair<Exponent, FqElem>>;

  RootSolver(SeriesPoly<S> P, Exponent target, unsigned max_steps)
      : P_(std::move(P)), target_(std::move(target)), max_steps_(max_steps) {
    if (P_.size() < 2) throw InvalidInput("polynomial of degree < 1");
    if (P_.size() > 61) throw InvalidInput("polynomial degree above 60");
    if (!Ops::is_one(P_[0])) throw InvalidInput("polynomial is not monic");
    tower_ = Ops::tower(P_[0]);
  }

  /// Coefficient precision needed for the target: target plus the rise of
  /// the exactly known part of the polygon.
  Exponent required_precision() const {
    std::vector<PolygonPoint> pts;
    for (const auto& pt : polygon_points(P_))
      if (pt.val.determined) pts.push_back(pt);
    Exponent rise(0);
    if (pts.size() >= 2) {
      const NewtonPolygon poly = newton_polygon(pts);
      rise = max(Exponent(0), poly.vertices.back().val.value - poly.vertices.front().val.value);
    }
    return target_ + rise;
  }

  std::vector<RootApprox<S>> run() {
    const Exponent need = required_precision();
    for (const auto& a : P_)
      if (Ops::prec(a) < need)
        throw PrecisionTooLow("coefficient precision " + Ops::prec(a).to_string() + " below required " +
                              need.to_string());
    roots_.clear();
    explore(Branch{P_, {}, static_cast<unsigned>(P_.size() - 1), 0, std::nullopt});
    return std::move(roots_);
  }

 private:
  struct Branch {
    SeriesPoly<S> Q;
    Terms terms;
    unsigned q;
    unsigned depth;
    std::optional<Exponent> floor;
  };

  struct Block {
    std::size_t first, last;  // segment indices, inclusive
    bool resolved;
    unsigned length;
  };

  void emit(const Branch& b, unsigned mult, const Exponent& accuracy, RootStatus status) {
    RootApprox<S> r{Ops::from_terms(P_[0], b.terms, accuracy), Exponent(0), accuracy, mult, {}, status,
                    status != RootStatus::certified, b.depth};
    const Valuation res = Ops::val(evaluate(P_, b.terms));
    r.slope_reached = res.value;
    r.valuation = b.terms.empty() ? Valuation{accuracy, false} : Valuation{b.terms.front().first, true};
    roots_.push_back(std::move(r));
  }

  void explore(const Branch& b) {
    const int n = static_cast<int>(b.Q.size()) - 1;
    const int from = n - static_cast<int>(b.q);
    const std::vector<PolygonPoint> pts = polygon_points(b.Q, from);
    if (!pts.front().val.determined) {
      emit(b, b.q, *b.floor, RootStatus::precision);
      return;
    }
    const NewtonPolygon poly = newton_polygon(pts);
    const auto& segs = poly.segments;

    std::vector<bool> resolved(segs.size());
    for (std::size_t k = 0; k < segs.size(); ++k) {
      resolved[k] = detail::segment_resolved(segs[k], pts, detail::vertex_value(poly, segs[k].left));
      if (resolved[k] && b.floor && segs[k].slope <= *b.floor)
        throw InternalError("Newton step did not raise the slope past " + b.floor->to_string());
    }
    auto right_exact = [&](std::size_t k) {
      for (const auto& v : poly.vertices)
        if (v.index == segs[k].right) return v.val.determined;
      return false;
    };
    std::vector<Block> blocks;
    for (std::size_t k = 0; k < segs.size();) {
      Block blk{k, k, resolved[k], segs[k].length()};
      if (!resolved[k])
        while (!right_exact(blk.last) && blk.last + 1 < segs.size()) blk.length += segs[++blk.last].length();
      k = blk.last + 1;
      blocks.push_back(blk);
    }

    unsigned done_mult = 0;
    std::optional<Exponent> done_acc;
    for (const Block& blk : blocks) {
      const Exponent& lo = segs[blk.first].slope;
      if (lo >= target_) {
        done_mult += blk.length;
        if (!done_acc) done_acc = lo;
        continue;
      }
      if (!blk.resolved) {
        emit(b, blk.length, lo, RootStatus::precision);
        continue;
      }
      if (b.depth >= max_steps_) {
        emit(b, blk.length, lo, RootStatus::step_budget);
        continue;
      }
      const PolygonSegment& seg = segs[blk.first];
      const FqPoly A = residual_poly_of(b.Q, poly, seg);
      for (const auto& [c, mult] : poly_roots(A, tower_)) {
        Branch child{substitute(b.Q, c, seg.slope), b.terms, mult, b.depth + 1, seg.slope};
        child.terms.emplace_back(seg.slope, c);
        explore(child);
      }
    }
    if (done_mult) emit(b, done_mult, *done_acc, RootStatus::certified);
  }

  SeriesPoly<S> P_;
  Exponent target_;
  unsigned max_steps_;
  std::shared_ptr<FieldTower> tower_;
  std::vector<RootApprox<S>> roots_;
};

inline constexpr unsigned kDefaultMaxSteps = 64;

std::vector<RootApprox<FqSeries>> solve_roots(const SeriesPoly<FqSeries>& P, const Exponent& target,
                                              unsigned max_steps = kDefaultMaxSteps);

}  // namespace closure
