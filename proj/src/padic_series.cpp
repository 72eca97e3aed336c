#include "closure/padic_series.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "closure/error.hpp"

namespace closure {

namespace {

unsigned length_for(const Exponent& N) {
  const long c = N.ceil_long();
  return c < 1 ? 1u : static_cast<unsigned>(c);
}

unsigned p_valuation(mpz_class n, std::uint64_t p) {
  if (n == 0) return 0;
  unsigned v = 0;
  const mpz_class pp(static_cast<unsigned long>(p));
  while (n % pp == 0) {
    n /= pp;
    ++v;
  }
  return v;
}

}  // namespace

// ---- DigitSeries ---------------------------------------------------------

DigitSeries::DigitSeries(std::shared_ptr<FieldTower> tower, Exponent N) : tower_(std::move(tower)), N_(std::move(N)) {}

DigitSeries::DigitSeries(std::shared_ptr<FieldTower> tower, std::vector<Term> terms, Exponent N)
    : tower_(std::move(tower)), N_(std::move(N)) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].first.sign() < 0) throw InvalidInput("negative exponent " + terms[i].first.to_string() + " in digit series");
    if (i && terms[i].first == terms[i - 1].first)
      throw InvalidInput("repeated exponent " + terms[i].first.to_string() + " in digit series");
    if (terms[i].second.p() != tower_->p()) throw RingMismatch("digit of the wrong characteristic");
  }
  for (auto& t : terms)
    if (t.first < N_ && !t.second.is_zero()) terms_.push_back(std::move(t));
}

Valuation DigitSeries::valuation() const {
  if (terms_.empty()) return {N_, false};
  return {terms_.front().first, true};
}

FqElem DigitSeries::digit_at(const Exponent& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, const Exponent& x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return FqElem::zero(tower_->level(1));
}

std::vector<Exponent> DigitSeries::support() const {
  std::vector<Exponent> out;
  for (const auto& t : terms_) out.push_back(t.first);
  return out;
}

std::string DigitSeries::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    os << (i ? " + " : "") << "[" << terms_[i].second.to_string() << "]*p^" << terms_[i].first;
  if (terms_.empty()) os << "0";
  os << " + O(p^" << N_ << ")";
  return os.str();
}

bool operator==(const DigitSeries& a, const DigitSeries& b) {
  if (a.tower_ != b.tower_ || a.N_ != b.N_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
  return true;
}

// ---- normalization and arithmetic ---------------------------------------

DigitSeries normalize(const GrSeries& x, const Exponent& N) {
  const RingPtr& ring = x.proto().ring();
  if (Exponent(static_cast<long>(ring->m())) < N)
    throw PrecisionTooLow("ring length " + std::to_string(ring->m()) + " below precision " + N.to_string());
  const Exponent prec = min(N, x.prec());
  auto tower = ring->tower();
  std::map<Exponent, GrElem> work;
  for (const auto& [e, c] : x.terms()) {
    if (e.sign() < 0) throw InvalidInput("negative exponent " + e.to_string() + " cannot be normalized");
    if (e < prec) work.emplace(e, c);
  }
  std::vector<DigitSeries::Term> digits;
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    const Exponent& e = node.key();
    GrElem& c = node.mapped();
    if (e >= prec) break;
    const FqElem digit = c.reduce();
    GrElem rest = c;
    if (!digit.is_zero()) {
      digits.emplace_back(e, digit);
      rest = c - teichmuller(digit, c.ring());
    }
    if (rest.is_zero()) continue;
    rest = rest.div_p(1);
    Exponent next = e + Exponent(1);
    if (next >= prec || rest.is_zero()) continue;
    auto it = work.find(next);
    if (it == work.end()) work.emplace(std::move(next), std::move(rest));
    else it->second += rest;
  }
  return DigitSeries(tower, std::move(digits), prec);
}

GrSeries ds_lift(const DigitSeries& x, unsigned m) {
  auto tower = x.tower();
  std::vector<GrSeries::Term> terms;
  for (const auto& [e, c] : x.terms()) terms.emplace_back(e, teichmuller(c, tower->galois_ring(m, c.degree())));
  return GrSeries(GrElem::zero(tower->galois_ring(m, 1)), std::move(terms), x.N());
}

namespace {

void check_same(const DigitSeries& x, const DigitSeries& y) {
  if (x.tower() != y.tower()) throw RingMismatch("digit series over different towers");
}

}  // namespace

DigitSeries ds_add(const DigitSeries& x, const DigitSeries& y) {
  check_same(x, y);
  if (y.is_zero() && y.N() >= x.N()) return x;
  if (x.is_zero() && x.N() >= y.N()) return y;
  const Exponent N = min(x.N(), y.N());
  const unsigned m = length_for(N);
  return normalize(ds_lift(x, m) + ds_lift(y, m), N);
}

DigitSeries ds_neg(const DigitSeries& x) {
  if (x.is_zero()) return x;
  const unsigned m = length_for(x.N());
  return normalize(-ds_lift(x, m), x.N());
}

DigitSeries ds_sub(const DigitSeries& x, const DigitSeries& y) { return ds_add(x, ds_neg(y)); }

DigitSeries ds_mul(const DigitSeries& x, const DigitSeries& y) {
  check_same(x, y);
  const Exponent N = min(x.N() + y.val_bound(), y.N() + x.val_bound());
  const unsigned m = length_for(N);
  return normalize(ds_lift(x, m) * ds_lift(y, m), N);
}

DigitSeries ds_times_monomial(const DigitSeries& x, const FqElem& c, const Exponent& e) {
  if (c.is_zero()) return DigitSeries(x.tower(), x.N() + e);
  std::vector<DigitSeries::Term> out;
  for (const auto& [f, d] : x.terms()) out.emplace_back(f + e, d * c);
  return DigitSeries(x.tower(), std::move(out), x.N() + e);
}

DigitSeries ds_scale_int(const DigitSeries& x, const mpz_class& n) {
  if (n == 1) return x;
  if (n == 0) return DigitSeries(x.tower(), x.N());
  const Exponent N = x.N() + Exponent(static_cast<long>(p_valuation(n, x.p())));
  if (x.is_zero()) return DigitSeries(x.tower(), N);
  const unsigned m = length_for(N);
  GrSeries lifted = ds_lift(x, m);
  const std::uint64_t pm = x.tower()->galois_ring(m, 1)->modulus();
  mpz_class r = n % mpz_class(static_cast<unsigned long>(pm));
  if (r < 0) r += static_cast<unsigned long>(pm);
  const GrElem factor = GrElem::from_int(lifted.proto().ring(), static_cast<long long>(r.get_ui()));
  // The lift is exact beyond N, so the scaled value is known mod p^{N + v(n)}.
  return normalize(GrSeries(lifted.proto(), lifted.scale(factor).terms(), N), N);
}

Valuation v_p(const DigitSeries& x) { return x.valuation(); }

DigitSeries ds_from_gr(const GrElem& z, const Exponent& N) {
  std::vector<DigitSeries::Term> terms;
  const auto ds = digits(z);
  for (std::size_t i = 0; i < ds.size(); ++i) terms.emplace_back(Exponent(static_cast<long>(i)), ds[i]);
  return DigitSeries(z.ring()->tower(), std::move(terms), N);
}

DigitSeries ds_from_series(const FqSeries& y) { return DigitSeries(y.proto().tower(), y.terms(), y.prec()); }

// ---- solvers -------------------------------------------------------------

std::vector<DigitRoot> solve_roots_mixed(const SeriesPoly<DigitSeries>& Q, const Exponent& target, unsigned max_steps) {
  return RootSolver<DigitSeries>(Q, target, max_steps).run();
}

std::vector<DigitRoot> solve_over_witt(const std::vector<GrElem>& Q, const Exponent& target, unsigned max_steps) {
  if (Q.size() < 2) throw InvalidInput("polynomial of degree < 1");
  if (!(Q[0] == GrElem::one(Q[0].ring()))) throw InvalidInput("polynomial is not monic");
  std::vector<PolygonPoint> pts;
  for (std::size_t i = 0; i < Q.size(); ++i)
    if (!Q[i].is_zero()) pts.push_back({static_cast<int>(i), {Exponent(static_cast<long>(Q[i].valuation())), true}});
  Exponent rise(0);
  if (pts.size() >= 2) {
    const NewtonPolygon poly = newton_polygon(pts);
    rise = max(Exponent(0), poly.vertices.back().val.value - poly.vertices.front().val.value);
  }
  const Exponent N = target + Exponent(rise.ceil_long() + 2);
  SeriesPoly<DigitSeries> D;
  for (const auto& c : Q) D.push_back(ds_from_gr(c, N));
  return solve_roots_mixed(D, target, max_steps);
}

std::vector<RootPair> lift_root_pair(const SeriesPoly<FqSeries>& P, const SeriesPoly<DigitSeries>& Q, const Exponent& k,
                                     unsigned max_steps) {
  if (k.sign() <= 0 || k > Exponent(1)) throw InvalidInput("k must lie in (0, 1], got " + k.to_string());
  if (P.size() != Q.size()) throw InvalidInput("polynomials of different degree");
  const NewtonPolygon pp = polygon_of(P);
  const NewtonPolygon pq = polygon_of(Q);
  auto same = [&] {
    if (pp.segments.size() != pq.segments.size()) return false;
    for (std::size_t i = 0; i < pp.segments.size(); ++i) {
      const auto &a = pp.segments[i], &b = pq.segments[i];
      if (!a.determined || !b.determined || a.left != b.left || a.right != b.right || a.slope != b.slope) return false;
    }
    return pp.vertices.front().val == pq.vertices.front().val;
  };
  if (!same()) throw InvalidInput("Newton polygons differ: " + pp.to_string() + " vs " + pq.to_string());

  for (std::size_t i = 0; i < P.size(); ++i) {
    const bool zero = !P[i].valuation().determined;
    const Exponent window = zero ? min(P[i].prec(), Q[i].N()) : P[i].val_bound() + k;
    if (!zero && (P[i].prec() < window || Q[i].N() < window))
      throw PrecisionTooLow("coefficient " + std::to_string(i) + " not known modulo p^" + window.to_string());
    std::vector<Exponent> exps = P[i].support();
    for (const auto& e : Q[i].support()) exps.push_back(e);
    for (const auto& e : exps)
      if (e < window && !(P[i].coeff(e) == Q[i].digit_at(e)))
        throw InvalidInput("coefficient " + std::to_string(i) + " differs at exponent " + e.to_string() +
                           " below " + window.to_string());
  }

  Exponent target(0);
  for (const auto& [s, mult] : pp.slopes()) target = max(target, s + k / Exponent(static_cast<long>(mult)));
  const auto ys = solve_roots(P, target, max_steps);
  const auto zs = solve_roots_mixed(Q, target, max_steps);

  std::vector<RootPair> out;
  for (const auto& [s, mult] : pp.slopes()) {
    const Exponent required = k / Exponent(static_cast<long>(mult)) + s;
    std::vector<const RootApprox<FqSeries>*> ylist;
    std::vector<const DigitRoot*> zlist;
    for (const auto& y : ys)
      if (y.valuation.determined && y.valuation.value == s)
        for (unsigned c = 0; c < y.multiplicity; ++c) ylist.push_back(&y);
    for (const auto& z : zs)
      if (z.valuation.determined && z.valuation.value == s)
        for (unsigned c = 0; c < z.multiplicity; ++c) zlist.push_back(&z);
    std::vector<bool> used(zlist.size(), false);
    for (const auto* y : ylist) {
      const DigitSeries image = ds_from_series(y->value);
      std::optional<std::size_t> best;
      Exponent best_agree(0);
      for (std::size_t j = 0; j < zlist.size(); ++j) {
        if (used[j]) continue;
        const Exponent agree = ds_sub(image, zlist[j]->value).val_bound();
        if (!best || agree > best_agree) {
          best = j;
          best_agree = agree;
        }
      }
      if (!best) throw InternalError("no root of slope " + s.to_string() + " left to pair");
      used[*best] = true;
      out.push_back({y->value, zlist[*best]->value, s, mult, required, best_agree, best_agree >= required});
    }
  }
  return out;
}

}  // namespace closure
