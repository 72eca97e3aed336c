// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when a
// criterion fails that is not listed in kKnownUnattainable.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "closure/cli.hpp"
#include "closure/galois_ring.hpp"
#include "closure/gfield.hpp"
#include "closure/newton.hpp"
#include "closure/padic_series.hpp"
#include "closure/twistrec.hpp"
#include "oracles.hpp"

using namespace closure;
using nlohmann::json;

namespace {

const std::set<int> kKnownUnattainable{12};
const Exponent kExact(1000);

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0: no time limit
  std::function<Outcome()> body;
};

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

FqSeries one_of(const std::shared_ptr<FieldTower>& T) { return FqSeries::constant(T->from_int(1), kExact); }

GrElem random_gr(const RingPtr& R, std::mt19937_64& rng) {
  std::vector<std::uint64_t> v(R->d());
  for (auto& x : v) x = rng() % R->modulus();
  return GrElem(R, v);
}

GrElem random_unit(const RingPtr& R, std::mt19937_64& rng) {
  GrElem u = random_gr(R, rng);
  while (!u.is_unit()) u = random_gr(R, rng);
  return u;
}

Recurrence random_relation(const RingPtr& R, unsigned k, std::mt19937_64& rng) {
  std::vector<GrElem> d{random_unit(R, rng)};
  for (unsigned j = 1; j < k; ++j) d.push_back(random_gr(R, rng));
  d.push_back(GrElem::one(R));
  return Recurrence(d);
}

std::vector<GrElem> random_solution(const SolutionBasis& B, std::mt19937_64& rng, std::size_t length) {
  const RingPtr L = B.ring->tower()->galois_ring(B.ring->m(), B.ring->d());
  std::vector<GrElem> lambda;
  for (std::size_t i = 0; i < B.z.size(); ++i) lambda.push_back(random_gr(L, rng));
  return solution_sequence(B.z, lambda, length);
}

DigitSeries truncated(const DigitSeries& x, const Exponent& N) { return DigitSeries(x.tower(), x.terms(), N); }

// ---- 1-3: finite structures -----------------------------------------------------

Outcome galois_ring_oracle() {
  unsigned bad = 0, trials = 0;
  for (auto [p, m] : {std::pair{2u, 5u}, {3u, 4u}, {5u, 3u}}) {
    const ZpmReport r = zpm_oracle_check(p, m, 1000, 17);
    bad += r.mismatches;
    trials += r.trials;
  }
  return {bad == 0, std::to_string(bad) + " mismatches in " + std::to_string(trials) + " add/mul pairs"};
}

Outcome teichmuller_law() {
  unsigned long pairs = 0, bad = 0, rings = 0;
  for (std::uint64_t p = 2; p * p <= 65536; ++p) {
    if (!is_prime(p)) continue;
    auto T = FieldTower::create(p);
    for (unsigned d = 1;; ++d) {
      mpz_class size;
      mpz_ui_pow_ui(size.get_mpz_t(), p, 2 * d);
      if (size > 65536) break;
      const auto elems = oracle::all_elements(T, d);
      for (unsigned m = 2;; ++m) {
        mpz_ui_pow_ui(size.get_mpz_t(), p, m * d);
        if (size > 65536) break;
        ++rings;
        const RingPtr R = T->galois_ring(m, d);
        std::vector<GrElem> lifts;
        for (const auto& x : elems) lifts.push_back(teichmuller(x, R));
        for (std::size_t i = 0; i < elems.size(); ++i)
          for (std::size_t j = i; j < elems.size(); ++j) {
            ++pairs;
            if (!(lifts[i] * lifts[j] == teichmuller(elems[i] * elems[j], R))) ++bad;
          }
      }
    }
  }
  return {bad == 0, std::to_string(bad) + " failures over " + std::to_string(pairs) + " pairs in " +
                        std::to_string(rings) + " rings W_m(F_{p^d}), m >= 2, p^{md} <= 2^16"};
}

// Brute force over F_{p^d}: Horner test on every element, then repeated
// synthetic division at the roots.
std::vector<std::pair<FqElem, unsigned>> exhaustive_roots(const FqPoly& f, const std::shared_ptr<FieldTower>& T,
                                                          unsigned d) {
  std::vector<std::pair<FqElem, unsigned>> out;
  for (const auto& a : oracle::all_elements(T, d)) {
    if (!poly_eval(f, a).is_zero()) continue;
    FqPoly g = f;
    unsigned mult = 0;
    while (g.size() > 1) {
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
    out.emplace_back(a, mult);
  }
  return out;
}

Outcome finite_field_roots() {
  std::mt19937_64 rng(303);
  std::vector<std::pair<std::uint64_t, unsigned>> fields;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    std::uint64_t q = p;
    for (unsigned d = 1; q <= 4096; ++d, q *= p) fields.emplace_back(p, d);
  }
  std::map<std::uint64_t, std::shared_ptr<FieldTower>> towers;
  unsigned bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto [p, d] = fields[rng() % fields.size()];
    auto& T = towers[p];
    if (!T) T = FieldTower::create(p);
    const auto f = oracle::random_poly(T, d, 1 + static_cast<unsigned>(rng() % 6), rng);
    const auto got = poly_roots(f, T);
    unsigned total = 0;
    std::map<std::vector<Coord>, unsigned> in_base;
    const auto want = exhaustive_roots(f, T, d);
    for (const auto& r : got) {
      total += r.multiplicity;
      if (!poly_eval(f, r.root).is_zero()) ++bad;
      for (const auto& [w, m] : want)
        if (T->embed(w, r.root.degree()).coeffs() == r.root.coeffs()) in_base[w.coeffs()] = r.multiplicity;
    }
    bool ok = total == f.size() - 1 && in_base.size() == want.size();
    for (const auto& [w, m] : want) ok = ok && in_base[w.coeffs()] == m;
    // Roots of f outside F_{p^d} must not be fixed by the d-th Frobenius power.
    unsigned fixed = 0;
    for (const auto& r : got)
      if (frobenius(r.root, static_cast<long>(d)) == r.root) fixed += 1;
    ok = ok && fixed == want.size();
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/200 polynomials disagree with exhaustive search"};
}

// ---- 4-6: equal characteristic --------------------------------------------------

Outcome polygon_duality() {
  std::mt19937_64 rng(404);
  unsigned bad = 0, count = 0;
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto T = FieldTower::create(p);
    for (int trial = 0; trial < 34 && count < 100; ++trial, ++count) {
      std::vector<FqSeries> ys;
      std::vector<Exponent> vals;
      const int n = 1 + static_cast<int>(rng() % 5);
      while (static_cast<int>(ys.size()) < n) {
        auto y = oracle::random_root(T, 1 + static_cast<unsigned>(rng() % 2), rng, static_cast<long>(rng() % 3), kExact);
        if (y.is_zero()) continue;
        vals.push_back(y.valuation().value);
        ys.push_back(y);
      }
      std::sort(vals.begin(), vals.end());
      std::vector<Exponent> slopes;
      for (const auto& [s, m] : polygon_of(oracle::poly_from_roots(ys, one_of(T))).slopes())
        for (unsigned k = 0; k < m; ++k) slopes.push_back(s);
      if (slopes != vals) ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + "/" + std::to_string(count) + " slope multisets differ"};
}

Outcome construct_then_solve() {
  std::mt19937_64 rng(505);
  const Exponent target(10);
  unsigned bad = 0, count = 0;
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto T = FieldTower::create(p);
    for (int trial = 0; trial < 34 && count < 100; ++trial, ++count) {
      std::vector<FqSeries> ys;
      const int n = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < n; ++i)
        ys.push_back(oracle::random_root(T, 1 + static_cast<unsigned>(rng() % 2), rng, 0, kExact));
      const auto roots = solve_roots(oracle::poly_from_roots(ys, one_of(T)), target);
      std::vector<bool> used(ys.size(), false);
      unsigned total = 0;
      bool ok = true;
      for (const auto& r : roots) {
        ok = ok && r.status == RootStatus::certified;
        total += r.multiplicity;
        unsigned matched = 0;
        for (std::size_t i = 0; i < ys.size() && matched < r.multiplicity; ++i)
          if (!used[i] && oracle::agree_below(ys[i], r.value, target)) {
            used[i] = true;
            ++matched;
          }
        ok = ok && matched == r.multiplicity;
      }
      if (!ok || total != ys.size()) ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + "/" + std::to_string(count) + " root sets not recovered mod t^10"};
}

Outcome artin_schreier() {
  auto T = FieldTower::create(2);
  const FqElem one = T->from_int(1);
  const SeriesPoly<FqSeries> P{one_of(T), one_of(T), FqSeries::monomial(one, 1, kExact)};
  const auto roots = solve_roots(P, 20);
  unsigned hits = 0;
  for (const auto& r : roots) {
    std::vector<Exponent> below;
    bool ones = true;
    for (const auto& [e, c] : r.value.terms())
      if (e < Exponent(20)) {
        below.push_back(e);
        ones = ones && c.is_one();
      }
    if (ones && below == std::vector<Exponent>{1, 2, 4, 8, 16} && r.status == RootStatus::certified) ++hits;
  }
  // The same fixture through the command-line front end.
  cli::JobConfig c;
  c.command = {"solve-series"};
  c.in = std::string(FIXTURE_DIR) + "/artin_schreier.json";
  c.target = Exponent(20);
  c.json = true;
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  unsigned cli_hits = 0;
  const json report = code == 0 ? json::parse(out.str()) : json::object();
  if (report.contains("roots"))
    for (const auto& r : report["roots"]) {
      std::vector<std::string> below;
      for (const auto& e : r["support"])
        if (Exponent::parse(e.get<std::string>()) < Exponent(20)) below.push_back(e.get<std::string>());
      if (below == std::vector<std::string>{"1", "2", "4", "8", "16"}) ++cli_hits;
    }
  return {hits == 1 && cli_hits == 1,
          std::to_string(roots.size()) + " roots; " + std::to_string(hits) +
              " with support {1,2,4,8,16} below t^20 (the other is 1 + y); cli exit " + std::to_string(code)};
}

// ---- 7-8, 11: mixed characteristic ----------------------------------------------

GrSeries random_gr_series(const RingPtr& R, std::mt19937_64& rng, const Exponent& prec) {
  std::vector<GrSeries::Term> terms;
  const int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    const long den = 1 + static_cast<long>(rng() % 3);
    terms.emplace_back(Exponent(static_cast<long>(rng() % (3 * den)), den), random_gr(R, rng));
  }
  return GrSeries(GrElem::zero(R), std::move(terms), prec);
}

Outcome normalization_homomorphism() {
  std::mt19937_64 rng(707);
  auto T2 = FieldTower::create(2);
  auto T3 = FieldTower::create(3);
  unsigned bad = 0, count = 0;
  for (const RingPtr& R : {T2->galois_ring(6, 2), T3->galois_ring(4, 1)}) {
    const Exponent N(static_cast<long>(R->m()));
    for (int i = 0; i < 250; ++i, ++count) {
      const GrSeries x = random_gr_series(R, rng, N), y = random_gr_series(R, rng, N);
      const DigitSeries nx = normalize(x, N), ny = normalize(y, N);
      bool ok = ds_add(nx, ny) == normalize(x + y, N);
      const DigitSeries lhs = ds_mul(nx, ny), rhs = normalize(x * y, N);
      const Exponent common = min(lhs.N(), rhs.N());
      ok = ok && truncated(lhs, common) == truncated(rhs, common);
      if (!ok) ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + "/" + std::to_string(count) + " pairs break add or mul"};
}

Outcome mixed_certificate() {
  std::mt19937_64 rng(808);
  const Exponent target(8);
  constexpr unsigned kSteps = 24;
  unsigned bad = 0, roots_seen = 0, flagged = 0, polys = 0;
  for (std::uint64_t p : {2u, 3u}) {
    auto T = FieldTower::create(p);
    for (int trial = 0; trial < 50; ++trial, ++polys) {
      const RingPtr R = T->galois_ring(4, 1 + static_cast<unsigned>(rng() % 2));
      const unsigned deg = 1 + static_cast<unsigned>(rng() % 3);
      std::vector<GrElem> Q{GrElem::one(R)};
      for (unsigned i = 0; i < deg; ++i) Q.push_back(random_gr(R, rng));
      const auto roots = solve_over_witt(Q, target, kSteps);
      // Independent re-substitution at the solver's working precision.
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
      unsigned mult = 0;
      for (const auto& r : roots) {
        ++roots_seen;
        mult += r.multiplicity;
        const Exponent v = v_p(evaluate(D, r.value.terms())).value;
        if (r.exhausted) ++flagged;
        else if (v < target || r.slope_reached < target) ++bad;
      }
      if (mult != deg) ++bad;
    }
  }
  return {bad == 0, std::to_string(polys) + " polynomials, " + std::to_string(roots_seen) + " root branches, " +
                        std::to_string(flagged) + " flagged exhausted (budget " + std::to_string(kSteps) + "), " +
                        std::to_string(bad) + " uncertified"};
}

Outcome lift_congruence() {
  std::mt19937_64 rng(1111);
  const Exponent prec(12);
  unsigned bad = 0, pairs = 0, built = 0;
  while (built < 50) {
    const std::uint64_t p = built % 2 ? 3 : 2;
    auto T = FieldTower::create(p);
    std::vector<FqSeries> ys;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) ys.push_back(oracle::random_root(T, 1, rng, 0, prec));
    bool zero_root = false;
    for (const auto& y : ys) zero_root = zero_root || y.is_zero();
    if (zero_root) continue;
    auto P = oracle::poly_from_roots(ys, FqSeries::constant(T->from_int(1), prec));
    for (auto& a : P) a = hs_truncate(a, prec);
    // Q agrees digitwise with P below v(a_i) + 1 and is perturbed above it.
    SeriesPoly<DigitSeries> Q;
    for (std::size_t i = 0; i < P.size(); ++i) {
      DigitSeries q = ds_from_series(P[i]);
      if (i > 0 && !P[i].is_zero()) {
        const Exponent from = P[i].valuation().value + Exponent(1);
        for (int j = 0, m = static_cast<int>(rng() % 3); j < m; ++j) {
          const Exponent e = from + Exponent(static_cast<long>(rng() % 6), 2);
          q = ds_add(q, DigitSeries(T, {{e, T->from_int(1 + static_cast<long>(rng() % (p - 1)))}}, prec));
        }
      }
      Q.push_back(q);
    }
    ++built;
    try {
      for (const auto& pr : lift_root_pair(P, Q, 1, 24)) {
        ++pairs;
        if (!pr.holds || pr.required != Exponent(1) / Exponent(static_cast<long>(pr.slope_multiplicity)) + pr.slope)
          ++bad;
      }
    } catch (const Error& e) {
      ++bad;
    }
  }
  return {bad == 0, std::to_string(built) + " constructed pairs, " + std::to_string(pairs) + " root pairs, " +
                        std::to_string(bad) + " not congruent mod p^{1/m+s}"};
}

// ---- 9-10, 13: twist recurrences -------------------------------------------------

Outcome semilinear_rank() {
  std::mt19937_64 rng(909);
  auto T = FieldTower::create(2);
  unsigned bad = 0, enumerated = 0, skipped = 0;
  std::string degrees;
  for (unsigned d : {1u, 2u})
    for (unsigned n : {1u, 2u})
      for (int trial = 0; trial < 3; ++trial) {
        const RingPtr R = T->galois_ring(2, d);
        const Recurrence r = random_relation(R, n, rng);
        const SolutionBasis B = solve_semilinear(r);
        const unsigned D = B.ring->d();
        degrees += (degrees.empty() ? "" : ",") + std::to_string(D);
        if (D > 12) {
          ++skipped;
          continue;
        }
        ++enumerated;
        // P(F) is additive, so P(F)(sum c_i theta^i) = sum c_i P(F)(theta^i):
        // an odometer over (Z/4)^D visits every ring element with one vector
        // addition per step.
        const RingPtr W = B.ring;
        std::vector<std::vector<std::uint64_t>> v;
        for (unsigned i = 0; i < D; ++i) {
          std::vector<std::uint64_t> e(D, 0);
          e[i] = 1;
          v.push_back(r.apply(GrElem(W, e)).coeffs());
        }
        std::vector<std::uint64_t> c(D, 0), img(D, 0);
        std::set<std::vector<std::uint64_t>> kernel;
        while (true) {
          if (std::all_of(img.begin(), img.end(), [](std::uint64_t x) { return x == 0; })) kernel.insert(c);
          unsigned i = 0;
          for (; i < D; ++i) {
            for (unsigned k = 0; k < D; ++k) img[k] = (img[k] + v[i][k]) & 3;
            if (++c[i] < 4) break;
            c[i] = 0;
          }
          if (i == D) break;
        }
        std::set<std::vector<std::uint64_t>> span{std::vector<std::uint64_t>(D, 0)};
        for (const auto& z : B.z) {
          std::set<std::vector<std::uint64_t>> next;
          for (const auto& s : span)
            for (long k = 0; k < 4; ++k) next.insert((GrElem(W, s) + GrElem::from_int(W, k) * z).coeffs());
          span = std::move(next);
        }
        if (kernel.size() != (1u << (2 * n)) || span != kernel || B.z.size() != n) ++bad;
      }
  return {bad == 0 && skipped == 0, std::to_string(enumerated) + " relations enumerated (residue degrees " + degrees +
                                        "), " + std::to_string(skipped) + " too large, " + std::to_string(bad) +
                                        " with kernel size != 2^{2n} or span != kernel"};
}

Outcome combination() {
  std::mt19937_64 rng(1010);
  auto T = FieldTower::create(2);
  const RingPtr R = T->galois_ring(2, 2);
  unsigned bad = 0, samples = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Recurrence a = random_relation(R, 1 + static_cast<unsigned>(rng() % 2), rng);
    const Recurrence b = random_relation(R, 1 + static_cast<unsigned>(rng() % 2), rng);
    const SolutionBasis Ba = solve_semilinear(a), Bb = solve_semilinear(b);
    const Recurrence sum = combine_sum(a, b), prod = combine_product(a, b);
    for (int i = 0; i < 5; ++i, ++samples) {
      const auto x = random_solution(Ba, rng, 10), y = random_solution(Bb, rng, 10);
      std::vector<GrElem> s, pr;
      for (std::size_t k = 0; k < x.size(); ++k) {
        s.push_back(x[k] + y[k]);
        pr.push_back(x[k] * y[k]);
      }
      if (!check_recurrence(x, a) || !check_recurrence(y, b) || !check_recurrence(s, sum) ||
          !check_recurrence(pr, prod))
        ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + "/" + std::to_string(samples) + " solution pairs not annihilated"};
}

Outcome split_round_trip() {
  std::mt19937_64 rng(1313);
  auto T = FieldTower::create(2);
  const RingPtr R = T->galois_ring(2, 2);
  unsigned bad_to = 0, bad_from = 0, sequences = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Recurrence r = random_relation(R, 1, rng);
    const auto comps = split_to_components(r);
    const SolutionBasis B = solve_semilinear(r);
    for (int s = 0; s < 5; ++s, ++sequences) {
      const auto seq = random_solution(B, rng, 10);
      for (unsigned i = 0; i < 2; ++i) {
        std::vector<GrElem> coord;
        for (const auto& c : seq) coord.push_back(GrElem::naive_lift(T->galois_ring(1, c.d()), witt_coords(c)[i]));
        if (!check_recurrence(coord, comps[i])) ++bad_to;
      }
    }
    const Recurrence back = split_from_components(comps, 2);
    const std::vector<SolutionBasis> cb{solve_semilinear(comps[0]), solve_semilinear(comps[1])};
    for (int s = 0; s < 5; ++s) {
      const auto w0 = random_solution(cb[0], rng, 10), w1 = random_solution(cb[1], rng, 10);
      std::vector<GrElem> seq;
      for (std::size_t n = 0; n < w0.size(); ++n) {
        auto [a, b] = common_ring(w0[n], w1[n]);
        seq.push_back(from_witt_coords({a.reduce(), b.reduce()}, T->galois_ring(2, a.d())));
      }
      if (!check_recurrence(seq, back)) ++bad_from;
    }
  }
  return {bad_to == 0 && bad_from == 0, std::to_string(sequences) + " sampled solutions; " + std::to_string(bad_to) +
                                            " coordinate failures, " + std::to_string(bad_from) +
                                            " recombined failures"};
}

// ---- 12: Lampert ------------------------------------------------------------------

Outcome lampert() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t p : {2u, 3u}) {
    cli::JobConfig c;
    c.command = {"lampert"};
    c.p = p;
    c.target = Exponent(6);
    c.json = true;
    std::ostringstream out, err;
    const int code = cli::run(c, out, err);
    const json r = json::parse(out.str());
    const bool completed = (code == cli::kOk || code == cli::kExhausted) && r.contains("roots");
    const bool fit = r.contains("sab_fit");
    const bool certified = completed && r["certificate"]["reaches_target"].get<bool>();
    const std::string archive = "lampert_p" + std::to_string(p) + ".json";
    std::ofstream(archive) << r.dump(2) << "\n";
    pass = pass && completed && fit && certified;
    detail += (detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + ": exit " + std::to_string(code) +
              ", min v_p(Q(r)) = " +
              (completed ? r["certificate"]["min_substitution_valuation"].get<std::string>() : "?") +
              ", sab_fit " + (fit ? r["sab_fit"].dump() : "missing") + ", support archived to " + archive;
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "galois ring matches Z/p^m", 1, galois_ring_oracle},
      {2, "teichmuller multiplicativity, exhaustive", 10, teichmuller_law},
      {3, "finite-field roots vs exhaustive search", 30, finite_field_roots},
      {4, "polygon slopes = root valuations", 0, polygon_duality},
      {5, "equal-characteristic construct-then-solve", 60, construct_then_solve},
      {6, "artin-schreier x^2 + x + t", 0, artin_schreier},
      {7, "carry normalization homomorphism", 60, normalization_homomorphism},
      {8, "mixed solver certificates", 300, mixed_certificate},
      {9, "semilinear hensel rank, exhaustive", 60, semilinear_rank},
      {10, "combination of recurrences", 0, combination},
      {11, "root congruence for congruent polynomials", 0, lift_congruence},
      {12, "lampert experiment certificate", 0, lampert},
      {13, "witt component split round trip", 0, split_round_trip},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += " [over time limit " + std::to_string(static_cast<int>(c.limit_s)) + " s]";
    }
    if (!o.pass && !kKnownUnattainable.count(c.id)) ++unexpected;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << timing << "): " << o.detail
              << (o.pass || !kKnownUnattainable.count(c.id) ? "" : " (known unattainable, see README)") << std::endl;
  }
  return unexpected == 0 ? 0 : 1;
}
