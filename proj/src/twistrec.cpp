#include "closure/twistrec.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "closure/error.hpp"

namespace closure {

namespace {

using Vec = std::vector<std::uint64_t>;

// Every element moved to W_m(F_{p^D}) with m the least length and D the lcm
// of the residue degrees.
std::vector<GrElem> to_common(const std::vector<GrElem>& xs) {
  if (xs.empty()) return {};
  unsigned m = xs.front().m(), D = 1;
  for (const auto& x : xs) {
    if (x.p() != xs.front().p()) throw RingMismatch("elements of different characteristic");
    m = std::min(m, x.m());
    D = std::lcm(D, x.d());
  }
  std::vector<GrElem> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(embed(change_length(x, m), D));
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t n) {
  mpz_class r;
  const mpz_class A(static_cast<unsigned long>(a)), N(static_cast<unsigned long>(n));
  if (!mpz_invert(r.get_mpz_t(), A.get_mpz_t(), N.get_mpz_t())) throw NotAUnit("no inverse modulo " + std::to_string(n));
  return r.get_ui();
}

unsigned vp(std::uint64_t x, std::uint64_t p, unsigned m) {
  if (x == 0) return m;
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// L(t) = t^{p^n} + sum_j c_j t^{p^j} evaluated on a field element.
FqElem additive_eval(const std::vector<FqElem>& c, const FqElem& t) {
  FqElem acc = frobenius(t, static_cast<long>(c.size()));
  for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * frobenius(t, static_cast<long>(j));
  return acc;
}

// Solves L(t) = beta inside F_{p^D} as an F_p-linear system.
std::optional<FqElem> solve_additive(const std::vector<FqElem>& c, const FqElem& beta, const LevelPtr& level) {
  const unsigned D = level->degree;
  const std::uint64_t p = level->p;
  auto tower = level->tower.lock();
  // Augmented matrix, one row per coordinate.
  std::vector<Vec> A(D, Vec(D + 1, 0));
  for (unsigned i = 0; i < D; ++i) {
    std::vector<Coord> e(D, 0);
    e[i] = 1;
    const FqElem img = tower->embed(additive_eval(c, FqElem(level, e)), D);
    for (unsigned r = 0; r < D; ++r) A[r][i] = img.coeffs()[r];
  }
  const FqElem b = tower->embed(beta, D);
  for (unsigned r = 0; r < D; ++r) A[r][D] = b.coeffs()[r];
  std::vector<int> pivot_col;
  unsigned row = 0;
  for (unsigned col = 0; col < D && row < D; ++col) {
    unsigned sel = row;
    while (sel < D && A[sel][col] == 0) ++sel;
    if (sel == D) continue;
    std::swap(A[sel], A[row]);
    const std::uint64_t inv = invmod(A[row][col], p);
    for (auto& x : A[row]) x = mulmod(x, inv, p);
    for (unsigned r = 0; r < D; ++r) {
      if (r == row || A[r][col] == 0) continue;
      const std::uint64_t f = A[r][col];
      for (unsigned k = 0; k <= D; ++k) A[r][k] = (A[r][k] + p - mulmod(f, A[row][k], p)) % p;
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  for (unsigned r = row; r < D; ++r)
    if (A[r][D] != 0) return std::nullopt;
  std::vector<Coord> t(D, 0);
  for (unsigned r = 0; r < row; ++r) t[pivot_col[r]] = A[r][D];
  return FqElem(level, t);
}

// t^{p^n} + sum_j c_j t^{p^j} + constant, low degree first.
FqPoly additive_poly(const std::vector<FqElem>& c, std::uint64_t p, const FqElem& constant) {
  std::size_t deg = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    deg *= p;
    if (deg > 4096) throw InvalidInput("additive polynomial of degree above 4096");
  }
  const LevelPtr& F = constant.level();
  FqPoly f(deg + 1, FqElem::zero(F));
  f[0] = constant;
  std::size_t idx = 1;
  for (const auto& x : c) {
    f[idx] = x;
    idx *= p;
  }
  f[deg] = FqElem::one(F);
  return f;
}

GrElem operator_apply(const std::vector<GrElem>& lower, const GrElem& z) {
  GrElem acc = sigma(z, static_cast<long>(lower.size()));
  for (std::size_t j = 0; j < lower.size(); ++j) acc += lower[j] * sigma(z, static_cast<long>(j));
  return acc;
}

// Lifts of a residue-field basis to solutions, growing the residue degree
// whenever the linearized equation has no solution at the current level.
SolutionBasis hensel_lift(const std::vector<GrElem>& lower, const std::vector<FqElem>& base, unsigned D) {
  const RingPtr& R0 = lower.front().ring();
  auto tower = R0->tower();
  const unsigned m = R0->m();
  std::vector<FqElem> cbar;
  for (const auto& d : lower) cbar.push_back(d.reduce());
  std::vector<GrElem> out;
  for (const auto& s : base) {
    GrElem z = GrElem::naive_lift(tower->galois_ring(m, D), tower->embed(s, D));
    for (unsigned k = 1; k < m; ++k) {
      const GrElem e = operator_apply(lower, z);
      if (e.is_zero()) break;
      if (e.valuation() < k) throw InternalError("Hensel step lost congruence at p^" + std::to_string(k));
      const FqElem beta = -e.div_p(k).reduce();
      auto t = solve_additive(cbar, beta, tower->level(D));
      if (!t) {
        const FqPoly f = additive_poly(cbar, R0->p(), -beta);
        unsigned S = D;
        for (const auto& rm : poly_roots(f, tower)) S = std::lcm(S, rm.root.degree());
        D = S;
        z = embed(z, D);
        t = solve_additive(cbar, beta, tower->level(D));
        if (!t) throw InternalError("linearized equation unsolvable at the splitting level");
      }
      z += GrElem::naive_lift(z.ring(), *t).mul_p(k);
    }
    out.push_back(z);
  }
  for (auto& z : out) z = embed(z, D);
  for (const auto& z : out)
    if (!operator_apply(lower, z).is_zero()) throw InternalError("lifted element is not a solution");
  return {out, out.front().ring()};
}

std::string join(const std::vector<GrElem>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i].to_string();
  return os.str();
}

}  // namespace

// ---- Recurrence ----------------------------------------------------------

Recurrence::Recurrence(std::vector<GrElem> coeffs) {
  if (coeffs.size() < 2) throw InvalidInput("twist-recurrence of order < 1");
  d_ = to_common(coeffs);
  if (!d_.back().is_unit()) throw InvalidInput("leading coefficient " + d_.back().to_string() + " is not a unit");
  const GrElem inv = d_.back().inverse();
  for (auto& d : d_) d = d * inv;
}

GrElem Recurrence::apply(const GrElem& z) const {
  return operator_apply(std::vector<GrElem>(d_.begin(), d_.end() - 1), z);
}

std::string Recurrence::to_string() const { return "[" + join(d_) + "]"; }

bool operator==(const Recurrence& a, const Recurrence& b) {
  if (a.d_.size() != b.d_.size()) return false;
  for (std::size_t i = 0; i < a.d_.size(); ++i)
    if (!(a.d_[i] - b.d_[i]).is_zero()) return false;
  return true;
}

// ---- solutions -------------------------------------------------------------

SolutionBasis solve_semilinear(const std::vector<GrElem>& lower_in) {
  if (lower_in.empty()) throw InvalidInput("operator of order 0");
  const std::vector<GrElem> lower = to_common(lower_in);
  if (!lower.front().is_unit())
    throw NotApplicable("d_0 = " + lower.front().to_string() + " is not a unit; P(F)z = 0 has no free solution module");
  const RingPtr& R = lower.front().ring();
  auto tower = R->tower();
  const std::uint64_t p = R->p();
  const std::size_t n = lower.size();
  std::vector<FqElem> cbar;
  for (const auto& d : lower) cbar.push_back(d.reduce());
  const FqPoly L = additive_poly(cbar, p, FqElem::zero(tower->level(1)));
  const auto roots = poly_roots(L, tower);
  unsigned D = R->d();
  for (const auto& rm : roots) D = std::lcm(D, rm.root.degree());

  // Greedy F_p-independent roots.
  std::vector<FqElem> span{FqElem::zero(tower->level(D))};
  std::vector<FqElem> base;
  for (const auto& rm : roots) {
    if (base.size() == n) break;
    const FqElem r = tower->embed(rm.root, D);
    if (std::any_of(span.begin(), span.end(), [&](const FqElem& s) { return s == r; })) continue;
    base.push_back(r);
    std::vector<FqElem> next;
    for (const auto& s : span)
      for (std::uint64_t c = 0; c < p; ++c) next.push_back(s + FqElem::from_int(tower->level(D), static_cast<long>(c)) * r);
    span = std::move(next);
  }
  if (base.size() != n) throw InternalError("additive polynomial has fewer than p^n roots");
  return hensel_lift(lower, base, D);
}

SolutionBasis solve_semilinear(const Recurrence& r) {
  return solve_semilinear(std::vector<GrElem>(r.coeffs().begin(), r.coeffs().end() - 1));
}

std::vector<GrElem> saturate(const std::vector<GrElem>& elems_in) {
  const std::vector<GrElem> elems = to_common(elems_in);
  if (elems.empty()) return {};
  const RingPtr& R = elems.front().ring();
  const std::uint64_t p = R->p(), pm = R->modulus();
  const unsigned m = R->m();
  std::vector<Vec> rows;
  for (const auto& e : elems) rows.push_back(e.coeffs());
  std::vector<GrElem> out;
  while (true) {
    std::size_t br = rows.size(), bc = 0;
    unsigned best = m;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        const unsigned v = vp(rows[r][c], p, m);
        if (v < best) {
          best = v;
          br = r;
          bc = c;
        }
      }
    if (br == rows.size()) break;
    std::uint64_t scale = 1;
    for (unsigned i = 0; i < best; ++i) scale *= p;
    Vec e = rows[br];
    for (auto& x : e) x /= scale;
    rows.erase(rows.begin() + static_cast<long>(br));
    const std::uint64_t inv = invmod(e[bc], pm);
    for (auto& row : rows) {
      if (row[bc] == 0) continue;
      const std::uint64_t f = mulmod(row[bc], inv, pm);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] + pm - mulmod(f, e[c], pm)) % pm;
    }
    out.emplace_back(R, std::move(e));
  }
  return out;
}

Recurrence recurrence_from_solutions(const std::vector<GrElem>& z_in) {
  if (z_in.empty()) throw InvalidInput("no solutions given");
  const std::vector<GrElem> z = to_common(z_in);
  const std::size_t k = z.size();
  const RingPtr& R = z.front().ring();
  std::vector<std::vector<GrElem>> A(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) A[i].push_back(sigma(z[i], static_cast<long>(j)));
    A[i].push_back(-sigma(z[i], static_cast<long>(k)));
  }
  GrElem det = GrElem::one(R);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t sel = c;
    while (sel < k && !A[sel][c].is_unit()) ++sel;
    if (sel == k) throw DependentSolutions("reductions of the solutions are linearly dependent over F_p");
    if (sel != c) {
      std::swap(A[sel], A[c]);
      det = -det;
    }
    det *= A[c][c];
    const GrElem inv = A[c][c].inverse();
    for (auto& x : A[c]) x *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || A[r][c].is_zero()) continue;
      const GrElem f = A[r][c];
      for (std::size_t t = c; t <= k; ++t) A[r][t] -= f * A[c][t];
    }
  }
  std::vector<GrElem> d;
  for (std::size_t j = 0; j < k; ++j) d.push_back(A[j][k]);
  d.push_back(GrElem::one(R));
  // d_0 = (-1)^k det^s / det for the Moore determinant det.
  GrElem expect = sigma(det, 1) * det.inverse();
  if (k % 2) expect = -expect;
  if (!(d.front() - expect).is_zero()) throw InternalError("Moore determinant identity failed for d_0");
  return Recurrence(std::move(d));
}

Recurrence combine_sum(const Recurrence& a, const Recurrence& b) {
  auto za = solve_semilinear(a).z;
  const auto zb = solve_semilinear(b).z;
  za.insert(za.end(), zb.begin(), zb.end());
  return recurrence_from_solutions(saturate(za));
}

Recurrence combine_product(const Recurrence& a, const Recurrence& b) {
  const auto za = solve_semilinear(a).z;
  const auto zb = solve_semilinear(b).z;
  std::vector<GrElem> prods;
  for (const auto& x : za)
    for (const auto& y : zb) prods.push_back(x * y);
  return recurrence_from_solutions(saturate(prods));
}

bool check_recurrence(const std::vector<GrElem>& seq, const Recurrence& r) {
  const std::size_t k = r.order();
  for (std::size_t n = 0; n + k < seq.size(); ++n) {
    GrElem acc = r.coeffs()[0] * seq[n];
    for (std::size_t j = 1; j <= k; ++j) acc += r.coeffs()[j] * sigma(seq[n + j], static_cast<long>(j));
    if (!acc.is_zero()) return false;
  }
  return true;
}

std::vector<GrElem> solution_sequence(const std::vector<GrElem>& basis, const std::vector<GrElem>& lambda,
                                      std::size_t length) {
  if (basis.size() != lambda.size() || basis.empty()) throw InvalidInput("basis and coefficients differ in size");
  std::vector<GrElem> out;
  for (std::size_t n = 0; n < length; ++n) {
    GrElem acc = lambda[0] * basis[0] - lambda[0] * basis[0];
    for (std::size_t i = 0; i < basis.size(); ++i) acc += sigma(lambda[i], -static_cast<long>(n)) * basis[i];
    out.push_back(acc);
  }
  return out;
}

// ---- Witt components --------------------------------------------------------

namespace {

// multinom(e) * prod y_l^{e_l} over all e with |e| = total, dropping terms
// whose multinomial coefficient vanishes in the ring.
std::vector<GrElem> power_monomials(const std::vector<GrElem>& y, unsigned long total) {
  std::vector<GrElem> out;
  const RingPtr& R = y.front().ring();
  std::vector<unsigned long> e(y.size(), 0);
  const mpz_class pm(static_cast<unsigned long>(R->modulus()));
  std::function<void(std::size_t, unsigned long)> rec = [&](std::size_t i, unsigned long left) {
    if (i + 1 == y.size()) {
      e[i] = left;
      mpz_class coef;
      mpz_fac_ui(coef.get_mpz_t(), total);
      for (auto x : e) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), x);
        coef /= f;
      }
      coef %= pm;
      if (coef == 0) return;
      GrElem term = GrElem::from_int(R, static_cast<long long>(coef.get_ui()));
      for (std::size_t l = 0; l < y.size(); ++l)
        if (e[l]) term *= y[l].pow(mpz_class(e[l]));
      out.push_back(term);
      return;
    }
    for (unsigned long v = 0; v <= left; ++v) {
      e[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

unsigned long ipow(std::uint64_t p, unsigned k) {
  unsigned long r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

// Elements whose twisted span holds [x_n] in W_m for every x_n in the twisted
// span of zs over the residue field: lifts of zs^{s^-m} raised to p^m.
std::vector<GrElem> teichmuller_span(const std::vector<GrElem>& zs, unsigned m) {
  std::vector<GrElem> y;
  for (const auto& z : zs) y.push_back(change_length(sigma(z, -static_cast<long>(m)), m));
  return power_monomials(y, ipow(zs.front().p(), m));
}

}  // namespace

std::vector<Recurrence> split_to_components(const Recurrence& r) {
  const unsigned m = r.ring()->m();
  if (m == 1) return {r};
  std::vector<Recurrence> out;
  Recurrence current = r;
  for (unsigned i = 0; i < m; ++i) {
    const unsigned mi = m - i;
    const auto B = solve_semilinear(current).z;
    std::vector<GrElem> comp;
    for (const auto& z : B) comp.push_back(sigma(change_length(z, 1), static_cast<long>(i)));
    out.push_back(recurrence_from_solutions(saturate(comp)));
    if (i + 1 == m) break;
    std::vector<GrElem> residues;
    for (const auto& z : B) residues.push_back(change_length(z, 1));
    auto U = B;
    for (auto& t : teichmuller_span(residues, mi)) U.push_back(std::move(t));
    const Recurrence s = recurrence_from_solutions(saturate(U));
    std::vector<GrElem> lower;
    for (const auto& d : s.coeffs()) lower.push_back(change_length(d, mi - 1));
    current = Recurrence(std::move(lower));
  }
  return out;
}

Recurrence split_from_components(const std::vector<Recurrence>& components, unsigned m) {
  if (components.size() != m || m == 0) throw InvalidInput("expected one component relation per Witt coordinate");
  for (const auto& c : components)
    if (c.ring()->m() != 1) throw InvalidInput("component relations must live over the residue field");
  if (m == 1) return components.front();
  std::vector<GrElem> U;
  for (unsigned i = 0; i < m; ++i) {
    std::vector<GrElem> digits_basis;
    for (const auto& z : solve_semilinear(components[i]).z) digits_basis.push_back(sigma(z, -static_cast<long>(i)));
    for (auto& t : teichmuller_span(digits_basis, m)) U.push_back(t.mul_p(i));
  }
  return recurrence_from_solutions(saturate(U));
}

// ---- S_{a,b} ------------------------------------------------------------------

std::optional<long> sab_digit_sum(const Exponent& q, long a, std::uint64_t p) {
  if (a < 1) return std::nullopt;
  const Exponent aq = Exponent(a) * q;
  const mpz_class n = aq.ceil();
  if (n < 0) return std::nullopt;
  const Exponent f = Exponent(mpq_class(n)) - aq;
  mpz_class den = f.denominator(), num = f.numerator();
  const mpz_class P(static_cast<unsigned long>(p));
  while (den % P == 0) den /= P;
  if (den != 1) return std::nullopt;
  long sum = 0;
  while (num > 0) {
    sum += mpz_class(num % P).get_si();
    num /= P;
  }
  return sum;
}

bool sab_contains(const Exponent& q, const SabParams& s, std::uint64_t p) {
  if (s.b < 0) return false;
  const auto ds = sab_digit_sum(q, s.a, p);
  return ds && *ds <= s.b;
}

std::optional<SabParams> sab_fit(const std::vector<Exponent>& support, std::uint64_t p, long max_a, long max_b) {
  for (long a = 1; a <= max_a; ++a) {
    long need = 0;
    bool ok = true;
    for (const auto& q : support) {
      const auto ds = sab_digit_sum(q, a, p);
      if (!ds) {
        ok = false;
        break;
      }
      need = std::max(need, *ds);
    }
    if (ok && need <= max_b) return SabParams{a, need};
  }
  return std::nullopt;
}

// ---- periodicity ----------------------------------------------------------------

std::string to_string(WindowStatus s) {
  switch (s) {
    case WindowStatus::periodic: return "periodic";
    case WindowStatus::aperiodic: return "aperiodic";
    case WindowStatus::insufficient: return "insufficient";
  }
  return "?";
}

namespace {

Exponent p_power(std::uint64_t p, long k) {
  mpz_class P;
  mpz_ui_pow_ui(P.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Exponent(mpq_class(P)) : Exponent(mpq_class(mpz_class(1), P));
}

Exponent digits_value(const std::vector<unsigned>& ds, long first, std::uint64_t p) {
  Exponent v(0);
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (ds[i]) v += Exponent(static_cast<long>(ds[i])) * p_power(p, -(first + static_cast<long>(i)));
  return v;
}

void classify(PeriodicityWindow& w, const std::vector<FqElem>& c, const PeriodicityCaps& caps) {
  const std::size_t L = c.size();
  w.length = L;
  if (L < std::max<std::size_t>(2, caps.min_length)) {
    w.status = WindowStatus::insufficient;
    return;
  }
  for (unsigned N = 1; N <= caps.max_N && 2 * N <= L; ++N) {
    std::size_t M = 0;
    for (std::size_t n = 0; n + N < L; ++n)
      if (!(c[n] == c[n + N])) M = n + 1;
    if (M <= caps.max_M && M + 2 * N <= L) {
      w.status = WindowStatus::periodic;
      w.M = static_cast<unsigned>(M);
      w.N = N;
      return;
    }
  }
  w.status = WindowStatus::aperiodic;
}

}  // namespace

PeriodicityReport digit_periodicity(const DigitSeries& x, const SabParams& s, long l, PeriodicityCaps caps) {
  PeriodicityReport rep;
  rep.params = s;
  rep.l = l;
  const std::uint64_t p = x.p();
  const std::size_t cap_len = caps.max_M + 2 * static_cast<std::size_t>(caps.max_N);
  std::set<std::tuple<long, std::vector<unsigned>, std::vector<unsigned>>> seen;
  for (const auto& e : x.support()) {
    const Exponent ae = Exponent(s.a) * e;
    const long m = mpz_class(ae.floor()).get_si();
    const Exponent frac = ae - Exponent(m);
    if (frac.sign() == 0) continue;
    // 1 - frac = sum b_i p^-i with finitely many digits.
    Exponent g = Exponent(1) - frac;
    std::vector<unsigned> ds;
    bool terminating = false;
    for (int i = 0; i < 4096; ++i) {
      g *= Exponent(static_cast<long>(p));
      const long dgt = mpz_class(g.floor()).get_si();
      ds.push_back(static_cast<unsigned>(dgt));
      g -= Exponent(dgt);
      if (g.sign() == 0) {
        terminating = true;
        break;
      }
    }
    if (!terminating) continue;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (!ds[j]) continue;
      std::vector<unsigned> prefix(ds.begin(), ds.begin() + static_cast<long>(j));
      std::vector<unsigned> tail(ds.begin() + static_cast<long>(j), ds.end());
      if (!seen.emplace(m, prefix, tail).second) continue;
      PeriodicityWindow w{m, prefix, tail};
      const Exponent P = digits_value(prefix, 1, p);
      const Exponent T = digits_value(tail, static_cast<long>(j) + 1, p);
      std::vector<FqElem> c;
      for (std::size_t n = 0; n < cap_len; ++n) {
        const Exponent arg = Exponent(1) - P - p_power(p, l - static_cast<long>(n)) * T;
        const Exponent at = (Exponent(m) + arg) / Exponent(s.a);
        if (at >= x.N()) break;
        if (arg.sign() <= 0 || arg >= Exponent(1)) c.push_back(FqElem::zero(x.tower()->level(1)));
        else c.push_back(x.digit_at(at));
      }
      classify(w, c, caps);
      rep.windows.push_back(std::move(w));
    }
  }
  rep.periodic = true;
  for (const auto& w : rep.windows) {
    if (w.status == WindowStatus::aperiodic) rep.periodic = false;
    if (w.status != WindowStatus::periodic) continue;
    rep.M = std::max(rep.M, w.M);
    rep.N = std::lcm(rep.N, static_cast<unsigned long>(w.N));
  }
  return rep;
}

PeriodicityReport digit_periodicity(const DigitSeries& x, long l, PeriodicityCaps caps) {
  const auto fit = sab_fit(x.support(), x.p());
  if (!fit) {
    PeriodicityReport rep;
    rep.l = l;
    return rep;
  }
  return digit_periodicity(x, *fit, l, caps);
}

}  // namespace closure
