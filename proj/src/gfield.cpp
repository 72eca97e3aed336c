#include "closure/gfield.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "closure/error.hpp"
#include "fp_poly.hpp"

namespace closure {

namespace {

std::vector<Coord> level_add(const FieldLevel& L, const std::vector<Coord>& a, const std::vector<Coord>& b) {
  std::vector<Coord> r(L.degree);
  for (unsigned i = 0; i < L.degree; ++i) {
    const Coord s = a[i] + b[i];
    r[i] = s >= L.p ? s - L.p : s;
  }
  return r;
}

std::vector<Coord> level_sub(const FieldLevel& L, const std::vector<Coord>& a, const std::vector<Coord>& b) {
  std::vector<Coord> r(L.degree);
  for (unsigned i = 0; i < L.degree; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + L.p - b[i];
  return r;
}

std::vector<Coord> level_mul(const FieldLevel& L, const std::vector<Coord>& a, const std::vector<Coord>& b) {
  const unsigned d = L.degree;
  const Coord p = L.p;
  if (d == 1) return {fp::mulmod(a[0], b[0], p)};
  if (p < (Coord{1} << 16)) {
    // Products stay below 2^32, so at most 2d of them fit in a word before reducing.
    std::vector<Coord> t(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < d; ++j) t[i + j] += a[i] * b[j];
    }
    for (unsigned i = 2 * d - 2; i >= d; --i) {
      const Coord c = t[i] % p;
      if (!c) continue;
      for (unsigned j = 0; j < d; ++j) t[i - d + j] += c * (p - L.modulus[j]);
    }
    t.resize(d);
    for (auto& x : t) x %= p;
    return t;
  }
  std::vector<Coord> t(2 * d - 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (!b[j]) continue;
      t[i + j] = (t[i + j] + fp::mulmod(a[i], b[j], p)) % p;
    }
  }
  for (unsigned i = 2 * d - 2; i >= d; --i) {
    const Coord c = t[i];
    if (!c) continue;
    for (unsigned j = 0; j < d; ++j) {
      const Coord sub = fp::mulmod(c, L.modulus[j], p);
      t[i - d + j] = (t[i - d + j] + p - sub) % p;
    }
  }
  t.resize(d);
  return t;
}

bool all_zero(const std::vector<Coord>& v) {
  return std::all_of(v.begin(), v.end(), [](Coord c) { return c == 0; });
}

// ---- polynomials over a single level ------------------------------------

void ptrim(FqPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int pdeg(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

FqPoly psub(FqPoly a, const FqPoly& b, const LevelPtr& L) {
  while (a.size() < b.size()) a.push_back(FqElem::zero(L));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
  ptrim(a);
  return a;
}

FqPoly pmul(const FqPoly& a, const FqPoly& b, const LevelPtr& L) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, FqElem::zero(L));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ptrim(r);
  return r;
}

std::pair<FqPoly, FqPoly> pdivmod(FqPoly a, const FqPoly& b, const LevelPtr& L) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  ptrim(a);
  const int db = pdeg(b);
  if (pdeg(a) < db) return {{}, a};
  const FqElem lc_inv = b.back().inverse();
  FqPoly q(a.size() - b.size() + 1, FqElem::zero(L));
  for (int i = pdeg(a); i >= db; --i) {
    const FqElem c = a[i] * lc_inv;
    q[i - db] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  ptrim(a);
  ptrim(q);
  return {q, a};
}

FqPoly pmod(const FqPoly& a, const FqPoly& b, const LevelPtr& L) { return pdivmod(a, b, L).second; }

FqPoly pmonic(FqPoly f) {
  ptrim(f);
  if (f.empty()) return f;
  const FqElem c = f.back().inverse();
  for (auto& x : f) x = x * c;
  return f;
}

FqPoly pgcd(FqPoly a, FqPoly b, const LevelPtr& L) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    FqPoly r = pmod(a, b, L);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a);
}

FqPoly ppow_mod(const FqPoly& base, std::uint64_t e, const FqPoly& m, const LevelPtr& L) {
  FqPoly result = pmod(FqPoly{FqElem::one(L)}, m, L);
  FqPoly b = pmod(base, m, L);
  while (e) {
    if (e & 1) result = pmod(pmul(result, b, L), m, L);
    e >>= 1;
    if (e) b = pmod(pmul(b, b, L), m, L);
  }
  return result;
}

FqPoly px(const LevelPtr& L) { return {FqElem::zero(L), FqElem::one(L)}; }

/// x^{p^k} mod m.
FqPoly x_pow_p_pow(const FqPoly& start, unsigned k, const FqPoly& m, const LevelPtr& L) {
  FqPoly h = pmod(start, m, L);
  for (unsigned i = 0; i < k; ++i) h = ppow_mod(h, L->p, m, L);
  return h;
}

// Splits a monic squarefree g that is a product of distinct linear factors
// over the level of its coefficients, appending the roots.
void split_linear(const FqPoly& g, const LevelPtr& L, std::mt19937_64& rng, std::vector<FqElem>& out) {
  const int n = pdeg(g);
  if (n <= 0) return;
  if (n == 1) {
    out.push_back(-(g[0] / g[1]));
    return;
  }
  std::uniform_int_distribution<Coord> coord(0, L->p - 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    FqPoly h;
    for (int i = 0; i < n; ++i) {
      std::vector<Coord> c(L->degree);
      for (auto& x : c) x = coord(rng);
      h.emplace_back(L, std::move(c));
    }
    ptrim(h);
    if (h.empty()) continue;
    // Absolute trace of h: takes values in F_p at every root of g.
    FqPoly acc = h;
    FqPoly trace = h;
    for (unsigned i = 1; i < L->degree; ++i) {
      acc = ppow_mod(acc, L->p, g, L);
      trace = psub(trace, psub(FqPoly{}, acc, L), L);
    }
    for (Coord c = 0; c < L->p; ++c) {
      FqPoly shifted = psub(trace, FqPoly{FqElem::from_int(L, static_cast<long>(c))}, L);
      FqPoly factor = pgcd(shifted, g, L);
      const int df = pdeg(factor);
      if (df > 0 && df < n) {
        split_linear(factor, L, rng, out);
        split_linear(pdivmod(g, factor, L).first, L, rng, out);
        return;
      }
    }
  }
  throw InternalError("equal-degree splitting did not converge");
}

/// Distinct roots of a polynomial whose coefficients all live on level L,
/// restricted to F_{p^d} itself.
std::vector<FqElem> roots_in_level(FqPoly f, const LevelPtr& L, std::uint64_t seed) {
  f = pmonic(f);
  std::vector<FqElem> roots;
  if (pdeg(f) <= 0) return roots;
  if (L->order != 0 && L->order <= (1u << 10)) {
    std::vector<Coord> c(L->degree, 0);
    for (std::uint64_t k = 0; k < L->order; ++k) {
      std::uint64_t t = k;
      for (auto& x : c) {
        x = t % L->p;
        t /= L->p;
      }
      FqElem a(L, c);
      if (poly_eval(f, a).is_zero()) roots.push_back(a);
    }
  } else {
    const FqPoly x = px(L);
    FqPoly h = x_pow_p_pow(x, L->degree, f, L);
    FqPoly g = pgcd(psub(h, x, L), f, L);
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (L->degree + 1)));
    split_linear(g, L, rng, roots);
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

}  // namespace

// ---- FqElem --------------------------------------------------------------

FqElem::FqElem(LevelPtr level, std::vector<Coord> coeffs) : level_(std::move(level)), c_(std::move(coeffs)) {
  if (!level_) throw InvalidInput("field element without a level");
  if (c_.size() != level_->degree)
    throw InvalidInput("expected " + std::to_string(level_->degree) + " coordinates, got " +
                       std::to_string(c_.size()));
  for (auto& x : c_) x %= level_->p;
}

FqElem FqElem::zero(const LevelPtr& level) { return FqElem(level, std::vector<Coord>(level->degree, 0)); }

FqElem FqElem::one(const LevelPtr& level) {
  std::vector<Coord> c(level->degree, 0);
  c[0] = 1;
  return FqElem(level, std::move(c));
}

FqElem FqElem::from_int(const LevelPtr& level, long value) {
  std::vector<Coord> c(level->degree, 0);
  const long p = static_cast<long>(level->p);
  c[0] = static_cast<Coord>(((value % p) + p) % p);
  return FqElem(level, std::move(c));
}

FqElem FqElem::generator(const LevelPtr& level) {
  if (level->degree == 1) return FqElem(level, {(level->p - level->modulus[0]) % level->p});
  std::vector<Coord> c(level->degree, 0);
  c[1] = 1;
  return FqElem(level, std::move(c));
}

std::shared_ptr<FieldTower> FqElem::tower() const {
  auto t = level_->tower.lock();
  if (!t) throw InvalidInput("field tower no longer exists");
  return t;
}

bool FqElem::is_zero() const { return all_zero(c_); }

bool FqElem::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](Coord x) { return x == 0; });
}

FqElem FqElem::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in F_" + std::to_string(p()) + "^" + std::to_string(degree()));
  if (degree() == 1) return FqElem(level_, {fp::inv(c_[0], p())});
  fp::Poly a(c_.begin(), c_.end());
  fp::trim(a);
  fp::Poly r = fp::inv_mod(a, level_->modulus, p());
  r.resize(degree(), 0);
  return FqElem(level_, std::move(r));
}

FqElem FqElem::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  FqElem result = one(level_);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

std::string FqElem::to_string() const {
  std::ostringstream os;
  os << p() << "^" << degree() << ":[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "]";
  return os.str();
}

std::pair<FqElem, FqElem> common_level(const FqElem& a, const FqElem& b) {
  if (a.level() == b.level()) return {a, b};
  auto ta = a.tower();
  if (ta != b.tower()) throw RingMismatch("field elements from different towers");
  const unsigned L = lcm_u(a.degree(), b.degree());
  return {ta->embed(a, L), ta->embed(b, L)};
}

FqElem operator+(const FqElem& a, const FqElem& b) {
  if (a.level_ != b.level_) {
    auto [x, y] = common_level(a, b);
    return x + y;
  }
  return FqElem(a.level_, level_add(*a.level_, a.c_, b.c_));
}

FqElem operator-(const FqElem& a, const FqElem& b) {
  if (a.level_ != b.level_) {
    auto [x, y] = common_level(a, b);
    return x - y;
  }
  return FqElem(a.level_, level_sub(*a.level_, a.c_, b.c_));
}

FqElem operator*(const FqElem& a, const FqElem& b) {
  if (a.level_ != b.level_) {
    auto [x, y] = common_level(a, b);
    return x * y;
  }
  return FqElem(a.level_, level_mul(*a.level_, a.c_, b.c_));
}

FqElem operator/(const FqElem& a, const FqElem& b) { return a * b.inverse(); }

FqElem operator-(const FqElem& a) {
  std::vector<Coord> r(a.c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] ? a.p() - a.c_[i] : 0;
  return FqElem(a.level_, std::move(r));
}

bool operator==(const FqElem& a, const FqElem& b) {
  if (a.level_ == b.level_) return a.c_ == b.c_;
  if (a.p() != b.p()) return false;
  // Zero and prime-field constants can be compared without a tower.
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  auto [x, y] = common_level(a, b);
  return x.c_ == y.c_;
}

FqElem frobenius(const FqElem& x, long k) {
  const long d = x.degree();
  long steps = ((k % d) + d) % d;
  if (steps == 0 || d == 1) return x;
  const FieldLevel& L = *x.level();
  std::vector<Coord> cur = x.coeffs();
  for (long s = 0; s < steps; ++s) {
    std::vector<Coord> next(L.degree, 0);
    for (unsigned j = 0; j < L.degree; ++j) {
      if (!cur[j]) continue;
      for (unsigned i = 0; i < L.degree; ++i)
        next[i] = (next[i] + fp::mulmod(cur[j], L.frobenius[j][i], L.p)) % L.p;
    }
    cur = std::move(next);
  }
  return FqElem(x.level(), std::move(cur));
}

bool lex_less(const FqElem& a, const FqElem& b) {
  if (a.level() != b.level()) {
    auto [x, y] = common_level(a, b);
    return lex_less(x, y);
  }
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
}

FqElem poly_eval(const FqPoly& f, const FqElem& x) {
  if (f.empty()) return FqElem::zero(x.level());
  FqElem acc = f.back();
  for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * x + f[i];
  return acc;
}

// ---- FieldTower ----------------------------------------------------------

std::shared_ptr<FieldTower> FieldTower::create(std::uint64_t p, std::uint64_t seed) {
  if (p < 2) throw InvalidInput("characteristic must be a prime, got " + std::to_string(p));
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) throw InvalidInput("characteristic must be a prime, got " + std::to_string(p));
  if (p >= (1ULL << 31)) throw InvalidInput("characteristic too large");
  auto tower = std::shared_ptr<FieldTower>(new FieldTower(p, seed));
  tower->level(1);
  return tower;
}

bool FieldTower::has_level(unsigned d) const {
  std::shared_lock lock(mutex_);
  return levels_.count(d) != 0;
}

std::vector<unsigned> FieldTower::degrees() const {
  std::shared_lock lock(mutex_);
  std::vector<unsigned> out;
  for (const auto& [d, _] : levels_) out.push_back(d);
  return out;
}

LevelPtr FieldTower::level(unsigned d) {
  if (d == 0) throw InvalidInput("field degree must be positive");
  {
    std::shared_lock lock(mutex_);
    auto it = levels_.find(d);
    if (it != levels_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0 && !levels_.count(e)) build_level_locked(e);
  return levels_.at(d);
}

const std::vector<std::vector<Coord>>& FieldTower::embedding_locked(unsigned from, unsigned to) const {
  return embeddings_.at({from, to});
}

std::vector<Coord> FieldTower::apply_embedding_locked(const std::vector<Coord>& x, unsigned from,
                                                      unsigned to) const {
  if (from == to) return x;
  const auto& m = embedding_locked(from, to);
  std::vector<Coord> r(to, 0);
  for (unsigned i = 0; i < from; ++i) {
    if (!x[i]) continue;
    for (unsigned j = 0; j < to; ++j) r[j] = (r[j] + fp::mulmod(x[i], m[i][j], p_)) % p_;
  }
  return r;
}

void FieldTower::build_level_locked(unsigned D) {
  // Least irreducible monic polynomial of degree D.
  fp::Poly modulus;
  for (std::uint64_t idx = 0;; ++idx) {
    fp::Poly f(D + 1, 0);
    std::uint64_t t = idx;
    for (unsigned i = 0; i < D; ++i) {
      f[i] = t % p_;
      t /= p_;
    }
    if (t) throw InternalError("no irreducible polynomial found");
    f[D] = 1;
    if (fp::is_irreducible(f, p_)) {
      modulus = std::move(f);
      break;
    }
  }

  auto level = std::make_shared<FieldLevel>();
  level->p = p_;
  level->degree = D;
  level->modulus = modulus;
  level->tower = weak_from_this();
  {
    unsigned __int128 order = 1;
    for (unsigned i = 0; i < D && order <= (static_cast<unsigned __int128>(1) << 64); ++i) order *= p_;
    level->order = order < (static_cast<unsigned __int128>(1) << 64) ? static_cast<std::uint64_t>(order) : 0;
  }
  {
    const fp::Poly x{0, 1};
    const fp::Poly xp = fp::powmod(fp::mod(x, modulus, p_), mpz_class(static_cast<unsigned long>(p_)), modulus, p_);
    fp::Poly cur{1};
    for (unsigned j = 0; j < D; ++j) {
      fp::Poly col = cur;
      col.resize(D, 0);
      level->frobenius.push_back(col);
      cur = fp::mod(fp::mul(cur, xp, p_), modulus, p_);
    }
  }
  LevelPtr lp = level;

  // Embeddings from every proper divisor, largest first. A divisor contained
  // in an already-embedded one is forced by composition; otherwise the
  // lex-least root of its modulus compatible with earlier choices is used.
  std::vector<unsigned> divisors;
  for (unsigned e = D - 1; e >= 1; --e)
    if (D % e == 0) divisors.push_back(e);
  std::vector<unsigned> done;
  for (unsigned e : divisors) {
    std::vector<std::vector<Coord>> images;
    if (e == 1) {
      std::vector<Coord> one(D, 0);
      one[0] = 1;
      images.push_back(one);
    } else {
      std::vector<Coord> gen_e(e, 0);
      gen_e[1] = 1;
      std::optional<FqElem> alpha;
      for (unsigned e2 : done) {
        if (e2 % e) continue;
        alpha = FqElem(lp, apply_embedding_locked(apply_embedding_locked(gen_e, e, e2), e2, D));
        break;
      }
      if (!alpha) {
        const auto& fe = levels_.at(e)->modulus;
        FqPoly f;
        for (Coord c : fe) f.push_back(FqElem::from_int(lp, static_cast<long>(c)));
        for (const FqElem& cand : roots_in_level(f, lp, seed_)) {
          bool ok = true;
          for (unsigned e2 : done) {
            const unsigned g = std::gcd(e, e2);
            if (g == 1) continue;
            std::vector<Coord> gen_g(g, 0);
            gen_g[1] = 1;
            const std::vector<Coord> want = apply_embedding_locked(apply_embedding_locked(gen_g, g, e2), e2, D);
            const std::vector<Coord> in_e = apply_embedding_locked(gen_g, g, e);
            FqPoly as_poly;
            for (Coord c : in_e) as_poly.push_back(FqElem::from_int(lp, static_cast<long>(c)));
            if (poly_eval(as_poly, cand).coeffs() != want) {
              ok = false;
              break;
            }
          }
          if (ok) {
            alpha = cand;
            break;
          }
        }
        if (!alpha) throw InternalError("no compatible embedding of F_p^" + std::to_string(e) + " into F_p^" +
                                        std::to_string(D));
      }
      FqElem pw = FqElem::one(lp);
      for (unsigned i = 0; i < e; ++i) {
        images.push_back(pw.coeffs());
        pw = pw * *alpha;
      }
    }
    embeddings_[{e, D}] = std::move(images);
    done.push_back(e);
  }
  levels_[D] = std::move(level);
}

FqElem FieldTower::embed(const FqElem& x, unsigned d) {
  if (x.p() != p_) throw RingMismatch("element of characteristic " + std::to_string(x.p()));
  if (x.degree() == d) return x;
  if (d % x.degree()) throw InvalidInput("cannot embed F_p^" + std::to_string(x.degree()) + " into F_p^" + std::to_string(d));
  LevelPtr target = level(d);
  std::shared_lock lock(mutex_);
  return FqElem(target, apply_embedding_locked(x.coeffs(), x.degree(), d));
}

FqElem FieldTower::element(unsigned d, std::vector<Coord> coeffs) { return FqElem(level(d), std::move(coeffs)); }

FqElem FieldTower::random(unsigned d, std::mt19937_64& rng) {
  LevelPtr L = level(d);
  std::uniform_int_distribution<Coord> coord(0, p_ - 1);
  std::vector<Coord> c(d);
  for (auto& x : c) x = coord(rng);
  return FqElem(L, std::move(c));
}

// ---- roots ---------------------------------------------------------------

std::vector<RootMultiplicity> poly_roots(const FqPoly& f_in, const std::shared_ptr<FieldTower>& tower) {
  FqPoly f = f_in;
  ptrim(f);
  if (f.empty()) throw InvalidInput("poly_roots of the zero polynomial");
  if (f.size() == 1) return {};

  unsigned L = 1;
  for (const auto& c : f) {
    if (c.p() != tower->p()) throw RingMismatch("coefficient characteristic differs from tower");
    L = lcm_u(L, c.degree());
  }
  LevelPtr lev = tower->level(L);
  for (auto& c : f) c = tower->embed(c, L);
  f = pmonic(f);

  // Distinct-degree pass: find the degrees of the irreducible factors.
  unsigned split = L;
  {
    const FqPoly x = px(lev);
    FqPoly rem = f;
    FqPoly h = pmod(x, rem, lev);
    for (unsigned i = 1; pdeg(rem) > 0; ++i) {
      h = x_pow_p_pow(h, L, rem, lev);
      FqPoly g = pgcd(psub(h, x, lev), rem, lev);
      if (pdeg(g) > 0) {
        split = lcm_u(split, L * i);
        while (pdeg(g) > 0) {
          rem = pdivmod(rem, g, lev).first;
          g = pgcd(g, rem, lev);
        }
        if (pdeg(rem) > 0) h = pmod(h, rem, lev);
      }
    }
  }

  LevelPtr top = tower->level(split);
  for (auto& c : f) c = tower->embed(c, split);
  const std::vector<FqElem> distinct = roots_in_level(f, top, tower->seed());

  std::vector<RootMultiplicity> out;
  unsigned total = 0;
  for (const FqElem& a : distinct) {
    FqPoly rest = f;
    unsigned mult = 0;
    const FqPoly lin{-a, FqElem::one(top)};
    while (pdeg(rest) > 0) {
      auto [q, r] = pdivmod(rest, lin, top);
      if (!r.empty()) break;
      rest = std::move(q);
      ++mult;
    }
    total += mult;
    out.push_back({a, mult});
  }
  if (total != static_cast<unsigned>(pdeg(f))) throw InternalError("root multiplicities do not sum to the degree");
  return out;
}

FqElem parse_fq(const std::string& text, const std::shared_ptr<FieldTower>& tower) {
  const auto caret = text.find('^');
  const auto colon = text.find(':');
  const auto open = text.find('[');
  const auto close = text.rfind(']');
  if (caret == std::string::npos || colon == std::string::npos || open == std::string::npos ||
      close == std::string::npos || !(caret < colon && colon < open && open < close))
    throw InvalidInput("malformed field element '" + text + "'");
  try {
    const std::uint64_t p = std::stoull(text.substr(0, caret));
    const unsigned d = static_cast<unsigned>(std::stoul(text.substr(caret + 1, colon - caret - 1)));
    if (p != tower->p()) throw RingMismatch("field element '" + text + "' has wrong characteristic");
    std::vector<Coord> coeffs;
    std::stringstream body(text.substr(open + 1, close - open - 1));
    std::string item;
    while (std::getline(body, item, ',')) {
      if (item.find_first_not_of(' ') == std::string::npos) continue;
      const long long v = std::stoll(item);
      const long long pp = static_cast<long long>(p);
      coeffs.push_back(static_cast<Coord>(((v % pp) + pp) % pp));
    }
    return tower->element(d, std::move(coeffs));
  } catch (const std::invalid_argument&) {
    throw InvalidInput("malformed field element '" + text + "'");
  } catch (const std::out_of_range&) {
    throw InvalidInput("field element out of range '" + text + "'");
  }
}

}  // namespace closure
