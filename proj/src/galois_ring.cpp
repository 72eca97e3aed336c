#include "closure/galois_ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "closure/error.hpp"

namespace closure {

namespace {

using Vec = std::vector<std::uint64_t>;

inline std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

inline std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return a >= b ? a - b : a + m - b; }

// a * b mod (monic modulus, pm); modulus low-first of size d + 1.
Vec raw_mul(const Vec& a, const Vec& b, const Vec& modulus, std::uint64_t pm) {
  const std::size_t d = modulus.size() - 1;
  if (d == 1) return {mulm(a[0], b[0], pm)};
  std::vector<unsigned __int128> t(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (!b[j]) continue;
      t[i + j] = (t[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % pm;
    }
  }
  Vec r(2 * d - 1);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint64_t>(t[i]);
  for (std::size_t i = 2 * d - 2; i >= d; --i) {
    const std::uint64_t c = r[i];
    if (!c) continue;
    for (std::size_t j = 0; j < d; ++j) r[i - d + j] = subm(r[i - d + j], mulm(c, modulus[j], pm), pm);
  }
  r.resize(d);
  return r;
}

Vec raw_pow(Vec base, const mpz_class& e, const Vec& modulus, std::uint64_t pm) {
  Vec result(modulus.size() - 1, 0);
  result[0] = 1 % pm;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = raw_mul(result, result, modulus, pm);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = raw_mul(result, base, modulus, pm);
  }
  return result;
}

std::uint64_t ipow(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace

// ---- GaloisRing ----------------------------------------------------------

GaloisRing::GaloisRing(const std::shared_ptr<FieldTower>& tower, unsigned m, unsigned d)
    : p_(tower->p()), m_(m), d_(d), level_(tower->level(d)), tower_(tower) {
  if (m == 0) throw InvalidInput("Witt vector length must be positive");
  {
    unsigned __int128 pm = 1;
    for (unsigned i = 0; i < m; ++i) {
      pm *= p_;
      if (pm >= (static_cast<unsigned __int128>(1) << 62))
        throw InvalidInput("p^m too large: p=" + std::to_string(p_) + " m=" + std::to_string(m));
    }
    pm_ = static_cast<std::uint64_t>(pm);
  }

  // Naive lift of the field modulus, then the Teichmuller lift tau of its
  // root; G = prod_k (X - tau^{p^k}) has coefficients in Z/p^m.
  const Vec naive(level_->modulus.begin(), level_->modulus.end());
  if (d == 1) {
    // F_p[x]/(x): the generator is 0 and so is its lift.
    lift_ = {0, 1};
  } else {
    Vec tau(d, 0);
    tau[1] = 1;
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), p_, d);
    for (unsigned i = 1; i < m; ++i) tau = raw_pow(tau, qd, naive, pm_);

    std::vector<Vec> poly{Vec(d, 0)};  // coefficients in the naive ring
    poly[0][0] = 1 % pm_;
    Vec root = tau;
    for (unsigned k = 0; k < d; ++k) {
      std::vector<Vec> next(poly.size() + 1, Vec(d, 0));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        for (unsigned j = 0; j < d; ++j) next[i + 1][j] = addm(next[i + 1][j], poly[i][j], pm_);
        const Vec prod = raw_mul(poly[i], root, naive, pm_);
        for (unsigned j = 0; j < d; ++j) next[i][j] = subm(next[i][j], prod[j], pm_);
      }
      poly = std::move(next);
      root = raw_pow(root, mpz_class(static_cast<unsigned long>(p_)), naive, pm_);
    }
    lift_.resize(d + 1);
    for (unsigned i = 0; i <= d; ++i) {
      for (unsigned j = 1; j < d; ++j)
        if (poly[i][j]) throw InternalError("Teichmuller minimal polynomial is not over Z/p^m");
      lift_[i] = poly[i][0];
    }
  }

  Vec theta_p(d, 0);
  if (d > 1) {
    Vec theta(d, 0);
    theta[1] = 1;
    theta_p = raw_pow(theta, mpz_class(static_cast<unsigned long>(p_)), lift_, pm_);
  }
  Vec cur(d, 0);
  cur[0] = 1 % pm_;
  for (unsigned j = 0; j < d; ++j) {
    sigma_.push_back(cur);
    if (d > 1) cur = raw_mul(cur, theta_p, lift_, pm_);
  }
}

std::shared_ptr<FieldTower> GaloisRing::tower() const {
  auto t = tower_.lock();
  if (!t) throw InvalidInput("field tower no longer exists");
  return t;
}

Vec GaloisRing::mul(const Vec& a, const Vec& b) const { return raw_mul(a, b, lift_, pm_); }

Vec GaloisRing::apply_sigma(const Vec& a) const {
  Vec r(d_, 0);
  for (unsigned j = 0; j < d_; ++j) {
    if (!a[j]) continue;
    for (unsigned i = 0; i < d_; ++i) r[i] = addm(r[i], mulm(a[j], sigma_[j][i], pm_), pm_);
  }
  return r;
}

std::string GaloisRing::descriptor() const {
  return "W(" + std::to_string(p_) + "," + std::to_string(m_) + "," + std::to_string(d_) + ")";
}

std::shared_ptr<const GaloisRing> FieldTower::galois_ring(unsigned m, unsigned d) {
  {
    std::lock_guard lock(ring_mutex_);
    auto it = rings_.find({m, d});
    if (it != rings_.end()) return it->second;
  }
  auto ring = std::make_shared<const GaloisRing>(shared_from_this(), m, d);
  std::lock_guard lock(ring_mutex_);
  return rings_.try_emplace({m, d}, ring).first->second;
}

const std::vector<std::vector<std::uint64_t>>& FieldTower::ring_embedding(unsigned m, unsigned d, unsigned big_d) {
  {
    std::lock_guard lock(ring_mutex_);
    auto it = ring_embeddings_.find({m, d, big_d});
    if (it != ring_embeddings_.end()) return it->second;
  }
  if (big_d % d) throw InvalidInput("cannot embed W(F_p^" + std::to_string(d) + ") into W(F_p^" +
                                    std::to_string(big_d) + ")");
  RingPtr big = galois_ring(m, big_d);
  RingPtr small = galois_ring(m, d);
  const GrElem image = teichmuller(embed(FqElem::generator(small->level()), big_d), big);
  std::vector<Vec> images;
  GrElem pw = GrElem::one(big);
  for (unsigned i = 0; i < d; ++i) {
    images.push_back(pw.coeffs());
    pw = pw * image;
  }
  std::lock_guard lock(ring_mutex_);
  return ring_embeddings_.try_emplace({m, d, big_d}, std::move(images)).first->second;
}

std::optional<std::vector<std::uint64_t>> GaloisRing::cached_lift(const std::vector<std::uint64_t>& key) const {
  std::lock_guard lock(lift_mutex_);
  auto it = lifts_.find(key);
  if (it == lifts_.end()) return std::nullopt;
  return it->second;
}

void GaloisRing::store_lift(std::vector<std::uint64_t> key, std::vector<std::uint64_t> value) const {
  std::lock_guard lock(lift_mutex_);
  lifts_.emplace(std::move(key), std::move(value));
}

// ---- GrElem --------------------------------------------------------------

GrElem::GrElem(RingPtr ring, Vec coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (!ring_) throw InvalidInput("Galois ring element without a ring");
  if (c_.size() != ring_->d())
    throw InvalidInput("expected " + std::to_string(ring_->d()) + " coordinates, got " + std::to_string(c_.size()));
  for (auto& x : c_) x %= ring_->modulus();
}

GrElem GrElem::zero(const RingPtr& ring) { return GrElem(ring, Vec(ring->d(), 0)); }

GrElem GrElem::one(const RingPtr& ring) { return from_int(ring, 1); }

GrElem GrElem::from_int(const RingPtr& ring, long long value) {
  Vec c(ring->d(), 0);
  const auto pm = static_cast<long long>(ring->modulus());
  c[0] = static_cast<std::uint64_t>(((value % pm) + pm) % pm);
  return GrElem(ring, std::move(c));
}

GrElem GrElem::naive_lift(const RingPtr& ring, const FqElem& x) {
  if (x.p() != ring->p()) throw RingMismatch("characteristic mismatch in lift");
  FqElem y = x.degree() == ring->d() ? x : ring->tower()->embed(x, ring->d());
  return GrElem(ring, y.coeffs());
}

bool GrElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint64_t x) { return x == 0; });
}

bool GrElem::is_unit() const { return !reduce().is_zero(); }

unsigned GrElem::valuation() const {
  unsigned v = m();
  for (std::uint64_t c : c_) {
    if (!c) continue;
    unsigned k = 0;
    while (c % p() == 0) {
      c /= p();
      ++k;
    }
    v = std::min(v, k);
  }
  return v;
}

FqElem GrElem::reduce() const {
  Vec r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = c_[i] % p();
  return FqElem(ring_->level(), std::move(r));
}

GrElem GrElem::inverse() const {
  if (!is_unit()) throw NotAUnit(to_string() + " is not a unit");
  GrElem y = naive_lift(ring_, reduce().inverse());
  const GrElem two = from_int(ring_, 2);
  for (unsigned prec = 1; prec < m(); prec *= 2) y = y * (two - *this * y);
  return y;
}

GrElem GrElem::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  return GrElem(ring_, raw_pow(c_, e, ring_->lift_poly(), ring_->modulus()));
}

GrElem GrElem::div_p(unsigned k) const {
  if (k == 0) return *this;
  if (k >= m()) return zero(ring_);
  const std::uint64_t pk = ipow(p(), k);
  Vec r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (c_[i] % pk) throw InvalidInput(to_string() + " is not divisible by p^" + std::to_string(k));
    r[i] = c_[i] / pk;
  }
  return GrElem(ring_, std::move(r));
}

GrElem GrElem::mul_p(unsigned k) const {
  if (k >= m()) return zero(ring_);
  const std::uint64_t pk = ipow(p(), k);
  Vec r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mulm(c_[i], pk, ring_->modulus());
  return GrElem(ring_, std::move(r));
}

std::string GrElem::to_string() const {
  std::ostringstream os;
  os << ring_->descriptor() << ":[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "]";
  return os.str();
}

std::pair<GrElem, GrElem> common_ring(const GrElem& a, const GrElem& b) {
  if (a.ring() == b.ring()) return {a, b};
  if (a.p() != b.p()) throw RingMismatch("Galois rings of different characteristic");
  if (a.ring()->tower() != b.ring()->tower()) throw RingMismatch("Galois rings over different towers");
  const unsigned m = std::min(a.m(), b.m());
  const unsigned D = std::lcm(a.d(), b.d());
  return {embed(change_length(a, m), D), embed(change_length(b, m), D)};
}

GrElem operator+(const GrElem& a, const GrElem& b) {
  if (a.ring_ != b.ring_) {
    auto [x, y] = common_ring(a, b);
    return x + y;
  }
  const std::uint64_t pm = a.ring_->modulus();
  Vec r(a.c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = addm(a.c_[i], b.c_[i], pm);
  return GrElem(a.ring_, std::move(r));
}

GrElem operator-(const GrElem& a, const GrElem& b) {
  if (a.ring_ != b.ring_) {
    auto [x, y] = common_ring(a, b);
    return x - y;
  }
  const std::uint64_t pm = a.ring_->modulus();
  Vec r(a.c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = subm(a.c_[i], b.c_[i], pm);
  return GrElem(a.ring_, std::move(r));
}

GrElem operator*(const GrElem& a, const GrElem& b) {
  if (a.ring_ != b.ring_) {
    auto [x, y] = common_ring(a, b);
    return x * y;
  }
  return GrElem(a.ring_, a.ring_->mul(a.c_, b.c_));
}

GrElem operator-(const GrElem& a) {
  const std::uint64_t pm = a.ring_->modulus();
  Vec r(a.c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] ? pm - a.c_[i] : 0;
  return GrElem(a.ring_, std::move(r));
}

bool operator==(const GrElem& a, const GrElem& b) {
  if (a.ring_ == b.ring_) return a.c_ == b.c_;
  auto [x, y] = common_ring(a, b);
  return x.c_ == y.c_;
}

GrElem change_length(const GrElem& x, unsigned m) {
  if (m == x.m()) return x;
  return GrElem(x.ring()->tower()->galois_ring(m, x.d()), x.coeffs());
}

GrElem embed(const GrElem& x, unsigned big_d) {
  if (big_d == x.d()) return x;
  auto tower = x.ring()->tower();
  const auto& images = tower->ring_embedding(x.m(), x.d(), big_d);
  RingPtr big = tower->galois_ring(x.m(), big_d);
  const std::uint64_t pm = big->modulus();
  Vec r(big_d, 0);
  for (unsigned i = 0; i < x.d(); ++i) {
    const std::uint64_t c = x.coeffs()[i];
    if (!c) continue;
    for (unsigned j = 0; j < big_d; ++j) r[j] = addm(r[j], mulm(c, images[i][j], pm), pm);
  }
  return GrElem(big, std::move(r));
}

GrElem teichmuller(const FqElem& x, const RingPtr& ring) {
  if (ring->d() % x.degree()) throw InvalidInput("field element " + x.to_string() + " does not live in " + ring->descriptor());
  if (x.is_zero()) return GrElem::zero(ring);
  GrElem y = GrElem::naive_lift(ring, x);
  if (ring->m() == 1) return y;
  if (auto hit = ring->cached_lift(y.coeffs())) return GrElem(ring, std::move(*hit));
  auto key = y.coeffs();
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), ring->p(), ring->d());
  for (unsigned i = 1; i < ring->m(); ++i) y = y.pow(qd);
  ring->store_lift(std::move(key), y.coeffs());
  return y;
}

std::vector<FqElem> digits(const GrElem& z) {
  std::vector<FqElem> out;
  GrElem rest = z;
  for (unsigned i = 0; i < z.m(); ++i) {
    const FqElem x = rest.reduce();
    out.push_back(x);
    if (i + 1 < z.m()) rest = (rest - teichmuller(x, z.ring())).div_p(1);
  }
  return out;
}

GrElem from_digits(const std::vector<FqElem>& ds, const RingPtr& ring) {
  if (ds.size() > ring->m()) throw InvalidInput("more digits than the ring length");
  GrElem acc = GrElem::zero(ring);
  for (std::size_t i = ds.size(); i-- > 0;) acc = acc.mul_p(1) + teichmuller(ds[i], ring);
  return acc;
}

std::vector<FqElem> witt_coords(const GrElem& z) {
  auto ds = digits(z);
  for (std::size_t i = 0; i < ds.size(); ++i) ds[i] = frobenius(ds[i], static_cast<long>(i));
  return ds;
}

GrElem from_witt_coords(const std::vector<FqElem>& coords, const RingPtr& ring) {
  std::vector<FqElem> ds;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    FqElem w = coords[i].degree() == ring->d() ? coords[i] : ring->tower()->embed(coords[i], ring->d());
    ds.push_back(frobenius(w, -static_cast<long>(i)));
  }
  return from_digits(ds, ring);
}

GrElem sigma(const GrElem& z, long k) {
  const long d = z.d();
  const long steps = ((k % d) + d) % d;
  Vec c = z.coeffs();
  for (long s = 0; s < steps; ++s) c = z.ring()->apply_sigma(c);
  return GrElem(z.ring(), std::move(c));
}

ZpmReport zpm_oracle_check(std::uint64_t p, unsigned m, unsigned trials, std::uint64_t seed) {
  auto tower = FieldTower::create(p, seed);
  RingPtr ring = tower->galois_ring(m, 1);
  const std::uint64_t pm = ring->modulus();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, pm - 1);
  ZpmReport report{p, m, trials, 0};
  for (unsigned t = 0; t < trials; ++t) {
    const std::uint64_t a = dist(rng), b = dist(rng);
    const GrElem x = GrElem::from_int(ring, static_cast<long long>(a));
    const GrElem y = GrElem::from_int(ring, static_cast<long long>(b));
    bool ok = (x + y).coeffs()[0] == (a + b) % pm;
    ok = ok && (x * y).coeffs()[0] == mulm(a, b, pm);
    ok = ok && (x - y).coeffs()[0] == (a + pm - b) % pm;
    if (b % p) ok = ok && mulm(y.inverse().coeffs()[0], b, pm) == 1 % pm;
    if (!ok) ++report.mismatches;
  }
  return report;
}

GrElem parse_gr(const std::string& text, const std::shared_ptr<FieldTower>& tower) {
  std::uint64_t p = 0;
  unsigned m = 0, d = 0;
  std::size_t used = 0;
  const auto open = text.find('[');
  const auto close = text.rfind(']');
  if (text.rfind("W(", 0) != 0 || open == std::string::npos || close == std::string::npos || close < open)
    throw InvalidInput("malformed Galois ring element '" + text + "'");
  try {
    std::string head = text.substr(2, open - 2);
    p = std::stoull(head, &used);
    head = head.substr(used + 1);
    m = static_cast<unsigned>(std::stoul(head, &used));
    head = head.substr(used + 1);
    d = static_cast<unsigned>(std::stoul(head, &used));
    if (head.substr(used).rfind("):", 0) != 0) throw std::invalid_argument("tail");
  } catch (const std::logic_error&) {
    throw InvalidInput("malformed Galois ring element '" + text + "'");
  }
  if (p != tower->p()) throw RingMismatch("element '" + text + "' has wrong characteristic");
  RingPtr ring = tower->galois_ring(m, d);
  Vec coeffs;
  std::stringstream body(text.substr(open + 1, close - open - 1));
  std::string item;
  try {
    while (std::getline(body, item, ',')) {
      if (item.find_first_not_of(' ') == std::string::npos) continue;
      const long long v = std::stoll(item);
      const auto pm = static_cast<long long>(ring->modulus());
      coeffs.push_back(static_cast<std::uint64_t>(((v % pm) + pm) % pm));
    }
  } catch (const std::logic_error&) {
    throw InvalidInput("malformed Galois ring element '" + text + "'");
  }
  return GrElem(ring, std::move(coeffs));
}

}  // namespace closure
