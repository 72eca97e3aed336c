#pragma once

// Arithmetic in a compatible tower of finite fields F_{p^d}, used as a
// finite stand-in for an algebraically closed field of characteristic p.
//
// Every level F_{p^d} is F_p[x]/(f_d) with f_d the least monic irreducible
// polynomial of degree d under the encoding sum c_i p^i of its non-leading
// coefficients. The tower is divisor-closed: requesting F_{p^d} also creates
// every F_{p^e} with e | d, and embeddings F_{p^e} -> F_{p^d} are chosen once,
// compatibly, so that embed(e->g) = embed(f->g) o embed(e->f) for e | f | g.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include <gmpxx.h>

namespace closure {

using Coord = std::uint64_t;

class FieldTower;
class GaloisRing;

/// One level F_{p^d} = F_p[x]/(modulus) of a tower.
struct FieldLevel {
  std::uint64_t p = 0;
  unsigned degree = 0;
  /// Monic defining polynomial, low degree first, size degree + 1.
  std::vector<Coord> modulus;
  /// frobenius[j] holds the coordinates of (g^j)^p, g the class of x.
  std::vector<std::vector<Coord>> frobenius;
  /// p^degree when it fits in 64 bits, else 0.
  std::uint64_t order = 0;
  std::weak_ptr<FieldTower> tower;
};

using LevelPtr = std::shared_ptr<const FieldLevel>;

/// An element of F_{p^d}, stored by its coordinates in the power basis of
/// its level. Values are immutable; arithmetic between different levels
/// embeds both operands into the lcm level (enlarging the tower if needed).
class FqElem {
 public:
  FqElem(LevelPtr level, std::vector<Coord> coeffs);

  static FqElem zero(const LevelPtr& level);
  static FqElem one(const LevelPtr& level);
  static FqElem from_int(const LevelPtr& level, long value);
  /// The class of x in F_p[x]/(f_d).
  static FqElem generator(const LevelPtr& level);

  const LevelPtr& level() const { return level_; }
  unsigned degree() const { return level_->degree; }
  std::uint64_t p() const { return level_->p; }
  const std::vector<Coord>& coeffs() const { return c_; }
  std::shared_ptr<FieldTower> tower() const;

  bool is_zero() const;
  bool is_one() const;

  /// Throws DivisionByZero for zero.
  FqElem inverse() const;
  FqElem pow(const mpz_class& e) const;

  /// "p^d:[c0,c1,...]".
  std::string to_string() const;

  friend FqElem operator+(const FqElem& a, const FqElem& b);
  friend FqElem operator-(const FqElem& a, const FqElem& b);
  friend FqElem operator*(const FqElem& a, const FqElem& b);
  friend FqElem operator/(const FqElem& a, const FqElem& b);
  friend FqElem operator-(const FqElem& a);
  FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
  FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
  FqElem& operator*=(const FqElem& o) { return *this = *this * o; }

  /// Equality in the algebraic closure: operands on different levels are
  /// compared after embedding into a common level.
  friend bool operator==(const FqElem& a, const FqElem& b);

 private:
  LevelPtr level_;
  std::vector<Coord> c_;
};

/// x^{p^k}; k is reduced mod the level degree, so negative k gives the
/// inverse automorphism.
FqElem frobenius(const FqElem& x, long k);

/// Deterministic total order used for branch ordering: compares coordinate
/// vectors (highest coordinate first) after embedding to a common level.
bool lex_less(const FqElem& a, const FqElem& b);

/// Brings two elements of the same tower to their lcm level.
std::pair<FqElem, FqElem> common_level(const FqElem& a, const FqElem& b);

class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0x5eedULL;

  static std::shared_ptr<FieldTower> create(std::uint64_t p, std::uint64_t seed = kDefaultSeed);

  std::uint64_t p() const { return p_; }
  std::uint64_t seed() const { return seed_; }

  /// Returns F_{p^d}, creating it (and all of its subfields) on demand.
  LevelPtr level(unsigned d);
  bool has_level(unsigned d) const;
  std::vector<unsigned> degrees() const;

  /// Embeds x into F_{p^d}; requires x.degree() | d.
  FqElem embed(const FqElem& x, unsigned d);

  FqElem element(unsigned d, std::vector<Coord> coeffs);
  FqElem from_int(long value) { return FqElem::from_int(level(1), value); }
  FqElem random(unsigned d, std::mt19937_64& rng);

  /// Cached Galois ring W_m(F_{p^d}); see galois_ring.hpp.
  std::shared_ptr<const GaloisRing> galois_ring(unsigned m, unsigned d);

  /// Cached images of the powers of the Teichmuller generator of W_m(F_{p^d})
  /// inside W_m(F_{p^D}); defined in galois_ring.cpp.
  const std::vector<std::vector<std::uint64_t>>& ring_embedding(unsigned m, unsigned d, unsigned big_d);

 private:
  FieldTower(std::uint64_t p, std::uint64_t seed) : p_(p), seed_(seed) {}

  void build_level_locked(unsigned d);
  const std::vector<std::vector<Coord>>& embedding_locked(unsigned from, unsigned to) const;
  std::vector<Coord> apply_embedding_locked(const std::vector<Coord>& x, unsigned from, unsigned to) const;

  std::uint64_t p_;
  std::uint64_t seed_;

  mutable std::shared_mutex mutex_;
  std::map<unsigned, std::shared_ptr<FieldLevel>> levels_;
  // (from, to) -> images of g_from^i, i < from, as coordinate vectors at `to`.
  std::map<std::pair<unsigned, unsigned>, std::vector<std::vector<Coord>>> embeddings_;

  std::mutex ring_mutex_;
  std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const GaloisRing>> rings_;
  std::map<std::tuple<unsigned, unsigned, unsigned>, std::vector<std::vector<std::uint64_t>>> ring_embeddings_;
};

/// Polynomial over the tower, coefficient of x^i at index i.
using FqPoly = std::vector<FqElem>;

struct RootMultiplicity {
  FqElem root;
  unsigned multiplicity;
};

/// All roots of f in the algebraic closure, with multiplicities summing to
/// deg f. The tower is enlarged to the splitting level of f. Roots are
/// returned in lex_less order. Throws InvalidInput for the zero polynomial.
std::vector<RootMultiplicity> poly_roots(const FqPoly& f, const std::shared_ptr<FieldTower>& tower);

/// Horner evaluation.
FqElem poly_eval(const FqPoly& f, const FqElem& x);

/// Parses "p^d:[c0,c1,...]" against the given tower.
FqElem parse_fq(const std::string& text, const std::shared_ptr<FieldTower>& tower);

}  // namespace closure
