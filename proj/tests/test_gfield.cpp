#include <gtest/gtest.h>

#include <map>
#include <random>

#include "closure/error.hpp"
#include "closure/gfield.hpp"
#include "oracles.hpp"

using namespace closure;

TEST(Gfield, CharacteristicTwo) {
  auto T = FieldTower::create(2);
  EXPECT_TRUE((T->from_int(1) + T->from_int(1)).is_zero());
}

TEST(Gfield, InverseInF3) {
  auto T = FieldTower::create(3);
  EXPECT_EQ(T->from_int(2).inverse(), T->from_int(2));
  EXPECT_THROW(T->from_int(0).inverse(), DivisionByZero);
}

TEST(Gfield, DefiningPolynomialsAreLeast) {
  auto T = FieldTower::create(2);
  EXPECT_EQ(T->level(2)->modulus, (std::vector<Coord>{1, 1, 1}));
  EXPECT_EQ(T->level(3)->modulus, (std::vector<Coord>{1, 1, 0, 1}));
  EXPECT_EQ(T->level(4)->modulus, (std::vector<Coord>{1, 1, 0, 0, 1}));
  auto T3 = FieldTower::create(3);
  EXPECT_EQ(T3->level(2)->modulus, (std::vector<Coord>{1, 0, 1}));
}

TEST(Gfield, F4GeneratorSquare) {
  auto T = FieldTower::create(2);
  auto g = FqElem::generator(T->level(2));
  EXPECT_EQ(g * g, g + T->from_int(1));
  EXPECT_EQ(frobenius(g, 1), g + T->from_int(1));
  EXPECT_EQ(frobenius(frobenius(g, 1), -1), g);
}

TEST(Gfield, FrobeniusFixesPrimeField) {
  auto T = FieldTower::create(5);
  for (long a = 0; a < 5; ++a) EXPECT_EQ(frobenius(T->from_int(a), 1), T->from_int(a));
}

TEST(Gfield, FrobeniusOrderDividesDegree) {
  auto T = FieldTower::create(3);
  std::mt19937_64 rng(7);
  for (unsigned d : {2u, 3u, 4u, 6u}) {
    for (int i = 0; i < 20; ++i) {
      auto x = T->random(d, rng);
      EXPECT_EQ(frobenius(x, d), x);
      EXPECT_EQ(frobenius(x, 1), x.pow(3));
    }
  }
}

TEST(Gfield, MixedLevelsMeetAtLcm) {
  auto T = FieldTower::create(2);
  std::mt19937_64 rng(1);
  auto a = T->random(2, rng);
  auto b = T->random(3, rng);
  EXPECT_EQ((a * b).degree(), 6u);
}

TEST(Gfield, EmbeddingsAreHomomorphisms) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2ULL, 3ULL}) {
    auto T = FieldTower::create(p);
    const std::vector<std::pair<unsigned, unsigned>> pairs{{1, 2}, {2, 4}, {2, 6}, {3, 6}, {4, 8}, {1, 6}};
    for (auto [e, d] : pairs) {
      for (int i = 0; i < 200; ++i) {
        auto x = T->random(e, rng);
        auto y = T->random(e, rng);
        auto ex = T->embed(x, d);
        auto ey = T->embed(y, d);
        EXPECT_EQ(T->embed(x * y, d).coeffs(), (ex * ey).coeffs());
        EXPECT_EQ(T->embed(x + y, d).coeffs(), (ex + ey).coeffs());
        if (!(x == y)) EXPECT_NE(ex.coeffs(), ey.coeffs());
      }
    }
  }
}

TEST(Gfield, EmbeddingsCommute) {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {2ULL, 3ULL}) {
    auto T = FieldTower::create(p);
    T->level(12);
    const std::vector<std::tuple<unsigned, unsigned, unsigned>> chains{
        {1, 2, 4}, {2, 4, 12}, {2, 6, 12}, {3, 6, 12}, {1, 3, 12}, {4, 12, 12}};
    for (auto [a, b, c] : chains) {
      for (int i = 0; i < 20; ++i) {
        auto x = T->random(a, rng);
        EXPECT_EQ(T->embed(T->embed(x, b), c).coeffs(), T->embed(x, c).coeffs());
      }
    }
  }
}

TEST(Gfield, RootsSimpleExamples) {
  auto T = FieldTower::create(2);
  auto one = T->from_int(1);
  auto zero = T->from_int(0);
  auto r = poly_roots({zero, one, one}, T);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].multiplicity, 1u);
  EXPECT_TRUE(r[0].root.is_zero());
  EXPECT_TRUE(r[1].root.is_one());

  auto r2 = poly_roots({one, one, one}, T);
  ASSERT_EQ(r2.size(), 2u);
  for (const auto& [x, m] : r2) {
    EXPECT_EQ(x.degree(), 2u);
    EXPECT_EQ(m, 1u);
    EXPECT_TRUE((x * x + x + one).is_zero());
  }
  EXPECT_THROW(poly_roots({zero}, T), InvalidInput);
}

TEST(Gfield, TripleRoot) {
  std::mt19937_64 rng(3);
  auto T = FieldTower::create(5);
  for (int i = 0; i < 10; ++i) {
    auto a = T->random(2, rng);
    FqPoly f{FqElem::one(T->level(2))};
    for (int k = 0; k < 3; ++k) f = oracle::poly_mul(f, {-a, FqElem::one(T->level(2))});
    auto r = poly_roots(f, T);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].root, a);
    EXPECT_EQ(r[0].multiplicity, 3u);
  }
}

TEST(Gfield, RootsMatchExhaustiveSearch) {
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<std::uint64_t, unsigned>> fields{{2, 3}, {3, 2}, {5, 1}, {7, 2}, {2, 6}};
  for (auto [p, d] : fields) {
    auto T = FieldTower::create(p);
    for (int trial = 0; trial < 15; ++trial) {
      auto f = oracle::random_poly(T, d, 1 + rng() % 6, rng);
      auto got = poly_roots(f, T);
      unsigned total = 0;
      for (const auto& r : got) {
        total += r.multiplicity;
        EXPECT_TRUE(poly_eval(f, r.root).is_zero());
      }
      EXPECT_EQ(total, f.size() - 1);
      // Roots that already live in F_{p^d} must agree with brute force.
      auto want = oracle::exhaustive_roots(f, T, d);
      std::map<std::vector<Coord>, unsigned> in_base;
      for (const auto& r : got) {
        auto lvl = r.root.degree();
        for (const auto& [w, m] : want)
          if (T->embed(w, lvl).coeffs() == r.root.coeffs()) in_base[w.coeffs()] = r.multiplicity;
      }
      ASSERT_EQ(in_base.size(), want.size());
      for (const auto& [w, m] : want) EXPECT_EQ(in_base[w.coeffs()], m);
    }
  }
}

TEST(Gfield, RootsOverLargeFieldUseSplitting) {
  std::mt19937_64 rng(99);
  auto T = FieldTower::create(101);
  auto L = T->level(2);
  std::vector<FqElem> roots;
  FqPoly f{FqElem::one(L)};
  for (int i = 0; i < 4; ++i) {
    roots.push_back(T->random(2, rng));
    f = oracle::poly_mul(f, {-roots.back(), FqElem::one(L)});
  }
  auto got = poly_roots(f, T);
  unsigned total = 0;
  for (const auto& r : got) {
    total += r.multiplicity;
    EXPECT_TRUE(poly_eval(f, r.root).is_zero());
  }
  EXPECT_EQ(total, 4u);
}

TEST(Gfield, ParseRoundTrip) {
  auto T = FieldTower::create(3);
  auto x = parse_fq("3^2:[1,2]", T);
  EXPECT_EQ(x.to_string(), "3^2:[1,2]");
  EXPECT_THROW(parse_fq("3^2:[1]", T), InvalidInput);
  EXPECT_THROW(parse_fq("nonsense", T), InvalidInput);
}
