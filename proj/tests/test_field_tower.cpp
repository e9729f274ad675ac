#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rsside/errors.hpp"
#include "rsside/field_tower.hpp"

using namespace rsside;

TEST(FieldTower, F4ModulusAndProduct) {
  auto t = make_tower(2, 1, 2);
  EXPECT_EQ(t->params().top_modulus, (std::vector<SubSymbol>{1, 1, 1}));
  const Element w{2};  // x
  EXPECT_EQ(t->mul(w, w), t->add(w, t->one()));
  EXPECT_EQ(t->trace(w), 1u);
  EXPECT_EQ(t->trace(t->zero()), 0u);
}

TEST(FieldTower, DegreeOneTower) {
  auto t = make_tower(2, 1, 1);
  EXPECT_EQ(t->size(), 2u);
  EXPECT_EQ(t->params().top_modulus, (std::vector<SubSymbol>{1, 1}));
  EXPECT_EQ(t->mul(t->one(), t->one()), t->one());
  EXPECT_EQ(t->trace(t->one()), 1u);
}

TEST(FieldTower, RejectsBadParameters) {
  EXPECT_THROW(make_tower(4, 1, 2), PreconditionError);
  EXPECT_THROW(make_tower(2, 1, 21), PreconditionError);
  EXPECT_THROW(make_tower(2, 1, 2, Moduli{{0, 1}, {1, 0, 1}}), PreconditionError);  // x^2 + 1 = (x+1)^2
  EXPECT_THROW(make_tower(2, 1, 2, Moduli{{0, 1}, {1, 1}}), PreconditionError);     // wrong degree
  EXPECT_THROW(make_tower(2, 1, 2)->inv(Element{0}), PreconditionError);
}

TEST(FieldTower, ExplicitModuliAccepted) {
  auto t = make_tower(2, 1, 4, Moduli{{0, 1}, {1, 0, 0, 1, 1}});  // x^4 + x^3 + 1
  for (std::uint32_t a = 1; a < 16; ++a) EXPECT_EQ(t->mul(Element{a}, t->inv(Element{a})), t->one());
}

class TowerAxioms : public ::testing::TestWithParam<std::tuple<unsigned, unsigned, unsigned>> {};

TEST_P(TowerAxioms, ExhaustiveGroupAndTrace) {
  const auto [p, e, ell] = GetParam();
  auto t = make_tower(p, e, ell);
  const std::uint64_t order = t->size() - 1;
  std::vector<std::uint64_t> hits(t->q(), 0);
  for (std::uint32_t i = 0; i < t->size(); ++i) {
    const Element a{i};
    hits[t->trace(a)]++;
    if (a.is_zero()) continue;
    EXPECT_EQ(t->mul(a, t->inv(a)), t->one());
    EXPECT_EQ(t->pow(a, order), t->one());
    EXPECT_EQ(t->pow(t->frobenius(a), ipow(t->q(), ell - 1)), a);
  }
  for (auto h : hits) EXPECT_EQ(h, t->size() / t->q());
}

TEST_P(TowerAxioms, TableMatchesReferenceArithmetic) {
  const auto [p, e, ell] = GetParam();
  auto t = make_tower(p, e, ell);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Element a{static_cast<std::uint32_t>(rng() % t->size())};
    const Element b{static_cast<std::uint32_t>(rng() % t->size())};
    const Element c{static_cast<std::uint32_t>(rng() % t->size())};
    EXPECT_EQ(t->mul(a, b), t->mul_reference(a, b));
    EXPECT_EQ(t->mul(a, t->add(b, c)), t->add(t->mul(a, b), t->mul(a, c)));
    EXPECT_EQ(t->trace(t->add(a, b)), t->base_add(t->trace(a), t->trace(b)));
    const SubSymbol k = static_cast<SubSymbol>(rng() % t->q());
    EXPECT_EQ(t->trace(t->scale(k, a)), t->base_mul(k, t->trace(a)));
    EXPECT_EQ(t->pow(a, 5), t->pow_reference(a, 5));
  }
}

INSTANTIATE_TEST_SUITE_P(Towers, TowerAxioms,
                         ::testing::Values(std::make_tuple(2u, 1u, 2u), std::make_tuple(2u, 1u, 4u),
                                           std::make_tuple(2u, 1u, 6u), std::make_tuple(3u, 1u, 4u),
                                           std::make_tuple(2u, 2u, 3u), std::make_tuple(3u, 2u, 2u),
                                           std::make_tuple(5u, 1u, 3u)));

TEST(FieldTower, DualBasis) {
  auto t = make_tower(2, 2, 3);
  std::vector<Element> B;
  for (unsigned i = 0; i < 3; ++i) {
    std::vector<SubSymbol> c(3, 0);
    c[i] = 1;
    B.push_back(t->from_coords(c));
  }
  const auto nu = t->dual_basis(B);
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) EXPECT_EQ(t->trace(t->mul(B[i], nu[j])), i == j ? 1u : 0u);
  EXPECT_EQ(t->dual_basis(nu), B);
  const Element rep[] = {B[0], B[0], B[1]};
  EXPECT_THROW(t->dual_basis(rep), PreconditionError);
}

TEST(FieldTower, DualBasisF4) {
  auto t = make_tower(2, 1, 2);
  const Element B[] = {t->one(), Element{2}};
  const auto nu = t->dual_basis(B);
  EXPECT_EQ(t->trace(t->mul(B[0], nu[0])), 1u);
  EXPECT_EQ(t->trace(t->mul(B[1], nu[0])), 0u);
  EXPECT_EQ(t->trace(t->mul(B[0], nu[1])), 0u);
  EXPECT_EQ(t->trace(t->mul(B[1], nu[1])), 1u);
}

TEST(FieldTower, SubfieldsClosed) {
  auto t = make_tower(2, 1, 6);
  for (unsigned a : {1u, 2u, 3u, 6u}) {
    const auto els = t->subfield_elements(a);
    ASSERT_EQ(els.size(), ipow(2, a));
    std::set<std::uint32_t> in;
    for (auto x : els) in.insert(x.index);
    EXPECT_EQ(in.size(), els.size());
    for (auto x : els) {
      EXPECT_TRUE(in.count(t->frobenius(x).index));
      if (!x.is_zero()) EXPECT_TRUE(in.count(t->inv(x).index));
      for (auto y : els) {
        EXPECT_TRUE(in.count(t->add(x, y).index));
        EXPECT_TRUE(in.count(t->mul(x, y).index));
      }
    }
  }
  EXPECT_THROW(t->subfield_elements(4), PreconditionError);
  const auto base = make_tower(3, 1, 4)->subfield_elements(1);
  EXPECT_EQ(base.size(), 3u);
}

TEST(FieldTower, PrimitiveHasFullOrder) {
  auto t = make_tower(3, 1, 4);
  const Element g = t->primitive();
  std::set<std::uint32_t> seen;
  Element x = t->one();
  for (std::uint32_t i = 0; i < t->size() - 1; ++i) {
    seen.insert(x.index);
    x = t->mul(x, g);
  }
  EXPECT_EQ(seen.size(), t->size() - 1);
}

TEST(FieldTower, TextRoundTrip) {
  auto t = make_tower(2, 2, 3);
  for (std::uint32_t i = 0; i < t->size(); ++i) EXPECT_EQ(t->parse(t->to_text(Element{i})), Element{i});
  EXPECT_EQ(t->to_text(Element{0}), "q=4,ell=3:[[0,0],[0,0],[0,0]]");
  EXPECT_THROW(t->parse("q=2,ell=3:[[0],[0],[0]]"), PreconditionError);
  EXPECT_THROW(t->parse("q=4,ell=3:[[0,2],[0,0],[0,0]]"), PreconditionError);
}

TEST(FieldTower, PrimePower) {
  EXPECT_EQ(prime_power(9), (std::pair<unsigned, unsigned>{3, 2}));
  EXPECT_FALSE(prime_power(6).has_value());
  EXPECT_FALSE(prime_power(1).has_value());
}
