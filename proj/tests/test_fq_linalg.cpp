#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rsside/errors.hpp"
#include "rsside/fq_linalg.hpp"

using namespace rsside;

namespace {

Subspace random_subspace(const TowerPtr& t, unsigned d, std::mt19937_64& rng) {
  const SubspaceEnumeration e(t, d);
  return e.at(rng() % e.size());
}

}  // namespace

TEST(FqLinalg, RankExamples) {
  auto t = make_tower(2, 1, 2);
  EXPECT_EQ(rank_of(*t, {}), 0u);
  const Element w{2};
  const Element xs[] = {t->one(), w, t->add(w, t->one())};
  EXPECT_EQ(rank_of(*t, xs), 2u);
  auto t16 = make_tower(2, 1, 4);
  const Element basis[] = {Element{1}, Element{2}, Element{4}, Element{8}};
  EXPECT_EQ(rank_of(*t16, basis), 4u);
}

TEST(FqLinalg, CanonicalSpan) {
  auto t = make_tower(3, 1, 4);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Element> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(Element{static_cast<std::uint32_t>(rng() % t->size())});
    const auto a = Subspace::span(t, gens);
    std::vector<Element> other(gens.rbegin(), gens.rend());
    for (auto& g : other) g = t->scale(2, g);
    other.push_back(t->add(gens[0], gens[1]));
    EXPECT_EQ(a, Subspace::span(t, other));
    EXPECT_EQ(a.dim(), rank_of(*t, gens));
    for (auto g : gens) EXPECT_TRUE(a.contains(g));
    EXPECT_EQ(a.elements().size(), ipow(3, a.dim()));
  }
}

TEST(FqLinalg, IntersectionProperties) {
  auto t = make_tower(2, 1, 6);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto U = random_subspace(t, static_cast<unsigned>(rng() % 7), rng);
    const auto V = random_subspace(t, static_cast<unsigned>(rng() % 7), rng);
    const Element g{static_cast<std::uint32_t>(1 + rng() % 63)};
    EXPECT_EQ(intersect_dim(U, V), intersect_dim(V, U));
    EXPECT_EQ(intersect_dim(U, U), U.dim());
    EXPECT_EQ(intersect_dim(scale(g, U), scale(g, V)), intersect_dim(U, V));
    // brute-force set intersection
    std::set<std::uint32_t> su;
    for (auto x : U.elements()) su.insert(x.index);
    std::uint64_t common = 0;
    for (auto x : V.elements()) common += su.count(x.index);
    EXPECT_EQ(common, ipow(2, intersect_dim(U, V)));
  }
  EXPECT_THROW(scale(Element{0}, Subspace::full(t)), PreconditionError);
}

TEST(FqLinalg, CosetIntersectionsF64) {
  auto t = make_tower(2, 1, 6);
  const auto F4 = subfield_subspace(t, 2);
  const auto F8 = subfield_subspace(t, 3);
  for (std::uint32_t g = 1; g < 64; ++g) {
    const auto a = scale(Element{g}, F4);
    EXPECT_EQ(a.dim(), 2u);
    for (std::uint32_t d = 1; d < 64; ++d) EXPECT_LE(intersect_dim(a, scale(Element{d}, F8)), 1u);
  }
}

TEST(FqLinalg, CompleteBasis) {
  auto t = make_tower(2, 1, 4);
  const auto zero = Subspace(t);
  const auto r0 = complete_basis(zero, Subspace::full(t));
  EXPECT_EQ(r0.delta, t->one());

  const auto F4 = subfield_subspace(t, 2);
  const auto r = complete_basis(F4, F4);
  EXPECT_FALSE(F4.contains(r.delta));
  EXPECT_EQ(joint_rank(F4, r.target), 4u);
  EXPECT_EQ(r.target, scale(r.delta, F4));
  EXPECT_THROW(complete_basis(F4, subfield_subspace(t, 1)), PreconditionError);
}

TEST(FqLinalg, CompleteBasisAlwaysDirectSum) {
  auto t = make_tower(3, 1, 3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const unsigned s = static_cast<unsigned>(rng() % 4);
    const auto S = random_subspace(t, s, rng);
    const auto Tp = random_subspace(t, 3 - s, rng);
    const auto r = complete_basis(S, Tp);
    EXPECT_EQ(joint_rank(S, r.target), 3u);
  }
}

TEST(FqLinalg, EnumerationCounts) {
  auto t = make_tower(2, 1, 4);
  EXPECT_EQ(SubspaceEnumeration(t, 2).size(), 35u);
  EXPECT_EQ(SubspaceEnumeration(t, 0).size(), 1u);
  EXPECT_EQ(SubspaceEnumeration(t, 4).size(), 1u);
  EXPECT_EQ(*SubspaceEnumeration(t, 4).begin(), Subspace::full(t));
  std::set<std::vector<Element>> seen;
  for (auto V : SubspaceEnumeration(t, 2)) {
    EXPECT_EQ(V.dim(), 2u);
    seen.insert(V.basis());
  }
  EXPECT_EQ(seen.size(), 35u);
}

TEST(FqLinalg, EnumerationMatchesGaussianBinomial) {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto pe = *prime_power(q);
    for (unsigned ell = 1; ipow(q, ell) <= 1024; ++ell) {
      auto t = make_tower(pe.first, pe.second, ell);
      for (unsigned d = 0; d <= ell; ++d) {
        const auto g = gaussian_binomial(q, ell, d);
        if (g > kEnumerationBudget) continue;
        const SubspaceEnumeration e(t, d);
        EXPECT_EQ(e.size(), g) << "q=" << q << " ell=" << ell << " d=" << d;
        if (g <= 200) {
          std::set<std::vector<Element>> seen;
          for (auto V : e) seen.insert(V.basis());
          EXPECT_EQ(seen.size(), g);
        }
      }
    }
  }
}

TEST(FqLinalg, Complements) {
  auto t = make_tower(2, 1, 4);
  const auto S = subfield_subspace(t, 2);
  const ComplementEnumeration c(S);
  EXPECT_EQ(c.size(), 16u);
  std::set<std::vector<Element>> seen;
  for (auto T : c) {
    EXPECT_EQ(T.dim(), 2u);
    EXPECT_EQ(joint_rank(S, T), 4u);
    seen.insert(T.basis());
  }
  EXPECT_EQ(seen.size(), 16u);
  // brute-force: every 2-dim complement is listed
  std::uint64_t brute = 0;
  for (auto T : SubspaceEnumeration(t, 2)) brute += joint_rank(S, T) == 4;
  EXPECT_EQ(brute, 16u);

  const ComplementEnumeration full(Subspace::full(t));
  EXPECT_EQ(full.size(), 1u);
  EXPECT_EQ(full.at(0).dim(), 0u);
}

TEST(FqLinalg, Budgets) {
  auto t = make_tower(2, 1, 12);
  EXPECT_THROW(SubspaceEnumeration(t, 6), BudgetError);
  EXPECT_THROW(ComplementEnumeration(subfield_subspace(t, 6)), BudgetError);
}
