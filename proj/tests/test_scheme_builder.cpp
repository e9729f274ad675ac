#include <gtest/gtest.h>

#include <random>

#include "rsside/bounds.hpp"
#include "rsside/errors.hpp"
#include "rsside/scheme_builder.hpp"

using namespace rsside;

namespace {

std::vector<Element> random_independent(const FieldTower& t, std::size_t s, std::mt19937_64& rng) {
  EchelonBasis e(t);
  std::vector<Element> out;
  while (out.size() < s) {
    const Element x{static_cast<std::uint32_t>(rng() % t.size())};
    if (e.insert(x)) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(SubspacePoly, SmallCases) {
  auto t = make_tower(3, 1, 3);
  EXPECT_EQ(subspace_poly(Subspace(t)), (Poly{Element{0}, Element{1}}));
  const auto Fq = subfield_subspace(t, 1);
  Poly expect(4, Element{0});
  expect[1] = t->neg(t->one());
  expect[3] = t->one();
  EXPECT_EQ(subspace_poly(Fq), expect);
}

TEST(SubspacePoly, RecurrenceMatchesProduct) {
  for (auto [p, e, ell] : {std::tuple{2u, 1u, 4u}, std::tuple{3u, 1u, 3u}, std::tuple{2u, 2u, 3u}}) {
    auto t = make_tower(p, e, ell);
    std::mt19937_64 rng(p + ell);
    for (int trial = 0; trial < 10; ++trial) {
      const unsigned d = static_cast<unsigned>(rng() % ell);
      const SubspaceEnumeration en(t, d);
      const auto W = en.at(rng() % en.size());
      auto direct = subspace_poly_product(W);
      trim(direct);
      EXPECT_EQ(subspace_poly(W), direct);
      const auto L = subspace_poly(W);
      for (std::size_t i = 0; i < L.size(); ++i) {
        bool qpow = false;
        for (unsigned j = 0; j <= d; ++j) qpow = qpow || i == ipow(t->q(), j);
        if (!qpow) EXPECT_TRUE(L[i].is_zero());
      }
      for (int r = 0; r < 10; ++r) {
        const Element u{static_cast<std::uint32_t>(rng() % t->size())};
        const Element v{static_cast<std::uint32_t>(rng() % t->size())};
        const SubSymbol c = static_cast<SubSymbol>(rng() % t->q());
        EXPECT_EQ(eval_poly(*t, L, t->add(u, v)), t->add(eval_poly(*t, L, u), eval_poly(*t, L, v)));
        EXPECT_EQ(eval_poly(*t, L, t->scale(c, u)), t->scale(c, eval_poly(*t, L, u)));
      }
      std::uint64_t roots = 0;
      for (std::uint32_t x = 0; x < t->size(); ++x) {
        const bool zero = eval_poly(*t, L, Element{x}).is_zero();
        roots += zero;
        EXPECT_EQ(zero, W.contains(Element{x}));
      }
      EXPECT_EQ(roots, ipow(t->q(), d));
    }
  }
}

TEST(BuildScheme, MEqualsOneNoSide) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  const auto ss = build_scheme(c, 0, {}, subfield_subspace(t, 1), Subspace::full(t));
  for (const auto& [j, b] : bandwidth(ss.scheme).per_helper) EXPECT_LE(b, 3u);
  EXPECT_EQ(ss.measured_bw, ss.predicted_bw);
  EXPECT_EQ(ss.measured_bw, 45u);
}

TEST(BuildScheme, ScalesTargetWhenNeeded) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  const auto F4 = subfield_subspace(t, 2);
  const auto ss = build_scheme(c, 0, SideInfo{F4.basis(), {}}, Subspace(t), F4);
  EXPECT_NE(ss.delta, t->one());
  EXPECT_EQ(joint_rank(F4, ss.T), 4u);
  EXPECT_EQ(ss.scheme.targets, ss.T_basis);
}

TEST(BuildScheme, Preconditions) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 14);
  const auto W2 = SubspaceEnumeration(t, 2).at(0);
  EXPECT_THROW(build_scheme(c, 0, {}, W2, Subspace::full(t)), PreconditionError);
  EXPECT_THROW(build_scheme(c, 0, {}, Subspace(t), subfield_subspace(t, 2)), PreconditionError);
}

TEST(BuildScheme, IntersectionFormulaRandom) {
  for (auto [p, e, ell] : {std::tuple{2u, 1u, 4u}, std::tuple{3u, 1u, 4u}}) {
    auto t = make_tower(p, e, ell);
    auto c = make_code(t, t->size(), t->size() - ipow(t->q(), ell - 1));
    std::mt19937_64 rng(17 * p);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t s = rng() % ell;
      const unsigned m = static_cast<unsigned>(rng() % ell);
      const std::size_t star = rng() % c->n;
      SideInfo side{random_independent(*t, s, rng), {}};
      const ComplementEnumeration comps(Subspace::span(t, side.S));
      const auto T = comps.at(rng() % comps.size());
      const SubspaceEnumeration ws(t, m);
      const auto W = ws.at(rng() % ws.size());
      const auto ss = build_scheme(c, star, side, W, T);
      EXPECT_EQ(ss.T, T);
      EXPECT_EQ(bandwidth(ss.scheme).total, intersection_bandwidth(*c, star, s, T, W));
    }
  }
}

TEST(BuildScheme, NonFullLengthCode) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 11, 7);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    SideInfo side{random_independent(*t, 1, rng), {}};
    const auto W = SubspaceEnumeration(t, 2).at(rng() % 35);
    const auto ss = build_scheme(c, trial % 11, side, W, ComplementEnumeration(Subspace::span(t, side.S)).at(0));
    EXPECT_EQ(ss.measured_bw, ss.predicted_bw);
  }
}

TEST(IntersectionBandwidth, TrivialW) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  EXPECT_EQ(intersection_bandwidth(*c, 0, 2, subfield_subspace(t, 2), Subspace(t)), 30u);
}

TEST(IntersectionBandwidth, SubfieldClosedForm) {
  auto t = make_tower(2, 1, 6);
  auto c = make_code(t, 64, 56);
  EXPECT_EQ(intersection_bandwidth(*c, 9, 4, scale(Element{5}, subfield_subspace(t, 2)), subfield_subspace(t, 3)),
            105u);
}

TEST(Optimize, F16Instance) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  const auto S = subfield_subspace(t, 2);
  const auto best = optimize_exhaustive(*c, 0, S.basis(), 2);
  EXPECT_EQ(best.score, 9u);
  EXPECT_EQ(best.bandwidth, 21u);
  EXPECT_EQ(best.subspaces_searched, 35u);
  EXPECT_EQ(best.complements_searched, 16u);
  const auto serial = optimize_exhaustive(*c, 0, S.basis(), 2, {1, false, true});
  EXPECT_EQ(serial.T_index, best.T_index);
  EXPECT_EQ(serial.W_index, best.W_index);
  for (unsigned th : {1u, 2u, 4u, 7u}) {
    const auto r = optimize_exhaustive(*c, 0, S.basis(), 2, {th, false, false});
    EXPECT_EQ(r.T_index, best.T_index);
    EXPECT_EQ(r.W_index, best.W_index);
  }
  const auto cos = optimize_exhaustive(*c, 0, S.basis(), 2, {0, true, false});
  EXPECT_GE(cos.bandwidth, best.bandwidth);
  EXPECT_EQ(cos.bandwidth, 21u);
}

TEST(Optimize, TrivialM) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  const auto r = optimize_exhaustive(*c, 3, std::vector<Element>{Element{3}}, 0);
  EXPECT_EQ(r.subspaces_searched, 1u);
  EXPECT_EQ(r.bandwidth, 45u);
}

TEST(Optimize, SerialMatchesParallelRandom) {
  auto t = make_tower(3, 1, 3);
  auto c = make_code(t, 20, 10);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto S = random_independent(*t, 1 + trial % 2, rng);
    const auto a = optimize_exhaustive(*c, trial, S, 2, {1, false, true});
    const auto b = optimize_exhaustive(*c, trial, S, 2, {4, false, false});
    EXPECT_EQ(a.bandwidth, b.bandwidth);
    EXPECT_EQ(a.T_index, b.T_index);
    EXPECT_EQ(a.W_index, b.W_index);
    EXPECT_GE(a.bandwidth, lower_bound(3, 3, S.size(), 20, 10).bound);
    const auto ss = build_exhaustive_scheme(c, trial, SideInfo{S, {}}, 2);
    EXPECT_EQ(ss.measured_bw, a.bandwidth);
  }
}

TEST(SubfieldScheme, Examples) {
  auto t6 = make_tower(2, 1, 6);
  std::mt19937_64 rng(2);
  for (std::size_t k : {40u, 56u}) {
    auto c = make_code(t6, 64, k);
    const auto ss = build_subfield_scheme(c, 11, SideInfo{random_independent(*t6, 4, rng), {}}, 3);
    EXPECT_EQ(ss.measured_bw, 105u);
    EXPECT_EQ(ss.method, "subfield");
  }
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  EXPECT_EQ(build_subfield_scheme(c, 0, SideInfo{random_independent(*t, 3, rng), {}}, 2).measured_bw, 12u);
  EXPECT_EQ(build_subfield_scheme(c, 0, {}, 2).measured_bw, 30u);
  try {
    build_subfield_scheme(c, 0, SideInfo{random_independent(*t, 2, rng), {}}, 2);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("coprimality"), std::string::npos);
  }
  EXPECT_THROW(build_subfield_scheme(make_code(t, 15, 11), 0, {}, 2), PreconditionError);
  EXPECT_THROW(build_subfield_scheme(c, 0, SideInfo{random_independent(*t, 1, rng), {}}, 1), PreconditionError);
}

TEST(SubfieldScheme, CosetShiftedW) {
  auto t = make_tower(2, 1, 6);
  auto c = make_code(t, 64, 56);
  std::mt19937_64 rng(9);
  for (std::uint32_t sh : {3u, 17u, 40u}) {
    const auto ss = build_subfield_scheme(c, 1, SideInfo{random_independent(*t, 4, rng), {}}, 3, Element{sh});
    EXPECT_EQ(ss.measured_bw, 105u);
  }
}

TEST(GreedyW, F16) {
  auto t = make_tower(2, 1, 4);
  EXPECT_EQ(greedy_threshold(2, 2, 2), 10u);
  const auto W = build_greedy_W(t, 2, 2);
  EXPECT_EQ(W.dim(), 2u);
  EXPECT_EQ(coset_dimension_sum(W, 2), 9u);
  EXPECT_EQ(coset_dimension_sum_serial(W, 2), 9u);
  EXPECT_EQ(build_greedy_W(t, 2, 1).dim(), 1u);
  EXPECT_THROW(build_greedy_W(t, 2, 3), PreconditionError);
  EXPECT_THROW(build_greedy_W(t, 3, 2), PreconditionError);
}

TEST(GreedyW, ProfilesAcrossFields) {
  for (auto [p, ell, a, m] : {std::tuple{2u, 6u, 2u, 2u}, std::tuple{2u, 6u, 3u, 2u}, std::tuple{2u, 8u, 2u, 3u},
                              std::tuple{3u, 4u, 2u, 2u}, std::tuple{2u, 10u, 5u, 2u}}) {
    auto t = make_tower(p, 1, ell);
    const auto W = build_greedy_W(t, a, m);
    const auto prof = dimension_profile(W, a);
    for (auto d : prof.per_coset) EXPECT_LE(d, 1u);
    const auto expect = (ipow(p, a) - 1) * (ipow(p, m) - 1) / (p - 1);
    EXPECT_EQ(coset_dimension_sum(W, a), expect);
    EXPECT_EQ(coset_dimension_sum_serial(W, a), expect);
    EXPECT_EQ(prof.sum() * (ipow(p, a) - 1), expect);
  }
}

TEST(GreedyScheme, F16) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto ss = build_greedy_scheme(c, trial, SideInfo{random_independent(*t, 2, rng), {}}, 2);
    EXPECT_EQ(ss.measured_bw, 21u);
    EXPECT_EQ(ss.predicted_bw, 21u);
  }
  EXPECT_THROW(build_greedy_scheme(make_code(make_tower(2, 1, 5), 32, 28), 0,
                                   SideInfo{{Element{1}, Element{2}}, {}}, 2),
               PreconditionError);
}

TEST(CosetRepetition, EachCosetCountedEqually) {
  auto t = make_tower(2, 1, 6);
  const auto F4 = subfield_subspace(t, 2);
  const auto W = SubspaceEnumeration(t, 3).at(77);
  const auto sub = t->subfield_elements(2);
  for (std::uint32_t g = 1; g < 64; ++g) {
    const auto d = intersect_dim(scale(Element{g}, F4), W);
    for (auto u : sub)
      if (!u.is_zero()) EXPECT_EQ(intersect_dim(scale(t->mul(Element{g}, u), F4), W), d);
  }
  EXPECT_EQ(coset_dimension_sum(W, 2), dimension_profile(W, 2).sum() * 3);
}

TEST(Majorization, Compare) {
  auto t = make_tower(2, 1, 4);
  const auto greedy = dimension_profile(build_greedy_W(t, 2, 2), 2);
  const auto same = majorization_compare(greedy, greedy);
  EXPECT_TRUE(same.premise_ok && same.majorized);
  EXPECT_EQ(same.sum_d, same.sum_dprime);

  const auto coincident = dimension_profile(subfield_subspace(t, 2), 2);
  EXPECT_EQ(coincident.dims.front(), 2u);
  const auto v = majorization_compare(greedy, coincident);
  EXPECT_TRUE(v.premise_ok);
  EXPECT_TRUE(v.majorized);
  EXPECT_GT(v.sum_d, v.sum_dprime);

  const auto one = dimension_profile(SubspaceEnumeration(t, 1).at(0), 2);
  EXPECT_FALSE(majorization_compare(greedy, one).premise_ok);
}

TEST(Majorization, ExhaustiveF16) {
  auto t = make_tower(2, 1, 4);
  std::uint64_t flat = 0, coincident = 0;
  for (auto W : SubspaceEnumeration(t, 2)) {
    const auto prof = dimension_profile(W, 2);
    const auto sum = coset_dimension_sum(W, 2);
    if (prof.dims.front() <= 1) {
      EXPECT_EQ(sum, 9u);
      ++flat;
    } else {
      EXPECT_LT(sum, 9u);
      ++coincident;
    }
  }
  EXPECT_EQ(flat + coincident, 35u);
  EXPECT_GT(coincident, 0u);
}
