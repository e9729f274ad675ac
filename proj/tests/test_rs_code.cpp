#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rsside/errors.hpp"
#include "rsside/rs_code.hpp"

using namespace rsside;

namespace {

std::vector<Element> random_vec(const FieldTower& t, std::size_t len, std::mt19937_64& rng) {
  std::vector<Element> v(len);
  for (auto& x : v) x = Element{static_cast<std::uint32_t>(rng() % t.size())};
  return v;
}

}  // namespace

TEST(Poly, ShiftAndEval) {
  auto t = make_tower(3, 1, 3);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_vec(*t, 6, rng);
    const Element a{static_cast<std::uint32_t>(rng() % t->size())};
    const Element x{static_cast<std::uint32_t>(rng() % t->size())};
    const auto ps = poly_shift(*t, p, a);
    EXPECT_EQ(eval_poly(*t, ps, x), eval_poly(*t, p, t->sub(x, a)));
    const auto q = random_vec(*t, 4, rng);
    EXPECT_EQ(eval_poly(*t, poly_mul(*t, p, q), x), t->mul(eval_poly(*t, p, x), eval_poly(*t, q, x)));
  }
  EXPECT_EQ(degree(Poly{}), -1);
  EXPECT_EQ(degree(Poly{Element{1}, Element{0}}), 0);
}

TEST(RsCode, FullLengthDefault) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  EXPECT_TRUE(c->full_length());
  for (std::uint32_t j = 0; j < 16; ++j) EXPECT_EQ(c->points[j], Element{j});
  EXPECT_TRUE(verify_duality(*c, 100, 42));
}

TEST(RsCode, TinyLambda) {
  auto t = make_tower(2, 1, 2);
  auto c = make_code(t, 2, 1, std::vector<Element>{Element{0}, Element{1}});
  EXPECT_EQ(c->lambda, (std::vector<Element>{t->one(), t->one()}));
}

TEST(RsCode, Preconditions) {
  auto t = make_tower(2, 1, 2);
  EXPECT_THROW(make_code(t, 3, 2, std::vector<Element>{Element{0}, Element{1}, Element{1}}), PreconditionError);
  EXPECT_THROW(make_code(t, 3, 3), PreconditionError);
  EXPECT_THROW(make_code(t, 5, 2), PreconditionError);
  auto c = make_code(t, 4, 2);
  const Element bad[] = {Element{1}};
  EXPECT_THROW(encode(c, bad), PreconditionError);
  const Poly g(3, Element{1});
  std::vector<Element> zero(4);
  EXPECT_THROW(check_identity(*c, g, zero), PreconditionError);
}

TEST(RsCode, DualityOnManyCodes) {
  std::mt19937_64 rng(9);
  for (auto [p, e, ell] : {std::tuple{2u, 1u, 4u}, std::tuple{3u, 1u, 3u}, std::tuple{2u, 2u, 2u}}) {
    auto t = make_tower(p, e, ell);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t n = 2 + rng() % (t->size() - 1);
      const std::size_t k = 1 + rng() % (n - 1);
      std::vector<Element> pts;
      for (std::uint32_t i = 0; i < t->size(); ++i) pts.push_back(Element{i});
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(n);
      auto c = make_code(t, n, k, pts);
      EXPECT_TRUE(verify_duality(*c, 100, rng()));
    }
  }
}

TEST(RsCode, EncodeAndCheck) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  std::mt19937_64 rng(2);
  const auto zero = encode(c, std::vector<Element>(12));
  for (auto x : zero.symbols) EXPECT_TRUE(x.is_zero());
  std::vector<Element> cmsg(12);
  cmsg[0] = Element{7};
  for (auto x : encode(c, cmsg).symbols) EXPECT_EQ(x, Element{7});

  const auto cw = encode(c, random_vec(*t, 12, rng));
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(check_identity(*c, random_vec(*t, 4, rng), cw.symbols).is_zero());
  EXPECT_TRUE(check_identity(*c, Poly{}, cw.symbols).is_zero());

  auto bad = cw.symbols;
  bad[5] = t->add(bad[5], t->one());
  bool detected = false;
  for (int i = 0; i < 20 && !detected; ++i) detected = !check_identity(*c, random_vec(*t, 4, rng), bad).is_zero();
  EXPECT_TRUE(detected);
}

TEST(RsCode, InterpolationRecoversEverySymbol) {
  auto t = make_tower(2, 1, 4);
  auto c = make_code(t, 16, 12);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cw = encode(c, random_vec(*t, 12, rng));
    for (std::size_t star = 0; star < 16; ++star) {
      std::vector<std::size_t> pos;
      for (std::size_t j = 0; j < 16 && pos.size() < 12; ++j)
        if (j != (star + 1 + trial) % 16 && j != star) pos.push_back(j);
      std::vector<Element> vals;
      for (auto j : pos) vals.push_back(cw.symbols[j]);
      EXPECT_EQ(interpolate_at(*c, pos, vals, c->points[star]), cw.symbols[star]);
    }
  }
}
