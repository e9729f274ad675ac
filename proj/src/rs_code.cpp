#include "rsside/rs_code.hpp"

#include <random>
#include <set>

#include "rsside/errors.hpp"

namespace rsside {

namespace {

Poly random_poly(const FieldTower& t, std::size_t len, std::mt19937_64& rng) {
  Poly p(len);
  for (auto& c : p) c = Element{static_cast<std::uint32_t>(rng() % t.size())};
  return p;
}

}  // namespace

CodePtr make_code(TowerPtr tower, std::size_t n, std::size_t k, std::optional<std::vector<Element>> points) {
  require(tower != nullptr, "null field tower");
  require(k >= 1 && k < n, "need 1 <= k < n (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  require(n <= tower->size(), "n exceeds the field size q^ell");
  const auto& t = *tower;
  auto spec = std::make_shared<CodeSpec>();
  spec->tower = tower;
  spec->n = n;
  spec->k = k;
  if (points) {
    require(points->size() == n, "evaluation point count must equal n");
    std::set<std::uint32_t> seen;
    for (auto a : *points) {
      require(a.index < t.size(), "evaluation point outside the field");
      require(seen.insert(a.index).second, "duplicate evaluation point " + t.to_text(a));
    }
    spec->points = std::move(*points);
  } else {
    spec->points.reserve(n);
    for (std::size_t j = 0; j < n; ++j) spec->points.push_back(Element{static_cast<std::uint32_t>(j)});
  }
  spec->lambda.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Element prod = t.one();
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) prod = t.mul(prod, t.sub(spec->points[j], spec->points[i]));
    spec->lambda[j] = t.inv(prod);
  }
  ensure(verify_duality(*spec, 10, 0x5eed), "GRS multipliers failed the duality check");
  return spec;
}

bool verify_duality(const CodeSpec& spec, unsigned trials, std::uint64_t seed) {
  const auto& t = *spec.tower;
  std::mt19937_64 rng(seed);
  for (unsigned trial = 0; trial < trials; ++trial) {
    const Poly f = random_poly(t, spec.k, rng);
    const Poly g = random_poly(t, spec.redundancy(), rng);
    Element sum = t.zero();
    for (std::size_t j = 0; j < spec.n; ++j) {
      const Element a = spec.points[j];
      sum = t.add(sum, t.mul(t.mul(eval_poly(t, g, a), spec.lambda[j]), eval_poly(t, f, a)));
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

Codeword encode(const CodePtr& spec, std::span<const Element> message) {
  require(message.size() == spec->k, "message length must equal k");
  const auto& t = *spec->tower;
  Codeword cw{spec, {}, Poly(message.begin(), message.end())};
  cw.symbols.reserve(spec->n);
  for (auto a : spec->points) cw.symbols.push_back(eval_poly(t, message, a));
  return cw;
}

Element check_identity(const CodeSpec& spec, std::span<const Element> g, std::span<const Element> symbols) {
  require(degree(g) < static_cast<int>(spec.redundancy()), "check polynomial degree must be < n - k");
  require(symbols.size() == spec.n, "codeword length must equal n");
  const auto& t = *spec.tower;
  Element sum = t.zero();
  for (std::size_t j = 0; j < spec.n; ++j)
    sum = t.add(sum, t.mul(t.mul(eval_poly(t, g, spec.points[j]), spec.lambda[j]), symbols[j]));
  return sum;
}

Element interpolate_at(const CodeSpec& spec, std::span<const std::size_t> positions, std::span<const Element> values,
                       Element x) {
  require(positions.size() == spec.k && values.size() == spec.k, "interpolation needs exactly k symbols");
  const auto& t = *spec.tower;
  Element acc = t.zero();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Element ai = spec.points.at(positions[i]);
    Element term = values[i];
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (j == i) continue;
      const Element aj = spec.points.at(positions[j]);
      term = t.mul(term, t.div(t.sub(x, aj), t.sub(ai, aj)));
    }
    acc = t.add(acc, term);
  }
  return acc;
}

}  // namespace rsside
