#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rsside/field_tower.hpp"
#include "rsside/poly.hpp"

namespace rsside {

// RS(A, k) over F_{q^ell} with its dual GRS multipliers
// lambda_j = prod_{i != j} (alpha_j - alpha_i)^{-1}.
struct CodeSpec {
  TowerPtr tower;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Element> points;
  std::vector<Element> lambda;

  std::size_t redundancy() const { return n - k; }
  bool full_length() const { return n == tower->size(); }
};

using CodePtr = std::shared_ptr<const CodeSpec>;

// When points are omitted the first n field elements in index order are used
// (all of F_{q^ell} when n = q^ell). The duality of lambda is spot-checked on
// random (f, g) pairs before returning.
CodePtr make_code(TowerPtr tower, std::size_t n, std::size_t k,
                  std::optional<std::vector<Element>> points = std::nullopt);

// Sum_j g(alpha_j) lambda_j f(alpha_j) for `trials` random f (deg < k), g
// (deg < n - k); true when every sum vanishes.
bool verify_duality(const CodeSpec& spec, unsigned trials, std::uint64_t seed);

struct Codeword {
  CodePtr spec;
  std::vector<Element> symbols;
  // Kept for test oracles only; repair never reads it.
  std::optional<Poly> message_poly;
};

Codeword encode(const CodePtr& spec, std::span<const Element> message);

// Sum_j g(alpha_j) lambda_j c_j; zero for every codeword.
Element check_identity(const CodeSpec& spec, std::span<const Element> g, std::span<const Element> symbols);

// Lagrange interpolation through k known symbols, evaluated at x. This is the
// naive repair baseline: it downloads k whole symbols.
Element interpolate_at(const CodeSpec& spec, std::span<const std::size_t> positions,
                       std::span<const Element> values, Element x);

}  // namespace rsside
