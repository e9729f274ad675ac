#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsside {

// An element of F_{q^ell}. The index packs the coefficient vector over the
// polynomial basis {1, x, ..., x^{ell-1}}: index = sum_i c_i q^i, and each
// F_q coefficient c_i is itself sum_j d_j p^j over the base polynomial basis.
// Index order is the "coefficient lexicographic order" used throughout
// (highest-degree coefficient most significant).
struct Element {
  std::uint32_t index = 0;

  constexpr bool is_zero() const { return index == 0; }
  friend constexpr auto operator<=>(Element, Element) = default;
};

// A value of the base field F_q, packed as base-p digits. The embedding
// F_q -> F_{q^ell} sends c to Element{c}.
using SubSymbol = std::uint32_t;

struct TowerParams {
  unsigned p = 2;
  unsigned e = 1;
  unsigned ell = 1;
  // Monic, low-degree first, length e + 1, entries in [0, p).
  std::vector<std::uint32_t> base_modulus;
  // Monic, low-degree first, length ell + 1, entries are F_q values.
  std::vector<SubSymbol> top_modulus;
};

struct Moduli {
  std::vector<std::uint32_t> base;
  std::vector<SubSymbol> top;
};

inline constexpr std::uint64_t kTowerSizeBudget = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kExhaustiveSizeBudget = std::uint64_t{1} << 12;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

// Validates parameters and builds arithmetic tables. Without explicit moduli
// the lexicographically smallest monic irreducible with nonzero constant term
// is chosen for each level (coefficients read high-to-low).
TowerPtr make_tower(unsigned p, unsigned e, unsigned ell,
                    std::optional<Moduli> moduli = std::nullopt);

// F_q subset F_{q^ell}, q = p^e, with table-driven arithmetic. Immutable.
class FieldTower {
 public:
  const TowerParams& params() const { return params_; }
  unsigned p() const { return params_.p; }
  unsigned e() const { return params_.e; }
  unsigned ell() const { return params_.ell; }
  std::uint32_t q() const { return q_; }
  std::uint32_t size() const { return size_; }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }
  Element element(std::uint32_t index) const;
  Element embed(SubSymbol c) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t exponent) const;
  // x -> x^q
  Element frobenius(Element a) const;
  // F_q scalar times element.
  Element scale(SubSymbol c, Element a) const;

  SubSymbol trace(Element a) const;

  // Coordinate i of a over the polynomial basis.
  SubSymbol coord(Element a, unsigned i) const { return (a.index / qpow_[i]) % q_; }
  std::vector<SubSymbol> coords(Element a) const;
  Element from_coords(std::span<const SubSymbol> c) const;

  SubSymbol base_add(SubSymbol a, SubSymbol b) const;
  SubSymbol base_sub(SubSymbol a, SubSymbol b) const;
  SubSymbol base_neg(SubSymbol a) const;
  SubSymbol base_mul(SubSymbol a, SubSymbol b) const;
  SubSymbol base_inv(SubSymbol a) const;

  // Trace-dual basis: trace(basis[i] * dual[j]) = [i == j].
  std::vector<Element> dual_basis(std::span<const Element> basis) const;

  // The q^a elements of the subfield F_{q^a}: zero followed by the powers of
  // xi^{(q^ell - 1)/(q^a - 1)} in exponent order.
  std::vector<Element> subfield_elements(unsigned a) const;

  // Smallest element (index order) of multiplicative order q^ell - 1.
  Element primitive() const { return primitive_; }
  std::uint32_t log(Element a) const;
  Element exp(std::uint64_t i) const { return Element{exp_[i % order_]}; }

  // Schoolbook nested-polynomial multiplication with no lookup tables over
  // F_{q^ell}; kept as the reference the table path is checked against.
  Element mul_reference(Element a, Element b) const;
  Element pow_reference(Element a, std::uint64_t exponent) const;

  // "q=4,ell=3:[[0,1],[1,1],[0,0]]"
  std::string to_text(Element a) const;
  Element parse(std::string_view text) const;
  // The bracket part only, e.g. [[0,1],[1,1],[0,0]].
  std::string coeff_text(Element a) const;

  bool same_field(const FieldTower& other) const;

 private:
  friend TowerPtr make_tower(unsigned, unsigned, unsigned, std::optional<Moduli>);
  FieldTower() = default;

  SubSymbol base_mul_reference(SubSymbol a, SubSymbol b) const;
  void build_tables();

  TowerParams params_;
  std::uint32_t q_ = 2;
  std::uint32_t size_ = 2;
  std::uint32_t order_ = 1;
  std::vector<std::uint32_t> qpow_;      // q^i, i = 0..ell
  std::vector<std::uint32_t> ppow_;      // p^j, j = 0..e*ell
  std::vector<std::uint32_t> base_exp_;  // F_q^* exp table, length q - 1
  std::vector<std::uint32_t> base_log_;
  std::vector<std::uint32_t> exp_;       // F_{q^ell}^* exp table, length q^ell - 1
  std::vector<std::uint32_t> log_;
  Element primitive_;
};

bool is_prime(std::uint64_t n);

// Returns (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q);

std::uint64_t ipow(std::uint64_t base, unsigned exponent);

}  // namespace rsside
