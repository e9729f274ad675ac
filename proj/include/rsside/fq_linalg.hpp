#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rsside/field_tower.hpp"

namespace rsside {

inline constexpr std::uint64_t kEnumerationBudget = 1'000'000;

// Incremental reduced row echelon form over F_q. Rows are elements of
// F_{q^ell} read as coordinate vectors; a row's pivot is its lowest nonzero
// coordinate and is normalized to 1.
class EchelonBasis {
 public:
  explicit EchelonBasis(const FieldTower& tower);

  // Returns true when v was independent of the current rows.
  bool insert(Element v);
  Element reduce(Element v) const;
  bool contains(Element v) const { return reduce(v).is_zero(); }
  unsigned rank() const { return rank_; }

  // Rows in ascending pivot order.
  std::vector<Element> rows() const;
  std::vector<unsigned> pivots() const;

  // Coefficients of v over rows(); v must lie in the span.
  std::vector<SubSymbol> express(Element v) const;

 private:
  const FieldTower* tower_;
  std::vector<Element> by_pivot_;  // row with that pivot column, zero if none
  unsigned rank_ = 0;
};

// An F_q-subspace of F_{q^ell} in canonical reduced echelon form; two values
// compare equal iff they are the same set.
class Subspace {
 public:
  explicit Subspace(TowerPtr tower);

  static Subspace span(TowerPtr tower, std::span<const Element> generators);
  // Rows already in canonical form; checked.
  static Subspace from_rref(TowerPtr tower, std::vector<Element> rows);
  static Subspace full(TowerPtr tower);

  const TowerPtr& tower() const { return tower_; }
  unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
  const std::vector<Element>& basis() const { return basis_; }
  std::vector<unsigned> pivots() const;

  bool contains(Element v) const;
  // All q^dim members, in the order of their coefficient vectors over basis().
  std::vector<Element> elements() const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  TowerPtr tower_;
  std::vector<Element> basis_;
};

unsigned rank_of(const FieldTower& tower, std::span<const Element> elems);
Subspace span(TowerPtr tower, std::span<const Element> elems);
Subspace scale(Element gamma, const Subspace& v);
unsigned intersect_dim(const Subspace& u, const Subspace& v);
// rank of the union of two bases; used by direct-sum checks.
unsigned joint_rank(const Subspace& u, const Subspace& v);
Subspace subfield_subspace(TowerPtr tower, unsigned a);

struct BasisCompletion {
  Element delta;
  Subspace target;
};

// First delta != 0 in index order with S (+) delta*Tprime = F_{q^ell}.
BasisCompletion complete_basis(const Subspace& side, const Subspace& tprime);

// Saturates at UINT64_MAX.
std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k);

// Every d-dimensional subspace, exactly once, ordered by pivot-column tuple
// then by free entries (row-major, last entry least significant). Random
// access lets parallel workers split the index range.
class SubspaceEnumeration {
 public:
  SubspaceEnumeration(TowerPtr tower, unsigned d);

  std::uint64_t size() const { return total_; }
  Subspace at(std::uint64_t index) const;

  class Iterator {
   public:
    Iterator(const SubspaceEnumeration* e, std::uint64_t i) : e_(e), i_(i) {}
    Subspace operator*() const { return e_->at(i_); }
    Iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator!=(const Iterator& o) const { return i_ != o.i_; }

   private:
    const SubspaceEnumeration* e_;
    std::uint64_t i_;
  };
  Iterator begin() const { return {this, 0}; }
  Iterator end() const { return {this, total_}; }

 private:
  struct PivotBlock {
    std::vector<unsigned> pivots;
    unsigned free_entries;
    std::uint64_t offset;
  };

  TowerPtr tower_;
  unsigned d_;
  std::vector<PivotBlock> blocks_;
  std::uint64_t total_ = 0;
};

// Every (ell - s)-dimensional T with S (+) T = F_{q^ell}: the graphs of the
// q^{s(ell-s)} linear maps from the standard complement into S.
class ComplementEnumeration {
 public:
  explicit ComplementEnumeration(const Subspace& side);

  std::uint64_t size() const { return total_; }
  Subspace at(std::uint64_t index) const;

  class Iterator {
   public:
    Iterator(const ComplementEnumeration* e, std::uint64_t i) : e_(e), i_(i) {}
    Subspace operator*() const { return e_->at(i_); }
    Iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator!=(const Iterator& o) const { return i_ != o.i_; }

   private:
    const ComplementEnumeration* e_;
    std::uint64_t i_;
  };
  Iterator begin() const { return {this, 0}; }
  Iterator end() const { return {this, total_}; }

 private:
  Subspace side_;
  std::vector<unsigned> free_cols_;
  std::uint64_t total_ = 0;
};

SubspaceEnumeration enumerate_subspaces(TowerPtr tower, unsigned d);
ComplementEnumeration enumerate_complements(const Subspace& side);

}  // namespace rsside
