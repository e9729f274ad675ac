#include "rsside/fq_linalg.hpp"

#include <algorithm>
#include <limits>

#include "rsside/errors.hpp"

namespace rsside {

namespace {

unsigned lowest_nonzero(const FieldTower& t, Element v) {
  for (unsigned i = 0; i < t.ell(); ++i)
    if (t.coord(v, i) != 0) return i;
  return t.ell();
}

Element unit(const FieldTower& t, unsigned col) {
  std::vector<SubSymbol> c(t.ell(), 0);
  c[col] = 1;
  return t.from_coords(c);
}

void require_same_field(const Subspace& u, const Subspace& v) {
  require(u.tower()->same_field(*v.tower()), "subspaces belong to different field towers");
}

}  // namespace

EchelonBasis::EchelonBasis(const FieldTower& tower) : tower_(&tower), by_pivot_(tower.ell(), Element{}) {}

Element EchelonBasis::reduce(Element v) const {
  const auto& t = *tower_;
  for (unsigned p = 0; p < t.ell() && !v.is_zero(); ++p) {
    if (by_pivot_[p].is_zero()) continue;
    const SubSymbol c = t.coord(v, p);
    if (c != 0) v = t.sub(v, t.scale(c, by_pivot_[p]));
  }
  return v;
}

bool EchelonBasis::insert(Element v) {
  const auto& t = *tower_;
  require(v.index < t.size(), "element does not belong to this field");
  v = reduce(v);
  if (v.is_zero()) return false;
  const unsigned piv = lowest_nonzero(t, v);
  v = t.scale(t.base_inv(t.coord(v, piv)), v);
  for (auto& row : by_pivot_) {
    if (row.is_zero()) continue;
    const SubSymbol c = t.coord(row, piv);
    if (c != 0) row = t.sub(row, t.scale(c, v));
  }
  by_pivot_[piv] = v;
  ++rank_;
  return true;
}

std::vector<Element> EchelonBasis::rows() const {
  std::vector<Element> out;
  out.reserve(rank_);
  for (auto r : by_pivot_)
    if (!r.is_zero()) out.push_back(r);
  return out;
}

std::vector<unsigned> EchelonBasis::pivots() const {
  std::vector<unsigned> out;
  for (unsigned p = 0; p < by_pivot_.size(); ++p)
    if (!by_pivot_[p].is_zero()) out.push_back(p);
  return out;
}

std::vector<SubSymbol> EchelonBasis::express(Element v) const {
  require(contains(v), "element is not in the span");
  std::vector<SubSymbol> out;
  out.reserve(rank_);
  for (unsigned p = 0; p < by_pivot_.size(); ++p)
    if (!by_pivot_[p].is_zero()) out.push_back(tower_->coord(v, p));
  return out;
}

Subspace::Subspace(TowerPtr tower) : tower_(std::move(tower)) {
  require(tower_ != nullptr, "null field tower");
}

Subspace Subspace::span(TowerPtr tower, std::span<const Element> generators) {
  Subspace s(std::move(tower));
  EchelonBasis e(*s.tower_);
  for (auto g : generators) e.insert(g);
  s.basis_ = e.rows();
  return s;
}

Subspace Subspace::from_rref(TowerPtr tower, std::vector<Element> rows) {
  Subspace s = span(tower, rows);
  ensure(s.basis_ == rows, "rows are not in canonical reduced echelon form");
  return s;
}

Subspace Subspace::full(TowerPtr tower) {
  std::vector<Element> rows;
  for (unsigned i = 0; i < tower->ell(); ++i) rows.push_back(unit(*tower, i));
  Subspace s(std::move(tower));
  s.basis_ = std::move(rows);
  return s;
}

std::vector<unsigned> Subspace::pivots() const {
  std::vector<unsigned> out;
  for (auto b : basis_) out.push_back(lowest_nonzero(*tower_, b));
  return out;
}

bool Subspace::contains(Element v) const {
  EchelonBasis e(*tower_);
  for (auto b : basis_) e.insert(b);
  return e.contains(v);
}

std::vector<Element> Subspace::elements() const {
  const auto& t = *tower_;
  const std::uint64_t count = ipow(t.q(), dim());
  require(count <= kTowerSizeBudget, "subspace too large to enumerate");
  std::vector<Element> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t v = i;
    Element x = t.zero();
    for (std::size_t r = basis_.size(); r-- > 0;) {
      x = t.add(x, t.scale(static_cast<SubSymbol>(v % t.q()), basis_[r]));
      v /= t.q();
    }
    out.push_back(x);
  }
  return out;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.tower_->same_field(*b.tower_) && a.basis_ == b.basis_;
}

unsigned rank_of(const FieldTower& tower, std::span<const Element> elems) {
  EchelonBasis e(tower);
  for (auto x : elems) e.insert(x);
  return e.rank();
}

Subspace span(TowerPtr tower, std::span<const Element> elems) { return Subspace::span(std::move(tower), elems); }

Subspace scale(Element gamma, const Subspace& v) {
  require(!gamma.is_zero(), "cannot scale a subspace by zero");
  const auto& t = *v.tower();
  std::vector<Element> rows;
  rows.reserve(v.dim());
  for (auto b : v.basis()) rows.push_back(t.mul(gamma, b));
  return Subspace::span(v.tower(), rows);
}

unsigned joint_rank(const Subspace& u, const Subspace& v) {
  require_same_field(u, v);
  EchelonBasis e(*u.tower());
  for (auto b : u.basis()) e.insert(b);
  for (auto b : v.basis()) e.insert(b);
  return e.rank();
}

unsigned intersect_dim(const Subspace& u, const Subspace& v) { return u.dim() + v.dim() - joint_rank(u, v); }

Subspace subfield_subspace(TowerPtr tower, unsigned a) {
  const auto elems = tower->subfield_elements(a);
  return Subspace::span(std::move(tower), elems);
}

BasisCompletion complete_basis(const Subspace& side, const Subspace& tprime) {
  require_same_field(side, tprime);
  const auto& t = *side.tower();
  require(side.dim() + tprime.dim() == t.ell(),
          "complete_basis needs dim S + dim T' = ell (got " + std::to_string(side.dim()) + " + " +
              std::to_string(tprime.dim()) + ")");
  EchelonBasis base(t);
  for (auto b : side.basis()) base.insert(b);
  for (std::uint32_t d = 1; d < t.size(); ++d) {
    const Element delta{d};
    EchelonBasis e = base;
    bool ok = true;
    for (auto b : tprime.basis()) {
      if (!e.insert(t.mul(delta, b))) {
        ok = false;
        break;
      }
    }
    if (ok) return {delta, scale(delta, tprime)};
  }
  throw InvariantError("no completing scalar exists; contradicts the basis-completion counting bound");
}

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k) {
  if (k > n) return 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    const std::uint64_t num = ipow(q, n - i);
    const std::uint64_t den = ipow(q, i + 1);
    if (num == kMax || den == kMax) return kMax;
    r = r * (num - 1) / (den - 1);
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

SubspaceEnumeration::SubspaceEnumeration(TowerPtr tower, unsigned d) : tower_(std::move(tower)), d_(d) {
  const unsigned ell = tower_->ell();
  require(d <= ell, "subspace dimension exceeds ell");
  const std::uint64_t expected = gaussian_binomial(tower_->q(), ell, d);
  if (expected > kEnumerationBudget)
    throw BudgetError("Gaussian binomial [" + std::to_string(ell) + " choose " + std::to_string(d) + "]_" +
                      std::to_string(tower_->q()) + " exceeds the enumeration budget of 10^6");

  std::vector<unsigned> piv(d);
  for (unsigned i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    unsigned free_entries = 0;
    for (unsigned r = 0; r < d; ++r)
      for (unsigned j = piv[r] + 1; j < ell; ++j)
        if (!std::binary_search(piv.begin(), piv.end(), j)) ++free_entries;
    blocks_.push_back({piv, free_entries, total_});
    total_ += ipow(tower_->q(), free_entries);
    // Next combination in lexicographic order.
    int i = static_cast<int>(d) - 1;
    while (i >= 0 && piv[i] == ell - d + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++piv[i];
    for (unsigned j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  ensure(total_ == expected, "subspace enumeration count disagrees with the Gaussian binomial");
}

Subspace SubspaceEnumeration::at(std::uint64_t index) const {
  require(index < total_, "subspace index out of range");
  const auto it = std::upper_bound(blocks_.begin(), blocks_.end(), index,
                                   [](std::uint64_t i, const PivotBlock& b) { return i < b.offset; });
  const PivotBlock& blk = *(it - 1);
  std::uint64_t local = index - blk.offset;
  const auto& t = *tower_;
  const unsigned ell = t.ell();
  std::vector<std::vector<SubSymbol>> rows(d_, std::vector<SubSymbol>(ell, 0));
  // Fill free entries from the least significant end.
  for (unsigned r = d_; r-- > 0;) {
    rows[r][blk.pivots[r]] = 1;
    for (unsigned j = ell; j-- > blk.pivots[r] + 1;) {
      if (std::binary_search(blk.pivots.begin(), blk.pivots.end(), j)) continue;
      rows[r][j] = static_cast<SubSymbol>(local % t.q());
      local /= t.q();
    }
  }
  std::vector<Element> basis;
  basis.reserve(d_);
  for (const auto& r : rows) basis.push_back(t.from_coords(r));
  return Subspace::span(tower_, basis);
}

ComplementEnumeration::ComplementEnumeration(const Subspace& side) : side_(side) {
  const auto& t = *side.tower();
  const auto piv = side.pivots();
  for (unsigned j = 0; j < t.ell(); ++j)
    if (!std::binary_search(piv.begin(), piv.end(), j)) free_cols_.push_back(j);
  const std::uint64_t exponent = std::uint64_t{side.dim()} * free_cols_.size();
  total_ = ipow(t.q(), static_cast<unsigned>(exponent));
  if (total_ > kEnumerationBudget)
    throw BudgetError("complement count q^{s(ell-s)} = " + std::to_string(t.q()) + "^" + std::to_string(exponent) +
                      " exceeds the enumeration budget of 10^6");
}

Subspace ComplementEnumeration::at(std::uint64_t index) const {
  require(index < total_, "complement index out of range");
  const auto& t = *side_.tower();
  const auto& sb = side_.basis();
  std::vector<Element> rows(free_cols_.size());
  for (std::size_t j = free_cols_.size(); j-- > 0;) {
    Element row = unit(t, free_cols_[j]);
    for (std::size_t i = sb.size(); i-- > 0;) {
      row = t.add(row, t.scale(static_cast<SubSymbol>(index % t.q()), sb[i]));
      index /= t.q();
    }
    rows[j] = row;
  }
  return Subspace::span(side_.tower(), rows);
}

SubspaceEnumeration enumerate_subspaces(TowerPtr tower, unsigned d) { return SubspaceEnumeration(std::move(tower), d); }

ComplementEnumeration enumerate_complements(const Subspace& side) { return ComplementEnumeration(side); }

}  // namespace rsside
