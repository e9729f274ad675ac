#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsside/fq_linalg.hpp"
#include "rsside/repair_engine.hpp"

namespace rsside {

// L_W(x) = prod_{w in W} (x - w), full coefficient list (low first). Built
// by the linearized recurrence L <- L^q - L(w)^{q-1} L and checked to vanish
// on W.
Poly subspace_poly(const Subspace& W);
// Linearized coefficients a_i of L_W = sum_i a_i x^{q^i}.
std::vector<Element> subspace_poly_linearized(const Subspace& W);
// Direct product over all members of W; the test oracle for subspace_poly.
Poly subspace_poly_product(const Subspace& W);

struct SubspaceScheme {
  Subspace W;
  Subspace T;
  std::vector<Element> T_basis;
  Element delta;
  RepairScheme scheme;
  std::uint64_t predicted_bw = 0;
  std::uint64_t measured_bw = 0;
  std::string method = "custom";
};

// Check polynomials g_i(x) = L_W(beta_i (x - a*)) / ((x - a*) c0), c0 the
// linear coefficient of L_W, so that g_i(a*) = beta_i exactly. The beta_i are
// the echelon basis of T = delta * Tprime, delta the first scalar making
// S (+) T the whole field.
SubspaceScheme build_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, const Subspace& W,
                            const Subspace& Tprime);

// (n-1)(ell-s) - sum_{j != star} dim((alpha_j - alpha*) T cap W).
std::uint64_t intersection_bandwidth(const CodeSpec& spec, std::size_t star, std::size_t s, const Subspace& T,
                                     const Subspace& W);

struct OptimizeOptions {
  unsigned threads = 0;     // 0: RS_SIDEINFO_THREADS, else machine parallelism
  bool coset_mode = false;  // restrict T to cosets delta * F_{q^{ell-s}}
  bool serial = false;      // run the single-threaded reference loop
};

struct OptimizeResult {
  Subspace T;
  Subspace W;
  std::uint64_t score = 0;  // sum_j dim((alpha_j - alpha*) T cap W)
  std::uint64_t bandwidth = 0;
  std::uint64_t complements_searched = 0;
  std::uint64_t subspaces_searched = 0;
  std::uint64_t T_index = 0;
  std::uint64_t W_index = 0;
};

unsigned resolve_threads(unsigned requested);

// Maximizes the intersection sum over candidate T x every m-dim W. Ties go to
// the smallest flattened index T_index * |W| + W_index, independent of the
// worker count.
OptimizeResult optimize_exhaustive(const CodeSpec& spec, std::size_t star, std::span<const Element> side, unsigned m,
                                   const OptimizeOptions& options = {});

SubspaceScheme build_exhaustive_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, unsigned m,
                                       const OptimizeOptions& options = {});

// W = w_shift * F_{q^m}, Tprime = F_{q^{ell-s}}. Each precondition failure is
// reported separately. With s = 0 the target space is the whole field and the
// coprimality condition is not needed.
SubspaceScheme build_subfield_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, unsigned m,
                                     std::optional<Element> w_shift = std::nullopt);

// C(q^{m-1}, 2) ((q^a - 1)/(q - 1))^2 + 1, saturating.
std::uint64_t greedy_threshold(std::uint64_t q, unsigned a, unsigned m);

// An m-dim W meeting every gamma F_{q^a} in dimension 0 or 1.
Subspace build_greedy_W(const TowerPtr& tower, unsigned a, unsigned m);

SubspaceScheme build_greedy_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, unsigned m);

// dim(gamma F_{q^a} cap W) for coset representatives gamma = xi^i,
// i < (q^ell - 1)/(q^a - 1).
struct DimensionProfile {
  std::vector<unsigned> per_coset;  // representative order
  std::vector<unsigned> dims;       // sorted descending
  std::uint64_t q = 2;

  std::uint64_t sum() const;
};

DimensionProfile dimension_profile(const Subspace& W, unsigned a);

// sum over all gamma in F_{q^ell}^* of dim(gamma F_{q^a} cap W).
std::uint64_t coset_dimension_sum(const Subspace& W, unsigned a, unsigned threads = 0);
std::uint64_t coset_dimension_sum_serial(const Subspace& W, unsigned a);

struct MajorizationVerdict {
  bool premise_ok = false;  // equal lengths and equal x-sums
  bool majorized = false;   // x(d) is majorized by x(dprime)
  std::uint64_t sum_d = 0;
  std::uint64_t sum_dprime = 0;
  std::string note;
};

// x_i = q^{d_i} - 1. When x(d) is majorized by x(dprime) the dimension sum of d
// must dominate; a violation throws InvariantError.
MajorizationVerdict majorization_compare(const DimensionProfile& d, const DimensionProfile& dprime);

}  // namespace rsside
