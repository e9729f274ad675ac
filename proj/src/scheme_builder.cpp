#include "rsside/scheme_builder.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "rsside/errors.hpp"

namespace rsside {

namespace {

// Echelon form of W, copied and extended to intersect with other subspaces.
EchelonBasis echelon_of(const Subspace& W) {
  EchelonBasis e(*W.tower());
  for (auto b : W.basis()) e.insert(b);
  return e;
}

unsigned meet_dim(const EchelonBasis& w, unsigned wdim, std::span<const Element> u) {
  EchelonBasis e = w;
  for (auto b : u) e.insert(b);
  return wdim + static_cast<unsigned>(u.size()) - e.rank();
}

Element eval_linearized(const FieldTower& t, std::span<const Element> a, Element x) {
  Element acc = t.zero();
  Element xp = x;
  for (auto c : a) {
    acc = t.add(acc, t.mul(c, xp));
    xp = t.frobenius(xp);
  }
  return acc;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  return r > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(r);
}

void require_side(const FieldTower& t, const SideInfo& side) {
  require(side.size() <= t.ell(), "side information larger than ell");
  require(rank_of(t, side.S) == side.size(), "side information is not F_q-linearly independent");
}

// (alpha_j - alpha*) T for every helper, as basis lists.
std::vector<std::vector<Element>> shifted_targets(const CodeSpec& spec, std::size_t star, const Subspace& T) {
  const auto& t = *spec.tower;
  std::vector<std::vector<Element>> out;
  out.reserve(spec.n - 1);
  for (std::size_t j = 0; j < spec.n; ++j) {
    if (j == star) continue;
    const Element g = t.sub(spec.points[j], spec.points[star]);
    std::vector<Element> u;
    for (auto b : T.basis()) u.push_back(t.mul(g, b));
    out.push_back(std::move(u));
  }
  return out;
}

// Distinct cosets delta F_{q^a} complementing S, in first-delta order.
std::vector<Subspace> coset_candidates(const TowerPtr& tower, const Subspace& S, unsigned a) {
  const auto& t = *tower;
  const Subspace F = subfield_subspace(tower, a);
  std::vector<Subspace> out;
  std::vector<bool> covered(t.size(), false);
  for (std::uint32_t d = 1; d < t.size(); ++d) {
    if (covered[d]) continue;
    const Subspace c = scale(Element{d}, F);
    for (auto x : c.elements()) covered[x.index] = true;
    if (joint_rank(S, c) == t.ell()) out.push_back(c);
  }
  return out;
}

struct Best {
  std::uint64_t score = 0;
  std::uint64_t index = UINT64_MAX;

  void offer(std::uint64_t s, std::uint64_t i) {
    if (index == UINT64_MAX || s > score || (s == score && i < index)) {
      score = s;
      index = i;
    }
  }
};

}  // namespace

std::vector<Element> subspace_poly_linearized(const Subspace& W) {
  const auto& t = *W.tower();
  std::vector<Element> a{t.one()};
  for (auto w : W.basis()) {
    const Element c = t.pow(eval_linearized(t, a, w), t.q() - 1);
    std::vector<Element> next(a.size() + 1, t.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      next[i + 1] = t.add(next[i + 1], t.frobenius(a[i]));
      next[i] = t.sub(next[i], t.mul(c, a[i]));
    }
    a = std::move(next);
  }
  for (auto w : W.basis()) ensure(eval_linearized(t, a, w).is_zero(), "subspace polynomial does not vanish on W");
  return a;
}

Poly subspace_poly(const Subspace& W) {
  const auto& t = *W.tower();
  const auto a = subspace_poly_linearized(W);
  Poly p(ipow(t.q(), W.dim()) + 1, t.zero());
  for (std::size_t i = 0; i < a.size(); ++i) p[ipow(t.q(), static_cast<unsigned>(i))] = a[i];
  return p;
}

Poly subspace_poly_product(const Subspace& W) {
  const auto& t = *W.tower();
  Poly p{t.one()};
  for (auto w : W.elements()) {
    const Element lin[] = {t.neg(w), t.one()};
    p = poly_mul(t, p, lin);
  }
  return p;
}

std::uint64_t intersection_bandwidth(const CodeSpec& spec, std::size_t star, std::size_t s, const Subspace& T,
                                     const Subspace& W) {
  const auto& t = *spec.tower;
  require(star < spec.n, "erased position out of range");
  require(s <= t.ell() && T.dim() == t.ell() - s, "target subspace must have dimension ell - s");
  require(T.tower()->same_field(t) && W.tower()->same_field(t), "subspaces belong to a different field");
  std::uint64_t sum = 0;
  for (std::size_t j = 0; j < spec.n; ++j) {
    if (j == star) continue;
    sum += intersect_dim(scale(t.sub(spec.points[j], spec.points[star]), T), W);
  }
  return (spec.n - 1) * (t.ell() - s) - sum;
}

SubspaceScheme build_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, const Subspace& W,
                            const Subspace& Tprime) {
  const auto& spec = *code;
  const auto& t = *spec.tower;
  require(star < spec.n, "erased position out of range");
  require_side(t, side);
  const std::size_t s = side.size();
  require(ipow(t.q(), W.dim()) <= spec.redundancy(),
          "degree infeasible: q^dim(W) = " + std::to_string(ipow(t.q(), W.dim())) + " exceeds n-k = " +
              std::to_string(spec.redundancy()));
  require(Tprime.dim() == t.ell() - s, "dimension mismatch: Tprime must have dimension ell - s = " +
                                           std::to_string(t.ell() - s));
  const Subspace S = Subspace::span(spec.tower, side.S);
  const auto completion = complete_basis(S, Tprime);
  const Subspace& T = completion.target;

  const auto a = subspace_poly_linearized(W);
  const Element inv_c0 = t.inv(a[0]);
  const Element astar = spec.points[star];
  std::vector<Poly> checks;
  for (auto beta : T.basis()) {
    // h(y) = L_W(beta y) / (y c0); then g(x) = h(x - alpha*).
    Poly h(ipow(t.q(), W.dim()), t.zero());
    Element bp = beta;
    for (std::size_t i = 0; i < a.size(); ++i) {
      h[ipow(t.q(), static_cast<unsigned>(i)) - 1] = t.mul(t.mul(a[i], bp), inv_c0);
      bp = t.frobenius(bp);
    }
    Poly g = poly_shift(t, h, astar);
    trim(g);
    checks.push_back(std::move(g));
  }

  SubspaceScheme out{W, T, T.basis(), completion.delta, make_scheme(code, star, side, std::move(checks)), 0, 0,
                     "custom"};
  for (std::size_t i = 0; i < out.T_basis.size(); ++i)
    ensure(out.scheme.targets[i] == out.T_basis[i], "normalized check polynomial misses its target");
  const auto v = validate(out.scheme);
  ensure(v.ok, "constructed scheme is invalid: " + v.violation);
  out.measured_bw = bandwidth(out.scheme).total;
  out.predicted_bw = intersection_bandwidth(spec, star, s, T, W);
  ensure(out.measured_bw == out.predicted_bw, "measured bandwidth " + std::to_string(out.measured_bw) +
                                                  " differs from the intersection formula " +
                                                  std::to_string(out.predicted_bw));
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RS_SIDEINFO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::max(1, omp_get_max_threads()));
}

OptimizeResult optimize_exhaustive(const CodeSpec& spec, std::size_t star, std::span<const Element> side, unsigned m,
                                   const OptimizeOptions& options) {
  const auto& t = *spec.tower;
  require(star < spec.n, "erased position out of range");
  require(rank_of(t, side) == side.size() && side.size() <= t.ell(),
          "side information is not F_q-linearly independent");
  const unsigned s = static_cast<unsigned>(side.size());
  require(m <= t.ell(), "m exceeds ell");
  require(ipow(t.q(), m) <= spec.redundancy(), "degree infeasible: q^m exceeds n-k");
  const Subspace S = Subspace::span(spec.tower, side);

  std::vector<Subspace> Ts;
  if (options.coset_mode) {
    require(spec.full_length(), "coset mode needs a full-length code");
    require(s < t.ell() && t.ell() % (t.ell() - s) == 0, "coset mode needs (ell - s) | ell");
    Ts = coset_candidates(spec.tower, S, t.ell() - s);
    require(!Ts.empty(), "no coset of F_{q^(ell-s)} complements the side information");
  } else {
    const ComplementEnumeration comps(S);
    Ts.reserve(comps.size());
    for (auto T : comps) Ts.push_back(std::move(T));
  }
  const SubspaceEnumeration wenum(spec.tower, m);
  const std::uint64_t nw = wenum.size();
  std::vector<Subspace> Ws(nw, Subspace(spec.tower));
  std::vector<EchelonBasis> We(nw, EchelonBasis(t));
  const int threads = static_cast<int>(options.serial ? 1 : resolve_threads(options.threads));
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t w = 0; w < static_cast<std::int64_t>(nw); ++w) {
    Ws[w] = wenum.at(static_cast<std::uint64_t>(w));
    We[w] = echelon_of(Ws[w]);
  }

  Best best;
  for (std::uint64_t ti = 0; ti < Ts.size(); ++ti) {
    const auto U = shifted_targets(spec, star, Ts[ti]);
    auto score_of = [&](std::uint64_t w) {
      std::uint64_t sc = 0;
      for (const auto& u : U) sc += meet_dim(We[w], m, u);
      return sc;
    };
    if (options.serial) {
      for (std::uint64_t w = 0; w < nw; ++w) best.offer(score_of(w), ti * nw + w);
      continue;
    }
#pragma omp parallel num_threads(threads)
    {
      Best local;
#pragma omp for schedule(dynamic, 4) nowait
      for (std::int64_t w = 0; w < static_cast<std::int64_t>(nw); ++w)
        local.offer(score_of(static_cast<std::uint64_t>(w)), ti * nw + static_cast<std::uint64_t>(w));
#pragma omp critical(rsside_optimize_reduce)
      if (local.index != UINT64_MAX) best.offer(local.score, local.index);
    }
  }

  const std::uint64_t ti = best.index / nw;
  const std::uint64_t wi = best.index % nw;
  return OptimizeResult{Ts[ti],
                        Ws[wi],
                        best.score,
                        (spec.n - 1) * (t.ell() - s) - best.score,
                        Ts.size(),
                        nw,
                        ti,
                        wi};
}

SubspaceScheme build_exhaustive_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, unsigned m,
                                       const OptimizeOptions& options) {
  const auto best = optimize_exhaustive(*code, star, side.S, m, options);
  auto out = build_scheme(code, star, side, best.W, best.T);
  ensure(out.measured_bw == best.bandwidth, "exhaustive optimum does not reproduce its bandwidth");
  out.method = "exhaustive";
  return out;
}

SubspaceScheme build_subfield_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, unsigned m,
                                     std::optional<Element> w_shift) {
  const auto& spec = *code;
  const auto& t = *spec.tower;
  const unsigned ell = t.ell();
  const unsigned s = static_cast<unsigned>(side.size());
  require(spec.full_length(), "subfield scheme needs a full-length code (n = q^ell)");
  require(s < ell, "subfield scheme needs s < ell");
  require(m >= 1, "subfield scheme needs m >= 1");
  require(ell % (ell - s) == 0, "divisibility condition (ell - s) | ell fails: ell = " + std::to_string(ell) +
                                    ", ell - s = " + std::to_string(ell - s));
  require(ell % m == 0, "divisibility condition m | ell fails: ell = " + std::to_string(ell) + ", m = " +
                            std::to_string(m));
  if (s > 0)
    require(std::gcd(ell - s, m) == 1, "coprimality condition gcd(ell - s, m) = 1 fails: gcd(" +
                                           std::to_string(ell - s) + ", " + std::to_string(m) + ") = " +
                                           std::to_string(std::gcd(ell - s, m)));
  require(ipow(t.q(), m) <= spec.redundancy(), "degree condition q^m <= n - k fails: q^m = " +
                                                   std::to_string(ipow(t.q(), m)) + ", n - k = " +
                                                   std::to_string(spec.redundancy()));
  Subspace W = subfield_subspace(spec.tower, m);
  if (w_shift) W = scale(*w_shift, W);
  auto out = build_scheme(code, star, side, W, subfield_subspace(spec.tower, ell - s));
  out.method = "subfield";
  return out;
}

std::uint64_t greedy_threshold(std::uint64_t q, unsigned a, unsigned m) {
  if (m == 0) return 1;
  const std::uint64_t qm1 = ipow(q, m - 1);
  const std::uint64_t pairs = qm1 < 2 ? 0 : sat_mul(qm1, qm1 - 1) / 2;
  const std::uint64_t c = (ipow(q, a) - 1) / (q - 1);
  const std::uint64_t r = sat_mul(pairs, sat_mul(c, c));
  return r == UINT64_MAX ? r : r + 1;
}

Subspace build_greedy_W(const TowerPtr& tower, unsigned a, unsigned m) {
  const auto& t = *tower;
  require(a >= 1 && t.ell() % a == 0, "divisibility condition a | ell fails: a = " + std::to_string(a) +
                                          ", ell = " + std::to_string(t.ell()));
  require(m >= 1 && m <= t.ell(), "m must lie in [1, ell]");
  const std::uint64_t thr = greedy_threshold(t.q(), a, m);
  require(t.size() > thr, "greedy condition q^ell > C(q^(m-1), 2) ((q^a - 1)/(q - 1))^2 + 1 fails: " +
                              std::to_string(t.size()) + " <= " + std::to_string(thr));
  const auto sub = t.subfield_elements(a);
  std::vector<Element> basis{t.one()};
  std::vector<bool> forbidden(t.size());
  for (unsigned j = 2; j <= m; ++j) {
    const auto Wj = Subspace::span(tower, basis).elements();
    std::fill(forbidden.begin(), forbidden.end(), false);
    for (std::size_t ui = 0; ui < Wj.size(); ++ui)
      for (std::size_t vi = ui + 1; vi < Wj.size(); ++vi)
        for (auto a1 : sub) {
          const Element x = t.mul(a1, Wj[ui]);
          for (auto a2 : sub) forbidden[t.add(x, t.mul(a2, Wj[vi])).index] = true;
        }
    std::uint32_t pick = 1;
    while (pick < t.size() && forbidden[pick]) ++pick;
    ensure(pick < t.size(), "greedy step found no admissible element despite the counting condition");
    basis.push_back(Element{pick});
  }
  Subspace W = Subspace::span(tower, basis);
  ensure(W.dim() == m, "greedy basis is not independent");
  const auto prof = dimension_profile(W, a);
  for (auto d : prof.per_coset) ensure(d <= 1, "greedy W meets a coset in dimension > 1");
  return W;
}

SubspaceScheme build_greedy_scheme(const CodePtr& code, std::size_t star, const SideInfo& side, unsigned m) {
  const auto& spec = *code;
  const auto& t = *spec.tower;
  const unsigned ell = t.ell();
  const unsigned s = static_cast<unsigned>(side.size());
  require(spec.full_length(), "greedy scheme needs a full-length code (n = q^ell)");
  require(s < ell, "greedy scheme needs s < ell");
  require(ell % (ell - s) == 0, "divisibility condition (ell - s) | ell fails: ell = " + std::to_string(ell) +
                                    ", ell - s = " + std::to_string(ell - s));
  require(ipow(t.q(), m) <= spec.redundancy(), "degree condition q^m <= n - k fails: q^m = " +
                                                   std::to_string(ipow(t.q(), m)) + ", n - k = " +
                                                   std::to_string(spec.redundancy()));
  const Subspace W = build_greedy_W(spec.tower, ell - s, m);
  auto out = build_scheme(code, star, side, W, subfield_subspace(spec.tower, ell - s));
  out.method = "greedy";
  return out;
}

std::uint64_t DimensionProfile::sum() const { return std::accumulate(dims.begin(), dims.end(), std::uint64_t{0}); }

DimensionProfile dimension_profile(const Subspace& W, unsigned a) {
  const auto& t = *W.tower();
  require(a >= 1 && t.ell() % a == 0, "a must divide ell");
  const Subspace F = subfield_subspace(W.tower(), a);
  const std::uint64_t cosets = (t.size() - 1) / (ipow(t.q(), a) - 1);
  const EchelonBasis we = echelon_of(W);
  DimensionProfile out;
  out.q = t.q();
  for (std::uint64_t i = 0; i < cosets; ++i) {
    const Element g = t.exp(i);
    std::vector<Element> u;
    for (auto b : F.basis()) u.push_back(t.mul(g, b));
    out.per_coset.push_back(meet_dim(we, W.dim(), u));
  }
  out.dims = out.per_coset;
  std::sort(out.dims.rbegin(), out.dims.rend());
  return out;
}

std::uint64_t coset_dimension_sum_serial(const Subspace& W, unsigned a) {
  const auto& t = *W.tower();
  const Subspace F = subfield_subspace(W.tower(), a);
  std::uint64_t sum = 0;
  for (std::uint32_t g = 1; g < t.size(); ++g) sum += intersect_dim(scale(Element{g}, F), W);
  return sum;
}

std::uint64_t coset_dimension_sum(const Subspace& W, unsigned a, unsigned threads) {
  const auto& t = *W.tower();
  require(a >= 1 && t.ell() % a == 0, "a must divide ell");
  const Subspace F = subfield_subspace(W.tower(), a);
  const EchelonBasis we = echelon_of(W);
  std::uint64_t sum = 0;
#pragma omp parallel for reduction(+ : sum) schedule(static) num_threads(static_cast<int>(resolve_threads(threads)))
  for (std::int64_t g = 1; g < static_cast<std::int64_t>(t.size()); ++g) {
    std::vector<Element> u;
    for (auto b : F.basis()) u.push_back(t.mul(Element{static_cast<std::uint32_t>(g)}, b));
    sum += meet_dim(we, W.dim(), u);
  }
  return sum;
}

MajorizationVerdict majorization_compare(const DimensionProfile& d, const DimensionProfile& dprime) {
  MajorizationVerdict v;
  v.sum_d = d.sum();
  v.sum_dprime = dprime.sum();
  if (d.dims.size() != dprime.dims.size() || d.q != dprime.q) {
    v.note = "premise violated: profiles have different lengths or fields";
    return v;
  }
  auto xs = [](const DimensionProfile& p) {
    std::vector<std::uint64_t> x;
    for (auto di : p.dims) x.push_back(ipow(p.q, di) - 1);
    std::sort(x.rbegin(), x.rend());
    return x;
  };
  const auto x = xs(d);
  const auto xp = xs(dprime);
  const auto total = std::accumulate(x.begin(), x.end(), std::uint64_t{0});
  const auto total_p = std::accumulate(xp.begin(), xp.end(), std::uint64_t{0});
  if (total != total_p) {
    v.note = "premise violated: x-sums differ (" + std::to_string(total) + " vs " + std::to_string(total_p) + ")";
    return v;
  }
  v.premise_ok = true;
  std::uint64_t px = 0, pxp = 0;
  v.majorized = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    px += x[i];
    pxp += xp[i];
    if (px > pxp) v.majorized = false;
  }
  if (v.majorized) {
    ensure(v.sum_d >= v.sum_dprime, "majorization holds but the dimension sum is smaller");
    v.note = "x(d) majorized by x(d'): sum d = " + std::to_string(v.sum_d) + " >= sum d' = " +
             std::to_string(v.sum_dprime);
  } else {
    v.note = "x(d) not majorized by x(d')";
  }
  return v;
}

}  // namespace rsside
