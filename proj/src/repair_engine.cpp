#include "rsside/repair_engine.hpp"

#include <algorithm>
#include <limits>
#include <mutex>

#include "rsside/errors.hpp"

namespace rsside {

namespace {

std::mutex g_observer_mu;
BandwidthObserver g_observer;

std::vector<std::vector<Element>> evaluate_checks(const RepairScheme& sc) {
  const auto& t = *sc.spec->tower;
  std::vector<std::vector<Element>> ev(sc.checks.size(), std::vector<Element>(sc.spec->n));
  for (std::size_t i = 0; i < sc.checks.size(); ++i)
    for (std::size_t j = 0; j < sc.spec->n; ++j) ev[i][j] = eval_poly(t, sc.checks[i], sc.spec->points[j]);
  return ev;
}

void require_valid(const RepairScheme& sc) {
  const auto v = validate(sc);
  require(v.ok, "invalid repair scheme: " + v.violation);
}

}  // namespace

RepairScheme make_scheme(CodePtr spec, std::size_t star, SideInfo side, std::vector<Poly> checks) {
  require(spec != nullptr, "null code spec");
  require(star < spec->n, "erased position out of range");
  RepairScheme sc{std::move(spec), star, std::move(side), std::move(checks), {}};
  const auto& t = *sc.spec->tower;
  for (const auto& g : sc.checks) {
    for (auto c : g) require(c.index < t.size(), "check coefficient outside the field");
    sc.targets.push_back(eval_poly(t, g, sc.spec->points[star]));
  }
  return sc;
}

ValidationResult validate(const RepairScheme& sc) {
  if (!sc.spec) return {false, "missing code spec"};
  const auto& t = *sc.spec->tower;
  const std::size_t ell = t.ell();
  const std::size_t s = sc.side.size();
  if (sc.star >= sc.spec->n) return {false, "erased position out of range"};
  if (s > ell) return {false, "more side elements than ell"};
  if (rank_of(t, sc.side.S) != s) return {false, "side information is not F_q-linearly independent"};
  if (sc.side.values && sc.side.values->size() != s) return {false, "side value count differs from |S|"};
  if (sc.checks.size() != ell - s)
    return {false, "count: expected " + std::to_string(ell - s) + " check polynomials, got " +
                       std::to_string(sc.checks.size())};
  for (std::size_t i = 0; i < sc.checks.size(); ++i)
    if (degree(sc.checks[i]) >= static_cast<int>(sc.spec->redundancy()))
      return {false, "degree: check polynomial " + std::to_string(i) + " has degree " +
                         std::to_string(degree(sc.checks[i])) + " >= n-k = " + std::to_string(sc.spec->redundancy())};
  if (sc.targets.size() != sc.checks.size()) return {false, "cached targets out of date"};
  for (std::size_t i = 0; i < sc.checks.size(); ++i)
    if (sc.targets[i] != eval_poly(t, sc.checks[i], sc.spec->points[sc.star]))
      return {false, "cached targets out of date"};
  std::vector<Element> all(sc.side.S);
  all.insert(all.end(), sc.targets.begin(), sc.targets.end());
  const unsigned r = rank_of(t, all);
  if (r != ell)
    return {false, "rank: S together with the targets g_i(alpha*) has rank " + std::to_string(r) + " < ell = " +
                       std::to_string(ell)};
  return {};
}

void set_bandwidth_observer(BandwidthObserver observer) {
  std::lock_guard lock(g_observer_mu);
  g_observer = std::move(observer);
}

BandwidthReport bandwidth(const RepairScheme& sc) {
  require_valid(sc);
  const auto& t = *sc.spec->tower;
  const auto ev = evaluate_checks(sc);
  BandwidthReport rep;
  std::vector<Element> col(sc.checks.size());
  for (std::size_t j = 0; j < sc.spec->n; ++j) {
    if (j == sc.star) continue;
    for (std::size_t i = 0; i < sc.checks.size(); ++i) col[i] = ev[i][j];
    const unsigned b = rank_of(t, col);
    rep.per_helper[j] = b;
    rep.total += b;
  }
  BandwidthObserver obs;
  {
    std::lock_guard lock(g_observer_mu);
    obs = g_observer;
  }
  if (obs) obs(sc, rep);
  return rep;
}

std::vector<HelperQuery> query_plan(const RepairScheme& sc) {
  require_valid(sc);
  const auto& t = *sc.spec->tower;
  const auto ev = evaluate_checks(sc);
  const Element inv_lstar = t.inv(sc.spec->lambda[sc.star]);
  std::vector<HelperQuery> plan;
  plan.reserve(sc.spec->n - 1);
  for (std::size_t j = 0; j < sc.spec->n; ++j) {
    if (j == sc.star) continue;
    HelperQuery hq;
    hq.position = j;
    const Element w = t.neg(t.mul(sc.spec->lambda[j], inv_lstar));
    EchelonBasis e(t);
    for (std::size_t i = 0; i < sc.checks.size(); ++i) {
      hq.multipliers.push_back(t.mul(ev[i][j], w));
      e.insert(hq.multipliers.back());
    }
    hq.basis = e.rows();
    for (auto mu : hq.multipliers) hq.coefficients.push_back(e.express(mu));
    plan.push_back(std::move(hq));
  }
  return plan;
}

Answer answer_query(const FieldTower& t, const HelperQuery& q, Element stored) {
  Answer a{q.position, {}};
  a.traces.reserve(q.basis.size());
  for (auto g : q.basis) a.traces.push_back(t.trace(t.mul(g, stored)));
  return a;
}

std::vector<SubSymbol> side_traces(const FieldTower& t, std::span<const Element> S, Element symbol) {
  std::vector<SubSymbol> out;
  out.reserve(S.size());
  for (auto b : S) out.push_back(t.trace(t.mul(b, symbol)));
  return out;
}

Element execute_repair(const RepairScheme& sc, std::span<const HelperQuery> plan, std::span<const Answer> answers,
                       std::span<const SubSymbol> side_values) {
  const auto& t = *sc.spec->tower;
  const std::size_t s = sc.side.size();
  require(side_values.size() == s, "expected " + std::to_string(s) + " side values, got " +
                                       std::to_string(side_values.size()));
  for (auto v : side_values) require(v < t.q(), "side value is not an F_q element");
  require(answers.size() == plan.size(), "expected answers from " + std::to_string(plan.size()) + " helpers, got " +
                                             std::to_string(answers.size()));

  std::vector<SubSymbol> eta(t.ell(), 0);
  std::copy(side_values.begin(), side_values.end(), eta.begin());
  for (std::size_t h = 0; h < plan.size(); ++h) {
    const auto& q = plan[h];
    const auto& a = answers[h];
    require(a.position == q.position, "answer for position " + std::to_string(a.position) +
                                          " does not match query for position " + std::to_string(q.position));
    require(a.traces.size() == q.basis.size(), "helper " + std::to_string(q.position) + " returned " +
                                                   std::to_string(a.traces.size()) + " traces, expected " +
                                                   std::to_string(q.basis.size()));
    for (auto v : a.traces) require(v < t.q(), "answer trace is not an F_q element");
    // eta_i += sum_k coef_ik * Tr(gamma_k c_j); the minus sign already sits in mu.
    for (std::size_t i = 0; i < q.coefficients.size(); ++i)
      for (std::size_t k = 0; k < q.basis.size(); ++k)
        eta[s + i] = t.base_add(eta[s + i], t.base_mul(q.coefficients[i][k], a.traces[k]));
  }

  std::vector<Element> B(sc.side.S);
  B.insert(B.end(), sc.targets.begin(), sc.targets.end());
  const auto nu = t.dual_basis(B);
  Element out = t.zero();
  for (std::size_t i = 0; i < B.size(); ++i) out = t.add(out, t.scale(eta[i], nu[i]));
  return out;
}

Element execute_repair(const RepairScheme& sc, std::span<const Answer> answers, std::span<const SubSymbol> side_values) {
  const auto plan = query_plan(sc);
  return execute_repair(sc, plan, answers, side_values);
}

std::uint64_t exhaustive_optimal_bandwidth(const CodeSpec& spec, std::size_t star, std::span<const Element> side) {
  const auto& t = *spec.tower;
  require(star < spec.n, "erased position out of range");
  require(rank_of(t, side) == side.size(), "side information is not F_q-linearly independent");
  const std::size_t s = side.size();
  const std::size_t ell = t.ell();
  if (s == ell) return 0;
  require(t.size() <= 64, "exhaustive scheme search needs q^ell <= 64");
  const std::size_t r = spec.redundancy();
  require(r <= 4, "exhaustive scheme search needs n - k <= 4");

  const Subspace S = Subspace::span(spec.tower, side);
  const ComplementEnumeration comps(S);
  const std::uint64_t Q = t.size();
  const std::uint64_t h_count = ipow(Q, static_cast<unsigned>(r - 1));  // choices for one h_i
  const std::uint64_t per_T = ipow(h_count, static_cast<unsigned>(ell - s));
  if (per_T > kExhaustiveSchemeBudget || comps.size() * per_T > kExhaustiveSchemeBudget)
    throw BudgetError("exhaustive scheme search over " + std::to_string(comps.size()) + " x " +
                      std::to_string(per_T) + " candidates exceeds the budget of 10^6");

  // shifted[h][j] = (alpha_j - alpha*) h(alpha_j) for every h with deg < r - 1.
  const Element astar = spec.points[star];
  std::vector<std::vector<Element>> shifted(h_count, std::vector<Element>(spec.n));
  Poly h(r - 1);
  for (std::uint64_t hi = 0; hi < h_count; ++hi) {
    std::uint64_t v = hi;
    for (auto& c : h) {
      c = Element{static_cast<std::uint32_t>(v % Q)};
      v /= Q;
    }
    for (std::size_t j = 0; j < spec.n; ++j)
      shifted[hi][j] = t.mul(t.sub(spec.points[j], astar), eval_poly(t, h, spec.points[j]));
  }

  const std::size_t nt = ell - s;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> choice(nt);
  std::vector<Element> col(nt);
  for (std::uint64_t ti = 0; ti < comps.size(); ++ti) {
    const auto T = comps.at(ti).basis();
    for (std::uint64_t c = 0; c < per_T; ++c) {
      std::uint64_t v = c;
      for (auto& x : choice) {
        x = v % h_count;
        v /= h_count;
      }
      std::uint64_t bw = 0;
      for (std::size_t j = 0; j < spec.n && bw < best; ++j) {
        if (j == star) continue;
        for (std::size_t i = 0; i < nt; ++i) col[i] = t.add(T[i], shifted[choice[i]][j]);
        bw += rank_of(t, col);
      }
      best = std::min(best, bw);
    }
  }
  return best;
}

}  // namespace rsside
