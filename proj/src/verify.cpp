#include "rsside/verify.hpp"

#include <numeric>
#include <random>

#include "rsside/bounds.hpp"
#include "rsside/errors.hpp"

namespace rsside {

namespace {

TowerPtr tower_for(unsigned q, unsigned ell) {
  const auto pe = prime_power(q);
  require(pe.has_value(), "q = " + std::to_string(q) + " is not a prime power");
  return make_tower(pe->first, pe->second, ell);
}

std::vector<Element> random_independent(const FieldTower& t, std::size_t s, std::mt19937_64& rng) {
  EchelonBasis e(t);
  std::vector<Element> out;
  while (out.size() < s) {
    const Element x{static_cast<std::uint32_t>(rng() % t.size())};
    if (e.insert(x)) out.push_back(x);
  }
  return out;
}

json texts(const FieldTower& t, std::span<const Element> xs) {
  json a = json::array();
  for (auto x : xs) a.push_back(t.to_text(x));
  return a;
}

}  // namespace

json to_json(const SuiteResult& r) {
  json j = {{"suite", r.suite}, {"pass", r.pass}, {"checked", r.checked}, {"detail", r.detail}};
  if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
  return j;
}

SuiteResult verify_lemma2(unsigned q, unsigned ell, unsigned trials, std::uint64_t seed) {
  SuiteResult res{"lemma2", true, 0, "", {}};
  auto tower = tower_for(q, ell);
  const auto& t = *tower;
  require(ell >= 2, "lemma2 suite needs ell >= 2");
  const std::size_t n = t.size();
  auto code = make_code(tower, n, n - ipow(q, ell - 1));
  std::mt19937_64 rng(seed);
  for (unsigned trial = 0; trial < trials; ++trial) {
    const std::size_t s = rng() % ell;
    const unsigned m = static_cast<unsigned>(rng() % ell);
    const std::size_t star = rng() % n;
    SideInfo side{random_independent(t, s, rng), {}};
    const ComplementEnumeration comps(Subspace::span(tower, side.S));
    const Subspace T = comps.at(rng() % comps.size());
    const SubspaceEnumeration ws(tower, m);
    const Subspace W = ws.at(rng() % ws.size());
    json where = {{"trial", trial}, {"s", s}, {"m", m}, {"star", star}, {"S", texts(t, side.S)},
                  {"T", texts(t, T.basis())}, {"W", texts(t, W.basis())}};
    try {
      const auto built = build_scheme(code, star, side, W, T);
      const auto measured = bandwidth(built.scheme).total;
      const auto formula = intersection_bandwidth(*code, star, s, built.T, W);
      ++res.checked;
      if (measured != formula) {
        where["measured"] = measured;
        where["formula"] = formula;
        res.pass = false;
        res.counterexample = where;
        res.detail = "rank bandwidth differs from the intersection formula";
        return res;
      }
    } catch (const InvariantError& ex) {
      res.pass = false;
      res.counterexample = where;
      res.detail = ex.what();
      return res;
    }
  }
  res.detail = std::to_string(res.checked) + " random schemes: rank bandwidth = intersection formula";
  return res;
}

SuiteResult verify_lemma3(unsigned q, unsigned ell) {
  SuiteResult res{"lemma3", true, 0, "", {}};
  auto tower = tower_for(q, ell);
  const auto& t = *tower;
  std::string pairs;
  for (unsigned a = 1; a <= ell; ++a) {
    for (unsigned b = a; b <= ell; ++b) {
      if (ell % a || ell % b || std::gcd(a, b) != 1) continue;
      pairs += (pairs.empty() ? "" : " ") + std::string("(") + std::to_string(a) + "," + std::to_string(b) + ")";
      const Subspace Fa = subfield_subspace(tower, a);
      const Subspace Fb = subfield_subspace(tower, b);
      std::vector<Subspace> gb;
      for (std::uint32_t d = 1; d < t.size(); ++d) gb.push_back(scale(Element{d}, Fb));
      for (std::uint32_t g = 1; g < t.size(); ++g) {
        const Subspace ga = scale(Element{g}, Fa);
        for (std::uint32_t d = 1; d < t.size(); ++d) {
          const unsigned dim = intersect_dim(ga, gb[d - 1]);
          ++res.checked;
          if (dim > 1) {
            res.pass = false;
            res.detail = "intersection of dimension " + std::to_string(dim);
            res.counterexample = {{"a", a}, {"b", b}, {"gamma", t.to_text(Element{g})},
                                  {"delta", t.to_text(Element{d})}, {"dim", dim}};
            return res;
          }
        }
      }
    }
  }
  res.detail = "coprime divisor pairs " + pairs + ": every dim(gamma F_{q^a} cap delta F_{q^b}) in {0,1}";
  return res;
}

SuiteResult verify_prop2(unsigned q, unsigned ell, std::size_t n, std::size_t k) {
  SuiteResult res{"prop2", true, 0, "", {}};
  auto tower = tower_for(q, ell);
  const auto& t = *tower;
  auto code = make_code(tower, n, k);
  std::string per_s;
  for (unsigned s = 0; s <= ell; ++s) {
    std::optional<std::uint64_t> first;
    const auto lb = lower_bound(q, ell, s, n, k).bound;
    for (auto V : SubspaceEnumeration(tower, s)) {
      const auto bw = exhaustive_optimal_bandwidth(*code, 0, V.basis());
      ++res.checked;
      if (bw < lb || (first && bw != *first)) {
        res.pass = false;
        res.detail = bw < lb ? "optimum below the lower bound" : "optimum depends on the choice of S";
        res.counterexample = {{"s", s}, {"S", texts(t, V.basis())}, {"bandwidth", bw}, {"bound", lb}};
        if (first) res.counterexample["first_bandwidth"] = *first;
        return res;
      }
      first = bw;
    }
    per_s += (per_s.empty() ? "" : " ") + std::string("s=") + std::to_string(s) + ":" + std::to_string(*first);
  }
  res.detail = "optimum per side-information size " + per_s;
  return res;
}

SuiteResult verify_majorization(unsigned q, unsigned ell, unsigned a, unsigned m) {
  SuiteResult res{"majorization", true, 0, "", {}};
  auto tower = tower_for(q, ell);
  const auto& t = *tower;
  require(a >= 1 && ell % a == 0, "majorization suite needs a | ell");
  std::vector<Subspace> flat, coincident;
  std::vector<DimensionProfile> flat_prof, coin_prof;
  std::vector<std::uint64_t> coin_sum;
  std::uint64_t flat_sum = 0, best_coin = 0;
  for (auto W : SubspaceEnumeration(tower, m)) {
    auto prof = dimension_profile(W, a);
    const std::uint64_t sum = coset_dimension_sum(W, a, 1);
    ++res.checked;
    ensure(sum == prof.sum() * (ipow(q, a) - 1), "coset repetition property violated");
    if (prof.dims.empty() || prof.dims.front() <= 1) {
      if (!flat.empty() && sum != flat_sum) {
        res.pass = false;
        res.detail = "two {0,1}-profile subspaces have different sums";
        return res;
      }
      flat_sum = sum;
      flat.push_back(W);
      flat_prof.push_back(std::move(prof));
    } else {
      best_coin = std::max(best_coin, sum);
      coincident.push_back(W);
      coin_prof.push_back(std::move(prof));
      coin_sum.push_back(sum);
    }
  }
  if (flat.empty()) {
    res.pass = false;
    res.detail = "no m-dimensional subspace has a {0,1} intersection profile here";
    return res;
  }
  const std::uint64_t expect = (ipow(q, a) - 1) * (ipow(q, m) - 1) / (q - 1);
  if (flat_sum != expect) {
    res.pass = false;
    res.detail = "{0,1}-profile sum " + std::to_string(flat_sum) + " differs from " + std::to_string(expect);
    return res;
  }
  for (std::size_t i = 0; i < coincident.size(); ++i) {
    const auto v = majorization_compare(flat_prof.front(), coin_prof[i]);
    if (!v.premise_ok || !v.majorized || coin_sum[i] >= flat_sum) {
      res.pass = false;
      res.detail = "coincident subspace not strictly dominated: " + v.note;
      res.counterexample = {{"W", texts(t, coincident[i].basis())}, {"sum", coin_sum[i]}, {"flat_sum", flat_sum}};
      return res;
    }
  }
  res.detail = std::to_string(flat.size()) + " {0,1}-profile subspaces reach " + std::to_string(flat_sum) + "; " +
               std::to_string(coincident.size()) + " coincident subspaces reach at most " + std::to_string(best_coin);
  return res;
}

SuiteResult verify_scheme_file(const std::string& path) {
  SuiteResult res{"scheme", false, 1, "", {}};
  const auto sc = scheme_from_json(read_json_file(path));
  const auto v = validate(sc);
  if (!v.ok) {
    res.detail = "invalid scheme: " + v.violation;
    res.counterexample = {{"file", path}, {"violation", v.violation}};
    return res;
  }
  const auto& t = *sc.spec->tower;
  const auto bw = bandwidth(sc).total;
  const auto lb = lower_bound(t.q(), t.ell(), sc.side.size(), sc.spec->n, sc.spec->k).bound;
  res.pass = bw >= lb;
  res.detail = "valid scheme: measured=" + std::to_string(bw) + " bound=" + std::to_string(lb);
  if (!res.pass) res.counterexample = {{"file", path}, {"measured", bw}, {"bound", lb}};
  return res;
}

}  // namespace rsside
