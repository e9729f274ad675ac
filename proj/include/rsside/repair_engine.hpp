#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsside/fq_linalg.hpp"
#include "rsside/rs_code.hpp"

namespace rsside {

// Known traces Tr(beta_i f(alpha*)) of the erased symbol.
struct SideInfo {
  std::vector<Element> S;
  std::optional<std::vector<SubSymbol>> values;

  std::size_t size() const { return S.size(); }
};

// A linear trace-repair scheme: ell - s check polynomials whose values at
// alpha* complete S to an F_q-basis of F_{q^ell}.
struct RepairScheme {
  CodePtr spec;
  std::size_t star = 0;
  SideInfo side;
  std::vector<Poly> checks;
  std::vector<Element> targets;  // g_i(alpha*), cached by make_scheme
};

// Fills targets; does not validate (see validate()).
RepairScheme make_scheme(CodePtr spec, std::size_t star, SideInfo side, std::vector<Poly> checks);

struct ValidationResult {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

ValidationResult validate(const RepairScheme& scheme);

struct BandwidthReport {
  std::map<std::size_t, unsigned> per_helper;
  std::uint64_t total = 0;
};

// Throws PreconditionError on an invalid scheme.
BandwidthReport bandwidth(const RepairScheme& scheme);

// Called after every bandwidth() computation. Used by the test suites to audit
// every scheme the library produces against the lower bound.
using BandwidthObserver = std::function<void(const RepairScheme&, const BandwidthReport&)>;
void set_bandwidth_observer(BandwidthObserver observer);

// Q_alpha for one helper: an echelon basis of the span of the query
// multipliers mu_i = -g_i(alpha_j) lambda_j / lambda*, plus coefficients
// expressing each mu_i over that basis.
struct HelperQuery {
  std::size_t position = 0;
  std::vector<Element> basis;
  std::vector<std::vector<SubSymbol>> coefficients;  // [check i][basis k]
  std::vector<Element> multipliers;                  // mu_i, kept for audits
};

std::vector<HelperQuery> query_plan(const RepairScheme& scheme);

struct Answer {
  std::size_t position = 0;
  std::vector<SubSymbol> traces;
};

// Helper side: Tr(gamma * c_j) for each gamma in Q.
Answer answer_query(const FieldTower& tower, const HelperQuery& query, Element stored);

// Reconstructs f(alpha*) from helper answers and the s side traces.
Element execute_repair(const RepairScheme& scheme, std::span<const HelperQuery> plan,
                       std::span<const Answer> answers, std::span<const SubSymbol> side_values);
Element execute_repair(const RepairScheme& scheme, std::span<const Answer> answers,
                       std::span<const SubSymbol> side_values);

// Side traces of a known symbol; used by simulations and tests.
std::vector<SubSymbol> side_traces(const FieldTower& tower, std::span<const Element> S, Element symbol);

inline constexpr std::uint64_t kExhaustiveSchemeBudget = 1'000'000;

// Minimum bandwidth over every linear scheme for this erasure and side
// information. Brute force: targets range over canonical bases of all
// complements T of span(S); each g_i = t_i + (x - alpha*) h_i with
// deg h_i < n - k - 1. Restricted to q^ell <= 64, n - k <= 4.
std::uint64_t exhaustive_optimal_bandwidth(const CodeSpec& spec, std::size_t star, std::span<const Element> side);

}  // namespace rsside
