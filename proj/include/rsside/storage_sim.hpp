#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsside/repair_engine.hpp"
#include "rsside/scheme_builder.hpp"
#include "rsside/serialize.hpp"

namespace rsside {

enum class NodeStatus { Healthy, Erased, PartiallyErased };

struct Node {
  NodeStatus status = NodeStatus::Healthy;
  std::vector<Element> symbols;     // one per stripe; zeroed while erased
  std::vector<unsigned> surviving;  // coordinate indices kept by a partial erasure
  std::vector<std::vector<SubSymbol>> surviving_values;  // [stripe][i]
};

struct RepairMethod {
  enum class Kind { Auto, Subfield, Greedy, Exhaustive, Custom } kind = Kind::Auto;
  std::optional<unsigned> m;  // default: largest m < ell with q^m <= n - k
  std::optional<RepairScheme> custom;
  OptimizeOptions optimize;
};

RepairMethod::Kind parse_method(const std::string& name);
std::string method_name(RepairMethod::Kind kind);

struct RepairEvent {
  std::size_t position = 0;
  std::size_t s = 0;
  std::vector<unsigned> surviving;
  std::string method;
  std::map<std::size_t, unsigned> per_helper;  // sub-symbols per stripe
  std::uint64_t total = 0;                     // per stripe, = BandwidthReport.total
  std::uint64_t bound = 0;
  std::int64_t gap = 0;
  std::uint64_t stripes = 0;
  std::uint64_t wire_total = 0;  // summed over stripes from the download counter
  bool success = false;
};

// Largest m < ell with q^m <= n - k (0 when none).
unsigned default_m(const CodeSpec& spec);

// Side information for a partial erasure keeping the given polynomial-basis
// coordinates: the trace-dual basis elements of those coordinates.
std::vector<Element> coordinate_side_info(const FieldTower& t, std::span<const unsigned> coords);

class ClusterState {
 public:
  static ClusterState provision(CodePtr spec, std::uint64_t seed, std::size_t stripes);
  static ClusterState provision(CodePtr spec, const std::vector<std::vector<Element>>& messages);

  const CodeSpec& spec() const { return *spec_; }
  const CodePtr& code() const { return spec_; }
  const Node& node(std::size_t position) const { return nodes_.at(position); }
  std::size_t stripes() const { return stripes_; }
  std::uint64_t seed() const { return seed_; }
  const std::map<std::pair<std::size_t, std::size_t>, std::uint64_t>& download_counter() const { return counter_; }
  const std::vector<RepairEvent>& events() const { return events_; }

  // nullopt: full erasure. Otherwise the surviving coordinate indices.
  SideInfo fail_node(std::size_t position, std::optional<std::vector<unsigned>> surviving = std::nullopt);
  RepairEvent run_repair(std::size_t position, const RepairMethod& method);

  // The stripe-j codeword as currently stored (used by checks and tests).
  std::vector<Element> stripe(std::size_t j) const;

  json report() const;

 private:
  ClusterState() = default;
  RepairScheme plan_scheme(std::size_t position, const SideInfo& side, const RepairMethod& method,
                           std::string& used) const;

  CodePtr spec_;
  std::uint64_t seed_ = 0;
  std::size_t stripes_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::vector<Element>> original_;  // [position][stripe]; conservation oracle only
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counter_;
  std::vector<RepairEvent> events_;
};

}  // namespace rsside
