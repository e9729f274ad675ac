#include "rsside/storage_sim.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "rsside/bounds.hpp"
#include "rsside/errors.hpp"

namespace rsside {

RepairMethod::Kind parse_method(const std::string& name) {
  using K = RepairMethod::Kind;
  if (name == "auto") return K::Auto;
  if (name == "subfield") return K::Subfield;
  if (name == "greedy") return K::Greedy;
  if (name == "exhaustive") return K::Exhaustive;
  if (name == "custom") return K::Custom;
  throw PreconditionError("unknown repair method '" + name + "'");
}

std::string method_name(RepairMethod::Kind kind) {
  switch (kind) {
    case RepairMethod::Kind::Auto: return "auto";
    case RepairMethod::Kind::Subfield: return "subfield";
    case RepairMethod::Kind::Greedy: return "greedy";
    case RepairMethod::Kind::Exhaustive: return "exhaustive";
    case RepairMethod::Kind::Custom: return "custom";
  }
  return "?";
}

unsigned default_m(const CodeSpec& spec) {
  const auto& t = *spec.tower;
  unsigned m = 0;
  while (m + 1 < t.ell() && ipow(t.q(), m + 1) <= spec.redundancy()) ++m;
  return m;
}

std::vector<Element> coordinate_side_info(const FieldTower& t, std::span<const unsigned> coords) {
  std::vector<Element> poly_basis;
  for (unsigned i = 0; i < t.ell(); ++i) {
    std::vector<SubSymbol> c(t.ell(), 0);
    c[i] = 1;
    poly_basis.push_back(t.from_coords(c));
  }
  const auto dual = t.dual_basis(poly_basis);
  std::vector<Element> out;
  for (auto i : coords) out.push_back(dual.at(i));
  return out;
}

ClusterState ClusterState::provision(CodePtr spec, std::uint64_t seed, std::size_t stripes) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Element>> messages(stripes, std::vector<Element>(spec->k));
  for (auto& msg : messages)
    for (auto& c : msg) c = Element{static_cast<std::uint32_t>(rng() % spec->tower->size())};
  auto st = provision(std::move(spec), messages);
  st.seed_ = seed;
  return st;
}

ClusterState ClusterState::provision(CodePtr spec, const std::vector<std::vector<Element>>& messages) {
  require(spec != nullptr, "null code spec");
  ClusterState st;
  st.spec_ = std::move(spec);
  st.stripes_ = messages.size();
  st.nodes_.assign(st.spec_->n, Node{});
  for (const auto& msg : messages) {
    const auto cw = encode(st.spec_, msg);
    for (std::size_t j = 0; j < st.spec_->n; ++j) st.nodes_[j].symbols.push_back(cw.symbols[j]);
  }
  for (const auto& nd : st.nodes_) st.original_.push_back(nd.symbols);
  return st;
}

std::vector<Element> ClusterState::stripe(std::size_t j) const {
  require(j < stripes_, "stripe index out of range");
  std::vector<Element> out;
  for (const auto& nd : nodes_) out.push_back(nd.symbols[j]);
  return out;
}

SideInfo ClusterState::fail_node(std::size_t position, std::optional<std::vector<unsigned>> surviving) {
  require(position < spec_->n, "position " + std::to_string(position) + " out of range");
  Node& nd = nodes_[position];
  require(nd.status == NodeStatus::Healthy, "node " + std::to_string(position) + " already failed");
  const auto& t = *spec_->tower;
  SideInfo side;
  nd.surviving.clear();
  nd.surviving_values.assign(stripes_, {});
  if (surviving) {
    std::set<unsigned> seen;
    for (auto i : *surviving) {
      require(i < t.ell(), "surviving coordinate " + std::to_string(i) + " out of range");
      require(seen.insert(i).second, "duplicate surviving coordinate " + std::to_string(i));
    }
    nd.surviving = *surviving;
    for (std::size_t j = 0; j < stripes_; ++j)
      for (auto i : nd.surviving) nd.surviving_values[j].push_back(t.coord(nd.symbols[j], i));
    side.S = coordinate_side_info(t, nd.surviving);
    if (stripes_ > 0) side.values = nd.surviving_values[0];
  }
  nd.status = nd.surviving.empty() ? NodeStatus::Erased : NodeStatus::PartiallyErased;
  std::fill(nd.symbols.begin(), nd.symbols.end(), t.zero());
  return side;
}

RepairScheme ClusterState::plan_scheme(std::size_t position, const SideInfo& side, const RepairMethod& method,
                                       std::string& used) const {
  using K = RepairMethod::Kind;
  const auto& t = *spec_->tower;
  if (side.size() == t.ell()) {
    used = "trivial";
    return make_scheme(spec_, position, side, {});
  }
  const unsigned m = method.m.value_or(default_m(*spec_));
  switch (method.kind) {
    case K::Subfield: used = "subfield"; return build_subfield_scheme(spec_, position, side, m).scheme;
    case K::Greedy: used = "greedy"; return build_greedy_scheme(spec_, position, side, m).scheme;
    case K::Exhaustive: used = "exhaustive"; return build_exhaustive_scheme(spec_, position, side, m, method.optimize).scheme;
    case K::Custom: {
      require(method.custom.has_value(), "custom method needs a scheme");
      const auto& sc = *method.custom;
      require(sc.spec->tower->same_field(t) && sc.spec->n == spec_->n && sc.spec->k == spec_->k &&
                  sc.spec->points == spec_->points,
              "custom scheme is for a different code");
      require(sc.star == position, "custom scheme repairs position " + std::to_string(sc.star));
      require(sc.side.S == side.S, "custom scheme side information differs from the surviving data");
      used = "custom";
      return sc;
    }
    case K::Auto: break;
  }
  // Auto: the first construction whose preconditions hold.
  try {
    used = "subfield";
    return build_subfield_scheme(spec_, position, side, m).scheme;
  } catch (const PreconditionError&) {
  }
  try {
    used = "greedy";
    return build_greedy_scheme(spec_, position, side, m).scheme;
  } catch (const PreconditionError&) {
  }
  used = "exhaustive";
  return build_exhaustive_scheme(spec_, position, side, m, method.optimize).scheme;
}

RepairEvent ClusterState::run_repair(std::size_t position, const RepairMethod& method) {
  require(position < spec_->n, "position " + std::to_string(position) + " out of range");
  Node& nd = nodes_[position];
  require(nd.status != NodeStatus::Healthy, "node " + std::to_string(position) + " is healthy; nothing to repair");
  for (std::size_t j = 0; j < spec_->n; ++j)
    require(j == position || nodes_[j].status == NodeStatus::Healthy,
            "helper " + std::to_string(j) + " is down; only single erasures are repairable");
  const auto& t = *spec_->tower;

  SideInfo side;
  side.S = coordinate_side_info(t, nd.surviving);
  RepairEvent ev;
  const RepairScheme scheme = plan_scheme(position, side, method, ev.method);
  const auto v = validate(scheme);
  require(v.ok, "repair scheme rejected: " + v.violation);
  const auto bw = bandwidth(scheme);
  const auto plan = query_plan(scheme);

  const std::size_t event_id = events_.size();
  ev.position = position;
  ev.s = side.size();
  ev.surviving = nd.surviving;
  ev.per_helper = bw.per_helper;
  ev.total = bw.total;
  ev.bound = lower_bound(t.q(), t.ell(), ev.s, spec_->n, spec_->k).bound;
  ev.gap = static_cast<std::int64_t>(ev.total) - static_cast<std::int64_t>(ev.bound);
  ev.stripes = stripes_;
  ev.success = true;

  std::vector<Answer> answers(plan.size());
  for (std::size_t st = 0; st < stripes_; ++st) {
    for (std::size_t h = 0; h < plan.size(); ++h) {
      const auto& q = plan[h];
      answers[h] = answer_query(t, q, nodes_[q.position].symbols[st]);
      counter_[{q.position, event_id}] += answers[h].traces.size();
    }
    const Element rec = execute_repair(scheme, plan, answers, nd.surviving_values[st]);
    nd.symbols[st] = rec;
    if (rec != original_[position][st]) ev.success = false;
  }
  for (const auto& [key, sent] : counter_)
    if (key.second == event_id) ev.wire_total += sent;
  ensure(ev.wire_total == ev.total * stripes_, "download counter disagrees with the scheme bandwidth");
  ensure(ev.success, "repaired symbol differs from the provisioned symbol at position " + std::to_string(position));
  nd.status = NodeStatus::Healthy;
  nd.surviving.clear();
  nd.surviving_values.clear();
  events_.push_back(ev);
  return ev;
}

json ClusterState::report() const {
  json events = json::array();
  for (const auto& ev : events_) {
    json per = json::object();
    for (const auto& [pos, b] : ev.per_helper) per[std::to_string(pos)] = b;
    events.push_back({{"position", ev.position},
                      {"s", ev.s},
                      {"surviving", ev.surviving},
                      {"method", ev.method},
                      {"per_helper", per},
                      {"total", ev.total},
                      {"bound", ev.bound},
                      {"gap", ev.gap},
                      {"stripes", ev.stripes},
                      {"wire_total", ev.wire_total},
                      {"success", ev.success}});
  }
  const auto& t = *spec_->tower;
  return {{"events", events},
          {"seed", seed_},
          {"code", {{"q", t.q()}, {"ell", t.ell()}, {"n", spec_->n}, {"k", spec_->k}}}};
}

}  // namespace rsside
