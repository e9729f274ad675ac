#include "rsside/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <set>
#include <sstream>

#include "rsside/bounds.hpp"
#include "rsside/errors.hpp"
#include "rsside/storage_sim.hpp"
#include "rsside/verify.hpp"

namespace rsside {

namespace {

struct CodeFlags {
  unsigned q = 2;
  unsigned ell = 4;
  std::size_t n = 0;  // 0: q^ell
  std::size_t k = 0;  // 0: n - q^m when --m is given
  unsigned s = 0;
  int m = -1;  // -1: default_m
  std::size_t star = 0;
};

void add_code_flags(CLI::App* cmd, CodeFlags& f, bool with_s) {
  cmd->add_option("--q", f.q, "base field size (prime power)");
  cmd->add_option("--ell", f.ell, "extension degree");
  cmd->add_option("--n", f.n, "code length (default q^ell)");
  cmd->add_option("--k", f.k, "code dimension (default n - q^m)");
  cmd->add_option("--m", f.m, "dimension of W");
  if (with_s) cmd->add_option("--s", f.s, "number of side-information traces");
}

std::size_t resolve_n(const CodeFlags& f) {
  require(prime_power(f.q).has_value(), "--q " + std::to_string(f.q) + " is not a prime power");
  return f.n ? f.n : static_cast<std::size_t>(ipow(f.q, f.ell));
}

std::size_t resolve_k(const CodeFlags& f, std::size_t n) {
  if (f.k) return f.k;
  require(f.m >= 0, "give --k or --m");
  const auto r = ipow(f.q, static_cast<unsigned>(f.m));
  require(r < n, "q^m must be below n");
  return n - r;
}

CodePtr make_code_from(const CodeFlags& f) {
  const auto pe = prime_power(f.q);
  require(pe.has_value(), "--q " + std::to_string(f.q) + " is not a prime power");
  auto tower = make_tower(pe->first, pe->second, f.ell);
  const std::size_t n = resolve_n(f);
  return make_code(tower, n, resolve_k(f, n));
}

SideInfo default_side(const FieldTower& t, unsigned s) {
  require(s <= t.ell(), "--s must not exceed --ell");
  std::vector<unsigned> coords(s);
  for (unsigned i = 0; i < s; ++i) coords[i] = i;
  return SideInfo{coordinate_side_info(t, coords), std::nullopt};
}

std::pair<std::size_t, std::optional<std::vector<unsigned>>> parse_fail(const std::string& spec) {
  const auto colon = spec.find(':');
  std::size_t pos = 0;
  try {
    std::size_t used = 0;
    pos = std::stoul(spec.substr(0, colon), &used);
    require(used == spec.substr(0, colon).size(), "");
  } catch (const std::exception&) {
    throw PreconditionError("bad --fail value '" + spec + "' (expected pos or pos:partial=i,j)");
  }
  if (colon == std::string::npos) return {pos, std::nullopt};
  const std::string rest = spec.substr(colon + 1);
  require(rest.rfind("partial=", 0) == 0 && rest.size() > 8, "bad --fail value '" + spec +
                                                                  "' (expected pos:partial=i,j)");
  std::vector<unsigned> coords;
  std::stringstream ss(rest.substr(8));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      coords.push_back(static_cast<unsigned>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw PreconditionError("bad coordinate '" + tok + "' in --fail " + spec);
    }
  }
  return {pos, coords};
}

int cmd_bound(const CodeFlags& f, bool sweep, const std::string& format, std::ostream& out) {
  const std::size_t n = resolve_n(f);
  const std::size_t k = resolve_k(f, n);
  if (sweep) {
    out << bound_sweep_csv(f.q, f.ell, n, k);
    return 0;
  }
  const auto r = lower_bound(f.q, f.ell, f.s, n, k);
  if (format == "csv") {
    out << bound_csv_header() << bound_csv_row(r);
    return 0;
  }
  json j = {{"q", r.q},
            {"ell", r.ell},
            {"s", r.s},
            {"n", r.n},
            {"k", r.k},
            {"T_thresh", r.T_thresh.str()},
            {"b_ave", r.b_ave},
            {"b_ave_integral", r.b_ave_integral},
            {"t", r.t},
            {"bound", r.bound}};
  if (f.m >= 0 && n == ipow(f.q, f.ell) && n - k == ipow(f.q, static_cast<unsigned>(f.m))) {
    try {
      const auto rr = reduction_report(f.q, f.ell, f.s, static_cast<unsigned>(f.m));
      j["closed_form"] = rr.bw_with_side;
      j["reduction"] = {{"bw_with_side", rr.bw_with_side},
                        {"bw_without_side", rr.bw_without_side},
                        {"saving", rr.saving}};
      if (rr.regime) j["reduction"]["regime"] = *rr.regime;
    } catch (const PreconditionError&) {
      // closed form not applicable; the general bound stands alone
    }
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_construct(const CodeFlags& f, const std::string& method, const std::string& emit, OptimizeOptions opt,
                  std::ostream& out, std::ostream& err) {
  auto code = make_code_from(f);
  const auto& t = *code->tower;
  require(f.star < code->n, "--star out of range");
  const SideInfo side = default_side(t, f.s);
  const unsigned m = f.m >= 0 ? static_cast<unsigned>(f.m) : default_m(*code);
  std::optional<SubspaceScheme> ss;
  if (method == "subfield") {
    ss = build_subfield_scheme(code, f.star, side, m);
  } else if (method == "greedy") {
    ss = build_greedy_scheme(code, f.star, side, m);
  } else {
    const auto best = optimize_exhaustive(*code, f.star, side.S, m, opt);
    out << "search_space W=" << best.subspaces_searched << " T=" << best.complements_searched
        << " pairs=" << best.subspaces_searched * best.complements_searched << "\n";
    ss = build_scheme(code, f.star, side, best.W, best.T);
    ss->method = "exhaustive";
  }
  const auto lb = lower_bound(t.q(), t.ell(), f.s, code->n, code->k).bound;
  out << "measured=" << ss->measured_bw << " predicted=" << ss->predicted_bw << " bound=" << lb << "\n";
  if (!emit.empty()) {
    write_text_file(emit, subspace_scheme_to_json(*ss).dump(2) + "\n");
    err << "wrote " << emit << "\n";
  }
  return 0;
}

int cmd_simulate(const CodeFlags& f, std::uint64_t seed, std::size_t stripes, const std::vector<std::string>& fails,
                 const std::string& method, const std::string& scheme_path, const std::string& out_path,
                 OptimizeOptions opt, std::ostream& out, std::ostream& err) {
  auto code = make_code_from(f);
  RepairMethod rm;
  rm.kind = parse_method(method);
  if (f.m >= 0) rm.m = static_cast<unsigned>(f.m);
  rm.optimize = opt;
  if (rm.kind == RepairMethod::Kind::Custom) {
    require(!scheme_path.empty(), "--method custom needs --scheme");
    rm.custom = scheme_from_json(read_json_file(scheme_path));
  }
  std::vector<std::pair<std::size_t, std::optional<std::vector<unsigned>>>> events;
  std::set<std::size_t> seen;
  for (const auto& s : fails.empty() ? std::vector<std::string>{"0"} : fails) {
    auto ev = parse_fail(s);
    require(seen.insert(ev.first).second, "node " + std::to_string(ev.first) + " already failed");
    events.push_back(std::move(ev));
  }
  auto state = ClusterState::provision(code, seed, stripes);
  for (const auto& [pos, surv] : events) {
    state.fail_node(pos, surv);
    const auto ev = state.run_repair(pos, rm);
    err << "repaired node " << pos << " (s=" << ev.s << ", " << ev.method << "): " << ev.total
        << " sub-symbols per stripe, bound " << ev.bound << "\n";
  }
  const std::string report = state.report().dump(2) + "\n";
  if (out_path.empty())
    out << report;
  else
    write_text_file(out_path, report);
  return 0;
}

int cmd_verify(const std::string& suite, const CodeFlags& f, bool q_set, bool ell_set, bool nk_set,
               std::uint64_t seed, const std::string& scheme_path, std::ostream& out) {
  std::vector<SuiteResult> results;
  auto pick = [&](unsigned dq, unsigned dell) {
    return std::pair<unsigned, unsigned>{q_set ? f.q : dq, ell_set ? f.ell : dell};
  };
  const bool all = suite == "all";
  if (!scheme_path.empty()) results.push_back(verify_scheme_file(scheme_path));
  if (all || suite == "lemma2") {
    const auto [q, ell] = pick(2, 4);
    results.push_back(verify_lemma2(q, ell, 20, seed));
  }
  if (all || suite == "lemma3") {
    const auto [q, ell] = pick(2, 6);
    results.push_back(verify_lemma3(q, ell));
  }
  if (all || suite == "prop2") {
    const auto [q, ell] = pick(2, 2);
    const std::size_t n = nk_set && f.n ? f.n : static_cast<std::size_t>(ipow(q, ell));
    const std::size_t k = nk_set && f.k ? f.k : n - std::min<std::size_t>(n - 1, 2);
    results.push_back(verify_prop2(q, ell, n, k));
  }
  if (all || suite == "majorization") {
    const auto [q, ell] = pick(2, 4);
    const unsigned s = f.s ? f.s : ell / 2;
    results.push_back(verify_majorization(q, ell, ell - s, f.m >= 0 ? static_cast<unsigned>(f.m) : 2));
  }
  json j = json::array();
  bool pass = !results.empty();
  for (const auto& r : results) {
    j.push_back(to_json(r));
    pass = pass && r.pass;
  }
  out << json{{"pass", pass}, {"results", j}}.dump(2) << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reed-Solomon repair with side information"};
  app.require_subcommand(1);
  app.name("rsrepair");

  CodeFlags f;
  bool sweep = false;
  std::string format = "json";
  auto* bound = app.add_subcommand("bound", "lower bound on repair bandwidth");
  add_code_flags(bound, f, true);
  bound->add_flag("--sweep", sweep, "CSV rows for s = 0..ell");
  bound->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string method = "greedy", emit, out_path, scheme_path, suite = "all";
  OptimizeOptions opt;
  auto* construct = app.add_subcommand("construct", "build a subspace-polynomial repair scheme");
  add_code_flags(construct, f, true);
  construct->add_option("--star", f.star, "erased position");
  construct->add_option("--method", method, "subfield, greedy or exhaustive")
      ->check(CLI::IsMember({"subfield", "greedy", "exhaustive"}));
  construct->add_option("--emit", emit, "write the scheme JSON here");
  construct->add_option("--threads", opt.threads, "search workers");
  construct->add_flag("--coset-mode", opt.coset_mode, "restrict targets to subfield cosets");
  construct->add_flag("--serial", opt.serial, "use the single-threaded search");

  std::uint64_t seed = 1;
  std::size_t stripes = 10;
  std::vector<std::string> fails;
  std::string sim_method = "auto";
  auto* simulate = app.add_subcommand("simulate", "storage cluster repair simulation");
  add_code_flags(simulate, f, false);
  simulate->add_option("--seed", seed, "message seed");
  simulate->add_option("--stripes", stripes, "stripes per node");
  simulate->add_option("--fail", fails, "pos or pos:partial=i,j (repeatable)");
  simulate->add_option("--method", sim_method, "auto, subfield, greedy, exhaustive or custom")
      ->check(CLI::IsMember({"auto", "subfield", "greedy", "exhaustive", "custom"}));
  simulate->add_option("--scheme", scheme_path, "scheme JSON for --method custom");
  simulate->add_option("--out", out_path, "write the report here instead of stdout");
  simulate->add_option("--threads", opt.threads, "search workers");

  auto* verify = app.add_subcommand("verify", "property suites");
  add_code_flags(verify, f, true);
  verify->add_option("--suite", suite, "lemma2, lemma3, prop2, majorization or all")
      ->check(CLI::IsMember({"lemma2", "lemma3", "prop2", "majorization", "all"}));
  verify->add_option("--seed", seed, "random seed");
  std::string verify_scheme;
  verify->add_option("--scheme", verify_scheme, "also validate this scheme file");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*bound) return cmd_bound(f, sweep, format, out);
    if (*construct) return cmd_construct(f, method, emit, opt, out, err);
    if (*simulate)
      return cmd_simulate(f, seed, stripes, fails, sim_method, scheme_path, out_path, opt, out, err);
    if (*verify) {
      const bool q_set = verify->count("--q") > 0, ell_set = verify->count("--ell") > 0;
      const bool nk_set = verify->count("--n") > 0 || verify->count("--k") > 0;
      return cmd_verify(suite, f, q_set, ell_set, nk_set, seed, verify_scheme, out);
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace rsside
