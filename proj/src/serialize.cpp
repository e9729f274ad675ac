#include "rsside/serialize.hpp"

#include <fstream>
#include <sstream>

#include "rsside/errors.hpp"

namespace rsside {

namespace {

template <class T>
T field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw PreconditionError(std::string("bad JSON field '") + key + "': " + ex.what());
  }
}

json elements_to_json(const FieldTower& t, std::span<const Element> xs) {
  json a = json::array();
  for (auto x : xs) a.push_back(t.to_text(x));
  return a;
}

std::vector<Element> elements_from_json(const FieldTower& t, const json& a) {
  require(a.is_array(), "expected a JSON array of field elements");
  std::vector<Element> out;
  for (const auto& x : a) {
    require(x.is_string(), "field element must be a string");
    out.push_back(t.parse(x.get<std::string>()));
  }
  return out;
}

}  // namespace

json tower_to_json(const FieldTower& t) {
  const auto& p = t.params();
  return {{"p", p.p}, {"e", p.e}, {"ell", p.ell}, {"base_modulus", p.base_modulus}, {"top_modulus", p.top_modulus}};
}

TowerPtr tower_from_json(const json& j) {
  return make_tower(field<unsigned>(j, "p"), field<unsigned>(j, "e"), field<unsigned>(j, "ell"),
                    Moduli{field<std::vector<std::uint32_t>>(j, "base_modulus"),
                           field<std::vector<std::uint32_t>>(j, "top_modulus")});
}

json code_to_json(const CodeSpec& spec) {
  json j = tower_to_json(*spec.tower);
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["points"] = elements_to_json(*spec.tower, spec.points);
  j["lambda"] = elements_to_json(*spec.tower, spec.lambda);
  return j;
}

CodePtr code_from_json(const json& j) {
  auto tower = tower_from_json(j);
  std::optional<std::vector<Element>> points;
  if (j.contains("points")) points = elements_from_json(*tower, j.at("points"));
  auto code = make_code(tower, field<std::size_t>(j, "n"), field<std::size_t>(j, "k"), points);
  if (j.contains("lambda"))
    require(elements_from_json(*tower, j.at("lambda")) == code->lambda,
            "stored lambda does not match the recomputed dual multipliers");
  return code;
}

json codeword_to_json(const Codeword& cw) {
  return {{"code", code_to_json(*cw.spec)}, {"symbols", elements_to_json(*cw.spec->tower, cw.symbols)}};
}

Codeword codeword_from_json(const json& j) {
  require(j.contains("code"), "missing JSON field 'code'");
  auto code = code_from_json(j.at("code"));
  require(j.contains("symbols"), "missing JSON field 'symbols'");
  auto symbols = elements_from_json(*code->tower, j.at("symbols"));
  require(symbols.size() == code->n, "codeword length must equal n");
  return Codeword{code, std::move(symbols), std::nullopt};
}

json subspace_to_json(const Subspace& s) {
  return {{"dim", s.dim()}, {"basis", elements_to_json(*s.tower(), s.basis())}};
}

Subspace subspace_from_json(const TowerPtr& tower, const json& j) {
  require(j.contains("basis"), "missing JSON field 'basis'");
  auto s = Subspace::span(tower, elements_from_json(*tower, j.at("basis")));
  if (j.contains("dim")) require(s.dim() == field<unsigned>(j, "dim"), "subspace basis is not independent");
  return s;
}

json scheme_to_json(const RepairScheme& sc) {
  const auto& t = *sc.spec->tower;
  json checks = json::array();
  for (const auto& g : sc.checks) checks.push_back(elements_to_json(t, g));
  json j = {{"code", code_to_json(*sc.spec)},
            {"star", sc.star},
            {"side", elements_to_json(t, sc.side.S)},
            {"checks", checks}};
  if (sc.side.values) j["side_values"] = *sc.side.values;
  return j;
}

RepairScheme scheme_from_json(const json& j) {
  require(j.is_object() && j.contains("code"), "missing JSON field 'code'");
  auto code = code_from_json(j.at("code"));
  const auto& t = *code->tower;
  SideInfo side;
  if (j.contains("side")) side.S = elements_from_json(t, j.at("side"));
  if (j.contains("side_values")) side.values = field<std::vector<SubSymbol>>(j, "side_values");
  require(j.contains("checks") && j.at("checks").is_array(), "missing JSON field 'checks'");
  std::vector<Poly> checks;
  for (const auto& g : j.at("checks")) checks.push_back(elements_from_json(t, g));
  return make_scheme(code, field<std::size_t>(j, "star"), std::move(side), std::move(checks));
}

json subspace_scheme_to_json(const SubspaceScheme& ss) {
  json j = scheme_to_json(ss.scheme);
  j["W"] = subspace_to_json(ss.W);
  j["T"] = subspace_to_json(ss.T);
  j["predicted_bw"] = ss.predicted_bw;
  j["measured_bw"] = ss.measured_bw;
  j["method"] = ss.method;
  return j;
}

json answer_to_json(const Answer& a) { return {{"j", a.position}, {"traces", a.traces}}; }

Answer answer_from_json(const json& j) {
  return Answer{field<std::size_t>(j, "j"), field<std::vector<SubSymbol>>(j, "traces")};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw PreconditionError("malformed JSON in '" + path + "': " + ex.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot write '" + path + "'");
  out << text;
}

}  // namespace rsside
