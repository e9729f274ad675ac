#pragma once

#include <json.hpp>
#include <string>

#include "rsside/repair_engine.hpp"
#include "rsside/scheme_builder.hpp"

namespace rsside {

using json = nlohmann::json;

json tower_to_json(const FieldTower& t);
TowerPtr tower_from_json(const json& j);

// {"p","e","ell","base_modulus","top_modulus","n","k","points","lambda"}.
json code_to_json(const CodeSpec& spec);
// Rebuilds the code and rejects a stored lambda that disagrees with the
// recomputed multipliers.
CodePtr code_from_json(const json& j);

json codeword_to_json(const Codeword& cw);
Codeword codeword_from_json(const json& j);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const TowerPtr& tower, const json& j);

// {"code","star","side","checks"} plus "side_values" when known.
json scheme_to_json(const RepairScheme& sc);
// Structural parse only; call validate() on the result.
RepairScheme scheme_from_json(const json& j);

json subspace_scheme_to_json(const SubspaceScheme& ss);

json answer_to_json(const Answer& a);
Answer answer_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rsside
