#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "bifree/distributions.hpp"

namespace bifree {

// Model files:
//   {"type": "shift_bihaar"}
//   {"type": "matrix_state", "x": [...], "y": [...]}   row-major d*d scalars
//   {"type": "table", "degree": d, "default_zero": false,
//    "entries": {"X Y*": "1/2", ...}}
// Optional for every type: "degree" (bound on word length) and "pair".
// `pair`, when given, overrides the file. Malformed input throws ParseError.
OraclePtr model_from_json(const nlohmann::json& j, std::optional<unsigned> pair = {});
OraclePtr load_model(const std::string& path, std::optional<unsigned> pair = {});

nlohmann::json matrix_model_json(const Matrix& x, const Matrix& y);

} // namespace bifree
