#pragma once

#include <json.hpp>

#include "gmreslab/generate.hpp"

namespace gmreslab {

/// Matrix spec from a JSON string (compact form) or object.
MatrixSpec matrix_spec_from_json(const nlohmann::json& j);

}  // namespace gmreslab
