#pragma once

#include <string>

#include "pofrac/model.hpp"

namespace pofrac {

// Parameter files are flat JSON objects with exactly the sixteen model fields
// (plus an optional "metadata" object). Unknown keys and missing fields are
// errors that name the offending key. Values must be nonnegative numbers.
ModelParams load_params_file(const std::string& path);
ModelParams parse_params_json(const std::string& text);

// Canonical (sorted-key) JSON rendering, used for fingerprinting and echoes.
std::string params_to_json(const ModelParams& p);

}  // namespace pofrac
