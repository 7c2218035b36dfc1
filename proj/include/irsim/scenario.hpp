#pragma once

#include <string>

#include "irsim/experiment.hpp"

namespace irsim {

/// Loads and validates a JSON scenario file. Unknown keys are rejected and
/// every configuration invariant is checked; error messages carry the
/// offending key path (parse errors carry line and column). Throws
/// FileError when the file cannot be read and ParameterError on any
/// validation failure.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace irsim
