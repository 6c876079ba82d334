#pragma once

#include "deepesn/experiment.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace deepesn {

/// Flat JSON object whose keys are the CLI flag names without dashes, e.g.
/// {"task": "laser", "laser-path": "data/santafe_laser.txt", "omega-il": [0.5, 2]}.
/// Keys present in the document overwrite the matching fields of `cfg`;
/// unknown keys are rejected. Returns the "out" entry when present.
std::optional<std::filesystem::path> apply_config_json(std::string_view text, ExperimentConfig& cfg);

std::optional<std::filesystem::path> apply_config_file(const std::filesystem::path& path, ExperimentConfig& cfg);

/// Every field under its flag name (inverse of apply_config_json).
std::string config_to_json(const ExperimentConfig& cfg);

} // namespace deepesn
