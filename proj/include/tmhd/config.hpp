#pragma once

#include <string>

#include "tmhd/diagnostics.hpp"
#include "tmhd/stepper.hpp"

namespace tmhd {

// Structured-text run configuration with sections [grid], [taming], [time],
// [initial], [forcing], [output]. Unknown sections or keys are rejected;
// parse -> serialize -> parse is a fixed point.
SolverConfig parse_config(const std::string& text);
SolverConfig load_config(const std::string& path);
std::string serialize_config(const SolverConfig& config);

// Apply one `section.key = value` assignment; rejects unknown keys.
void apply_config_kv(SolverConfig& config, const std::string& section, const std::string& key,
                     const std::string& value);
// The cross-field checks parse_config runs after assignments.
void validate_config(const SolverConfig& config);

// Diagnostics CSV: fixed 15-column header, doubles with 17 significant
// digits, LF line endings.
extern const char* const kDiagnosticsCsvHeader;
void write_diagnostics_csv(const TrajectoryRecord& record, const std::string& path);
std::vector<std::vector<double>> parse_csv(const std::string& path, std::string* header_out = nullptr);

}  // namespace tmhd
