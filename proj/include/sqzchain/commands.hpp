#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sqzchain/config.hpp"

namespace sqz {

struct CommandOutput {
    std::string csv;      // empty when the command produced no table
    std::string summary;  // human-readable, one fact per line
};

// name is one of sweep, fit, spectrum, budget, infer. `fit` needs data_csv.
CommandOutput run_command(std::string_view name, const RunConfig& config,
                          std::optional<std::string_view> data_csv, std::uint64_t seed);

}  // namespace sqz
