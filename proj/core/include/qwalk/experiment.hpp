#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalk/noise.hpp"
#include "qwalk/protocols.hpp"
#include "qwalk/tomography.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class CommandKind { simulate, usd, sic, extract_povm, compile, noise, tomography, sweep };

const char* command_name(CommandKind c);
CommandKind command_from_name(const std::string& name);

/// Which built-in schedule a command operates on.
enum class Protocol { usd, sic };

struct SweepRange {
    double phi_start_deg = 45.0;
    double phi_stop_deg = 90.0;
    double phi_step_deg = 9.0;
};

struct ExperimentConfig {
    CommandKind command = CommandKind::usd;
    std::uint64_t seed = 0;
    std::string out_dir = ".";

    UsdSpec usd;
    int sic_index = 1;
    Protocol protocol = Protocol::usd;
    SweepRange sweep;
    std::optional<NoiseParams> noise;
    int trials = 200;
    std::optional<WalkSpec> walk;                       // for `simulate`
    std::optional<std::array<SicOutcome, 4>> tomo_rows;  // for `tomography`

    /// Throws std::invalid_argument naming the offending field.
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string config_hash() const;
};

nlohmann::json walk_spec_to_json(const WalkSpec& spec);
WalkSpec walk_spec_from_json(const nlohmann::json& j);

struct ResultRecord {
    nlohmann::json record;
    std::vector<std::string> files_written;
};

/// Dispatches the command, writes the result record plus the command's
/// tables under config.out_dir, and returns the record.
ResultRecord run(const ExperimentConfig& config);

}  // namespace qwalk
