#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "omfilter/config.hpp"

namespace omf {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& text);

struct CommandContext {
    RunConfig config;
    ConfigMap resolved;                 // flat view after file + env overrides
    std::filesystem::path out_dir;      // created on demand
    OutputFormat format = OutputFormat::Csv;
};

// A hard-invariant failure: machine readable, printed as JSON on stderr by the CLI.
struct Failure {
    std::string check;
    std::string detail;
};

struct CommandResult {
    nlohmann::json report;                    // also written to disk for report-style commands
    std::vector<std::filesystem::path> files; // in write order
    std::vector<Failure> failures;
    bool ok() const { return failures.empty(); }
};

nlohmann::json failures_json(const std::vector<Failure>& failures);

nlohmann::json to_json(std::complex<double> z);
std::complex<double> complex_from_json(const nlohmann::json& j);
nlohmann::json rates_json(const DerivedRates& rates);
nlohmann::json regime_json(const RegimeReport& report);

// Parameters, derived rates, pump power, regime checks. Nothing written to disk.
CommandResult cmd_validate(const CommandContext& ctx);

// filtered / conventional_broadband / conventional_narrowband / ideal_compensation curves plus manifest.json.
CommandResult cmd_sensitivity(const CommandContext& ctx);

struct StabilityReport {
    std::vector<std::complex<double>> eigenvalues;
    int unstable_count = 0;
    bool unstable = false;
    double trace_error = 0.0;  // |sum(eig) - tr A| / max(|tr A|, max|eig|)
    int observability_rank = 0;
    int controllability_rank = 0;
    RegimeReport regime;
};

nlohmann::json to_json(const StabilityReport& report);
StabilityReport stability_from_json(const nlohmann::json& j);
StabilityReport stability_report(const RunConfig& config);

CommandResult cmd_stability(const CommandContext& ctx);
CommandResult cmd_controller(const CommandContext& ctx);
CommandResult cmd_phase(const CommandContext& ctx);

enum class ThermalModel { Rwa, Rigorous };
CommandResult cmd_thermal(const CommandContext& ctx, ThermalModel model = ThermalModel::Rwa);

// Accepts a full "section.key" or an unambiguous bare key ("T_SRM"). Throws ConfigError naming the key.
std::string resolve_sweep_key(const std::string& key);
std::vector<double> parse_value_list(const std::string& text);
CommandResult cmd_sweep(const CommandContext& ctx, const std::string& param, const std::vector<double>& values);

}  // namespace omf
