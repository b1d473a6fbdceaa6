#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omfilter/control.hpp"
#include "omfilter/filter_model.hpp"
#include "omfilter/params.hpp"

namespace omf {

struct GridConfig {
    double f_min = 10.0;
    double f_max = 1e4;
    double points_per_decade = 100.0;
};

enum class DesignMode { Auto, PaperGains, Targets };

struct ControlConfig {
    double epsilon = 0.1;
    DesignMode mode = DesignMode::Auto;
    PoleSet k_poles{};
    PoleSet l_poles{};
};

// A temperature entry: absolute kelvin, or a multiple of the thermal bound (T / Q_m limit x Q_m).
struct TemperatureSpec {
    double value = 0.0;
    bool relative_to_bound = false;
    std::string label;  // as written in the config
};

struct RunConfig {
    FilterParams filter;
    bool pump_power_auto = true;  // P_c chosen so that gamma_opt = c / L_arm
    IfoParams ifo;
    GridConfig grid;
    ControlConfig control;
    std::vector<TemperatureSpec> temperatures;
    double broadband_T_SRM = 0.0;
    bool include_pickoff_loss = false;
    PumpTuning pump_tuning = PumpTuning::Compensated;
    std::string output_dir = "out";
};

// Flat "section.key" -> raw value view of a config; the canonical form used for env overrides and sweeps.
using ConfigMap = std::map<std::string, std::string>;

// All recognized keys with their defaults (the nominal parameter set).
ConfigMap default_config_map();

// Parses an INI-style file ([section] / key = value, '#' or ';' comment lines).
// Unknown sections or keys raise ConfigError.
ConfigMap read_config_file(const std::filesystem::path& path);

// Overlays environment variables OMFILTER_<SECTION>_<KEY> (upper-cased) onto the map.
void apply_env_overrides(ConfigMap& map, const std::string& prefix = "OMFILTER_");

// Typed view; throws ConfigError naming the key on malformed values and validates ranges.
RunConfig build_config(const ConfigMap& map);

// Defaults <- file (optional) <- environment.
RunConfig load_config(const std::optional<std::filesystem::path>& path, ConfigMap* resolved = nullptr);

FrequencyGrid make_grid(const GridConfig& grid);

double resolve_temperature(const TemperatureSpec& spec, const RunConfig& config);

// Parses "re,im; re,im; re,im".
PoleSet parse_pole_set(const std::string& text, const std::string& key);

bool is_numeric_key(const std::string& key);

std::string env_name(const std::string& key, const std::string& prefix = "OMFILTER_");

}  // namespace omf
