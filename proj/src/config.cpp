#include "omfilter/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "omfilter/errors.hpp"

namespace omf {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_double(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
}

bool parse_bool(const std::string& text, const std::string& key) {
    const std::string t = lower(trim(text));
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(key, "expected true/false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

const std::vector<std::string>& numeric_keys() {
    static const std::vector<std::string> keys{
        "filter.L_f",  "filter.finesse",  "filter.omega_m",    "filter.mass_m",   "filter.Q_m",
        "filter.T_envir", "filter.P_c",   "filter.lambda_0",   "ifo.L_arm",       "ifo.P_arm",
        "ifo.M",       "ifo.T_SRM",       "ifo.lambda_0",      "grid.f_min",      "grid.f_max",
        "grid.points_per_decade", "control.epsilon", "sensitivity.broadband_T_SRM"};
    return keys;
}

}  // namespace

bool is_numeric_key(const std::string& key) {
    const auto& keys = numeric_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

ConfigMap default_config_map() {
    const FilterParams f;
    const IfoParams ifo = nominal_ifo();
    auto num = [](double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
        return std::string(buf, res.ptr);
    };
    ConfigMap m;
    m["filter.L_f"] = num(f.L_f);
    m["filter.finesse"] = num(f.finesse);
    m["filter.omega_m"] = num(f.omega_m);
    m["filter.mass_m"] = num(f.mass_m);
    m["filter.Q_m"] = num(f.Q_m);
    m["filter.T_envir"] = num(f.T_envir);
    m["filter.P_c"] = "auto";
    m["filter.lambda_0"] = num(f.lambda_0);
    m["ifo.L_arm"] = num(ifo.L_arm);
    m["ifo.P_arm"] = num(ifo.P_arm);
    m["ifo.M"] = num(ifo.M);
    m["ifo.T_SRM"] = num(ifo.T_SRM);
    m["ifo.lambda_0"] = num(ifo.lambda_0);
    m["grid.f_min"] = "10";
    m["grid.f_max"] = "10000";
    m["grid.points_per_decade"] = "100";
    m["control.epsilon"] = "0.1";
    m["control.design"] = "auto";
    m["control.k_poles"] = "";
    m["control.l_poles"] = "";
    m["thermal.temperatures"] = "0, bound, 10*bound";
    m["sensitivity.broadband_T_SRM"] = num(10.0 * ifo.T_SRM);
    m["sensitivity.include_pickoff_loss"] = "false";
    m["sensitivity.pump_tuning"] = "compensated";
    m["output.dir"] = "out";
    return m;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("--config", e.what());
    }
    const ConfigMap defaults = default_config_map();
    ConfigMap m = defaults;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw ConfigError(section, "top-level keys are not allowed; put it under a [section]");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            if (!defaults.count(full)) throw ConfigError(full, "unknown config key");
            m[full] = trim(value.data());
        }
    }
    return m;
}

std::string env_name(const std::string& key, const std::string& prefix) {
    std::string name = prefix;
    for (char c : key) name += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return name;
}

void apply_env_overrides(ConfigMap& map, const std::string& prefix) {
    for (auto& [key, value] : map)
        if (const char* env = std::getenv(env_name(key, prefix).c_str())) value = env;
}

PoleSet parse_pole_set(const std::string& text, const std::string& key) {
    const auto entries = split(text, ';');
    if (entries.size() != 3) throw ConfigError(key, "expected three poles 're,im; re,im; re,im'");
    PoleSet poles;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto parts = split(entries[i], ',');
        if (parts.size() != 2) throw ConfigError(key, "pole '" + entries[i] + "' is not 're,im'");
        poles[i] = {parse_double(parts[0], key), parse_double(parts[1], key)};
    }
    return poles;
}

RunConfig build_config(const ConfigMap& map) {
    auto get = [&](const std::string& key) -> const std::string& {
        const auto it = map.find(key);
        if (it == map.end()) throw ConfigError(key, "missing key");
        return it->second;
    };
    auto num = [&](const std::string& key) { return parse_double(get(key), key); };

    RunConfig c;
    c.filter.L_f = num("filter.L_f");
    c.filter.finesse = num("filter.finesse");
    c.filter.omega_m = num("filter.omega_m");
    c.filter.mass_m = num("filter.mass_m");
    c.filter.Q_m = num("filter.Q_m");
    c.filter.T_envir = num("filter.T_envir");
    c.filter.lambda_0 = num("filter.lambda_0");
    c.ifo.L_arm = num("ifo.L_arm");
    c.ifo.P_arm = num("ifo.P_arm");
    c.ifo.M = num("ifo.M");
    c.ifo.T_SRM = num("ifo.T_SRM");
    c.ifo.lambda_0 = num("ifo.lambda_0");

    try {
        validate(c.ifo);
        c.pump_power_auto = lower(trim(get("filter.P_c"))) == "auto";
        c.filter.P_c = c.pump_power_auto ? 0.0 : num("filter.P_c");
        validate(c.filter);
        if (c.pump_power_auto) c.filter.P_c = required_power(kConstants.c / c.ifo.L_arm, c.filter);
    } catch (const ParameterError& e) {
        throw ConfigError(e.parameter(), e.what());
    }

    c.grid.f_min = num("grid.f_min");
    c.grid.f_max = num("grid.f_max");
    c.grid.points_per_decade = num("grid.points_per_decade");
    if (!(c.grid.f_min > 0.0 && c.grid.f_min < c.grid.f_max)) throw ConfigError("grid.f_min", "need 0 < f_min < f_max");
    if (!(c.grid.points_per_decade >= 10.0)) throw ConfigError("grid.points_per_decade", "must be >= 10");

    c.control.epsilon = num("control.epsilon");
    if (!(c.control.epsilon > 0.0 && c.control.epsilon <= 1.0))
        throw ConfigError("control.epsilon", "must lie in (0, 1]");
    const std::string design = lower(trim(get("control.design")));
    if (design == "auto") {
        c.control.mode = DesignMode::Auto;
    } else if (design == "paper-gains") {
        c.control.mode = DesignMode::PaperGains;
    } else if (design == "targets") {
        c.control.mode = DesignMode::Targets;
        c.control.k_poles = parse_pole_set(get("control.k_poles"), "control.k_poles");
        c.control.l_poles = parse_pole_set(get("control.l_poles"), "control.l_poles");
    } else {
        throw ConfigError("control.design", "expected auto, paper-gains or targets");
    }

    for (const auto& item : split(get("thermal.temperatures"), ',')) {
        if (item.empty()) continue;
        TemperatureSpec t;
        t.label = item;
        const std::string l = lower(item);
        const auto pos = l.find("bound");
        if (pos != std::string::npos) {
            t.relative_to_bound = true;
            std::string factor = trim(l.substr(0, pos));
            if (!factor.empty() && factor.back() == '*') factor.pop_back();
            factor = trim(factor);
            if (trim(l.substr(pos + 5)) != "") throw ConfigError("thermal.temperatures", "bad entry '" + item + "'");
            t.value = factor.empty() ? 1.0 : parse_double(factor, "thermal.temperatures");
        } else {
            t.value = parse_double(item, "thermal.temperatures");
        }
        if (!(t.value >= 0.0)) throw ConfigError("thermal.temperatures", "temperatures must be non-negative");
        c.temperatures.push_back(t);
    }

    c.broadband_T_SRM = num("sensitivity.broadband_T_SRM");
    if (!(c.broadband_T_SRM > 0.0 && c.broadband_T_SRM < 1.0))
        throw ConfigError("sensitivity.broadband_T_SRM", "must lie in (0, 1)");
    c.include_pickoff_loss = parse_bool(get("sensitivity.include_pickoff_loss"), "sensitivity.include_pickoff_loss");
    const std::string tuning = lower(trim(get("sensitivity.pump_tuning")));
    if (tuning == "compensated") {
        c.pump_tuning = PumpTuning::Compensated;
    } else if (tuning == "bare") {
        c.pump_tuning = PumpTuning::Bare;
    } else {
        throw ConfigError("sensitivity.pump_tuning", "expected compensated or bare");
    }
    c.output_dir = get("output.dir");
    return c;
}

RunConfig load_config(const std::optional<std::filesystem::path>& path, ConfigMap* resolved) {
    ConfigMap m = path ? read_config_file(*path) : default_config_map();
    apply_env_overrides(m);
    RunConfig c = build_config(m);
    if (resolved) *resolved = std::move(m);
    return c;
}

FrequencyGrid make_grid(const GridConfig& grid) {
    return FrequencyGrid::logarithmic(grid.f_min, grid.f_max, grid.points_per_decade);
}

double resolve_temperature(const TemperatureSpec& spec, const RunConfig& config) {
    if (!spec.relative_to_bound) return spec.value;
    const double gamma_srm = gamma_srm_from_transmissivity(config.ifo.T_SRM, config.ifo.L_arm);
    if (std::isinf(config.filter.Q_m))
        throw ConfigError("thermal.temperatures", "'bound' is undefined for Q_m = inf");
    return spec.value * thermal_bound(gamma_srm) * config.filter.Q_m;
}

}  // namespace omf
