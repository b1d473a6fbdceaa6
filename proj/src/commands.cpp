#include "omfilter/commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "omfilter/control.hpp"
#include "omfilter/coupled_system.hpp"
#include "omfilter/errors.hpp"
#include "omfilter/filter_model.hpp"
#include "omfilter/io.hpp"
#include "omfilter/rigorous.hpp"

namespace omf {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path prepare_out(const CommandContext& ctx) {
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw ConfigError("--out", "cannot create " + ctx.out_dir.string() + ": " + ec.message());
    return ctx.out_dir;
}

void emit(CommandResult& r, const fs::path& path, const std::string& text) {
    io::write_text(path, text);
    r.files.push_back(path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json complex_list(const std::vector<cplx>& values) {
    json a = json::array();
    for (const auto& v : values) a.push_back(to_json(v));
    return a;
}

template <typename Vec>
json row_vector_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

json budget_json(const NoiseBudget& b, bool rp) {
    std::vector<double> hz, re, im;
    for (std::size_t i = 0; i < b.size(); ++i) {
        hz.push_back(b.omega[i] / kTwoPi);
        re.push_back(b.signal_tf[i].real());
        im.push_back(b.signal_tf[i].imag());
    }
    json j{{"frequency_Hz", hz},        {"shot_asd", b.shot_asd}, {"thermal_asd", b.thermal_asd},
           {"total_asd", b.total_asd},  {"signal_tf_re", re},     {"signal_tf_im", im}};
    if (rp) j["radiation_pressure_asd"] = b.radiation_pressure_asd;
    return j;
}

void emit_budget(CommandResult& r, const CommandContext& ctx, const std::string& stem, const NoiseBudget& b,
                 bool rp = false) {
    if (ctx.format == OutputFormat::Csv)
        emit(r, ctx.out_dir / (stem + ".csv"), io::budget_csv(b, rp));
    else
        emit(r, ctx.out_dir / (stem + ".json"), dump(budget_json(b, rp)));
}

std::size_t flagged_count(const NoiseBudget& b) {
    return static_cast<std::size_t>(std::count(b.flagged.begin(), b.flagged.end(), true));
}

void check_budget(CommandResult& r, const std::string& name, const NoiseBudget& b) {
    if (const auto n = flagged_count(b))
        r.failures.push_back({name + ".singular_points", std::to_string(n) + " flagged grid points"});
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b.flagged[i]) continue;
        if (!(std::isfinite(b.total_asd[i]) && b.total_asd[i] > 0.0)) {
            r.failures.push_back({name + ".finite", "non-finite or non-positive ASD at " +
                                                        io::format_number(b.omega[i] / kTwoPi) + " Hz"});
            return;
        }
    }
}

NoiseBudget filtered_budget(const RunConfig& c, const FrequencyGrid& grid) {
    const auto rates = derive_rates(c.filter, c.ifo);
    SensitivityOptions opts;
    if (c.include_pickoff_loss) opts.pickoff_epsilon = c.control.epsilon;
    return sensitivity(build_model(rates), grid, c.filter.T_envir, rates.omega_m, opts);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::string sanitize(const std::string& label) {
    std::string s;
    for (char ch : label) {
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-')
            s += ch;
        else if (ch == '*')
            s += 'x';
        else if (!std::isspace(static_cast<unsigned char>(ch)))
            s += '_';
    }
    return s.empty() ? "T" : s;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("--format", "expected csv or json, got '" + text + "'");
}

json failures_json(const std::vector<Failure>& failures) {
    json a = json::array();
    for (const auto& f : failures) a.push_back({{"check", f.check}, {"detail", f.detail}});
    return json{{"failures", a}};
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

json rates_json(const DerivedRates& r) {
    return json{{"omega_m", r.omega_m}, {"gamma_f", r.gamma_f}, {"gamma_m", r.gamma_m},   {"x_q", r.x_q},
                {"g", r.g},             {"gamma_opt", r.gamma_opt}, {"gamma_srm", r.gamma_srm},
                {"omega_s", r.omega_s}, {"omega_0", r.omega_0}, {"G0_Larm", r.G0_Larm}};
}

json regime_json(const RegimeReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"ratio", c.ratio}, {"threshold", c.threshold}, {"passed", c.passed}});
    return json{{"all_passed", report.all_passed()}, {"checks", checks}};
}

CommandResult cmd_validate(const CommandContext& ctx) {
    const auto& c = ctx.config;
    const auto rates = derive_rates(c.filter, c.ifo);
    CommandResult r;

    const double target = kConstants.c / c.ifo.L_arm;
    const double estimate = power_scaling_estimate(c.filter, c.ifo.L_arm);
    const double exact = required_power(target, c.filter);
    const double ratio = exact / estimate;
    if (!(ratio <= 5.0 && ratio >= 0.2))
        r.failures.push_back({"required_power.scaling", "exact/estimate = " + io::format_number(ratio)});
    if (c.pump_power_auto) {
        const double err = std::abs(rates.gamma_opt / target - 1.0);
        if (!(err <= 1e-12))
            r.failures.push_back({"required_power.round_trip", "relative error " + io::format_number(err)});
    }

    json config = json::object();
    for (const auto& [k, v] : ctx.resolved) config[k] = v;
    r.report = json{
        {"config", config},
        {"pump_power_W", c.filter.P_c},
        {"pump_power_auto", c.pump_power_auto},
        {"required_power_W", exact},
        {"power_scaling_estimate_W", estimate},
        {"T_SRM", c.ifo.T_SRM},
        {"thermal_bound_K", thermal_bound(rates.gamma_srm)},
        {"derived_rates", rates_json(rates)},
        {"regime", regime_json(validate_regime(rates, c.grid.f_max))},
    };
    return r;
}

CommandResult cmd_sensitivity(const CommandContext& ctx) {
    const auto& c = ctx.config;
    prepare_out(ctx);
    const auto grid = make_grid(c.grid);
    const auto rates = derive_rates(c.filter, c.ifo);
    const double broadband_gamma = gamma_srm_from_transmissivity(c.broadband_T_SRM, c.ifo.L_arm);

    const std::vector<std::pair<std::string, NoiseBudget>> curves{
        {"filtered", filtered_budget(c, grid)},
        {"conventional_broadband", conventional_sensitivity(broadband_gamma, rates.G0_Larm, grid)},
        {"conventional_narrowband", conventional_sensitivity(rates.gamma_srm, rates.G0_Larm, grid)},
        {"ideal_compensation", ideal_compensation_sensitivity(rates.gamma_srm, rates.G0_Larm, grid)},
    };

    CommandResult r;
    json mizuno = json::object();
    json files = json::array();
    for (const auto& [name, budget] : curves) {
        emit_budget(r, ctx, name, budget);
        files.push_back(r.files.back().filename().string());
        check_budget(r, name, budget);
        mizuno[name] = mizuno_integral(budget);
    }
    r.report = json{
        {"files", files},
        {"grid", {{"f_min", c.grid.f_min}, {"f_max", c.grid.f_max}, {"points", grid.size()}}},
        {"T_envir", c.filter.T_envir},
        {"pump_power_W", c.filter.P_c},
        {"broadband_T_SRM", c.broadband_T_SRM},
        {"broadband_gamma", broadband_gamma},
        {"include_pickoff_loss", c.include_pickoff_loss},
        {"derived_rates", rates_json(rates)},
        {"regime", regime_json(validate_regime(rates, c.grid.f_max))},
        {"mizuno_integral", mizuno},
    };
    emit(r, ctx.out_dir / "manifest.json", dump(r.report));
    return r;
}

json to_json(const StabilityReport& s) {
    return json{{"eigenvalues", complex_list(s.eigenvalues)},
                {"unstable_count", s.unstable_count},
                {"unstable", s.unstable},
                {"trace_error", s.trace_error},
                {"ranks", {{"observability", s.observability_rank}, {"controllability", s.controllability_rank}}},
                {"regime", regime_json(s.regime)}};
}

StabilityReport stability_from_json(const json& j) {
    StabilityReport s;
    for (const auto& e : j.at("eigenvalues")) s.eigenvalues.push_back(complex_from_json(e));
    s.unstable_count = j.at("unstable_count").get<int>();
    s.unstable = j.at("unstable").get<bool>();
    s.trace_error = j.at("trace_error").get<double>();
    s.observability_rank = j.at("ranks").at("observability").get<int>();
    s.controllability_rank = j.at("ranks").at("controllability").get<int>();
    for (const auto& c : j.at("regime").at("checks"))
        s.regime.checks.push_back({c.at("name").get<std::string>(), c.at("ratio").get<double>(),
                                   c.at("threshold").get<double>(), c.at("passed").get<bool>()});
    return s;
}

StabilityReport stability_report(const RunConfig& config) {
    const auto rates = derive_rates(config.filter, config.ifo);
    const auto model = build_model(rates);
    const auto eigs = open_loop_eigs(model);
    StabilityReport s;
    s.eigenvalues.assign(eigs.values.begin(), eigs.values.end());
    s.unstable_count = eigs.unstable_count;
    s.unstable = eigs.unstable;
    const cplx sum = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), cplx{0.0, 0.0});
    const cplx trace = model.a_matrix.trace();
    double scale = std::abs(trace);
    for (const auto& e : s.eigenvalues) scale = std::max(scale, std::abs(e));
    s.trace_error = scale > 0.0 ? std::abs(sum - trace) / scale : 0.0;
    s.observability_rank = observability_rank(model.a_matrix, model.readout_d);
    s.controllability_rank = controllability_rank(model.a_matrix, model.input_b);
    s.regime = validate_regime(rates, config.grid.f_max);
    return s;
}

CommandResult cmd_stability(const CommandContext& ctx) {
    prepare_out(ctx);
    const auto s = stability_report(ctx.config);
    CommandResult r;
    if (!(s.trace_error <= 1e-10))
        r.failures.push_back({"trace_identity", "relative error " + io::format_number(s.trace_error)});
    r.report = to_json(s);
    emit(r, ctx.out_dir / "stability.json", dump(r.report));
    return r;
}

CommandResult cmd_controller(const CommandContext& ctx) {
    const auto& c = ctx.config;
    prepare_out(ctx);
    const auto rates = derive_rates(c.filter, c.ifo);
    const auto model = build_model(rates);
    const auto& A = model.a_matrix;
    const auto& B = model.input_b;
    const auto& D = model.readout_d;
    const auto grid = make_grid(c.grid);
    CommandResult r;

    const auto paper = paper_gains(model, c.control.epsilon);
    const auto paper_cl = closed_loop_eigs(A, B, D, paper.K, paper.L);
    double paper_max_real = -INFINITY;
    for (const auto& e : paper_cl) paper_max_real = std::max(paper_max_real, e.real());
    const json paper_json{{"K", row_vector_json(paper.K)},
                          {"L", row_vector_json(paper.L)},
                          {"stabilizing", is_stabilizing(model, paper)},
                          {"closed_loop_max_real", paper_max_real}};

    ControllerDesign design;
    std::string mode;
    switch (c.control.mode) {
        case DesignMode::Auto:
            mode = "auto";
            design = auto_design(model, c.control.epsilon);
            break;
        case DesignMode::Targets:
            mode = "targets";
            design = design_controller(model, c.control.k_poles, c.control.l_poles, c.control.epsilon);
            break;
        case DesignMode::PaperGains:
            mode = "paper-gains";
            design = paper;
            design.placed_poles_K = eigenvalues3(A - B * paper.K);
            design.placed_poles_L = eigenvalues3(A - paper.L * D);
            break;
    }

    const auto cl = closed_loop_eigs(A, B, D, design.K, design.L);
    std::vector<cplx> cl_vec(cl.begin(), cl.end());
    std::vector<cplx> union_vec;
    for (const auto& e : eigenvalues3(A - B * design.K)) union_vec.push_back(e);
    for (const auto& e : eigenvalues3(A - design.L * D)) union_vec.push_back(e);
    const double separation = spectrum_mismatch(cl_vec, union_vec);
    double cl_max_real = -INFINITY;
    for (const auto& e : cl) cl_max_real = std::max(cl_max_real, e.real());
    const double snr = snr_invariance(model, design, grid);
    const auto open = open_loop_eigs(model);

    if (!(cl_max_real < 0.0))
        r.failures.push_back({"closed_loop_stable", "max real part " + io::format_number(cl_max_real)});
    if (!(separation <= 1e-9))
        r.failures.push_back({"separation_principle", "mismatch " + io::format_number(separation)});
    if (!(snr <= 1e-6)) r.failures.push_back({"snr_invariance", "deviation " + io::format_number(snr)});

    r.report = json{
        {"design", mode},
        {"epsilon", design.epsilon},
        {"K", row_vector_json(design.K)},
        {"L", row_vector_json(design.L)},
        {"placed_poles_K", complex_list({design.placed_poles_K.begin(), design.placed_poles_K.end()})},
        {"placed_poles_L", complex_list({design.placed_poles_L.begin(), design.placed_poles_L.end()})},
        {"open_loop_eigenvalues", complex_list({open.values.begin(), open.values.end()})},
        {"closed_loop_eigenvalues", complex_list(cl_vec)},
        {"closed_loop_max_real", cl_max_real},
        {"separation_mismatch", separation},
        {"snr_invariance_deviation", snr},
        {"paper_gains", paper_json},
        {"ranks",
         {{"observability", observability_rank(A, D)}, {"controllability", controllability_rank(A, B)}}},
    };
    emit(r, ctx.out_dir / "controller.json", dump(r.report));

    const auto tf = controller_tf(A, B, D, design.K, design.L, grid);
    if (ctx.format == OutputFormat::Csv) {
        std::ostringstream out;
        io::CsvWriter csv(out);
        csv.header({"frequency_Hz", "controller_re", "controller_im", "controller_abs"});
        for (std::size_t i = 0; i < tf.omega.size(); ++i)
            csv.row({grid.hz()[i], tf.values[i].real(), tf.values[i].imag(), std::abs(tf.values[i])});
        emit(r, ctx.out_dir / "controller_tf.csv", out.str());
    } else {
        std::vector<double> re, im;
        for (const auto& v : tf.values) {
            re.push_back(v.real());
            im.push_back(v.imag());
        }
        emit(r, ctx.out_dir / "controller_tf.json",
             dump(json{{"frequency_Hz", grid.hz()}, {"controller_re", re}, {"controller_im", im}}));
    }
    return r;
}

CommandResult cmd_phase(const CommandContext& ctx) {
    const auto& c = ctx.config;
    prepare_out(ctx);
    const auto grid = make_grid(c.grid);
    const auto rates = derive_rates(c.filter, c.ifo);
    if (!(rates.gamma_opt > 0.0)) throw ConfigError("filter.P_c", "phase residual needs a pumped filter (P_c > 0)");
    const auto exact = exact_response(rates, grid, c.pump_tuning);
    const double delay = 2.0 * c.ifo.L_arm / kConstants.c;

    // Residual against the arm propagation phase Omega * 2 L_arm / c that the filter is meant to cancel.
    std::vector<double> rwa_wrapped, rwa_res, exact_res, cubic;
    for (double w : grid.omega()) rwa_wrapped.push_back(std::arg(-rwa_transfer(w, rates.gamma_m, rates.gamma_opt)));
    const auto rwa_phase = unwrap_phase(rwa_wrapped);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid.omega()[i];
        const double x = w / rates.gamma_opt;
        const double exact_phase = exact.phase_error[i] - 2.0 * std::atan(x);
        rwa_res.push_back(rwa_phase[i] + w * delay);
        exact_res.push_back(exact_phase + w * delay);
        cubic.push_back(2.0 / 3.0 * x * x * x);
    }

    CommandResult r;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (!std::isfinite(exact_res[i]) || !std::isfinite(rwa_res[i])) {
            r.failures.push_back({"phase.finite", "non-finite phase at " + io::format_number(grid.hz()[i]) + " Hz"});
            break;
        }

    if (ctx.format == OutputFormat::Csv) {
        std::ostringstream out;
        io::CsvWriter csv(out);
        csv.header({"frequency_Hz", "phase_error", "delay_residual", "delay_residual_rwa", "cubic_estimate"});
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv.row({grid.hz()[i], exact.phase_error[i], exact_res[i], rwa_res[i], cubic[i]});
        emit(r, ctx.out_dir / "phase.csv", out.str());
    } else {
        emit(r, ctx.out_dir / "phase.json",
             dump(json{{"frequency_Hz", grid.hz()},
                       {"phase_error", exact.phase_error},
                       {"delay_residual", exact_res},
                       {"delay_residual_rwa", rwa_res},
                       {"cubic_estimate", cubic}}));
    }
    r.report = json{{"files", {r.files.back().filename().string()}},
                    {"gamma_opt", rates.gamma_opt},
                    {"pump_offset", pump_offset(rates, c.pump_tuning)},
                    {"max_abs_phase_error", max_abs(exact.phase_error)},
                    {"max_abs_delay_residual", max_abs(exact_res)}};
    return r;
}

CommandResult cmd_thermal(const CommandContext& ctx, ThermalModel model) {
    const auto& c = ctx.config;
    prepare_out(ctx);
    const auto grid = make_grid(c.grid);
    const auto rates = derive_rates(c.filter, c.ifo);
    const bool rigorous_model = model == ThermalModel::Rigorous;
    if (c.temperatures.empty()) throw ConfigError("thermal.temperatures", "no temperatures given");

    rigorous::Setup setup = rigorous::make_setup(c.filter, c.ifo);
    setup.tuning = c.pump_tuning;
    const auto ss_model = build_model(rates);
    SensitivityOptions opts;
    if (c.include_pickoff_loss) opts.pickoff_epsilon = c.control.epsilon;

    CommandResult r;
    std::vector<std::pair<double, NoiseBudget>> runs;
    json entries = json::array();
    std::vector<std::string> used;
    for (const auto& spec : c.temperatures) {
        const double kelvin = resolve_temperature(spec, c);
        auto budget = rigorous_model ? rigorous::total_noise(setup, kelvin, grid)
                                     : sensitivity(ss_model, grid, kelvin, rates.omega_m, opts);
        std::string stem = "thermal_" + sanitize(spec.label);
        if (std::find(used.begin(), used.end(), stem) != used.end()) stem += "_" + std::to_string(used.size());
        used.push_back(stem);
        emit_budget(r, ctx, stem, budget, rigorous_model);
        check_budget(r, stem, budget);
        entries.push_back({{"label", spec.label}, {"T_envir", kelvin}, {"file", r.files.back().filename().string()}});
        runs.emplace_back(kelvin, std::move(budget));
    }

    // Pointwise ordering: a hotter bath can only add noise.
    std::vector<std::size_t> order(runs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return runs[a].first < runs[b].first; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& lo = runs[order[k - 1]].second.total_asd;
        const auto& hi = runs[order[k]].second.total_asd;
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (hi[i] < lo[i] * (1.0 - 1e-12)) {
                r.failures.push_back({"thermal.ordering", "total ASD decreases with temperature at " +
                                                              io::format_number(grid.hz()[i]) + " Hz"});
                break;
            }
    }

    r.report = json{{"model", rigorous_model ? "rigorous" : "rwa"},
                    {"thermal_bound_K", thermal_bound(rates.gamma_srm)},
                    {"Q_m", c.filter.Q_m},
                    {"runs", entries}};
    emit(r, ctx.out_dir / "thermal.json", dump(r.report));
    return r;
}

std::string resolve_sweep_key(const std::string& key) {
    const auto defaults = default_config_map();
    if (defaults.count(key)) {
        if (!is_numeric_key(key)) throw ConfigError(key, "not a numeric config key; cannot sweep it");
        return key;
    }
    std::vector<std::string> matches;
    for (const auto& [full, value] : defaults) {
        (void)value;
        const auto dot = full.find('.');
        if (full.substr(dot + 1) == key && is_numeric_key(full)) matches.push_back(full);
    }
    if (matches.size() == 1) return matches.front();
    if (matches.empty()) throw ConfigError(key, "unknown sweep key");
    throw ConfigError(key, "ambiguous sweep key (" + matches[0] + " or " + matches[1] + ")");
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("--values", "bad number '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw ConfigError("--values", "bad number '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError("--values", "empty value list");
    return values;
}

CommandResult cmd_sweep(const CommandContext& ctx, const std::string& param, const std::vector<double>& values) {
    const std::string key = resolve_sweep_key(param);
    if (values.empty()) throw ConfigError("--values", "empty value list");
    prepare_out(ctx);

    CommandResult r;
    std::ostringstream long_csv, summary_csv;
    io::CsvWriter lcsv(long_csv), scsv(summary_csv);
    lcsv.header({"value", "curve", "frequency_Hz", "shot_asd", "thermal_asd", "total_asd"});
    scsv.header({"value", "mizuno_filtered", "mizuno_conventional"});
    json runs = json::array();
    std::vector<double> conv_mizuno;

    for (double v : values) {
        ConfigMap m = ctx.resolved;
        char buf[32];
        m[key] = std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
        const RunConfig c = build_config(m);
        const auto grid = make_grid(c.grid);
        const auto rates = derive_rates(c.filter, c.ifo);
        const auto filtered = filtered_budget(c, grid);
        const auto conventional = conventional_sensitivity(rates.gamma_srm, rates.G0_Larm, grid);
        check_budget(r, "filtered@" + io::format_number(v), filtered);

        for (const auto& [name, b] : {std::pair<const char*, const NoiseBudget*>{"filtered", &filtered},
                                      {"conventional", &conventional}}) {
            for (std::size_t i = 0; i < b->size(); ++i) {
                std::ostringstream line;
                line << io::format_number(v) << ',' << name;
                lcsv.row(line.str(), {b->omega[i] / kTwoPi, b->shot_asd[i], b->thermal_asd[i], b->total_asd[i]});
            }
        }
        const double mf = mizuno_integral(filtered);
        const double mc = mizuno_integral(conventional);
        conv_mizuno.push_back(mc);
        scsv.row({v, mf, mc});
        runs.push_back({{"value", v},
                        {"mizuno_filtered", mf},
                        {"mizuno_conventional", mc},
                        {"regime_ok", validate_regime(rates, c.grid.f_max).all_passed()}});
    }

    const auto [lo, hi] = std::minmax_element(conv_mizuno.begin(), conv_mizuno.end());
    r.report = json{{"param", key}, {"runs", runs}, {"mizuno_conventional_spread", *hi / *lo - 1.0}};
    if (ctx.format == OutputFormat::Csv) {
        emit(r, ctx.out_dir / "sweep.csv", long_csv.str());
        emit(r, ctx.out_dir / "sweep_summary.csv", summary_csv.str());
    } else {
        emit(r, ctx.out_dir / "sweep.json", dump(r.report));
    }
    return r;
}

}  // namespace omf
