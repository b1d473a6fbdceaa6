// omfilter: command-line front end.
//
// Exit codes: 0 success, 1 a hard invariant failed (JSON failure list on stderr),
// 2 configuration or usage error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "omfilter/commands.hpp"
#include "omfilter/errors.hpp"

namespace {

int report_failures(const omf::CommandResult& r) {
    if (r.ok()) return 0;
    std::cerr << omf::failures_json(r.failures).dump(2) << '\n';
    return 1;
}

void print_files(const omf::CommandResult& r) {
    for (const auto& f : r.files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optomechanical filter for broadband GW detection: sensitivity, stability and control"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    app.add_option("--config", config_path, "INI config file (SI units); defaults to the nominal set")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
    app.add_option("--format", format, "curve format")->check(CLI::IsMember({"csv", "json"}));
    app.footer("Any config key can be overridden by OMFILTER_<SECTION>_<KEY>, e.g. OMFILTER_IFO_T_SRM=0.01.");

    auto* validate = app.add_subcommand("validate", "print parameters, derived rates and regime checks as JSON");
    auto* sens = app.add_subcommand("sensitivity", "filtered and reference strain sensitivity curves");
    auto* stab = app.add_subcommand("stability", "open-loop eigenvalues and rank report");
    auto* ctrl = app.add_subcommand("controller", "stabilizing controller, closed-loop report, controller response");
    auto* phase = app.add_subcommand("phase", "phase residual of the filter against the arm delay");
    auto* thermal = app.add_subcommand("thermal", "total noise for each configured bath temperature");
    std::string thermal_model = "rwa";
    thermal->add_option("--model", thermal_model, "rwa or rigorous")->check(CLI::IsMember({"rwa", "rigorous"}));
    auto* sweep = app.add_subcommand("sweep", "sweep one numeric config key");
    std::string sweep_param;
    std::string sweep_values;
    sweep->add_option("--param", sweep_param, "config key, e.g. ifo.T_SRM")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        omf::CommandContext ctx;
        std::optional<std::filesystem::path> path;
        if (!config_path.empty()) path = config_path;
        ctx.config = omf::load_config(path, &ctx.resolved);
        ctx.out_dir = out_dir.empty() ? std::filesystem::path(ctx.config.output_dir) : std::filesystem::path(out_dir);
        ctx.format = omf::parse_format(format);

        omf::CommandResult result;
        if (validate->parsed()) {
            result = omf::cmd_validate(ctx);
            std::cout << result.report.dump(2) << '\n';
            return report_failures(result);
        }
        if (sens->parsed()) result = omf::cmd_sensitivity(ctx);
        if (stab->parsed()) result = omf::cmd_stability(ctx);
        if (ctrl->parsed()) result = omf::cmd_controller(ctx);
        if (phase->parsed()) result = omf::cmd_phase(ctx);
        if (thermal->parsed())
            result = omf::cmd_thermal(ctx, thermal_model == "rigorous" ? omf::ThermalModel::Rigorous
                                                                      : omf::ThermalModel::Rwa);
        if (sweep->parsed()) result = omf::cmd_sweep(ctx, sweep_param, omf::parse_value_list(sweep_values));
        print_files(result);
        return report_failures(result);
    } catch (const omf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const omf::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const omf::DesignError& e) {
        std::cerr << omf::failures_json({{"controller_design", e.what()}}).dump(2) << '\n';
        return 1;
    } catch (const omf::SingularPointError& e) {
        std::cerr << omf::failures_json({{"singular_point", e.what()}}).dump(2) << '\n';
        return 1;
    }
}
