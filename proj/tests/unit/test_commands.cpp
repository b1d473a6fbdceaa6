#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "omfilter/commands.hpp"
#include "omfilter/errors.hpp"

using namespace omf;
namespace fs = std::filesystem;

namespace {

CommandContext context(const std::string& name, ConfigMap map = default_config_map()) {
    CommandContext ctx;
    ctx.resolved = map;
    ctx.config = build_config(map);
    ctx.out_dir = fs::temp_directory_path() / ("omf_cmd_" + name);
    fs::remove_all(ctx.out_dir);
    return ctx;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("validate reports rates and regime") {
    const auto r = cmd_validate(context("validate"));
    CHECK(r.ok());
    CHECK(r.report["derived_rates"]["gamma_opt"].get<double>() == doctest::Approx(74948.1145).epsilon(1e-9));
    CHECK(r.report["pump_power_W"].get<double>() == doctest::Approx(375.528515).epsilon(1e-8));
    CHECK(r.report["regime"]["checks"].size() == 3);
    CHECK(r.files.empty());
}

TEST_CASE("sensitivity writes four curves and a manifest") {
    const auto ctx = context("sens");
    const auto r = cmd_sensitivity(ctx);
    CHECK(r.ok());
    REQUIRE(r.files.size() == 5);
    for (const char* name : {"filtered", "conventional_broadband", "conventional_narrowband", "ideal_compensation"}) {
        const auto rows = read_csv(ctx.out_dir / (std::string(name) + ".csv"));
        CHECK(rows.size() >= 300);
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][0] > rows[i - 1][0]);
    }
    const auto filtered = read_csv(ctx.out_dir / "filtered.csv");
    const auto narrow = read_csv(ctx.out_dir / "conventional_narrowband.csv");
    CHECK(filtered[0][1] / narrow[0][1] == doctest::Approx(1.0).epsilon(0.01));
    // narrowband -3 dB point near gamma_SRM / 2 pi = 100 Hz
    double edge = 0.0;
    for (const auto& row : narrow)
        if (row[1] <= std::sqrt(2.0) * narrow[0][1] * std::sqrt(1.0 + 0.01)) edge = row[0];
    CHECK(edge == doctest::Approx(100.0).epsilon(0.03));
    const auto manifest = nlohmann::json::parse(slurp(ctx.out_dir / "manifest.json"));
    CHECK(manifest["derived_rates"]["gamma_srm"].get<double>() == doctest::Approx(2.0 * kPi * 100.0));
    CHECK(manifest["mizuno_integral"].contains("filtered"));
}

TEST_CASE("sensitivity output is byte-identical across runs") {
    auto a = context("det_a");
    auto b = context("det_b");
    cmd_sensitivity(a);
    cmd_sensitivity(b);
    for (const char* name : {"filtered.csv", "conventional_broadband.csv", "conventional_narrowband.csv",
                             "ideal_compensation.csv", "manifest.json"})
        CHECK(slurp(a.out_dir / name) == slurp(b.out_dir / name));
}

TEST_CASE("json format") {
    auto ctx = context("sens_json");
    ctx.format = OutputFormat::Json;
    const auto r = cmd_sensitivity(ctx);
    const auto j = nlohmann::json::parse(slurp(ctx.out_dir / "filtered.json"));
    CHECK(j["frequency_Hz"].size() == 301);
    CHECK(j["shot_asd"].size() == 301);
}

TEST_CASE("stability report") {
    const auto ctx = context("stab");
    const auto r = cmd_stability(ctx);
    CHECK(r.ok());
    const auto j = nlohmann::json::parse(slurp(ctx.out_dir / "stability.json"));
    const auto s = stability_from_json(j);
    CHECK(s.unstable);
    CHECK(s.unstable_count == 1);
    CHECK(s.observability_rank == 3);
    CHECK(s.controllability_rank == 3);
    CHECK(s.trace_error < 1e-10);
    // round trip through the report schema
    CHECK(to_json(s) == j);
}

TEST_CASE("stability of an unpumped filter") {
    ConfigMap m = default_config_map();
    m["filter.P_c"] = "0";
    const auto s = stability_report(build_config(m));
    CHECK_FALSE(s.unstable);
    CHECK(s.controllability_rank < 3);
}

TEST_CASE("controller report") {
    const auto ctx = context("ctrl");
    const auto r = cmd_controller(ctx);
    CHECK(r.ok());
    const auto& j = r.report;
    CHECK(j["closed_loop_eigenvalues"].size() == 6);
    CHECK(j["separation_mismatch"].get<double>() < 1e-9);
    CHECK(j["snr_invariance_deviation"].get<double>() < 1e-6);
    CHECK(j["paper_gains"]["stabilizing"].get<bool>());
    CHECK(j["ranks"]["observability"].get<int>() == 3);
    CHECK(fs::exists(ctx.out_dir / "controller_tf.csv"));
}

TEST_CASE("controller with the paper gains and with explicit targets") {
    ConfigMap m = default_config_map();
    m["control.design"] = "paper-gains";
    CHECK(cmd_controller(context("ctrl_paper", m)).ok());
    m["control.design"] = "targets";
    m["control.k_poles"] = "-1e5,0; -1e5,1e5; -1e5,-1e5";
    m["control.l_poles"] = "-2e5,0; -2e5,1e5; -2e5,-1e5";
    const auto r = cmd_controller(context("ctrl_targets", m));
    CHECK(r.ok());
    CHECK(r.report["design"] == "targets");
}

TEST_CASE("phase residual grows with frequency") {
    const auto ctx = context("phase");
    const auto r = cmd_phase(ctx);
    CHECK(r.ok());
    const auto rows = read_csv(ctx.out_dir / "phase.csv");
    REQUIRE(rows.size() == 301);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1][0] >= 100.0) CHECK(std::abs(rows[i][1]) > std::abs(rows[i - 1][1]));
        // residual against the arm delay is the cubic term
        CHECK(std::abs(rows[i][3]) > std::abs(rows[i - 1][3]));
        CHECK(rows[i][3] <= rows[i][4] + 1e-12);
    }
}

TEST_CASE("thermal curves are ordered in temperature") {
    for (auto model : {ThermalModel::Rwa, ThermalModel::Rigorous}) {
        const auto ctx = context(model == ThermalModel::Rwa ? "th_rwa" : "th_rig");
        const auto r = cmd_thermal(ctx, model);
        CHECK(r.ok());
        const auto t0 = read_csv(ctx.out_dir / "thermal_0.csv");
        const auto t1 = read_csv(ctx.out_dir / "thermal_bound.csv");
        const auto t2 = read_csv(ctx.out_dir / "thermal_10xbound.csv");
        for (std::size_t i = 0; i < t0.size(); ++i) {
            CHECK(t1[i][3] >= t0[i][3]);
            CHECK(t2[i][3] >= t1[i][3]);
        }
        CHECK(t0[0].size() == (model == ThermalModel::Rigorous ? 7u : 6u));
    }
}

TEST_CASE("sweep") {
    const auto ctx = context("sweep");
    const auto r = cmd_sweep(ctx, "T_SRM", {1e-3, 1e-2, 1e-1});
    CHECK(r.ok());
    CHECK(r.report["param"] == "ifo.T_SRM");
    const auto summary = read_csv(ctx.out_dir / "sweep_summary.csv");
    REQUIRE(summary.size() == 3);
    CHECK(summary[1][0] == 1e-2);
    std::ifstream in(ctx.out_dir / "sweep.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "value,curve,frequency_Hz,shot_asd,thermal_asd,total_asd");

    try {
        cmd_sweep(ctx, "filter.nope", {1.0});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "filter.nope");
    }
    CHECK_THROWS_AS(resolve_sweep_key("lambda_0"), ConfigError);  // ambiguous
    CHECK_THROWS_AS(resolve_sweep_key("control.design"), ConfigError);
    CHECK(resolve_sweep_key("M") == "ifo.M");
    CHECK(parse_value_list("1, 2.5,3e-3") == std::vector<double>{1.0, 2.5, 3e-3});
    CHECK_THROWS_AS(parse_value_list("1,x"), ConfigError);
}

}
