#include "omfilter/params.hpp"

#include <cmath>

#include "omfilter/errors.hpp"

namespace omf {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || std::isnan(value))
        throw ParameterError(name, "must be strictly positive, got " + std::to_string(value));
}

void require_finite_positive(double value, const char* name) {
    require_positive(value, name);
    if (!std::isfinite(value)) throw ParameterError(name, "must be finite");
}

}  // namespace

bool RegimeReport::all_passed() const {
    for (const auto& check : checks)
        if (!check.passed) return false;
    return true;
}

void validate(const FilterParams& filter) {
    require_finite_positive(filter.L_f, "filter.L_f");
    require_finite_positive(filter.finesse, "filter.finesse");
    require_finite_positive(filter.omega_m, "filter.omega_m");
    require_finite_positive(filter.mass_m, "filter.mass_m");
    require_finite_positive(filter.lambda_0, "filter.lambda_0");
    if (!(filter.Q_m >= 1.0)) throw ParameterError("filter.Q_m", "must be >= 1");
    if (!(filter.T_envir >= 0.0) || !std::isfinite(filter.T_envir))
        throw ParameterError("filter.T_envir", "must be finite and non-negative");
    if (!(filter.P_c >= 0.0) || !std::isfinite(filter.P_c))
        throw ParameterError("filter.P_c", "must be finite and non-negative");
}

void validate(const IfoParams& ifo) {
    require_finite_positive(ifo.L_arm, "ifo.L_arm");
    require_finite_positive(ifo.P_arm, "ifo.P_arm");
    require_positive(ifo.M, "ifo.M");  // +inf allowed: fixed test masses
    require_finite_positive(ifo.lambda_0, "ifo.lambda_0");
    if (!(ifo.T_SRM > 0.0 && ifo.T_SRM < 1.0))
        throw ParameterError("ifo.T_SRM", "must lie in (0, 1), got " + std::to_string(ifo.T_SRM));
}

DerivedRates derive_rates(const FilterParams& filter, const IfoParams& ifo, const PhysicalConstants& consts) {
    validate(filter);
    validate(ifo);

    DerivedRates r;
    r.omega_m = filter.omega_m;
    r.omega_0 = kTwoPi * consts.c / filter.lambda_0;
    r.gamma_f = kPi * consts.c / (2.0 * filter.finesse * filter.L_f);
    r.gamma_m = std::isinf(filter.Q_m) ? 0.0 : filter.omega_m / filter.Q_m;
    r.x_q = std::sqrt(consts.hbar / (2.0 * filter.mass_m * filter.omega_m));

    const double a_bar = std::sqrt(2.0 * filter.P_c * filter.L_f / (consts.hbar * r.omega_0 * consts.c));
    const double g0 = r.omega_0 * a_bar / filter.L_f;
    r.g = g0 * r.x_q;
    r.gamma_opt = r.g * r.g / r.gamma_f;

    r.gamma_srm = gamma_srm_from_transmissivity(ifo.T_SRM, ifo.L_arm, consts);
    r.omega_s = std::sqrt(consts.c * r.gamma_f / ifo.L_arm);

    const double omega_0_ifo = kTwoPi * consts.c / ifo.lambda_0;
    const double d_bar = std::sqrt(2.0 * ifo.P_arm * ifo.L_arm / (consts.hbar * omega_0_ifo * consts.c));
    r.G0_Larm = omega_0_ifo * d_bar;
    return r;
}

double required_power(double target_gamma_opt, const FilterParams& filter, const PhysicalConstants& consts) {
    require_finite_positive(target_gamma_opt, "target_gamma_opt");
    FilterParams probe = filter;
    probe.P_c = 0.0;
    validate(probe);
    // gamma_opt = 2 P_c finesse omega_0 / (pi m omega_m c^2)
    const double omega_0 = kTwoPi * consts.c / filter.lambda_0;
    return target_gamma_opt * kPi * filter.mass_m * filter.omega_m * consts.c * consts.c /
           (2.0 * filter.finesse * omega_0);
}

double power_scaling_estimate(const FilterParams& filter, double L_arm) {
    return 100.0 * (4000.0 / L_arm) * (filter.omega_m / (kTwoPi * 1e7)) * (filter.mass_m / 1e-7) *
           (1e5 / filter.finesse);
}

RegimeReport validate_regime(const DerivedRates& rates, double f_max) {
    require_finite_positive(f_max, "f_max");
    RegimeReport report;
    auto add = [&](const char* name, double ratio, double threshold) {
        report.checks.push_back({name, ratio, threshold, ratio >= threshold});
    };
    add("resolved_sideband", rates.omega_m / rates.gamma_f, 20.0);
    add("cavity_vs_band", rates.gamma_f / (kTwoPi * f_max), 20.0);
    add("antidamping", rates.gamma_m > 0.0 ? rates.gamma_opt / rates.gamma_m
                                           : std::numeric_limits<double>::infinity(),
        100.0);
    return report;
}

double thermal_bound(double gamma_srm, const PhysicalConstants& consts) {
    if (!(gamma_srm >= 0.0)) throw ParameterError("gamma_srm", "must be non-negative");
    return consts.hbar * gamma_srm / (8.0 * consts.k_B);
}

double gamma_srm_from_transmissivity(double T_SRM, double L_arm, const PhysicalConstants& consts) {
    return consts.c * T_SRM / (4.0 * L_arm);
}

double transmissivity_from_gamma_srm(double gamma_srm, double L_arm, const PhysicalConstants& consts) {
    return 4.0 * L_arm * gamma_srm / consts.c;
}

FilterParams nominal_filter() {
    FilterParams f;
    f.P_c = required_power(kConstants.c / nominal_ifo().L_arm, f);
    return f;
}

IfoParams nominal_ifo() {
    IfoParams ifo;
    ifo.T_SRM = transmissivity_from_gamma_srm(kTwoPi * 100.0, ifo.L_arm);
    return ifo;
}

}  // namespace omf
