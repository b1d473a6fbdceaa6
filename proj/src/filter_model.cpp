#include "omfilter/filter_model.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "omfilter/errors.hpp"

namespace omf {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx pole_factor(double omega, double gamma_m, double gamma_opt) {
    if (!(gamma_opt >= 0.0)) throw ParameterError("gamma_opt", "must be non-negative");
    if (!(gamma_m >= 0.0)) throw ParameterError("gamma_m", "must be non-negative");
    const cplx den{omega, gamma_m - gamma_opt};
    if (den == cplx{0.0, 0.0})
        throw ParameterError("gamma_m", "gamma_m == gamma_opt puts the filter pole at Omega = 0");
    return den;
}

}  // namespace

cplx rwa_transfer(double omega, double gamma_m, double gamma_opt) {
    const cplx den = pole_factor(omega, gamma_m, gamma_opt);
    return cplx{omega, gamma_m + gamma_opt} / den;
}

cplx thermal_transfer(double omega, double gamma_m, double gamma_opt) {
    const cplx den = pole_factor(omega, gamma_m, gamma_opt);
    return 2.0 * std::sqrt(gamma_m * gamma_opt) / den;
}

cplx negative_dispersion_approx(double omega, double gamma_opt) {
    if (!(gamma_opt > 0.0)) throw ParameterError("gamma_opt", "must be positive");
    return -std::exp(-2.0 * kI * omega / gamma_opt);
}

cplx mech_susceptibility(double omega, double gamma_m, double gamma_opt) {
    pole_factor(omega, gamma_m, gamma_opt);
    return -1.0 / (kI * omega + gamma_m - gamma_opt);
}

FilterTransfer rwa_filter_transfer(const FrequencyGrid& grid, double gamma_m, double gamma_opt) {
    FilterTransfer out;
    out.omega = grid.omega();
    out.t_signal.reserve(grid.size());
    out.n_thermal.reserve(grid.size());
    for (double w : grid.omega()) {
        out.t_signal.push_back(rwa_transfer(w, gamma_m, gamma_opt));
        out.n_thermal.push_back(thermal_transfer(w, gamma_m, gamma_opt));
    }
    return out;
}

double compensated_pump_offset(double omega_m, double g, double gamma_f) {
    double wp = omega_m;
    for (int iter = 0; iter < 200; ++iter) {
        const double shift = 2.0 * wp * g * g / (gamma_f * gamma_f + 4.0 * wp * wp);
        const double next = std::sqrt(omega_m * omega_m + 2.0 * omega_m * shift);
        if (std::abs(next - wp) <= 1e-15 * omega_m) return next;
        wp = next;
    }
    return wp;
}

double pump_offset(const DerivedRates& rates, PumpTuning tuning) {
    return tuning == PumpTuning::Bare ? rates.omega_m
                                      : compensated_pump_offset(rates.omega_m, rates.g, rates.gamma_f);
}

std::vector<double> unwrap_phase(const std::vector<double>& wrapped) {
    std::vector<double> out(wrapped.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < wrapped.size(); ++i) {
        if (i > 0) {
            double jump = wrapped[i] + offset - out[i - 1];
            while (jump > kPi) {
                offset -= kTwoPi;
                jump -= kTwoPi;
            }
            while (jump <= -kPi) {
                offset += kTwoPi;
                jump += kTwoPi;
            }
        }
        out[i] = wrapped[i] + offset;
    }
    return out;
}

ExactFilterResponse exact_response(const DerivedRates& rates, const FrequencyGrid& grid, PumpTuning tuning) {
    const double wm = rates.omega_m;
    const double wp = pump_offset(rates, tuning);
    const double gf = rates.gamma_f;
    const double gm = rates.gamma_m;
    const double g = rates.g;
    const double port = std::sqrt(2.0 * gf);

    ExactFilterResponse out;
    out.omega = grid.omega();
    std::vector<double> wrapped;
    wrapped.reserve(grid.size());

    for (double w : grid.omega()) {
        const double sigma = w - wp;
        Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
        // a(Omega)
        m(0, 0) = cplx{gf, -w};
        m(0, 2) = -kI * g;
        // a^dagger(Omega - 2 omega_p)
        m(1, 1) = cplx{gf, -(w - 2.0 * wp)};
        m(1, 2) = kI * g;
        // x(Omega - omega_p) / x_q, scaled by 1 / (2 m omega_m x_q)
        m(2, 2) = (cplx{wm * wm - sigma * sigma, 0.0} - 2.0 * kI * gm * sigma) / (2.0 * wm);
        m(2, 0) = -g;
        m(2, 1) = -g;

        Eigen::Matrix3cd inputs = Eigen::Matrix3cd::Zero();
        inputs(0, 0) = port;                        // a_in(Omega)
        inputs(1, 1) = port;                        // a_in^dagger(Omega - 2 omega_p)
        // Velocity damping needs an ohmic bath, weight |sigma| / omega_m, to keep the commutators exact.
        inputs(2, 2) = kI * std::sqrt(2.0 * gm * std::abs(sigma) / wm);    // b_th^dagger

        Eigen::PartialPivLU<Eigen::Matrix3cd> lu(m);
        if (!(lu.rcond() > 1e-14)) throw SingularPointError(w, "exact filter response is singular");
        const Eigen::Matrix3cd x = lu.solve(inputs);

        const cplx t_lower = -1.0 + port * x(0, 0);
        out.t_lower.push_back(t_lower);
        out.t_upper_conj.push_back(port * x(0, 1));
        out.n_thermal.push_back(port * x(0, 2));
        wrapped.push_back(std::arg(-t_lower));
    }

    const auto unwrapped = unwrap_phase(wrapped);
    out.phase_error.reserve(unwrapped.size());
    for (std::size_t i = 0; i < unwrapped.size(); ++i)
        out.phase_error.push_back(unwrapped[i] + 2.0 * std::atan(out.omega[i] / rates.gamma_opt));
    return out;
}

}  // namespace omf
