#include "omfilter/coupled_system.hpp"

#include <cmath>
#include <limits>

#include "omfilter/errors.hpp"

namespace omf {

namespace {

constexpr cplx kI{0.0, 1.0};

void finish_budget(NoiseBudget& b) {
    b.total_asd.resize(b.size());
    b.flagged.resize(b.size(), false);
    if (b.radiation_pressure_asd.empty()) b.radiation_pressure_asd.assign(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double s = b.shot_asd[i];
        const double t = b.thermal_asd[i];
        const double r = b.radiation_pressure_asd[i];
        b.total_asd[i] = std::sqrt(s * s + t * t + r * r);
        if (!std::isfinite(b.total_asd[i])) b.flagged[i] = true;
    }
}

}  // namespace

StateSpaceModel build_model(const DerivedRates& rates) {
    const double g = rates.g;
    const double ws = rates.omega_s;
    StateSpaceModel m;
    m.a_matrix << cplx{0.0, 0.0}, kI * g, -kI * ws,
                  -kI * g, cplx{-rates.gamma_m, 0.0}, cplx{0.0, 0.0},
                  -kI * ws, cplx{0.0, 0.0}, cplx{-rates.gamma_srm, 0.0};
    m.input_b << 0.0, 1.0, 0.0;
    m.readout_d << 0.0, 0.0, 1.0;
    m.noise_din << 0.0, 0.0, std::sqrt(2.0 * rates.gamma_srm);
    m.noise_bth << 0.0, std::sqrt(2.0 * rates.gamma_m), 0.0;
    m.signal_map << 0.0, 0.0, kI * rates.G0_Larm;
    m.gamma_srm = rates.gamma_srm;
    m.gamma_m = rates.gamma_m;
    return m;
}

OpenLoopEigs open_loop_eigs(const StateSpaceModel& model) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(model.a_matrix, false);
    OpenLoopEigs out;
    for (int i = 0; i < 3; ++i) {
        out.values[i] = solver.eigenvalues()(i);
        if (out.values[i].real() > 0.0) ++out.unstable_count;
    }
    out.unstable = out.unstable_count > 0;
    return out;
}

TransferFunctions transfer_functions(const StateSpaceModel& model, const FrequencyGrid& grid) {
    TransferFunctions tf;
    tf.omega = grid.omega();
    const double port = std::sqrt(2.0 * model.gamma_srm);
    Eigen::Matrix<cplx, 3, 3> inputs;
    inputs.col(0) = model.signal_map;
    inputs.col(1) = model.noise_din;
    inputs.col(2) = model.noise_bth;

    for (double w : grid.omega()) {
        const Eigen::Matrix3cd resolvent = -kI * w * Eigen::Matrix3cd::Identity() - model.a_matrix;
        Eigen::PartialPivLU<Eigen::Matrix3cd> lu(resolvent);
        if (!(lu.rcond() > 1e-14)) throw SingularPointError(w, "coupled-system resolvent is singular");
        const Eigen::Matrix3cd x = lu.solve(inputs);
        tf.signal_tf.push_back(-port * x(2, 0));
        tf.shot_tf.push_back(1.0 - port * x(2, 1));
        tf.thermal_tf.push_back(-port * x(2, 2));
    }
    return tf;
}

double thermal_occupancy_weight(double T_envir, double omega_m, const PhysicalConstants& consts) {
    return 2.0 * consts.k_B * T_envir / (consts.hbar * omega_m) + 1.0;
}

NoiseBudget sensitivity(const StateSpaceModel& model, const FrequencyGrid& grid, double T_envir, double omega_m,
                        const SensitivityOptions& options, const PhysicalConstants& consts) {
    if (!(T_envir >= 0.0)) throw ParameterError("T_envir", "must be non-negative");
    const double eps = options.pickoff_epsilon;
    if (!(eps >= 0.0 && eps < 1.0)) throw ParameterError("pickoff_epsilon", "must lie in [0, 1)");
    const double keep = std::sqrt(1.0 - eps * eps);
    const double occupancy = std::sqrt(thermal_occupancy_weight(T_envir, omega_m, consts));

    const auto tf = transfer_functions(model, grid);
    NoiseBudget b;
    b.omega = tf.omega;
    b.signal_tf.reserve(b.omega.size());
    for (std::size_t i = 0; i < tf.omega.size(); ++i) {
        const cplx signal = keep * tf.signal_tf[i];
        const double sig = std::abs(signal);
        const double shot_power = keep * keep * std::norm(tf.shot_tf[i]) + eps * eps;
        b.signal_tf.push_back(signal);
        if (sig == 0.0) {
            b.shot_asd.push_back(std::numeric_limits<double>::infinity());
            b.thermal_asd.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        b.shot_asd.push_back(std::sqrt(shot_power) / sig);
        b.thermal_asd.push_back(keep * std::abs(tf.thermal_tf[i]) * occupancy / sig);
    }
    finish_budget(b);
    return b;
}

NoiseBudget conventional_sensitivity(double gamma, double G0_Larm, const FrequencyGrid& grid) {
    if (!(gamma > 0.0)) throw ParameterError("gamma_srm", "must be positive");
    NoiseBudget b;
    b.omega = grid.omega();
    const double port = std::sqrt(2.0 * gamma);
    for (double w : grid.omega()) {
        const cplx pole{gamma, -w};
        const cplx signal = -port * kI * G0_Larm / pole;
        const cplx shot = 1.0 - 2.0 * gamma / pole;
        b.signal_tf.push_back(signal);
        b.shot_asd.push_back(std::abs(shot) / std::abs(signal));
        b.thermal_asd.push_back(0.0);
    }
    finish_budget(b);
    return b;
}

NoiseBudget conventional_sensitivity(const IfoParams& ifo, const FrequencyGrid& grid,
                                     const PhysicalConstants& consts) {
    validate(ifo);
    const double gamma = gamma_srm_from_transmissivity(ifo.T_SRM, ifo.L_arm, consts);
    const double omega_0 = kTwoPi * consts.c / ifo.lambda_0;
    const double G0_Larm = omega_0 * std::sqrt(2.0 * ifo.P_arm * ifo.L_arm / (consts.hbar * omega_0 * consts.c));
    return conventional_sensitivity(gamma, G0_Larm, grid);
}

NoiseBudget ideal_compensation_sensitivity(double gamma, double G0_Larm, const FrequencyGrid& grid) {
    if (!(gamma > 0.0)) throw ParameterError("gamma_srm", "must be positive");
    NoiseBudget b;
    b.omega = grid.omega();
    const cplx signal = -std::sqrt(2.0 * gamma) * kI * G0_Larm / gamma;
    for (std::size_t i = 0; i < b.omega.size(); ++i) {
        b.signal_tf.push_back(signal);
        b.shot_asd.push_back(1.0 / std::abs(signal));
        b.thermal_asd.push_back(0.0);
    }
    finish_budget(b);
    return b;
}

double mizuno_integral(const NoiseBudget& budget) {
    double sum = 0.0;
    for (std::size_t i = 1; i < budget.size(); ++i) {
        const double f0 = 1.0 / (budget.shot_asd[i - 1] * budget.shot_asd[i - 1]);
        const double f1 = 1.0 / (budget.shot_asd[i] * budget.shot_asd[i]);
        sum += 0.5 * (f0 + f1) * (budget.omega[i] - budget.omega[i - 1]);
    }
    return sum;
}

}  // namespace omf
