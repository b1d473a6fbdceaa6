#include "omfilter/rigorous.hpp"

#include <cmath>
#include <limits>

#include "omfilter/errors.hpp"

namespace omf::rigorous {

namespace {

constexpr cplx kI{0.0, 1.0};
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

bool is_creation_port(Port port) {
    return port == kDinLower || port == kAuxLower || port == kFilterLower || port == kThermalDagger;
}

Setup make_setup(const FilterParams& filter, const IfoParams& ifo, const PhysicalConstants& consts) {
    Setup s;
    s.rates = derive_rates(filter, ifo, consts);
    s.test_mass = ifo.M;
    s.L_arm = ifo.L_arm;
    s.consts = consts;
    return s;
}

LinearSystem assemble(const Setup& setup, double omega) {
    const auto& r = setup.rates;
    const bool standalone = setup.layout == Layout::FilterStandalone;
    const double ws = (setup.filter_enabled && !standalone) ? r.omega_s : 0.0;
    const double gs = r.gamma_srm;
    const double gf = r.gamma_f;
    const double gm = r.gamma_m;
    const double g = r.g;
    const double wm = r.omega_m;
    const double wp = pump_offset(r, setup.tuning);
    // Each sideband of the differential mode couples at G0 / sqrt(2); detecting the phase
    // quadrature recombines both, so the strain response matches the single-sideband picture.
    const double coupling = r.G0_Larm / kSqrt2;
    const double kappa = std::isinf(setup.test_mass)
                             ? 0.0
                             : setup.consts.hbar * coupling /
                                   (setup.test_mass * omega * omega * setup.L_arm * setup.L_arm);
    const cplx s = -kI * omega;

    LinearSystem sys;
    sys.omega = omega;
    auto& m = sys.matrix;
    auto& in = sys.inputs;
    m.setZero();
    in.setZero();

    // Interferometer differential mode, both sidebands.
    m(kD, kD) = s + gs;
    m(kD, kA) = kI * ws;
    m(kD, kStrainX) = -kI * coupling;
    in(kD, kDinUpper) = std::sqrt(2.0 * gs);

    m(kDc, kDc) = s + gs;
    m(kDc, kAc) = -kI * ws;
    m(kDc, kStrainX) = kI * coupling;
    in(kDc, kDinLower) = std::sqrt(2.0 * gs);

    // Filter sidebands at omega_0 +- Omega.
    m(kA, kA) = s;
    m(kA, kD) = kI * ws;
    m(kA, kXMinus) = -kI * g;
    m(kAc, kAc) = s;
    m(kAc, kDc) = -kI * ws;
    m(kAc, kXPlus) = kI * g;
    if (standalone) {
        m(kA, kA) += gf;
        m(kAc, kAc) += gf;
        in(kA, kFilterUpper) = std::sqrt(2.0 * gf);
        in(kAc, kFilterLower) = std::sqrt(2.0 * gf);
    }

    // Counter-rotating sidebands at omega_0 + 2 omega_p +- Omega, open to their own vacuum.
    m(kAUpper, kAUpper) = cplx{gf, -(omega + 2.0 * wp)};
    m(kAUpper, kXPlus) = -kI * g;
    in(kAUpper, kAuxUpper) = std::sqrt(2.0 * gf);
    m(kAcLower, kAcLower) = cplx{gf, -(omega - 2.0 * wp)};
    m(kAcLower, kXMinus) = kI * g;
    in(kAcLower, kAuxLower) = std::sqrt(2.0 * gf);

    // Oscillator, full second-order response, scaled by 1 / (2 m omega_m x_q).
    const double sm = omega - wp;
    const double sp = omega + wp;
    m(kXMinus, kXMinus) = (cplx{wm * wm - sm * sm, 0.0} - 2.0 * kI * gm * sm) / (2.0 * wm);
    m(kXMinus, kA) = -g;
    m(kXMinus, kAcLower) = -g;
    in(kXMinus, kThermalDagger) = kI * std::sqrt(2.0 * gm * std::abs(sm) / wm);
    m(kXPlus, kXPlus) = (cplx{wm * wm - sp * sp, 0.0} - 2.0 * kI * gm * sp) / (2.0 * wm);
    m(kXPlus, kAUpper) = -g;
    m(kXPlus, kAc) = -g;
    in(kXPlus, kThermal) = -kI * std::sqrt(2.0 * gm * std::abs(sp) / wm);

    // Free test mass: X / L_arm = h - hbar G0' (d + d^dagger) / (M Omega^2 L_arm^2).
    m(kStrainX, kStrainX) = 1.0;
    m(kStrainX, kD) = kappa;
    m(kStrainX, kDc) = kappa;
    in(kStrainX, kStrain) = 1.0;
    return sys;
}

PointSolution solve(const Setup& setup, double omega) {
    const auto sys = assemble(setup, omega);
    // Column then row equilibration. The strain column carries G0 L_arm ~ 1e25 while the test-mass
    // back-action row is ~1e-24; their product is O(1), but the raw matrix is hopeless for LU.
    Eigen::Matrix<cplx, kUnknownCount, kUnknownCount> m = sys.matrix;
    Eigen::Matrix<cplx, kUnknownCount, kPortCount> in = sys.inputs;
    std::array<double, kUnknownCount> col_scale{};
    for (int j = 0; j < kUnknownCount; ++j) {
        col_scale[j] = m.col(j).cwiseAbs().maxCoeff();
        if (col_scale[j] > 0.0) m.col(j) /= col_scale[j];
    }
    for (int i = 0; i < kUnknownCount; ++i) {
        const double scale = m.row(i).cwiseAbs().maxCoeff();
        if (scale > 0.0) {
            m.row(i) /= scale;
            in.row(i) /= scale;
        }
    }
    Eigen::PartialPivLU<decltype(m)> lu(m);
    if (!(lu.rcond() > 1e-14)) throw SingularPointError(omega, "rigorous system matrix is singular");
    auto x = lu.solve(in).eval();
    for (int j = 0; j < kUnknownCount; ++j)
        if (col_scale[j] > 0.0) x.row(j) /= col_scale[j];

    const bool standalone = setup.layout == Layout::FilterStandalone;
    PointSolution p;
    p.omega = omega;
    if (standalone) {
        const double port = std::sqrt(2.0 * setup.rates.gamma_f);
        for (int k = 0; k < kPortCount; ++k) {
            p.out_upper[k] = port * x(kA, k);
            p.out_lower[k] = port * x(kAc, k);
        }
        p.out_upper[kFilterUpper] -= 1.0;
        p.out_lower[kFilterLower] -= 1.0;
    } else {
        const double port = std::sqrt(2.0 * setup.rates.gamma_srm);
        for (int k = 0; k < kPortCount; ++k) {
            p.out_upper[k] = -port * x(kD, k);
            p.out_lower[k] = -port * x(kDc, k);
        }
        p.out_upper[kDinUpper] += 1.0;
        p.out_lower[kDinLower] += 1.0;
    }
    for (int k = 0; k < kPortCount; ++k) p.quadrature[k] = (p.out_upper[k] - p.out_lower[k]) / (kI * kSqrt2);
    return p;
}

std::array<double, 2> bogoliubov_residuals(const PointSolution& point) {
    double upper = 0.0;
    double lower = 0.0;
    for (int k = 0; k < kPortCount; ++k) {
        if (k == kStrain) continue;
        const double sign = is_creation_port(static_cast<Port>(k)) ? -1.0 : 1.0;
        upper += sign * std::norm(point.out_upper[k]);
        lower += sign * std::norm(point.out_lower[k]);
    }
    return {upper - 1.0, lower + 1.0};
}

NoiseBudget total_noise(const Setup& setup, double T_envir, const FrequencyGrid& grid) {
    if (!(T_envir >= 0.0)) throw ParameterError("T_envir", "must be non-negative");
    const double thermal_weight = thermal_occupancy_weight(T_envir, setup.rates.omega_m, setup.consts);
    const double inf = std::numeric_limits<double>::infinity();

    NoiseBudget b;
    b.omega = grid.omega();
    for (double w : grid.omega()) {
        PointSolution p;
        try {
            p = solve(setup, w);
        } catch (const SingularPointError&) {
            b.signal_tf.push_back(cplx{0.0, 0.0});
            b.shot_asd.push_back(inf);
            b.thermal_asd.push_back(inf);
            b.radiation_pressure_asd.push_back(inf);
            b.flagged.push_back(true);
            continue;
        }
        const auto& q = p.quadrature;
        const cplx amplitude_quad = (q[kDinUpper] + q[kDinLower]) / kSqrt2;
        const cplx phase_quad = kI * (q[kDinUpper] - q[kDinLower]) / kSqrt2;
        const double shot_power = std::norm(phase_quad) + std::norm(q[kAuxUpper]) + std::norm(q[kAuxLower]) +
                                  std::norm(q[kFilterUpper]) + std::norm(q[kFilterLower]);
        const double rp_power = std::norm(amplitude_quad);
        const double thermal_power = thermal_weight * (std::norm(q[kThermal]) + std::norm(q[kThermalDagger]));
        const double sig = std::abs(q[kStrain]);

        b.signal_tf.push_back(q[kStrain]);
        b.flagged.push_back(sig == 0.0);
        b.shot_asd.push_back(sig == 0.0 ? inf : std::sqrt(shot_power) / sig);
        b.radiation_pressure_asd.push_back(sig == 0.0 ? inf : std::sqrt(rp_power) / sig);
        b.thermal_asd.push_back(sig == 0.0 ? inf : std::sqrt(thermal_power) / sig);
    }
    b.total_asd.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double s = b.shot_asd[i], t = b.thermal_asd[i], r = b.radiation_pressure_asd[i];
        b.total_asd[i] = std::sqrt(s * s + t * t + r * r);
    }
    return b;
}

}  // namespace omf::rigorous
