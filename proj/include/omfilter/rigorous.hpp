#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "omfilter/coupled_system.hpp"
#include "omfilter/filter_model.hpp"
#include "omfilter/grid.hpp"
#include "omfilter/params.hpp"

namespace omf::rigorous {

using cplx = std::complex<double>;

// Unknowns of the per-frequency solve. Interferometer: d(Omega), d^dagger(Omega) and the
// differential test-mass displacement (in strain units, X / L_arm). Filter: four sidebands
// a(Omega), a^dagger(Omega), a(Omega + 2 omega_p), a^dagger(Omega - 2 omega_p) and the
// oscillator displacement components x(Omega -+ omega_p) / x_q.
enum Unknown : int {
    kD = 0,
    kDc,
    kA,
    kAc,
    kAUpper,
    kAcLower,
    kXMinus,
    kXPlus,
    kStrainX,
    kUnknownCount
};

// Input columns. "Creation-type" ports carry a dagger.
enum Port : int {
    kDinUpper = 0,   // d_in(Omega)
    kDinLower,       // d_in^dagger(Omega)
    kAuxUpper,       // a_in(Omega + 2 omega_p)
    kAuxLower,       // a_in^dagger(Omega - 2 omega_p)
    kFilterUpper,    // a_in(Omega), only when the filter stands alone
    kFilterLower,    // a_in^dagger(Omega), only when the filter stands alone
    kThermal,        // b_th(Omega)
    kThermalDagger,  // b_th^dagger(Omega)
    kStrain,         // h(Omega)
    kPortCount
};

bool is_creation_port(Port port);

enum class Layout {
    Coupled,         // filter exchanges photons with the interferometer at omega_s
    FilterStandalone // interferometer detached; filter ports at omega_0 +- Omega are open
};

struct Setup {
    DerivedRates rates;
    double test_mass = 40.0;  // kg; +inf freezes the test mass
    double L_arm = 4000.0;
    PumpTuning tuning = PumpTuning::Compensated;
    Layout layout = Layout::Coupled;
    bool filter_enabled = true;  // false sets omega_s = 0 (bare signal-recycled interferometer)
    PhysicalConstants consts = kConstants;
};

Setup make_setup(const FilterParams& filter, const IfoParams& ifo, const PhysicalConstants& consts = kConstants);

struct LinearSystem {
    double omega = 0.0;
    Eigen::Matrix<cplx, kUnknownCount, kUnknownCount> matrix;
    Eigen::Matrix<cplx, kUnknownCount, kPortCount> inputs;
};

LinearSystem assemble(const Setup& setup, double omega);

// Output coefficients of every port, per output channel.
struct PointSolution {
    double omega = 0.0;
    std::array<cplx, kPortCount> out_upper{};   // d_out(Omega)   (a_out(Omega) when standalone)
    std::array<cplx, kPortCount> out_lower{};   // d_out^dagger(Omega)
    std::array<cplx, kPortCount> quadrature{};  // (out_upper - out_lower) / (i sqrt 2)
};

// Throws SingularPointError when the system matrix is singular.
PointSolution solve(const Setup& setup, double omega);

// Bogoliubov normalization residuals of the two output channels:
// sum |annihilation coefficients|^2 - sum |creation coefficients|^2 - (+-1).
std::array<double, 2> bogoliubov_residuals(const PointSolution& point);

// Homodyne phase-quadrature noise budget. Thermal ports are weighted by 2 k_B T / (hbar omega_m) + 1.
// shot_asd collects the phase-quadrature vacuum plus the filter's auxiliary ports,
// radiation_pressure_asd the amplitude-quadrature vacuum. Singular points are flagged.
NoiseBudget total_noise(const Setup& setup, double T_envir, const FrequencyGrid& grid);

}  // namespace omf::rigorous
