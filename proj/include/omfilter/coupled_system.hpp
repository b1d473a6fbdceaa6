#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "omfilter/grid.hpp"
#include "omfilter/params.hpp"

namespace omf {

using cplx = std::complex<double>;

// Three-mode RWA model over the state (a, b^dagger, d): filter cavity, mechanical mode,
// interferometer differential mode.
//   da/dt      = -i omega_s d + i g b^dagger
//   db^dagger/dt = -gamma_m b^dagger - i g a + sqrt(2 gamma_m) b_th^dagger + u
//   dd/dt      = -gamma_SRM d - i omega_s a + sqrt(2 gamma_SRM) d_in + i G0 L_arm h
//   d_out      = d_in - sqrt(2 gamma_SRM) d
struct StateSpaceModel {
    Eigen::Matrix3cd a_matrix;
    Eigen::Vector3cd input_b;       // actuation u
    Eigen::RowVector3cd readout_d;  // measured coordinate
    Eigen::Vector3cd noise_din;     // d_in column
    Eigen::Vector3cd noise_bth;     // b_th^dagger column
    Eigen::Vector3cd signal_map;    // per unit strain h
    double gamma_srm = 0.0;
    double gamma_m = 0.0;
};

StateSpaceModel build_model(const DerivedRates& rates);

struct OpenLoopEigs {
    std::array<cplx, 3> values;
    int unstable_count = 0;
    bool unstable = false;
};

OpenLoopEigs open_loop_eigs(const StateSpaceModel& model);

struct TransferFunctions {
    std::vector<double> omega;
    std::vector<cplx> signal_tf;   // h -> d_out
    std::vector<cplx> shot_tf;     // d_in -> d_out
    std::vector<cplx> thermal_tf;  // b_th^dagger -> d_out
};

// Formal evaluation on the real-frequency axis (valid for the unstable open loop too).
// Throws SingularPointError if a grid point sits on an imaginary-axis eigenvalue.
TransferFunctions transfer_functions(const StateSpaceModel& model, const FrequencyGrid& grid);

// Strain-referred amplitude spectral densities (1/sqrt(Hz), single-sided, unit vacuum).
struct NoiseBudget {
    std::vector<double> omega;
    std::vector<cplx> signal_tf;
    std::vector<double> shot_asd;
    std::vector<double> thermal_asd;
    std::vector<double> radiation_pressure_asd;  // zero unless the test-mass dynamics are solved
    std::vector<double> total_asd;
    std::vector<bool> flagged;                   // zero signal transfer or singular point

    std::size_t size() const noexcept { return omega.size(); }
};

// Mean thermal weighting of a mechanical bath port: 2 k_B T / (hbar omega_m) + 1.
double thermal_occupancy_weight(double T_envir, double omega_m, const PhysicalConstants& consts = kConstants);

struct SensitivityOptions {
    // Amplitude fraction picked off for the heterodyne control readout. 0 leaves the
    // homodyne port untouched; otherwise the signal loses a factor sqrt(1 - eps^2) and
    // vacuum fills the picked-off fraction.
    double pickoff_epsilon = 0.0;
};

NoiseBudget sensitivity(const StateSpaceModel& model, const FrequencyGrid& grid, double T_envir, double omega_m,
                        const SensitivityOptions& options = {}, const PhysicalConstants& consts = kConstants);

// Single-mode detector without the filter, bandwidth gamma (rad/s).
NoiseBudget conventional_sensitivity(double gamma, double G0_Larm, const FrequencyGrid& grid);
NoiseBudget conventional_sensitivity(const IfoParams& ifo, const FrequencyGrid& grid,
                                     const PhysicalConstants& consts = kConstants);

// Perfect cancellation of the arm propagation phase: shot ASD frozen at the resonant value.
NoiseBudget ideal_compensation_sensitivity(double gamma, double G0_Larm, const FrequencyGrid& grid);

// Trapezoidal integral of 1 / shot_asd^2 over Omega.
double mizuno_integral(const NoiseBudget& budget);

}  // namespace omf
