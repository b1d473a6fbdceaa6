#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "omfilter/coupled_system.hpp"
#include "omfilter/grid.hpp"

namespace omf {

using cplx = std::complex<double>;
using PoleSet = std::array<cplx, 3>;

struct FrequencyResponse {
    std::vector<double> omega;
    std::vector<cplx> values;
};

// Observer-based state-feedback controller: u = -K xhat, xhat' = A xhat + B u + L (y - D xhat).
struct ControllerDesign {
    Eigen::RowVector3cd K = Eigen::RowVector3cd::Zero();
    Eigen::Vector3cd L = Eigen::Vector3cd::Zero();
    double epsilon = 0.1;  // amplitude fraction routed to the heterodyne control readout
    PoleSet placed_poles_K{};
    PoleSet placed_poles_L{};
};

// Numerical ranks of [D; DA; DA^2] and [B, AB, A^2B]. Singular values below 1e-9 of the
// largest count as zero. A is normalized by its spectral norm first (the rank is unchanged,
// but the powers of A would otherwise span ~20 orders of magnitude).
int observability_rank(const Eigen::Matrix3cd& A, const Eigen::RowVector3cd& D);
int controllability_rank(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B);

// Single-input pole placement over the complex field (Ackermann). Throws DesignError when
// (A, B) is not controllable or the placed spectrum misses the targets by more than 1e-6 relative.
Eigen::RowVector3cd place_poles(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B, const PoleSet& targets);

// Observer gain by duality: place_poles(A^H, D^H, conj(targets))^H.
Eigen::Vector3cd observer_gains(const Eigen::Matrix3cd& A, const Eigen::RowVector3cd& D, const PoleSet& targets);

PoleSet eigenvalues3(const Eigen::Matrix3cd& m);
double max_real_part(const PoleSet& poles);

// -2 |most unstable real part| with a +-equal imaginary spread, scaled by `speed`.
PoleSet default_pole_targets(const StateSpaceModel& model, double speed = 1.0);

// Both targets placed; rejects (DesignError) designs whose A-BK or A-LD is not Hurwitz.
ControllerDesign design_controller(const StateSpaceModel& model, const PoleSet& k_targets, const PoleSet& l_targets,
                                   double epsilon = 0.1);

// Observer poles are placed 1.5x faster than the state-feedback poles.
ControllerDesign auto_design(const StateSpaceModel& model, double epsilon = 0.1);

// K = 3e5 / eps (-i, 1, -1), L = 5e5 / eps (i, 1.2, 1). Not checked for stability.
ControllerDesign paper_gains(const StateSpaceModel& model, double epsilon = 0.1);

bool is_stabilizing(const StateSpaceModel& model, const ControllerDesign& design);

// C(Omega) = -K (-i Omega I - A + B K + L D)^-1 L
FrequencyResponse controller_tf(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B, const Eigen::RowVector3cd& D,
                                const Eigen::RowVector3cd& K, const Eigen::Vector3cd& L, const FrequencyGrid& grid);

// Spectrum of [[A, -BK], [LD, A - BK - LD]].
std::array<cplx, 6> closed_loop_eigs(const Eigen::Matrix3cd& A, const Eigen::Vector3cd& B,
                                     const Eigen::RowVector3cd& D, const Eigen::RowVector3cd& K,
                                     const Eigen::Vector3cd& L);

// Largest |lambda_i - mu_pi(i)| / max|lambda| over the best matching permutation pi.
double spectrum_mismatch(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Stable, proper Youla parameter in state-space form (for stability verification).
struct StableParameter {
    Eigen::MatrixXcd a;  // n x n, Hurwitz
    Eigen::VectorXcd b;  // n
    Eigen::RowVectorXcd c;
    cplx d{0.0, 0.0};

    static StableParameter constant(cplx value);
    static StableParameter first_order(cplx gain, double pole_rate);  // gain * rate / (s + rate)

    cplx evaluate(double omega) const;
    FrequencyResponse sample(const FrequencyGrid& grid) const;
};

// All stabilizing controllers around `design`: C_Q = J11 + J12 Q J21 / (1 - J22 Q), where J is the
// observer-based central controller with Q injected on the innovation. Q = 0 gives controller_tf.
// Rejects (ParameterError) non-finite samples or a grid mismatch.
FrequencyResponse youla_controller(const StateSpaceModel& model, const ControllerDesign& design,
                                   const FrequencyResponse& q);

// Closed-loop spectrum of plant + Youla controller realized in state space.
std::vector<cplx> youla_closed_loop_eigs(const StateSpaceModel& model, const ControllerDesign& design,
                                         const StableParameter& q);

// Frequency response of the state-space-realized Youla controller (y -> u).
FrequencyResponse youla_realized_response(const StateSpaceModel& model, const ControllerDesign& design,
                                          const StableParameter& q, const FrequencyGrid& grid);

// Signal-referred total noise with the loop closed through controller_tf (acting on the
// normalized SRM output -d_out / sqrt(2 gamma_SRM)) versus open; returns max |closed/open - 1|.
double snr_invariance(const StateSpaceModel& model, const ControllerDesign& design, const FrequencyGrid& grid);

}  // namespace omf
