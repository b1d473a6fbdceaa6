#pragma once

#include <complex>
#include <vector>

#include "omfilter/grid.hpp"
#include "omfilter/params.hpp"

namespace omf {

using cplx = std::complex<double>;

// Sideband conventions (see docs/conventions.md): time dependence exp(-i Omega t), and
// a^dagger(Omega) denotes the Fourier component of a^dagger(t), i.e. [a(-Omega)]^dagger.

// Resolved-sideband (RWA, gamma_f >> Omega) filter transfer a_in -> a_out:
//   (Omega + i(gamma_m + gamma_opt)) / (Omega + i(gamma_m - gamma_opt)).
// Throws ParameterError for the degenerate pole gamma_m == gamma_opt at Omega == 0.
cplx rwa_transfer(double omega, double gamma_m, double gamma_opt);

// Added-noise transfer b_th^dagger -> a_out: 2 sqrt(gamma_m gamma_opt) / (Omega + i(gamma_m - gamma_opt)).
cplx thermal_transfer(double omega, double gamma_m, double gamma_opt);

// -exp(-2 i Omega / gamma_opt)
cplx negative_dispersion_approx(double omega, double gamma_opt);

// chi_m = -(i Omega + gamma_m - gamma_opt)^-1. Pole at Omega = i(gamma_opt - gamma_m).
cplx mech_susceptibility(double omega, double gamma_m, double gamma_opt);

struct FilterTransfer {
    std::vector<double> omega;
    std::vector<cplx> t_signal;
    std::vector<cplx> n_thermal;
};

FilterTransfer rwa_filter_transfer(const FrequencyGrid& grid, double gamma_m, double gamma_opt);

// How the pump frequency is placed relative to the filter cavity resonance.
enum class PumpTuning {
    Bare,         // pump exactly omega_m above resonance
    Compensated,  // offset absorbs the static spring shift from the counter-rotating (Stokes) sideband
};

// Pump offset omega_p from the cavity resonance that zeroes the static mechanical detuning:
//   (omega_m^2 - omega_p^2) / (2 omega_m) + 2 omega_p g^2 / (gamma_f^2 + 4 omega_p^2) = 0.
double compensated_pump_offset(double omega_m, double g, double gamma_f);

double pump_offset(const DerivedRates& rates, PumpTuning tuning);

struct ExactFilterResponse {
    std::vector<double> omega;
    std::vector<cplx> t_lower;        // a_in(Omega) -> a_out(Omega)
    std::vector<cplx> t_upper_conj;   // a_in^dagger(Omega - 2 omega_p) -> a_out(Omega)
    std::vector<cplx> n_thermal;      // b_th^dagger -> a_out(Omega)
    std::vector<double> phase_error;  // unwrapped arg(-t_lower) + 2 arctan(Omega / gamma_opt)
};

// Linearized filter without the rotating-wave approximation: per grid point, a 3x3 solve over
// {a(Omega), a^dagger(Omega - 2 omega_p), x(Omega - omega_p) / x_q} with the full mechanical response.
// Throws SingularPointError if the system is singular at a grid point.
ExactFilterResponse exact_response(const DerivedRates& rates, const FrequencyGrid& grid,
                                   PumpTuning tuning = PumpTuning::Compensated);

// Branch-continued phase sequence (adjacent jumps folded into (-pi, pi]).
std::vector<double> unwrap_phase(const std::vector<double>& wrapped);

}  // namespace omf
