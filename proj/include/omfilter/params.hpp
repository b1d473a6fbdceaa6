#pragma once

#include <limits>
#include <string>
#include <vector>

namespace omf {

// CODATA 2018 exact/recommended values.
struct PhysicalConstants {
    double c = 299792458.0;         // m/s
    double hbar = 1.054571817e-34;  // J s
    double k_B = 1.380649e-23;      // J/K
};

inline constexpr PhysicalConstants kConstants{};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Optomechanical filter inputs, SI units.
struct FilterParams {
    double L_f = 0.01;                  // cavity length (m)
    double finesse = 1e5;
    double omega_m = kTwoPi * 1e7;      // mechanical angular frequency (rad/s)
    double mass_m = 1e-7;               // oscillator mass (kg)
    double Q_m = 1e9;                   // may be +inf (lossless oscillator)
    double T_envir = 0.1;               // K
    double P_c = 0.0;                   // intra-cavity pump power (W); 0 = pump off
    double lambda_0 = 1064e-9;          // m
};

// Main interferometer inputs, SI units.
struct IfoParams {
    double L_arm = 4000.0;    // m
    double P_arm = 800e3;     // W (conventional Advanced LIGO value)
    double M = 40.0;          // test mass (kg)
    double T_SRM = 0.0;       // SRM power transmissivity, 0 < T_SRM < 1
    double lambda_0 = 1064e-9;
};

struct DerivedRates {
    double omega_m = 0.0;     // copied from FilterParams; needed by the regime checks
    double gamma_f = 0.0;     // filter amplitude half-bandwidth
    double gamma_m = 0.0;     // omega_m / Q_m
    double x_q = 0.0;         // zero-point position spread (m)
    double g = 0.0;           // optomechanical coupling g0 * x_q
    double gamma_opt = 0.0;   // g^2 / gamma_f
    double gamma_srm = 0.0;   // c T_SRM / (4 L_arm)
    double omega_s = 0.0;     // sqrt(c gamma_f / L_arm)
    double omega_0 = 0.0;     // carrier angular frequency
    double G0_Larm = 0.0;     // signal coupling G0 * L_arm (rad/s per unit strain)
};

struct RegimeCheck {
    std::string name;
    double ratio = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct RegimeReport {
    std::vector<RegimeCheck> checks;  // resolved_sideband, cavity_vs_band, antidamping

    bool all_passed() const;
};

// Throws ParameterError naming the first offending field.
void validate(const FilterParams& filter);
void validate(const IfoParams& ifo);

DerivedRates derive_rates(const FilterParams& filter, const IfoParams& ifo,
                          const PhysicalConstants& consts = kConstants);

// Intra-cavity pump power giving gamma_opt == target_gamma_opt (exact inverse of derive_rates).
double required_power(double target_gamma_opt, const FilterParams& filter,
                      const PhysicalConstants& consts = kConstants);

// The closed-form order-of-magnitude pump estimate (100 W scaled by arm length, omega_m, mass, finesse).
double power_scaling_estimate(const FilterParams& filter, double L_arm);

RegimeReport validate_regime(const DerivedRates& rates, double f_max);

// Upper limit on T_envir / Q_m for filter thermal noise to stay below shot noise (K).
double thermal_bound(double gamma_srm, const PhysicalConstants& consts = kConstants);

double gamma_srm_from_transmissivity(double T_SRM, double L_arm, const PhysicalConstants& consts = kConstants);
double transmissivity_from_gamma_srm(double gamma_srm, double L_arm, const PhysicalConstants& consts = kConstants);

// Nominal set: 4 km arms, 1 cm filter, 10 MHz / 0.1 mg oscillator, finesse 1e5, 40 kg test mass,
// detector bandwidth 2 pi x 100 Hz, pump power tuned so that gamma_opt = c / L_arm.
FilterParams nominal_filter();
IfoParams nominal_ifo();

}  // namespace omf
