#include "doctest.h"
#include "oracle.hpp"

#include "omfilter/errors.hpp"
#include "omfilter/params.hpp"

using namespace omf;

namespace {

FilterParams random_filter() {
    FilterParams f;
    f.L_f = oracle::log_uniform(1e-3, 1.0);
    f.finesse = oracle::log_uniform(1e3, 1e6);
    f.omega_m = oracle::log_uniform(1e5, 1e9);
    f.mass_m = oracle::log_uniform(1e-10, 1e-5);
    f.Q_m = oracle::log_uniform(1e3, 1e10);
    f.P_c = oracle::log_uniform(1e-3, 1e4);
    return f;
}

}  // namespace

TEST_SUITE("params") {

TEST_CASE("cavity half-bandwidth of a 1 cm, finesse 1e5 filter") {
    const auto r = derive_rates(nominal_filter(), nominal_ifo());
    CHECK(r.gamma_f == doctest::Approx(oracle::gamma_f(1e5, 0.01)).epsilon(1e-14));
    CHECK(r.gamma_f == doctest::Approx(4.70912892e5).epsilon(1e-8));
}

TEST_CASE("nominal pump gives gamma_opt = c / L_arm") {
    const auto r = derive_rates(nominal_filter(), nominal_ifo());
    CHECK(r.gamma_opt == doctest::Approx(oracle::c / 4000.0).epsilon(1e-12));
    CHECK(r.gamma_opt == doctest::Approx(7.49481145e4).epsilon(1e-8));
    // g and omega_s coincide because omega_s^2 = c gamma_f / L_arm = gamma_opt gamma_f = g^2
    CHECK(r.g == doctest::Approx(r.omega_s).epsilon(1e-12));
    CHECK(r.g == doctest::Approx(1.87867063e5).epsilon(1e-8));
}

TEST_CASE("required power is of order 100 W and within 5x of the scaling law") {
    const auto f = nominal_filter();
    const double p = required_power(oracle::c / 4000.0, f);
    CHECK(p == doctest::Approx(375.528515).epsilon(1e-8));
    const double est = power_scaling_estimate(f, 4000.0);
    CHECK(est == doctest::Approx(100.0));
    CHECK(p / est < 5.0);
    CHECK(p / est > 0.2);

    FilterParams heavy = f;
    heavy.mass_m *= 2.0;
    CHECK(required_power(oracle::c / 4000.0, heavy) == doctest::Approx(2.0 * p).epsilon(1e-14));
}

TEST_CASE("required_power inverts derive_rates for random parameter sets") {
    for (int i = 0; i < 100; ++i) {
        FilterParams f = random_filter();
        const double target = oracle::log_uniform(1e2, 1e7);
        f.P_c = required_power(target, f);
        const auto r = derive_rates(f, nominal_ifo());
        CHECK(std::abs(r.gamma_opt / target - 1.0) < 1e-12);
    }
}

TEST_CASE("gamma_opt scaling exponents") {
    for (int i = 0; i < 50; ++i) {
        const FilterParams f = random_filter();
        const double base = derive_rates(f, nominal_ifo()).gamma_opt;
        auto scaled = [&](auto mutate) {
            FilterParams g = f;
            mutate(g);
            return derive_rates(g, nominal_ifo()).gamma_opt / base;
        };
        CHECK(scaled([](FilterParams& g) { g.P_c *= 3.0; }) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(scaled([](FilterParams& g) { g.finesse *= 3.0; }) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(scaled([](FilterParams& g) { g.mass_m *= 3.0; }) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(scaled([](FilterParams& g) { g.omega_m *= 3.0; }) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        // L_f cancels: a_bar^2 ~ L_f, g0^2 ~ 1/L_f, gamma_f ~ 1/L_f
        CHECK(scaled([](FilterParams& g) { g.L_f *= 3.0; }) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("lossless oscillator") {
    FilterParams f = nominal_filter();
    f.Q_m = std::numeric_limits<double>::infinity();
    CHECK(derive_rates(f, nominal_ifo()).gamma_m == 0.0);
}

TEST_CASE("invalid inputs name the field") {
    FilterParams f = nominal_filter();
    f.L_f = 0.0;
    try {
        derive_rates(f, nominal_ifo());
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(e.parameter() == "filter.L_f");
    }
    IfoParams ifo = nominal_ifo();
    ifo.T_SRM = 1.0;
    CHECK_THROWS_AS(validate(ifo), ParameterError);
    ifo = nominal_ifo();
    ifo.P_arm = -1.0;
    CHECK_THROWS_AS(validate(ifo), ParameterError);
    f = nominal_filter();
    f.T_envir = -0.1;
    CHECK_THROWS_AS(validate(f), ParameterError);
}

TEST_CASE("regime checks") {
    const auto r = derive_rates(nominal_filter(), nominal_ifo());
    const auto at5k = validate_regime(r, 5e3);
    REQUIRE(at5k.checks.size() == 3);
    CHECK(at5k.checks[0].ratio == doctest::Approx(2.0 * 1e5 * 0.01 * 2.0 * oracle::pi * 1e7 / (oracle::pi * oracle::c)));
    CHECK(at5k.checks[0].ratio == doctest::Approx(133.425638).epsilon(1e-8));
    CHECK(at5k.checks[0].passed);
    CHECK(at5k.checks[1].ratio == doctest::Approx(14.9896229).epsilon(1e-8));
    CHECK_FALSE(at5k.checks[1].passed);  // marginal at 5 kHz
    CHECK_FALSE(at5k.all_passed());
    CHECK(validate_regime(r, 3e3).all_passed());
    CHECK(at5k.checks[2].ratio == doctest::Approx(1.19283629e6).epsilon(1e-8));

    DerivedRates bad = r;
    bad.omega_m = bad.gamma_f;
    CHECK_FALSE(validate_regime(bad, 1e3).checks[0].passed);
}

TEST_CASE("thermal bound") {
    const double b = thermal_bound(2.0 * oracle::pi * 100.0);
    CHECK(b == doctest::Approx(oracle::thermal_bound(2.0 * oracle::pi * 100.0)).epsilon(1e-14));
    CHECK(b >= 5.7e-10);
    CHECK(b <= 6.3e-10);
    CHECK(thermal_bound(2.0 * oracle::pi * 200.0) == doctest::Approx(2.0 * b).epsilon(1e-14));
    CHECK(thermal_bound(0.0) == 0.0);
}

TEST_CASE("SRM transmissivity round trip") {
    const double T = transmissivity_from_gamma_srm(2.0 * oracle::pi * 100.0, 4000.0);
    CHECK(T == doctest::Approx(4.0 * 4000.0 * 2.0 * oracle::pi * 100.0 / oracle::c));
    CHECK(gamma_srm_from_transmissivity(T, 4000.0) == doctest::Approx(2.0 * oracle::pi * 100.0).epsilon(1e-14));
}

}
