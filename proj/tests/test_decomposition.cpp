#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "flexstor/decomposition.hpp"
#include "flexstor/errors.hpp"

#include "support/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace flexstor;
using namespace flexstor::testing;

namespace {

// P_vf = A*sin(2*pi*t/T) sampled over full periods; left-rectangle cumulative
// has the closed form (A*T/2pi)(1 - cos(2*pi*t/T)) up to discretization.
PowerSeries sinusoid_fluct(double amp_mw, double period_h, double dt_h,
                           int periods) {
    const int per_steps = static_cast<int>(std::lround(period_h / dt_h));
    std::vector<double> v(static_cast<std::size_t>(per_steps) * periods);
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = amp_mw * std::sin(2.0 * std::numbers::pi *
                                 (static_cast<double>(k) * dt_h) / period_h);
    }
    return make_series(std::move(v),
                       std::chrono::minutes(static_cast<int>(dt_h * 60)));
}

double sinusoid_requirement(double amp_mw, double period_h, double dt_h,
                            int periods, double offset_mw) {
    std::vector<double> v(static_cast<std::size_t>(
        std::lround(period_h / dt_h) * periods));
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = offset_mw + amp_mw * std::sin(2.0 * std::numbers::pi *
                                             (static_cast<double>(k) * dt_h) /
                                             period_h);
    }
    // step granularity below 15 min is fine for PowerSeries; use minutes
    const auto step = std::chrono::minutes(
        std::max(1, static_cast<int>(std::lround(dt_h * 60))));
    const Decomposition dec = decompose(PowerSeries(
        kStart2019, step, std::move(v), Channel::derived));
    return passive_storage_requirement(dec.cumulative_fluct);
}

} // namespace

TEST_CASE("decompose of a constant series") {
    const PowerSeries p = constant_series(56400.0, 32, std::chrono::minutes(15),
                                          Channel::load);
    const Decomposition d = decompose(p);
    CHECK(d.average_mw == doctest::Approx(56400.0));
    for (double x : d.fluctuation.values()) CHECK(x == 0.0);
    for (double x : d.cumulative_fluct.values()) CHECK(x == 0.0);
    CHECK(d.cumulative_total.back() ==
          doctest::Approx(56400.0 * 32 * 0.25).epsilon(1e-12));
}

TEST_CASE("decompose invariants on noisy data") {
    std::mt19937_64 rng(31337);
    std::vector<double> v(35040);
    for (auto& x : v) x = uniform(rng, 0.0, 90000.0);
    const Decomposition d =
        decompose(make_series(std::move(v), std::chrono::minutes(15)));

    // fluctuation mean is zero at 1e-9 relative to the average
    double mean_fluct = d.fluctuation.mean_mw();
    CHECK(std::abs(mean_fluct) <= 1e-9 * d.average_mw);

    // cumulative fluctuation starts at 0 and returns to ~0
    CHECK(d.cumulative_fluct.front() == 0.0);
    const double scale = d.average_mw * 35040 * 0.25;
    CHECK(std::abs(d.cumulative_fluct.back()) <= 1e-9 * scale);

    // pointwise identity: total = average * t + fluct
    for (std::size_t i = 0; i < d.cumulative_total.size(); i += 997) {
        const double t_h = static_cast<double>(i) * 0.25;
        CHECK(d.cumulative_total[i] ==
              doctest::Approx(d.average_mw * t_h + d.cumulative_fluct[i])
                  .epsilon(1e-9));
    }

    // the total integral of a non-negative series is nondecreasing
    for (std::size_t i = 0; i + 1 < d.cumulative_total.size(); ++i) {
        CHECK(d.cumulative_total[i + 1] >= d.cumulative_total[i]);
    }
}

TEST_CASE("storage_fluctuation cancels for identical inputs") {
    std::mt19937_64 rng(5);
    std::vector<double> v(64);
    for (auto& x : v) x = uniform(rng, 0.0, 100.0);
    const Decomposition d = decompose(make_series(v, std::chrono::minutes(15)));
    const EnergySeries e = storage_fluctuation(d, d);
    for (double x : e.values()) CHECK(x == 0.0);
}

TEST_CASE("storage_fluctuation rejects mismatched grids") {
    const Decomposition a = decompose(constant_series(1.0, 8));
    const Decomposition b = decompose(constant_series(1.0, 9));
    CHECK_THROWS_AS(storage_fluctuation(a, b), GridError);
}

TEST_CASE("sinusoidal fluctuation matches the closed-form integral") {
    const double amp = 10.0, period_h = 7.0, dt_h = 0.25;
    const Decomposition v = decompose(sinusoid_fluct(amp, period_h, dt_h, 4));
    const Decomposition d = decompose(constant_series(
        0.0, v.fluctuation.size(), std::chrono::minutes(15)));
    const EnergySeries e_sf = storage_fluctuation(v, d);

    // pointwise |rectangle - closed form| <= amp * dt (verified 1.30 MWh max
    // against a 2.5 bound for this fixture)
    for (std::size_t i = 0; i < e_sf.size(); ++i) {
        const double t_h = static_cast<double>(i) * dt_h;
        const double closed = (amp * period_h / (2.0 * std::numbers::pi)) *
                              (1.0 - std::cos(2.0 * std::numbers::pi * t_h /
                                              period_h));
        CHECK(std::abs(e_sf[i] - closed) <= amp * dt_h);
    }

    // requirement A*T/pi within the 2*dt/T relative bound
    const double req = passive_storage_requirement(e_sf);
    const double exact = amp * period_h / std::numbers::pi;
    CHECK(std::abs(req - exact) / exact <= 2.0 * dt_h / period_h);
}

TEST_CASE("passive requirement basics") {
    const EnergySeries zeros(kStart2019, std::chrono::minutes(15),
                             std::vector<double>(10, 0.0));
    CHECK(passive_storage_requirement(zeros) == 0.0);

    const EnergySeries ramp(kStart2019, std::chrono::minutes(15),
                            {0.0, 1.0, 3.0, 2.0, -1.0});
    CHECK(passive_storage_requirement(ramp) == doctest::Approx(4.0));
}

TEST_CASE("refining the grid at least halves the requirement error") {
    const double amp = 10.0, period_h = 7.0;
    const double exact = amp * period_h / std::numbers::pi;
    // offset keeps the series a valid signal while the fluctuation part is
    // the pure sinusoid (full periods make the sample mean exact); 30-minute
    // grid refined to the canonical 15 minutes
    const double e_coarse =
        std::abs(sinusoid_requirement(amp, period_h, 0.5, 4, 20.0) - exact) /
        exact;
    const double e_fine =
        std::abs(sinusoid_requirement(amp, period_h, 0.25, 4, 20.0) - exact) /
        exact;
    CHECK(e_coarse > 0.0);
    CHECK(e_fine <= 0.5 * e_coarse + 1e-12);
}

TEST_CASE("scale_to_demand") {
    std::mt19937_64 rng(17);
    std::vector<double> v(48);
    for (auto& x : v) x = uniform(rng, 1.0, 40.0);
    const PowerSeries p = make_series(v, std::chrono::minutes(15));
    const double mean = p.mean_mw();

    SUBCASE("sets the target mean") {
        const PowerSeries s = scale_to_demand(p, 56400.0);
        CHECK(s.mean_mw() == doctest::Approx(56400.0).epsilon(1e-12));
        const double factor = 56400.0 / mean;
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(s[i] == doctest::Approx(p[i] * factor).epsilon(1e-14));
        }
    }
    SUBCASE("identity scaling") {
        const PowerSeries s = scale_to_demand(p, mean);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(s[i] == doctest::Approx(p[i]).epsilon(1e-12));
        }
    }
    SUBCASE("scaling is invertible to 1e-9") {
        const PowerSeries s = scale_to_demand(scale_to_demand(p, 977.5), mean);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(std::abs(s[i] - p[i]) <= 1e-9 * std::abs(p[i]));
        }
    }
    SUBCASE("zero-mean input is rejected") {
        const PowerSeries z = constant_series(0.0, 8);
        CHECK_THROWS_AS(scale_to_demand(z, 10.0), ValidationError);
        CHECK_THROWS_AS(scale_to_demand(p, 0.0), ValidationError);
    }
}

TEST_CASE("decompose commutes with scaling") {
    std::mt19937_64 rng(23);
    std::vector<double> v(96);
    for (auto& x : v) x = uniform(rng, 5.0, 25.0);
    const PowerSeries p = make_series(v, std::chrono::minutes(15));
    const double factor = 56.4 / 18.9;

    const Decomposition direct = decompose(scale_to_demand(p, p.mean_mw() * factor));
    const Decomposition base = decompose(p);
    for (std::size_t i = 0; i < base.fluctuation.size(); ++i) {
        CHECK(direct.fluctuation[i] ==
              doctest::Approx(base.fluctuation[i] * factor).epsilon(1e-9));
    }
}

TEST_CASE("natural scaling factors") {
    // means chosen to mirror the demand/volatile magnitudes the toolkit
    // operates on; factors are data-derived, never hard-coded
    const PowerSeries v = constant_series(18900.0, 8);
    const PowerSeries scaled = scale_to_demand(v, 56400.0);
    CHECK(scaled[0] / v[0] == doctest::Approx(56.4 / 18.9).epsilon(1e-12));

    const PowerSeries off = constant_series(2800.0, 8);
    const PowerSeries off_scaled = scale_to_demand(off, 56400.0);
    CHECK(off_scaled[0] / off[0] == doctest::Approx(20.142857142857142));
}
