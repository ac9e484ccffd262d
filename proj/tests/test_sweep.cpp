#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "flexstor/errors.hpp"
#include "flexstor/sweep.hpp"
#include "flexstor/synth.hpp"

#include "support/fixtures.hpp"

#include <cmath>
#include <filesystem>

using namespace flexstor;
using namespace flexstor::testing;
namespace fs = std::filesystem;

namespace {

Dataset noisy_dataset(std::uint64_t seed, std::size_t length = 96 * 4) {
    SyntheticSpec spec;
    spec.length = length;
    spec.seed = seed;
    spec.load = {WaveKind::sinusoid, 50.0, 10.0, 1440.0, 0.0};
    spec.solar = {WaveKind::sinusoid, 8.0, 8.0, 1440.0, 4.0};
    spec.wind_onshore = {WaveKind::noise, 14.0, 14.0, 1440.0, 0.0};
    spec.wind_offshore = {WaveKind::noise, 2.8, 2.7, 1440.0, 0.0};
    return synthesize(spec);
}

std::vector<std::chrono::minutes> tau_hours(std::initializer_list<int> hours) {
    std::vector<std::chrono::minutes> taus;
    for (int h : hours) taus.emplace_back(60 * h);
    return taus;
}

} // namespace

TEST_CASE("a 1x1 grid equals a direct run") {
    const Dataset d = noisy_dataset(11);
    const SurplusModel model{SurplusKind::constant_scaling, 0.5, 2.0, 0.0};

    const ScenarioEngine engine = ScenarioEngine::from_dataset(d, model);
    const SweepGrid grid = engine.surface({0.5}, tau_hours({6}));
    const SimulationResult direct = engine.run(0.5, std::chrono::minutes(360));

    CHECK(grid.e_sfmax_mwh[0][0] == direct.e_sfmax_mwh);
    CHECK(grid.wasted_mwh[0][0] == direct.wasted_total_mwh);
}

TEST_CASE("matched volatile and load give an all-zero surface") {
    // all generation in one channel, shaped exactly like the load
    SyntheticSpec spec;
    spec.length = 96;
    spec.load = {WaveKind::sinusoid, 30.0, 10.0, 1440.0, 0.0};
    spec.solar = {WaveKind::sinusoid, 30.0, 10.0, 1440.0, 0.0};
    spec.wind_onshore = {WaveKind::constant, 0.0, 0.0, 1440.0, 0.0};
    spec.wind_offshore = {WaveKind::constant, 0.0, 0.0, 1440.0, 0.0};
    const Dataset d = synthesize(spec);

    const SweepGrid grid =
        sweep_surface(d, SurplusModel{SurplusKind::constant_scaling, 0.0, 2.0, 0.0},
                      {0.0}, tau_hours({0, 1, 2}));
    for (const auto& row : grid.e_sfmax_mwh) {
        for (double v : row) CHECK(v == 0.0);
    }
}

TEST_CASE("surfaces are reproducible bit for bit") {
    const Dataset d = noisy_dataset(12);
    const SurplusModel model{SurplusKind::low_output_tanh, 0.0, 2.0, 0.0};
    const std::vector<double> alphas{0.0, 0.4, 0.9};
    const auto taus = tau_hours({0, 3, 9});

    const SweepGrid a = sweep_surface(d, model, alphas, taus);
    const SweepGrid b = sweep_surface(d, model, alphas, taus);
    CHECK(a.e_sfmax_mwh == b.e_sfmax_mwh);
    CHECK(a.wasted_mwh == b.wasted_mwh);

    SweepOptions threaded;
    threaded.threads = 4;
    const SweepGrid c = sweep_surface(d, model, alphas, taus, threaded);
    CHECK(c.e_sfmax_mwh == a.e_sfmax_mwh);
}

TEST_CASE("scan_row diagnostics") {
    SUBCASE("monotone row") {
        const std::vector<double> row{9.0, 7.0, 4.0, 2.0};
        const RowScan s = scan_row(row, 4.5);
        CHECK(s.first_ok == 2);
        CHECK_FALSE(s.non_monotone);
        CHECK(s.row_min == 2.0);
    }
    SUBCASE("non-monotone row still yields the smallest qualifying index") {
        const std::vector<double> row{9.0, 3.0, 5.0, 1.0};
        const RowScan s = scan_row(row, 3.5);
        CHECK(s.first_ok == 1);
        CHECK(s.non_monotone);
        CHECK(s.row_min == 1.0);
    }
    SUBCASE("unreachable target") {
        const std::vector<double> row{9.0, 7.0};
        const RowScan s = scan_row(row, 1.0);
        CHECK_FALSE(s.first_ok.has_value());
        CHECK(s.row_min == 7.0);
    }
}

TEST_CASE("tau inversion") {
    const Dataset d = noisy_dataset(13, 96 * 7);
    const SurplusModel model{SurplusKind::constant_scaling, 0.0, 2.0, 0.0};
    const ScenarioEngine engine = ScenarioEngine::from_dataset(d, model);
    const std::vector<double> alphas{0.0, 0.5};
    const SweepGrid grid = engine.surface(alphas, tau_hours({0, 2, 4, 8, 16}));

    SUBCASE("target above the tau=0 requirement returns tau zero") {
        const double big = grid.e_sfmax_mwh[1][0] * 2.0 + 1.0;
        const InversionResult r = engine.invert_tau(grid, 0.5, big);
        CHECK(r.status == InversionResult::Status::ok);
        CHECK(r.tau.count() == 0);
    }
    SUBCASE("inversion is consistent with the forward surface") {
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            for (std::size_t ti = 0; ti < grid.taus.size(); ++ti) {
                const InversionResult r = engine.invert_tau(
                    grid, alphas[ai], grid.e_sfmax_mwh[ai][ti]);
                REQUIRE(r.status == InversionResult::Status::ok);
                CHECK(r.tau <= grid.taus[ti]);
                CHECK(r.achieved_mwh <= grid.e_sfmax_mwh[ai][ti] * (1 + 1e-12));
            }
        }
    }
    SUBCASE("bisection refines to step resolution") {
        const double target =
            0.5 * (grid.e_sfmax_mwh[1][2] + grid.e_sfmax_mwh[1][3]);
        const InversionResult r = engine.invert_tau(grid, 0.5, target);
        REQUIRE(r.status == InversionResult::Status::ok);
        CHECK(r.tau.count() % d.step().count() == 0);
        CHECK(r.achieved_mwh <= target);
        // the preceding step must fail the target, otherwise tau isn't minimal
        if (r.tau > grid.taus[2]) {
            const SimulationResult prev =
                engine.run(0.5, r.tau - d.step());
            CHECK(prev.e_sfmax_mwh > target);
        }
    }
    SUBCASE("unreachable targets are reported with the row minimum") {
        const InversionResult r = engine.invert_tau(grid, 0.5, -1.0);
        CHECK(r.status == InversionResult::Status::unreachable);
        CHECK(r.achieved_mwh == r.row_min_mwh);
        CHECK(r.status_string() == "unreachable");
    }
    SUBCASE("alpha must sit on the grid axis") {
        CHECK_THROWS_AS(engine.invert_tau(grid, 0.25, 1.0), ValidationError);
    }
}

TEST_CASE("matched fixture inverts to tau = 0 for target 0") {
    SyntheticSpec spec;
    spec.length = 96;
    spec.load = {WaveKind::sinusoid, 30.0, 5.0, 1440.0, 0.0};
    spec.solar = {WaveKind::sinusoid, 30.0, 5.0, 1440.0, 0.0};
    spec.wind_onshore = {WaveKind::constant, 0.0, 0.0, 1440.0, 0.0};
    spec.wind_offshore = {WaveKind::constant, 0.0, 0.0, 1440.0, 0.0};
    const Dataset d = synthesize(spec);
    const ScenarioEngine engine = ScenarioEngine::from_dataset(
        d, SurplusModel{SurplusKind::constant_scaling, 0.0, 2.0, 0.0});
    const SweepGrid grid = engine.surface({0.0}, tau_hours({0, 1}));
    const InversionResult r = engine.invert_tau(grid, 0.0, 0.0);
    CHECK(r.status == InversionResult::Status::ok);
    CHECK(r.tau.count() == 0);
}

TEST_CASE("disk cache returns identical scalars and survives reruns") {
    const fs::path cache =
        fs::temp_directory_path() / "flexstor_tests" / "cache";
    fs::remove_all(cache);

    const Dataset d = noisy_dataset(14);
    SweepOptions opts;
    opts.cache_dir = cache;
    const SurplusModel model{SurplusKind::constant_scaling, 0.0, 2.0, 0.0};

    const ScenarioEngine engine = ScenarioEngine::from_dataset(d, model, opts);
    const SweepGrid first = engine.surface({0.2, 0.6}, tau_hours({0, 2}));
    CHECK(fs::exists(cache));
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(cache)) ++files;
    CHECK(files == 4);

    // second pass is served from disk and must be bit-identical
    const SweepGrid second = engine.surface({0.2, 0.6}, tau_hours({0, 2}));
    CHECK(second.e_sfmax_mwh == first.e_sfmax_mwh);
    CHECK(second.wasted_mwh == first.wasted_mwh);

    // a fresh engine over the same inputs hits the same keys
    const ScenarioEngine engine2 = ScenarioEngine::from_dataset(d, model, opts);
    CHECK(engine2.digest() == engine.digest());
    const SweepGrid third = engine2.surface({0.2, 0.6}, tau_hours({0, 2}));
    CHECK(third.e_sfmax_mwh == first.e_sfmax_mwh);

    // different inputs get different keys
    const ScenarioEngine other =
        ScenarioEngine::from_dataset(noisy_dataset(15), model, opts);
    CHECK(other.digest() != engine.digest());
}

TEST_CASE("axes validation") {
    const Dataset d = noisy_dataset(16);
    const ScenarioEngine engine = ScenarioEngine::from_dataset(
        d, SurplusModel{SurplusKind::constant_scaling, 0.0, 2.0, 0.0});
    CHECK_THROWS_AS(engine.surface({}, tau_hours({0})), ValidationError);
    CHECK_THROWS_AS(engine.surface({0.5}, {}), ValidationError);
    CHECK_THROWS_AS(engine.surface({0.5, 0.1}, tau_hours({0})),
                    ValidationError);
    CHECK_THROWS_AS(engine.surface({0.5}, tau_hours({4, 0})), ValidationError);
}

TEST_CASE("non-monotone rows are flagged, not smoothed") {
    SweepGrid grid;
    grid.alphas = {0.1, 0.2, 0.3};
    grid.taus = tau_hours({0, 1, 2});
    grid.e_sfmax_mwh = {{5.0, 3.0, 1.0}, {5.0, 6.0, 1.0}, {2.0, 2.0, 2.0}};
    grid.wasted_mwh = grid.e_sfmax_mwh;
    CHECK(grid.non_monotone_rows() == std::vector<std::size_t>{1});
    // the raw values stay untouched
    CHECK(grid.e_sfmax_mwh[1][1] == 6.0);
}

TEST_CASE("demand rescale preview") {
    SweepGrid grid;
    grid.alphas = {0.5};
    grid.taus = tau_hours({24});
    grid.e_sfmax_mwh = {{2400000.0}};
    grid.wasted_mwh = {{100.0}};

    const SweepGrid same = demand_rescale_preview(grid, 1.0);
    CHECK(same.e_sfmax_mwh[0][0] == 2400000.0);

    const SweepGrid scaled = demand_rescale_preview(grid, 5.0);
    CHECK(scaled.e_sfmax_mwh[0][0] == doctest::Approx(12000000.0));
    CHECK(scaled.wasted_mwh[0][0] == doctest::Approx(500.0));

    SweepGrid zeros = grid;
    zeros.e_sfmax_mwh = {{0.0}};
    CHECK(demand_rescale_preview(zeros, 5.0).e_sfmax_mwh[0][0] == 0.0);

    CHECK_THROWS_AS(demand_rescale_preview(grid, 0.0), ValidationError);
}

TEST_CASE("fleet sizing") {
    SUBCASE("formula values for the extended-electrification inputs") {
        const FleetSpec spec{250000.0, 0.25, 1.0 / 3.0, 1.5};
        const FleetSize f = fleet_size(spec);
        CHECK(f.nominal_wind_power_mw ==
              doctest::Approx(666666.6666666667).epsilon(1e-12));
        CHECK(f.turbine_count == 444445);

        const FleetSpec big_turbines{250000.0, 0.25, 1.0 / 3.0, 6.0};
        CHECK(fleet_size(big_turbines).turbine_count == 111112);
    }
    SUBCASE("counts at a rounded 650 GW nominal") {
        // rating-only division for a caller-provided nominal power
        const FleetSpec spec{650000.0 * 0.25, 0.25, 0.0, 1.5};
        const FleetSize f = fleet_size(spec);
        CHECK(f.nominal_wind_power_mw == doctest::Approx(650000.0));
        CHECK(f.turbine_count == 433334);
        const FleetSpec spec6{650000.0 * 0.25, 0.25, 0.0, 6.0};
        CHECK(fleet_size(spec6).turbine_count == 108334);
    }
    SUBCASE("identity case") {
        const FleetSpec spec{1000.0, 1.0, 0.0, 10.0};
        const FleetSize f = fleet_size(spec);
        CHECK(f.nominal_wind_power_mw == doctest::Approx(1000.0));
        CHECK(f.turbine_count == 100);
    }
    SUBCASE("homogeneous in the target power") {
        const FleetSpec a{120000.0, 0.3, 0.25, 3.0};
        FleetSpec b = a;
        b.target_average_power_mw *= 2.0;
        CHECK(fleet_size(b).nominal_wind_power_mw ==
              doctest::Approx(2.0 * fleet_size(a).nominal_wind_power_mw));
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(fleet_size(FleetSpec{0.0, 0.25, 0.3, 1.5}),
                        ValidationError);
        CHECK_THROWS_AS(fleet_size(FleetSpec{1.0, 0.0, 0.3, 1.5}),
                        ValidationError);
        CHECK_THROWS_AS(fleet_size(FleetSpec{1.0, 1.1, 0.3, 1.5}),
                        ValidationError);
        CHECK_THROWS_AS(fleet_size(FleetSpec{1.0, 0.25, 1.0, 1.5}),
                        ValidationError);
        CHECK_THROWS_AS(fleet_size(FleetSpec{1.0, 0.25, 0.3, 0.0}),
                        ValidationError);
    }
}

TEST_CASE("cost factor is affine with slope one") {
    CHECK(cost_factor(0.0) == 1.0);
    CHECK(cost_factor(0.5) == 1.5);
    CHECK(cost_factor(1.0) == 2.0);
    CHECK(cost_factor(0.7) - cost_factor(0.2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(cost_factor(-0.1), ValidationError);
}

TEST_CASE("default tau axis spans two days hourly") {
    const auto taus = default_tau_axis();
    CHECK(taus.size() == 49);
    CHECK(taus.front().count() == 0);
    CHECK(taus.back().count() == 48 * 60);
}

TEST_CASE("offshore pipeline scales the channel to the demand average") {
    const Dataset d = noisy_dataset(17);
    const SurplusModel model{SurplusKind::offshore_substitution, 0.5, 2.0, 0.0};
    const ScenarioEngine engine = ScenarioEngine::from_dataset(d, model);
    CHECK_NOTHROW(engine.run(0.5, std::chrono::minutes(60)));

    // more surplus at equal tau never increases the requirement
    const double none = engine.run(0.0, std::chrono::minutes(60)).e_sfmax_mwh;
    const double some = engine.run(0.8, std::chrono::minutes(60)).e_sfmax_mwh;
    CHECK(some <= none + 1e-9);
}
