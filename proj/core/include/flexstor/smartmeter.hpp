#pragma once

#include "flexstor/surplus.hpp"
#include "flexstor/timeseries.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>

namespace flexstor {

/// One smart-meter scenario. tau is the consumption-shift window: delivered
/// cumulative energy may run ahead of or behind the metered demand by at
/// most tau. Must be a whole multiple of the grid step; fractional delays
/// are rejected rather than interpolated.
struct ScenarioConfig {
    SurplusModel model;
    std::chrono::minutes tau{0};
    bool track_trajectories = false;
    /// Optional hard storage capacity in MWh. When the buffer runs empty the
    /// shortfall is recorded as deficit instead of delivered; unset
    /// reproduces the clamp-only recursion.
    std::optional<double> storage_cap_mwh;
};

struct SimulationResult {
    /// max over t of -E_sf(t): the storage the scenario still needs.
    double e_sfmax_mwh = 0.0;
    /// Total generation that could neither be shifted into the band nor
    /// stored (storage state is clamped at zero from above).
    double wasted_total_mwh = 0.0;

    /// Trajectories at grid nodes (present iff track_trajectories):
    /// delivered cumulative energy, storage state (<= 0 everywhere), and the
    /// per-step wasted power in MW.
    std::optional<EnergySeries> delivered;
    std::optional<EnergySeries> storage;
    std::optional<PowerSeries> wasted_power;

    // Per-step diagnostics; exactly one case fires per step, so the three
    // counters sum to the step count.
    std::uint64_t steps_in_band = 0;
    std::uint64_t steps_above_band = 0;
    std::uint64_t steps_below_band = 0;

    // Hard-cap accounting (zero unless storage_cap_mwh was set and binding).
    double deficit_total_mwh = 0.0;
    std::uint64_t deficit_steps = 0;
};

/// Steps the delay-band recursion over the horizon. demand_energy is the
/// cumulative metered demand (one more node than volatile has samples, same
/// grid, nondecreasing). offshore is required exactly for the offshore
/// substitution model and must be scaled to the demand average (1e-6
/// relative). Near the horizon edges the band bounds clamp to the first and
/// last demand node.
SimulationResult simulate(const EnergySeries& demand_energy,
                          const PowerSeries& volatile_power,
                          const PowerSeries* offshore,
                          const ScenarioConfig& cfg);

/// Centered rolling mean of the wasted-power trajectory (window truncated at
/// the edges) plus the full-period average. window must be a positive
/// multiple of the grid step; the result r carries the trajectory.
std::pair<PowerSeries, double> wasted_power_stats(const SimulationResult& r,
                                                  std::chrono::minutes window);

struct PassiveEquivalence {
    double clamped_e_sfmax_mwh = 0.0;
    double drawdown_mwh = 0.0;
};

/// Validation bridge between the passive max-min bound and the clamped
/// recursion: runs simulate() with alpha=0, tau=0 and independently computes
/// the maximum drawdown (running max minus current value) of the unclamped
/// cumulative generation-minus-demand series. The two agree identically, and
/// both are bounded by the max-min spread of that series.
PassiveEquivalence passive_equivalence_check(const EnergySeries& demand_energy,
                                             const PowerSeries& volatile_power);

} // namespace flexstor
