#pragma once

#include "flexstor/decomposition.hpp"
#include "flexstor/smartmeter.hpp"
#include "flexstor/surplus.hpp"
#include "flexstor/timeseries.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flexstor {

/// e_sfmax and wasted-energy surfaces over a (alpha, tau) grid, row-major in
/// alpha.
struct SweepGrid {
    std::vector<double> alphas;
    std::vector<std::chrono::minutes> taus;
    std::vector<std::vector<double>> e_sfmax_mwh;
    std::vector<std::vector<double>> wasted_mwh;
    SurplusKind model = SurplusKind::constant_scaling;

    double e_sfmax_at(std::size_t alpha_idx, std::size_t tau_idx) const {
        return e_sfmax_mwh[alpha_idx][tau_idx];
    }

    /// Alpha indices whose e_sfmax row increases somewhere along tau.
    /// Monotonicity is empirical, not guaranteed; callers report these rows
    /// instead of smoothing them.
    std::vector<std::size_t> non_monotone_rows() const;
};

struct SweepOptions {
    /// Scalar results are cached here keyed by (input digest, model, alpha,
    /// tau); writes are atomic (write-then-rename), safe under concurrent
    /// sweeps.
    std::optional<std::filesystem::path> cache_dir;
    unsigned threads = 1;
    std::optional<double> storage_cap_mwh;
};

struct InversionResult {
    enum class Status { ok, unreachable };
    Status status = Status::ok;
    std::chrono::minutes tau{0};
    /// e_sfmax at the returned tau (ok) or the row minimum (unreachable).
    double achieved_mwh = 0.0;
    double row_min_mwh = 0.0;
    /// Set when the scanned row is not nonincreasing; the smallest
    /// qualifying tau is still returned.
    bool non_monotone_row = false;

    std::string status_string() const;
};

/// Pure grid-row scan used by the inversion: index of the smallest entry
/// <= target plus monotonicity and minimum diagnostics.
struct RowScan {
    std::optional<std::size_t> first_ok;
    bool non_monotone = false;
    double row_min = 0.0;
};
RowScan scan_row(std::span<const double> row, double target);

/// Prepared scenario inputs for repeated simulation: demand cumulative
/// energy, volatile generation scaled to the demand average, and (for the
/// offshore model) the offshore channel scaled likewise. Grid cells are
/// independent; surfaces may be evaluated in parallel.
class ScenarioEngine {
public:
    ScenarioEngine(EnergySeries demand_energy, PowerSeries volatile_scaled,
                   std::optional<PowerSeries> offshore_scaled,
                   SurplusModel base_model, SweepOptions options = {});

    /// Standard pipeline from a raw dataset: demand integrated, volatile sum
    /// scaled to the demand average, p_nom defaulted to the scaled volatile
    /// average for the low-output model.
    static ScenarioEngine from_dataset(const Dataset& d, SurplusModel base_model,
                                       SweepOptions options = {});

    /// One grid cell, scalar results only (cache-aware).
    SimulationResult run(double alpha, std::chrono::minutes tau) const;

    SweepGrid surface(std::vector<double> alphas,
                      std::vector<std::chrono::minutes> taus) const;

    /// Smallest tau on the grid whose e_sfmax is <= target, refined by
    /// bisection (re-running the simulator) down to step resolution. Rows
    /// that are not monotone are reported, not smoothed.
    InversionResult invert_tau(const SweepGrid& grid, double alpha,
                               double target_mwh) const;

    const EnergySeries& demand_energy() const { return demand_energy_; }
    const PowerSeries& volatile_power() const { return volatile_scaled_; }
    const SurplusModel& base_model() const { return base_model_; }
    double demand_average_mw() const { return demand_average_mw_; }
    /// FNV-1a digest over the prepared inputs and fixed model parameters.
    std::uint64_t digest() const { return digest_; }

private:
    SimulationResult run_uncached(double alpha, std::chrono::minutes tau) const;

    EnergySeries demand_energy_;
    PowerSeries volatile_scaled_;
    std::optional<PowerSeries> offshore_scaled_;
    SurplusModel base_model_;
    SweepOptions options_;
    double demand_average_mw_ = 0.0;
    std::uint64_t digest_ = 0;
};

/// Convenience wrappers matching the scenario pipeline.
SweepGrid sweep_surface(const Dataset& d, const SurplusModel& model,
                        std::vector<double> alphas,
                        std::vector<std::chrono::minutes> taus,
                        SweepOptions options = {});

InversionResult invert_tau(const ScenarioEngine& engine, const SweepGrid& grid,
                           double alpha, double target_mwh);

/// Same axes, every surface entry multiplied by factor: first-order preview
/// of scaling total demand (e.g. full electrification) without re-running.
SweepGrid demand_rescale_preview(SweepGrid grid, double factor);

struct FleetSpec {
    double target_average_power_mw = 0.0;
    double wind_capacity_factor = 0.0; // in (0, 1]
    double solar_share = 0.0;          // in [0, 1)
    double turbine_nominal_power_mw = 0.0;
};

struct FleetSize {
    double nominal_wind_power_mw = 0.0;
    std::uint64_t turbine_count = 0;
};

/// nominal = target * (1 - solar_share) / capacity_factor;
/// count = ceil(nominal / turbine rating).
FleetSize fleet_size(const FleetSpec& spec);

/// Running-cost multiplier of surplus provisioning: 1 + alpha.
double cost_factor(double alpha);

/// Default tau axis: 0 to 2 days in 1-hour increments.
std::vector<std::chrono::minutes> default_tau_axis();

/// FNV-1a digest over all four channels and the grid; provenance headers and
/// the sweep cache key off this.
std::uint64_t dataset_digest(const Dataset& d);

} // namespace flexstor
