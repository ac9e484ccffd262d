#include "flexstor/smartmeter.hpp"

#include "flexstor/errors.hpp"
#include "flexstor/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace flexstor {

namespace {

void validate_inputs(const EnergySeries& demand, const PowerSeries& volatile_p,
                     const PowerSeries* offshore, const ScenarioConfig& cfg) {
    if (demand.start() != volatile_p.start() ||
        demand.step() != volatile_p.step() ||
        demand.size() != volatile_p.size() + 1) {
        throw GridError("simulate: demand energy must sit on the volatile "
                        "grid with one extra node (got " +
                        std::to_string(demand.size()) + " nodes for " +
                        std::to_string(volatile_p.size()) + " samples)");
    }
    if (cfg.tau.count() < 0) {
        throw ValidationError("simulate: tau must be non-negative");
    }
    if (cfg.tau.count() % volatile_p.step().count() != 0) {
        throw GridError("simulate: tau of " + std::to_string(cfg.tau.count()) +
                        " min is not a multiple of the " +
                        std::to_string(volatile_p.step().count()) +
                        " min step");
    }
    for (std::size_t i = 0; i + 1 < demand.size(); ++i) {
        if (demand[i + 1] < demand[i]) {
            throw ValidationError("simulate: cumulative demand decreases at " +
                                  demand.time_at(i + 1).to_string());
        }
    }
    if (cfg.storage_cap_mwh && *cfg.storage_cap_mwh < 0.0) {
        throw ValidationError("simulate: storage cap must be non-negative");
    }

    const bool needs_offshore =
        cfg.model.kind == SurplusKind::offshore_substitution;
    if (needs_offshore && offshore == nullptr) {
        throw ValidationError("simulate: offshore substitution model needs "
                              "an offshore series");
    }
    if (!needs_offshore && offshore != nullptr) {
        throw ValidationError("simulate: offshore series given but the model "
                              "is not offshore substitution");
    }
    if (offshore != nullptr) {
        if (!offshore->same_grid(volatile_p)) {
            throw GridError("simulate: offshore series is not on the "
                            "volatile grid");
        }
        const double horizon_h =
            static_cast<double>(volatile_p.size()) * volatile_p.dt_hours();
        const double demand_avg = (demand.back() - demand.front()) / horizon_h;
        const double off_mean = offshore->mean_mw();
        if (demand_avg > 0.0 &&
            std::abs(off_mean - demand_avg) > 1e-6 * demand_avg) {
            throw ValidationError(
                "simulate: offshore series mean " + std::to_string(off_mean) +
                " MW is not scaled to the demand average " +
                std::to_string(demand_avg) + " MW");
        }
    }
}

} // namespace

SimulationResult simulate(const EnergySeries& demand_energy,
                          const PowerSeries& volatile_power,
                          const PowerSeries* offshore,
                          const ScenarioConfig& cfg) {
    validate_inputs(demand_energy, volatile_power, offshore, cfg);

    SurplusModel model = cfg.model;
    if (model.kind == SurplusKind::low_output_tanh && model.p_nom_mw <= 0.0) {
        model.p_nom_mw = volatile_power.mean_mw();
    }

    const std::size_t n = volatile_power.size();
    const double dt_h = volatile_power.dt_hours();
    const std::int64_t tau_steps = cfg.tau.count() / volatile_power.step().count();

    SimulationResult res;
    double delivered = 0.0;
    double storage = 0.0;
    CompensatedSum wasted;
    double e_sfmax = 0.0;
    double backlog = 0.0; // band shortfall carried while the cap binds

    std::vector<double> traj_delivered, traj_storage, traj_wasted;
    if (cfg.track_trajectories) {
        traj_delivered.reserve(n + 1);
        traj_storage.reserve(n + 1);
        traj_wasted.reserve(n);
        traj_delivered.push_back(0.0);
        traj_storage.push_back(0.0);
    }

    const auto node = [&](std::int64_t idx) {
        return demand_energy[static_cast<std::size_t>(
            std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(n)))];
    };

    for (std::size_t k = 0; k < n; ++k) {
        const std::optional<double> p_off =
            offshore ? std::optional<double>((*offshore)[k]) : std::nullopt;
        const double d_ev = step_generation(model, volatile_power[k], p_off, dt_h);

        const std::int64_t s = static_cast<std::int64_t>(k) + 1;
        const double lower = node(s - tau_steps);
        const double upper = node(s + tau_steps);
        const double candidate = delivered + d_ev;

        if (candidate > upper) {
            storage += candidate - upper;
            delivered = upper;
            ++res.steps_above_band;
        } else if (candidate < lower) {
            double draw = lower - candidate;
            if (cfg.storage_cap_mwh) {
                const double available = storage + *cfg.storage_cap_mwh;
                if (draw > available) draw = std::max(available, 0.0);
            }
            storage -= draw;
            delivered = candidate + draw;
            ++res.steps_below_band;
        } else {
            delivered = candidate;
            ++res.steps_in_band;
        }

        if (cfg.storage_cap_mwh) {
            // deficit counts newly unserved demand, not the carried backlog
            const double new_backlog = std::max(0.0, lower - delivered);
            res.deficit_total_mwh += std::max(0.0, new_backlog - backlog);
            if (new_backlog > 0.0) ++res.deficit_steps;
            backlog = new_backlog;
        }

        double wasted_step = 0.0;
        if (storage > 0.0) {
            wasted_step = storage;
            wasted.add(storage);
            storage = 0.0;
        }
        e_sfmax = std::max(e_sfmax, -storage);

        if (cfg.track_trajectories) {
            traj_delivered.push_back(delivered);
            traj_storage.push_back(storage);
            traj_wasted.push_back(wasted_step / dt_h);
        }
    }

    res.e_sfmax_mwh = e_sfmax;
    res.wasted_total_mwh = wasted.value();
    if (cfg.track_trajectories) {
        res.delivered.emplace(demand_energy.start(), demand_energy.step(),
                              std::move(traj_delivered));
        res.storage.emplace(demand_energy.start(), demand_energy.step(),
                            std::move(traj_storage));
        res.wasted_power.emplace(volatile_power.start(), volatile_power.step(),
                                 std::move(traj_wasted), Channel::derived);
    }
    return res;
}

std::pair<PowerSeries, double> wasted_power_stats(const SimulationResult& r,
                                                  std::chrono::minutes window) {
    if (!r.wasted_power) {
        throw ValidationError("wasted_power_stats: result carries no "
                              "wasted-power trajectory (run with "
                              "track_trajectories)");
    }
    const PowerSeries& w = *r.wasted_power;
    if (window.count() <= 0 || window.count() % w.step().count() != 0) {
        throw GridError("wasted_power_stats: window of " +
                        std::to_string(window.count()) +
                        " min is not a positive multiple of the " +
                        std::to_string(w.step().count()) + " min step");
    }

    const std::int64_t n = static_cast<std::int64_t>(w.size());
    const std::int64_t half = window.count() / w.step().count() / 2;

    // Prefix sums make every window O(1); the trajectory is non-negative so
    // the plain prefix is stable enough.
    std::vector<double> prefix(w.size() + 1, 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        prefix[static_cast<std::size_t>(i) + 1] =
            prefix[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(i)];
    }

    std::vector<double> rolling(w.size());
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t lo = std::max<std::int64_t>(0, i - half);
        const std::int64_t hi = std::min<std::int64_t>(n - 1, i + half);
        rolling[static_cast<std::size_t>(i)] =
            (prefix[static_cast<std::size_t>(hi) + 1] -
             prefix[static_cast<std::size_t>(lo)]) /
            static_cast<double>(hi - lo + 1);
    }

    const double annual = compensated_mean(w.values());
    return {PowerSeries(w.start(), w.step(), std::move(rolling),
                        Channel::derived),
            annual};
}

PassiveEquivalence passive_equivalence_check(const EnergySeries& demand_energy,
                                             const PowerSeries& volatile_power) {
    ScenarioConfig cfg;
    cfg.model = SurplusModel{SurplusKind::constant_scaling, 0.0, 2.0, 0.0};
    cfg.tau = std::chrono::minutes(0);
    const SimulationResult sim =
        simulate(demand_energy, volatile_power, nullptr, cfg);

    // Unclamped cumulative generation minus demand, then its maximum
    // drawdown via a running maximum.
    const double dt_h = volatile_power.dt_hours();
    double cum = 0.0;
    double run_max = 0.0;
    double drawdown = 0.0;
    double gen = 0.0;
    for (std::size_t k = 0; k < volatile_power.size(); ++k) {
        gen += volatile_power[k] * dt_h;
        cum = gen - demand_energy[k + 1];
        run_max = std::max(run_max, cum);
        drawdown = std::max(drawdown, run_max - cum);
    }
    return PassiveEquivalence{sim.e_sfmax_mwh, drawdown};
}

} // namespace flexstor
