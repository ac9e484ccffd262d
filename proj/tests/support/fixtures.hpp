#pragma once

#include "flexstor/decomposition.hpp"
#include "flexstor/synth.hpp"
#include "flexstor/timeseries.hpp"

#include "oracles.hpp"

#include <chrono>
#include <utility>
#include <vector>

namespace flexstor::testing {

inline const UtcTime kStart2019 = UtcTime::from_civil(2019, 1, 1);

inline PowerSeries make_series(std::vector<double> values_mw,
                               std::chrono::minutes step = std::chrono::minutes(15),
                               Channel ch = Channel::derived,
                               UtcTime start = kStart2019) {
    return PowerSeries(start, step, std::move(values_mw), ch);
}

inline PowerSeries constant_series(double mw, std::size_t n,
                                   std::chrono::minutes step = std::chrono::minutes(15),
                                   Channel ch = Channel::derived) {
    return make_series(std::vector<double>(n, mw), step, ch);
}

inline Dataset constant_dataset(double load_mw, double solar_mw,
                                double onshore_mw, double offshore_mw,
                                std::size_t n,
                                std::chrono::minutes step = std::chrono::minutes(15)) {
    return Dataset(constant_series(load_mw, n, step, Channel::load),
                   constant_series(solar_mw, n, step, Channel::solar),
                   constant_series(onshore_mw, n, step, Channel::wind_onshore),
                   constant_series(offshore_mw, n, step, Channel::wind_offshore),
                   DatasetMeta{"fixture", 2019});
}

/// Demand cumulative nodes for a load series, matching the left-rectangle
/// integration the library uses (recomputed here, not taken from decompose).
inline std::vector<double> demand_nodes(const std::vector<double>& load_mw,
                                        double dt_h) {
    std::vector<double> nodes(load_mw.size() + 1, 0.0);
    for (std::size_t k = 0; k < load_mw.size(); ++k) {
        nodes[k + 1] = nodes[k] + load_mw[k] * dt_h;
    }
    return nodes;
}

inline EnergySeries demand_energy_of(const std::vector<double>& load_mw,
                                     std::chrono::minutes step = std::chrono::minutes(15),
                                     UtcTime start = kStart2019) {
    return EnergySeries(start, step, demand_nodes(load_mw, step.count() / 60.0));
}

struct RandomInstance {
    std::vector<double> load_mw;
    std::vector<double> volatile_mw;
    std::chrono::minutes step{15};
};

inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_len,
                                      double load_floor_mw = 0.0) {
    RandomInstance inst;
    const std::size_t n =
        2 + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(max_len - 1));
    static constexpr int kStepChoices[] = {15, 30, 60};
    inst.step = std::chrono::minutes(kStepChoices[rng() % 3]);
    inst.load_mw.resize(n);
    inst.volatile_mw.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        inst.load_mw[i] = load_floor_mw + uniform(rng, 0.0, 50.0);
        inst.volatile_mw[i] = uniform(rng, 0.0, 60.0);
    }
    return inst;
}

} // namespace flexstor::testing
