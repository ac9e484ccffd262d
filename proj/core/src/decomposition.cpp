#include "flexstor/decomposition.hpp"

#include "flexstor/errors.hpp"
#include "flexstor/numeric.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace flexstor {

Decomposition decompose(const PowerSeries& p) {
    const std::size_t n = p.size();
    const double dt_h = p.dt_hours();
    const double average = p.mean_mw();

    std::vector<double> fluct(n);
    for (std::size_t i = 0; i < n; ++i) fluct[i] = p[i] - average;

    // Signed residuals cancel, so the fluctuation integral is compensated.
    std::vector<double> cum_fluct(n + 1);
    CompensatedSum acc;
    cum_fluct[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc.add(fluct[i] * dt_h);
        cum_fluct[i + 1] = acc.value();
    }

    // The total integral is a plain running sum: adding non-negative terms
    // keeps the prefix monotone in floating point, which downstream demand
    // validation relies on.
    std::vector<double> cum_total(n + 1);
    cum_total[0] = 0.0;
    double run = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        run += p[i] * dt_h;
        cum_total[i + 1] = run;
    }

    return Decomposition{
        average,
        PowerSeries(p.start(), p.step(), std::move(fluct), Channel::derived),
        EnergySeries(p.start(), p.step(), std::move(cum_fluct)),
        EnergySeries(p.start(), p.step(), std::move(cum_total))};
}

EnergySeries storage_fluctuation(const Decomposition& volatile_part,
                                 const Decomposition& demand_part) {
    const EnergySeries& evf = volatile_part.cumulative_fluct;
    const EnergySeries& edf = demand_part.cumulative_fluct;
    if (!evf.same_grid(edf)) {
        throw GridError("storage_fluctuation: decompositions are on "
                        "different grids");
    }
    std::vector<double> diff(evf.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = evf[i] - edf[i];
    return EnergySeries(evf.start(), evf.step(), std::move(diff));
}

double passive_storage_requirement(const EnergySeries& e_sf) {
    const auto [lo, hi] =
        std::minmax_element(e_sf.values().begin(), e_sf.values().end());
    return *hi - *lo;
}

PowerSeries scale_to_demand(const PowerSeries& p, double target_average_mw) {
    const double mean = p.mean_mw();
    if (mean <= 0.0) {
        throw ValidationError("cannot scale a series with non-positive mean " +
                              std::to_string(mean) + " MW");
    }
    if (target_average_mw <= 0.0) {
        throw ValidationError("target average must be positive, got " +
                              std::to_string(target_average_mw) + " MW");
    }
    const double factor = target_average_mw / mean;
    std::vector<double> scaled(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) scaled[i] = p[i] * factor;
    return PowerSeries(p.start(), p.step(), std::move(scaled), p.channel());
}

} // namespace flexstor
