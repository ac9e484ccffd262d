#pragma once

#include "flexstor/timeseries.hpp"

namespace flexstor {

/// Average/fluctuation split of a power signal with its cumulative energies.
/// fluctuation sums to zero over the period; cumulative_fluct starts at 0
/// and returns to 0 at the horizon end (up to accumulation error);
/// cumulative_total(t) == average_mw * t + cumulative_fluct(t) pointwise.
struct Decomposition {
    double average_mw = 0.0;
    PowerSeries fluctuation;
    EnergySeries cumulative_fluct;
    EnergySeries cumulative_total;
};

/// Splits into mean and residual and integrates both by left-rectangle sums
/// (sample k contributes value * dt over [t_k, t_k+dt); 15-minute metering
/// values are interval averages, so the rectangle sum is the exact energy).
Decomposition decompose(const PowerSeries& p);

/// E_sf = E_vf - E_df: cumulative energy a passive buffer absorbs when
/// average generation matches average demand. Throws GridError on mismatched
/// grids.
EnergySeries storage_fluctuation(const Decomposition& volatile_part,
                                 const Decomposition& demand_part);

/// Passive buffer size: max over t minus min over t of the signed cumulative
/// series. The buffer must span the full swing when nothing shifts demand.
double passive_storage_requirement(const EnergySeries& e_sf);

/// Multiplies every sample by target_average_mw / mean so the scaled series
/// meets the demand average. Throws ValidationError for non-positive mean or
/// target.
PowerSeries scale_to_demand(const PowerSeries& p, double target_average_mw);

} // namespace flexstor
