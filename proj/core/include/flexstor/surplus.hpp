#pragma once

#include "flexstor/timeseries.hpp"

#include <optional>
#include <string_view>

namespace flexstor {

/// How the surplus generation fleet produces on top of the base volatile
/// power:
///   constant_scaling      — every sample scaled by (1 + alpha)
///   low_output_tanh       — alpha times a saturating low-output fleet,
///                           p_nom * tanh(gain * P_v / p_nom)
///   offshore_substitution — alpha times the offshore channel scaled to the
///                           demand average
enum class SurplusKind { constant_scaling, low_output_tanh, offshore_substitution };

std::string_view to_string(SurplusKind k);
SurplusKind surplus_kind_from_string(std::string_view s);

struct SurplusModel {
    SurplusKind kind = SurplusKind::constant_scaling;
    double alpha = 0.0;
    /// Low-output boost of the weak-resource fleet relative to the stock
    /// fleet. 2 reflects enlarged blades plus greater hub height.
    double gain = 2.0;
    /// Saturation level of the low-output fleet. <= 0 means "resolve to the
    /// volatile average" at simulation setup.
    double p_nom_mw = 0.0;
};

/// Output of a weak-wind / low-light fleet driven by resource level p_v:
/// p_nom * tanh(gain * p_v / p_nom). Strictly increasing, concave, bounded
/// by p_nom, initial slope = gain.
double low_output_power(double p_v_mw, double p_nom_mw, double gain);

/// Energy delivered by generation in one step of dt_hours, in MWh. p_off_mw
/// must be present exactly for offshore_substitution. Never less than
/// p_v_mw * dt (surplus only adds).
double step_generation(const SurplusModel& model, double p_v_mw,
                       std::optional<double> p_off_mw, double dt_hours);

} // namespace flexstor
