#include "flexstor/surplus.hpp"

#include "flexstor/errors.hpp"

#include <cmath>
#include <string>

namespace flexstor {

std::string_view to_string(SurplusKind k) {
    switch (k) {
        case SurplusKind::constant_scaling: return "constant";
        case SurplusKind::low_output_tanh: return "low_tanh";
        case SurplusKind::offshore_substitution: return "offshore";
    }
    return "constant";
}

SurplusKind surplus_kind_from_string(std::string_view s) {
    if (s == "constant") return SurplusKind::constant_scaling;
    if (s == "low_tanh") return SurplusKind::low_output_tanh;
    if (s == "offshore") return SurplusKind::offshore_substitution;
    throw ParseError("unknown surplus model '" + std::string(s) +
                     "', expected constant|low_tanh|offshore");
}

double low_output_power(double p_v_mw, double p_nom_mw, double gain) {
    if (p_nom_mw <= 0.0) {
        throw ValidationError("low_output_power: p_nom must be positive, got " +
                              std::to_string(p_nom_mw));
    }
    if (gain <= 0.0) {
        throw ValidationError("low_output_power: gain must be positive, got " +
                              std::to_string(gain));
    }
    if (p_v_mw < 0.0) {
        throw ValidationError("low_output_power: negative input power " +
                              std::to_string(p_v_mw));
    }
    return p_nom_mw * std::tanh(gain * p_v_mw / p_nom_mw);
}

double step_generation(const SurplusModel& model, double p_v_mw,
                       std::optional<double> p_off_mw, double dt_hours) {
    if (model.alpha < 0.0) {
        throw ValidationError("surplus strength alpha must be non-negative, "
                              "got " + std::to_string(model.alpha));
    }
    switch (model.kind) {
        case SurplusKind::constant_scaling:
            return (1.0 + model.alpha) * p_v_mw * dt_hours;
        case SurplusKind::low_output_tanh:
            return (p_v_mw + model.alpha * low_output_power(p_v_mw,
                                                            model.p_nom_mw,
                                                            model.gain)) *
                   dt_hours;
        case SurplusKind::offshore_substitution:
            if (!p_off_mw) {
                throw ValidationError("offshore surplus model needs an "
                                      "offshore sample");
            }
            return (p_v_mw + model.alpha * *p_off_mw) * dt_hours;
    }
    throw ValidationError("unknown surplus model kind");
}

} // namespace flexstor
