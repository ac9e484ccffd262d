#include "flexstor/timeseries.hpp"

#include "flexstor/errors.hpp"
#include "flexstor/numeric.hpp"

#include <cmath>
#include <utility>

namespace flexstor {

std::string_view to_string(Channel c) {
    switch (c) {
        case Channel::load: return "load";
        case Channel::solar: return "solar";
        case Channel::wind_onshore: return "wind_onshore";
        case Channel::wind_offshore: return "wind_offshore";
        case Channel::derived: return "derived";
    }
    return "derived";
}

Channel channel_from_string(std::string_view s) {
    if (s == "load") return Channel::load;
    if (s == "solar") return Channel::solar;
    if (s == "wind_onshore") return Channel::wind_onshore;
    if (s == "wind_offshore") return Channel::wind_offshore;
    if (s == "derived") return Channel::derived;
    throw ParseError("unknown channel '" + std::string(s) + "'");
}

PowerSeries::PowerSeries(UtcTime start, std::chrono::minutes step,
                         std::vector<double> values_mw, Channel channel)
    : start_(start), step_(step), values_(std::move(values_mw)),
      channel_(channel) {
    if (step_.count() <= 0) {
        throw ValidationError("power series step must be positive");
    }
    if (values_.size() < 2) {
        throw ValidationError("power series needs at least 2 samples, got " +
                              std::to_string(values_.size()));
    }
    const bool signed_ok = channel_ == Channel::derived;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("non-finite sample at index " +
                                  std::to_string(i) + " in channel " +
                                  std::string(to_string(channel_)));
        }
        if (!signed_ok && values_[i] < 0.0) {
            throw ValidationError("negative sample " +
                                  std::to_string(values_[i]) + " at index " +
                                  std::to_string(i) + " in channel " +
                                  std::string(to_string(channel_)));
        }
    }
}

double PowerSeries::mean_mw() const { return compensated_mean(values_); }

EnergySeries::EnergySeries(UtcTime start, std::chrono::minutes step,
                           std::vector<double> values_mwh)
    : start_(start), step_(step), values_(std::move(values_mwh)) {
    if (step_.count() <= 0) {
        throw ValidationError("energy series step must be positive");
    }
    if (values_.size() < 2) {
        throw ValidationError("energy series needs at least 2 nodes");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("non-finite energy at index " +
                                  std::to_string(i));
        }
    }
}

namespace {

void require_aligned(const PowerSeries& a, const PowerSeries& b,
                     std::string_view what) {
    if (!a.same_grid(b)) {
        throw GridError("dataset channels '" + std::string(to_string(a.channel())) +
                        "' and '" + std::string(to_string(b.channel())) +
                        "' are not on the same grid (" + std::string(what) + ")");
    }
}

void require_channel(const PowerSeries& s, Channel expected) {
    if (s.channel() != expected) {
        throw ValidationError("expected channel '" +
                              std::string(to_string(expected)) + "', got '" +
                              std::string(to_string(s.channel())) + "'");
    }
}

} // namespace

Dataset::Dataset(PowerSeries load, PowerSeries solar, PowerSeries wind_onshore,
                 PowerSeries wind_offshore, DatasetMeta meta)
    : load_(std::move(load)), solar_(std::move(solar)),
      wind_onshore_(std::move(wind_onshore)),
      wind_offshore_(std::move(wind_offshore)), meta_(std::move(meta)) {
    require_channel(load_, Channel::load);
    require_channel(solar_, Channel::solar);
    require_channel(wind_onshore_, Channel::wind_onshore);
    require_channel(wind_offshore_, Channel::wind_offshore);
    require_aligned(load_, solar_, "load vs solar");
    require_aligned(load_, wind_onshore_, "load vs wind_onshore");
    require_aligned(load_, wind_offshore_, "load vs wind_offshore");
}

PowerSeries total_volatile(const Dataset& d) {
    std::vector<double> sum(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        sum[i] = d.solar()[i] + d.wind_onshore()[i] + d.wind_offshore()[i];
    }
    return PowerSeries(d.start(), d.step(), std::move(sum), Channel::derived);
}

} // namespace flexstor
