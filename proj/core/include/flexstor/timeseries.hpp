#pragma once

#include "flexstor/timestamp.hpp"

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace flexstor {

enum class Channel { load, solar, wind_onshore, wind_offshore, derived };

std::string_view to_string(Channel c);
Channel channel_from_string(std::string_view s);

/// Uniformly sampled instantaneous power, in MW. Sample k is the metered
/// interval average over [start + k*step, start + (k+1)*step). Immutable
/// after construction; generation and load channels must be non-negative,
/// `derived` may be signed (fluctuation parts).
class PowerSeries {
public:
    PowerSeries(UtcTime start, std::chrono::minutes step,
                std::vector<double> values_mw, Channel channel);

    UtcTime start() const { return start_; }
    std::chrono::minutes step() const { return step_; }
    Channel channel() const { return channel_; }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    UtcTime time_at(std::size_t i) const {
        return start_ + step_ * static_cast<int>(i);
    }
    /// Step width in hours; MW * dt_hours() = MWh.
    double dt_hours() const { return step_.count() / 60.0; }
    /// Compensated arithmetic mean.
    double mean_mw() const;

    bool same_grid(const PowerSeries& other) const {
        return start_ == other.start_ && step_ == other.step_ &&
               size() == other.size();
    }

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    UtcTime start_;
    std::chrono::minutes step_;
    std::vector<double> values_;
    Channel channel_;
};

/// Cumulative energy at grid nodes, in MWh. A PowerSeries of n samples
/// integrates to n+1 nodes; values_[0] sits at start and is the integration
/// constant (0 for all series built here).
class EnergySeries {
public:
    EnergySeries(UtcTime start, std::chrono::minutes step,
                 std::vector<double> values_mwh);

    UtcTime start() const { return start_; }
    std::chrono::minutes step() const { return step_; }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }

    UtcTime time_at(std::size_t i) const {
        return start_ + step_ * static_cast<int>(i);
    }
    double dt_hours() const { return step_.count() / 60.0; }

    bool same_grid(const EnergySeries& other) const {
        return start_ == other.start_ && step_ == other.step_ &&
               size() == other.size();
    }

    friend bool operator==(const EnergySeries&, const EnergySeries&) = default;

private:
    UtcTime start_;
    std::chrono::minutes step_;
    std::vector<double> values_;
};

struct DatasetMeta {
    std::string source;
    int year = 0;

    friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

/// The four measured channels of one observation period, on one shared grid.
class Dataset {
public:
    Dataset(PowerSeries load, PowerSeries solar, PowerSeries wind_onshore,
            PowerSeries wind_offshore, DatasetMeta meta);

    const PowerSeries& load() const { return load_; }
    const PowerSeries& solar() const { return solar_; }
    const PowerSeries& wind_onshore() const { return wind_onshore_; }
    const PowerSeries& wind_offshore() const { return wind_offshore_; }
    const DatasetMeta& meta() const { return meta_; }

    std::size_t size() const { return load_.size(); }
    UtcTime start() const { return load_.start(); }
    std::chrono::minutes step() const { return load_.step(); }

    /// Equality is over the measured data; metadata is provenance and the
    /// canonical file format does not carry it.
    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.load_ == b.load_ && a.solar_ == b.solar_ &&
               a.wind_onshore_ == b.wind_onshore_ &&
               a.wind_offshore_ == b.wind_offshore_;
    }

private:
    PowerSeries load_;
    PowerSeries solar_;
    PowerSeries wind_onshore_;
    PowerSeries wind_offshore_;
    DatasetMeta meta_;
};

/// Pointwise solar + onshore wind + offshore wind; the combined volatile
/// generation the storage has to absorb.
PowerSeries total_volatile(const Dataset& d);

} // namespace flexstor
