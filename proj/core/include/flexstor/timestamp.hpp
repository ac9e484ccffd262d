#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace flexstor {

/// A UTC instant with second resolution. All series timestamps are strict UTC;
/// local-time inputs (and the DST fold they carry) are rejected upstream.
class UtcTime {
public:
    constexpr UtcTime() = default;
    explicit constexpr UtcTime(std::int64_t seconds_since_epoch)
        : secs_(seconds_since_epoch) {}

    /// Parses the canonical form `YYYY-MM-DDTHH:MM:SSZ`. Throws ParseError on
    /// anything else, including out-of-range calendar fields.
    static UtcTime parse(std::string_view iso8601);

    static UtcTime from_civil(int year, unsigned month, unsigned day,
                              unsigned hour = 0, unsigned minute = 0,
                              unsigned second = 0);

    /// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
    std::string to_string() const;

    constexpr std::int64_t seconds() const { return secs_; }
    int year() const;

    friend constexpr UtcTime operator+(UtcTime t, std::chrono::minutes d) {
        return UtcTime(t.secs_ + 60 * static_cast<std::int64_t>(d.count()));
    }
    friend constexpr std::chrono::seconds operator-(UtcTime a, UtcTime b) {
        return std::chrono::seconds(a.secs_ - b.secs_);
    }
    friend constexpr auto operator<=>(UtcTime, UtcTime) = default;

private:
    std::int64_t secs_ = 0;
};

} // namespace flexstor
