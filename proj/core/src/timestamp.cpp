#include "flexstor/timestamp.hpp"

#include "flexstor/errors.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace flexstor {

namespace {

// Howard Hinnant's civil-date algorithms (public domain).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

Civil civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return {y + (m <= 2), m, d};
}

bool is_leap(std::int64_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr std::array<unsigned, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

unsigned parse_field(std::string_view s, std::size_t pos, std::size_t len,
                     std::string_view what) {
    unsigned v = 0;
    const char* first = s.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc() || ptr != first + len) {
        throw ParseError("bad " + std::string(what) + " in timestamp '" +
                         std::string(s) + "'");
    }
    return v;
}

} // namespace

UtcTime UtcTime::parse(std::string_view s) {
    if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' ||
        s[13] != ':' || s[16] != ':' || s[19] != 'Z') {
        throw ParseError("timestamp '" + std::string(s) +
                         "' is not of the form YYYY-MM-DDTHH:MM:SSZ");
    }
    const unsigned year = parse_field(s, 0, 4, "year");
    const unsigned month = parse_field(s, 5, 2, "month");
    const unsigned day = parse_field(s, 8, 2, "day");
    const unsigned hour = parse_field(s, 11, 2, "hour");
    const unsigned minute = parse_field(s, 14, 2, "minute");
    const unsigned second = parse_field(s, 17, 2, "second");
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) ||
        hour > 23 || minute > 59 || second > 59) {
        throw ParseError("timestamp '" + std::string(s) +
                         "' has out-of-range calendar fields");
    }
    return from_civil(static_cast<int>(year), month, day, hour, minute, second);
}

UtcTime UtcTime::from_civil(int year, unsigned month, unsigned day,
                            unsigned hour, unsigned minute, unsigned second) {
    const std::int64_t days = days_from_civil(year, month, day);
    return UtcTime(days * 86400 + hour * 3600 + minute * 60 + second);
}

std::string UtcTime::to_string() const {
    std::int64_t days = secs_ / 86400;
    std::int64_t rem = secs_ % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    const Civil c = civil_from_days(days);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(c.year), c.month, c.day,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return std::string(buf);
}

int UtcTime::year() const {
    std::int64_t days = secs_ / 86400;
    if (secs_ % 86400 < 0) days -= 1;
    return static_cast<int>(civil_from_days(days).year);
}

} // namespace flexstor
