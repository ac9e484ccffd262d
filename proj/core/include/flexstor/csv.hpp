#pragma once

#include "flexstor/timeseries.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace flexstor {

/// Canonical dataset CSV header. The format is fixed: ISO-8601 UTC
/// timestamps at strict 15-minute spacing, MW values, decimal point,
/// LF line endings, no comment lines.
inline constexpr const char* kDatasetCsvHeader =
    "timestamp_utc,load_mw,solar_mw,wind_onshore_mw,wind_offshore_mw";

/// Spacing mandated by the canonical format.
inline constexpr std::chrono::minutes kCanonicalStep{15};

/// Reads a canonical dataset CSV. Throws ParseError (malformed header, row,
/// number, or timestamp, with line number), GridError (gaps or non-uniform
/// spacing, naming the offending instant) or ValidationError (negative or
/// non-finite generation/load, listing the offending rows).
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Writes the canonical CSV. Values are shortest-round-trip formatted, so
/// read_dataset_csv(write_dataset_csv(d)) == d exactly.
void write_dataset_csv(const Dataset& d, std::ostream& out);
void write_dataset_csv(const Dataset& d, const std::filesystem::path& path);

/// `timestamp_utc,value_mwh` export with optional leading '#' comment lines.
void write_energy_csv(const EnergySeries& e, std::ostream& out,
                      const std::vector<std::string>& comments = {});
void write_energy_csv(const EnergySeries& e, const std::filesystem::path& path,
                      const std::vector<std::string>& comments = {});

/// `timestamp_utc,value_mw` export for derived power signals.
void write_power_csv(const PowerSeries& p, std::ostream& out,
                     const std::string& value_header,
                     const std::vector<std::string>& comments = {});

/// Shortest-round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

/// Scalar energies for reports: GWh with 4 significant digits, switching to
/// TWh above 10^4 GWh.
std::string format_energy_mwh(double mwh);

} // namespace flexstor
