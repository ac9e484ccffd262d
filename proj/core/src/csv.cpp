#include "flexstor/csv.hpp"

#include "flexstor/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace flexstor {

std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string format_energy_mwh(double mwh) {
    const double gwh = mwh / 1e3;
    char buf[48];
    if (std::abs(gwh) >= 1e4) {
        std::snprintf(buf, sizeof buf, "%.4g TWh", gwh / 1e3);
    } else {
        std::snprintf(buf, sizeof buf, "%.4g GWh", gwh);
    }
    return buf;
}

namespace {

double parse_value(std::string_view field, std::size_t lineno,
                   std::string_view column) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || field.empty()) {
        throw ParseError("malformed " + std::string(column) + " value '" +
                             std::string(field) + "'",
                         lineno);
    }
    return v;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

Dataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open dataset file '" + path.string() + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("dataset file '" + path.string() +
                         "' is empty, expected header '" +
                         std::string(kDatasetCsvHeader) + "'");
    }
    if (strip_cr(line) != kDatasetCsvHeader) {
        throw ParseError("bad header '" + line + "', expected '" +
                             std::string(kDatasetCsvHeader) + "'",
                         1);
    }

    std::vector<double> load, solar, onshore, offshore;
    UtcTime start;
    std::size_t lineno = 1;
    std::vector<std::string> offenders;

    static constexpr std::array<std::string_view, 4> columns = {
        "load_mw", "solar_mw", "wind_onshore_mw", "wind_offshore_mw"};

    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) {
            throw ParseError("blank row", lineno);
        }
        std::array<std::string_view, 5> fields;
        std::string_view rest = line;
        for (std::size_t f = 0; f < 5; ++f) {
            const auto comma = rest.find(',');
            if (f < 4) {
                if (comma == std::string_view::npos) {
                    throw ParseError("expected 5 comma-separated fields", lineno);
                }
                fields[f] = rest.substr(0, comma);
                rest = rest.substr(comma + 1);
            } else {
                if (comma != std::string_view::npos) {
                    throw ParseError("expected 5 comma-separated fields", lineno);
                }
                fields[f] = rest;
            }
        }

        UtcTime t;
        try {
            t = UtcTime::parse(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }

        const std::size_t k = load.size();
        if (k == 0) {
            start = t;
        } else {
            const UtcTime expected = start + kCanonicalStep * static_cast<int>(k);
            if (t > expected) {
                throw GridError("missing sample at " + expected.to_string() +
                                " (line " + std::to_string(lineno) + " jumps to " +
                                t.to_string() + ")");
            }
            if (t < expected) {
                throw GridError("non-uniform timestamp " + t.to_string() +
                                " at line " + std::to_string(lineno) +
                                ", expected " + expected.to_string());
            }
        }

        std::array<double, 4> row{};
        for (std::size_t f = 0; f < 4; ++f) {
            row[f] = parse_value(fields[f + 1], lineno, columns[f]);
            if (!std::isfinite(row[f]) || row[f] < 0.0) {
                offenders.push_back("line " + std::to_string(lineno) + ": " +
                                    std::string(columns[f]) + "=" +
                                    std::string(fields[f + 1]));
            }
        }
        load.push_back(row[0]);
        solar.push_back(row[1]);
        onshore.push_back(row[2]);
        offshore.push_back(row[3]);
    }

    if (!offenders.empty()) {
        std::string msg = "negative or non-finite values in '" + path.string() +
                          "' (" + std::to_string(offenders.size()) + " rows):";
        const std::size_t shown = std::min<std::size_t>(offenders.size(), 8);
        for (std::size_t i = 0; i < shown; ++i) msg += "\n  " + offenders[i];
        if (offenders.size() > shown) {
            msg += "\n  ... and " + std::to_string(offenders.size() - shown) +
                   " more";
        }
        throw ValidationError(msg);
    }
    if (load.size() < 2) {
        throw ValidationError("dataset '" + path.string() + "' has " +
                              std::to_string(load.size()) +
                              " rows, need at least 2");
    }

    DatasetMeta meta{path.filename().string(), start.year()};
    return Dataset(
        PowerSeries(start, kCanonicalStep, std::move(load), Channel::load),
        PowerSeries(start, kCanonicalStep, std::move(solar), Channel::solar),
        PowerSeries(start, kCanonicalStep, std::move(onshore),
                    Channel::wind_onshore),
        PowerSeries(start, kCanonicalStep, std::move(offshore),
                    Channel::wind_offshore),
        std::move(meta));
}

void write_dataset_csv(const Dataset& d, std::ostream& out) {
    out << kDatasetCsvHeader << '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        out << d.load().time_at(i).to_string() << ','
            << format_double(d.load()[i]) << ',' << format_double(d.solar()[i])
            << ',' << format_double(d.wind_onshore()[i]) << ','
            << format_double(d.wind_offshore()[i]) << '\n';
    }
}

void write_dataset_csv(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open '" + path.string() + "' for writing");
    }
    write_dataset_csv(d, out);
}

void write_energy_csv(const EnergySeries& e, std::ostream& out,
                      const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "timestamp_utc,value_mwh\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
        out << e.time_at(i).to_string() << ',' << format_double(e[i]) << '\n';
    }
}

void write_energy_csv(const EnergySeries& e, const std::filesystem::path& path,
                      const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open '" + path.string() + "' for writing");
    }
    write_energy_csv(e, out, comments);
}

void write_power_csv(const PowerSeries& p, std::ostream& out,
                     const std::string& value_header,
                     const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "timestamp_utc," << value_header << '\n';
    for (std::size_t i = 0; i < p.size(); ++i) {
        out << p.time_at(i).to_string() << ',' << format_double(p[i]) << '\n';
    }
}

} // namespace flexstor
