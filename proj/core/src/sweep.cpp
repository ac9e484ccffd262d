#include "flexstor/sweep.hpp"

#include "flexstor/errors.hpp"
#include "flexstor/kvfile.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <utility>

namespace flexstor {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
}

void fnv_double(std::uint64_t& h, double v) { fnv_bytes(h, &v, sizeof v); }

void fnv_i64(std::uint64_t& h, std::int64_t v) { fnv_bytes(h, &v, sizeof v); }

void fnv_series(std::uint64_t& h, const PowerSeries& s) {
    fnv_i64(h, s.start().seconds());
    fnv_i64(h, s.step().count());
    fnv_bytes(h, s.values().data(), s.values().size() * sizeof(double));
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

std::string InversionResult::status_string() const {
    if (status == Status::unreachable) return "unreachable";
    return non_monotone_row ? "ok_nonmonotone" : "ok";
}

std::vector<std::size_t> SweepGrid::non_monotone_rows() const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < e_sfmax_mwh.size(); ++i) {
        for (std::size_t j = 1; j < e_sfmax_mwh[i].size(); ++j) {
            if (e_sfmax_mwh[i][j] > e_sfmax_mwh[i][j - 1]) {
                rows.push_back(i);
                break;
            }
        }
    }
    return rows;
}

RowScan scan_row(std::span<const double> row, double target) {
    RowScan scan;
    scan.row_min = row.empty() ? 0.0 : row[0];
    for (std::size_t j = 0; j < row.size(); ++j) {
        scan.row_min = std::min(scan.row_min, row[j]);
        if (j > 0 && row[j] > row[j - 1]) scan.non_monotone = true;
        if (!scan.first_ok && row[j] <= target) scan.first_ok = j;
    }
    return scan;
}

ScenarioEngine::ScenarioEngine(EnergySeries demand_energy,
                               PowerSeries volatile_scaled,
                               std::optional<PowerSeries> offshore_scaled,
                               SurplusModel base_model, SweepOptions options)
    : demand_energy_(std::move(demand_energy)),
      volatile_scaled_(std::move(volatile_scaled)),
      offshore_scaled_(std::move(offshore_scaled)),
      base_model_(base_model), options_(std::move(options)) {
    const double horizon_h =
        static_cast<double>(volatile_scaled_.size()) * volatile_scaled_.dt_hours();
    demand_average_mw_ =
        (demand_energy_.back() - demand_energy_.front()) / horizon_h;
    if (base_model_.kind == SurplusKind::low_output_tanh &&
        base_model_.p_nom_mw <= 0.0) {
        base_model_.p_nom_mw = volatile_scaled_.mean_mw();
    }

    std::uint64_t h = kFnvOffset;
    fnv_i64(h, demand_energy_.start().seconds());
    fnv_i64(h, demand_energy_.step().count());
    fnv_bytes(h, demand_energy_.values().data(),
              demand_energy_.values().size() * sizeof(double));
    fnv_series(h, volatile_scaled_);
    if (offshore_scaled_) fnv_series(h, *offshore_scaled_);
    const auto kind = static_cast<std::int64_t>(base_model_.kind);
    fnv_i64(h, kind);
    fnv_double(h, base_model_.gain);
    fnv_double(h, base_model_.p_nom_mw);
    fnv_double(h, options_.storage_cap_mwh.value_or(-1.0));
    digest_ = h;
}

ScenarioEngine ScenarioEngine::from_dataset(const Dataset& d,
                                            SurplusModel base_model,
                                            SweepOptions options) {
    const Decomposition demand = decompose(d.load());
    PowerSeries volatile_scaled =
        scale_to_demand(total_volatile(d), demand.average_mw);
    std::optional<PowerSeries> offshore_scaled;
    if (base_model.kind == SurplusKind::offshore_substitution) {
        offshore_scaled =
            scale_to_demand(d.wind_offshore(), demand.average_mw);
    }
    return ScenarioEngine(demand.cumulative_total, std::move(volatile_scaled),
                          std::move(offshore_scaled), base_model,
                          std::move(options));
}

SimulationResult ScenarioEngine::run_uncached(double alpha,
                                              std::chrono::minutes tau) const {
    ScenarioConfig cfg;
    cfg.model = base_model_;
    cfg.model.alpha = alpha;
    cfg.tau = tau;
    cfg.track_trajectories = false;
    cfg.storage_cap_mwh = options_.storage_cap_mwh;
    const PowerSeries* offshore =
        offshore_scaled_ ? &*offshore_scaled_ : nullptr;
    return simulate(demand_energy_, volatile_scaled_, offshore, cfg);
}

SimulationResult ScenarioEngine::run(double alpha,
                                     std::chrono::minutes tau) const {
    if (!options_.cache_dir) return run_uncached(alpha, tau);

    std::uint64_t key = digest_;
    fnv_double(key, alpha);
    fnv_i64(key, tau.count());
    const std::filesystem::path file =
        *options_.cache_dir / ("run_" + hex64(key) + ".kv");

    if (std::filesystem::exists(file)) {
        try {
            const KvFile kv = KvFile::parse_file(file);
            // Echo fields guard against digest collisions and stale files.
            if (kv.get_double("alpha") == alpha &&
                kv.get_int("tau_minutes") == tau.count()) {
                SimulationResult res;
                res.e_sfmax_mwh = kv.require_double("e_sfmax_mwh");
                res.wasted_total_mwh = kv.require_double("wasted_total_mwh");
                res.steps_in_band = kv.get_uint("steps_in_band").value_or(0);
                res.steps_above_band =
                    kv.get_uint("steps_above_band").value_or(0);
                res.steps_below_band =
                    kv.get_uint("steps_below_band").value_or(0);
                res.deficit_total_mwh =
                    kv.get_double("deficit_total_mwh").value_or(0.0);
                res.deficit_steps = kv.get_uint("deficit_steps").value_or(0);
                return res;
            }
        } catch (const Error&) {
            // unreadable cache entry: fall through and recompute
        }
    }

    const SimulationResult res = run_uncached(alpha, tau);

    std::filesystem::create_directories(*options_.cache_dir);
    static std::atomic<unsigned> counter{0};
    std::ostringstream tmp_name;
    tmp_name << file.filename().string() << ".tmp." << std::random_device{}()
             << "." << counter.fetch_add(1);
    const std::filesystem::path tmp = *options_.cache_dir / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw ValidationError("cannot write cache file '" + tmp.string() +
                                  "'");
        }
        char buf[64];
        const auto emit_double = [&](const char* k, double v) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << k << " = " << buf << "\n";
        };
        emit_double("alpha", alpha);
        out << "tau_minutes = " << tau.count() << "\n";
        emit_double("e_sfmax_mwh", res.e_sfmax_mwh);
        emit_double("wasted_total_mwh", res.wasted_total_mwh);
        out << "steps_in_band = " << res.steps_in_band << "\n";
        out << "steps_above_band = " << res.steps_above_band << "\n";
        out << "steps_below_band = " << res.steps_below_band << "\n";
        emit_double("deficit_total_mwh", res.deficit_total_mwh);
        out << "deficit_steps = " << res.deficit_steps << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
    if (ec) std::filesystem::remove(tmp, ec);
    return res;
}

SweepGrid ScenarioEngine::surface(std::vector<double> alphas,
                                  std::vector<std::chrono::minutes> taus) const {
    if (alphas.empty() || taus.empty()) {
        throw ValidationError("sweep axes must be non-empty");
    }
    if (!std::is_sorted(alphas.begin(), alphas.end()) ||
        !std::is_sorted(taus.begin(), taus.end())) {
        throw ValidationError("sweep axes must be sorted ascending");
    }

    SweepGrid grid;
    grid.model = base_model_.kind;
    grid.e_sfmax_mwh.assign(alphas.size(),
                            std::vector<double>(taus.size(), 0.0));
    grid.wasted_mwh.assign(alphas.size(),
                           std::vector<double>(taus.size(), 0.0));

    const std::size_t cells = alphas.size() * taus.size();
    const unsigned threads = std::max(1u, options_.threads);
    const auto fill_cell = [&](std::size_t cell) {
        const std::size_t i = cell / taus.size();
        const std::size_t j = cell % taus.size();
        const SimulationResult res = run(alphas[i], taus[j]);
        grid.e_sfmax_mwh[i][j] = res.e_sfmax_mwh;
        grid.wasted_mwh[i][j] = res.wasted_total_mwh;
    };

    if (threads == 1 || cells < 2) {
        for (std::size_t c = 0; c < cells; ++c) fill_cell(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> workers;
        const unsigned used = std::min<unsigned>(threads,
                                                 static_cast<unsigned>(cells));
        workers.reserve(used);
        for (unsigned t = 0; t < used; ++t) {
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t c = next.fetch_add(1); c < cells;
                     c = next.fetch_add(1)) {
                    fill_cell(c);
                }
            }));
        }
        for (auto& w : workers) w.get();
    }

    grid.alphas = std::move(alphas);
    grid.taus = std::move(taus);
    return grid;
}

InversionResult ScenarioEngine::invert_tau(const SweepGrid& grid, double alpha,
                                           double target_mwh) const {
    const auto it = std::find(grid.alphas.begin(), grid.alphas.end(), alpha);
    if (it == grid.alphas.end()) {
        throw ValidationError("invert_tau: alpha " + std::to_string(alpha) +
                              " is not on the grid axis");
    }
    const std::size_t ai =
        static_cast<std::size_t>(std::distance(grid.alphas.begin(), it));
    const std::vector<double>& row = grid.e_sfmax_mwh[ai];
    const RowScan scan = scan_row(row, target_mwh);

    InversionResult res;
    res.non_monotone_row = scan.non_monotone;
    res.row_min_mwh = scan.row_min;
    if (!scan.first_ok) {
        res.status = InversionResult::Status::unreachable;
        res.achieved_mwh = scan.row_min;
        return res;
    }

    const std::size_t j = *scan.first_ok;
    std::chrono::minutes hi = grid.taus[j];
    double achieved = row[j];
    if (j > 0) {
        const std::chrono::minutes step = volatile_scaled_.step();
        std::chrono::minutes lo = grid.taus[j - 1]; // fails the target
        while ((hi - lo) > step) {
            const std::int64_t span_steps = (hi - lo).count() / step.count();
            const std::chrono::minutes mid = lo + step * (span_steps / 2);
            const SimulationResult sim = run(alpha, mid);
            if (sim.e_sfmax_mwh <= target_mwh) {
                hi = mid;
                achieved = sim.e_sfmax_mwh;
            } else {
                lo = mid;
            }
        }
    }

    res.status = InversionResult::Status::ok;
    res.tau = hi;
    res.achieved_mwh = achieved;
    return res;
}

SweepGrid sweep_surface(const Dataset& d, const SurplusModel& model,
                        std::vector<double> alphas,
                        std::vector<std::chrono::minutes> taus,
                        SweepOptions options) {
    return ScenarioEngine::from_dataset(d, model, std::move(options))
        .surface(std::move(alphas), std::move(taus));
}

InversionResult invert_tau(const ScenarioEngine& engine, const SweepGrid& grid,
                           double alpha, double target_mwh) {
    return engine.invert_tau(grid, alpha, target_mwh);
}

SweepGrid demand_rescale_preview(SweepGrid grid, double factor) {
    if (factor <= 0.0) {
        throw ValidationError("rescale factor must be positive, got " +
                              std::to_string(factor));
    }
    for (auto& row : grid.e_sfmax_mwh) {
        for (auto& v : row) v *= factor;
    }
    for (auto& row : grid.wasted_mwh) {
        for (auto& v : row) v *= factor;
    }
    return grid;
}

FleetSize fleet_size(const FleetSpec& spec) {
    if (spec.target_average_power_mw <= 0.0) {
        throw ValidationError("fleet: target average power must be positive");
    }
    if (spec.wind_capacity_factor <= 0.0 || spec.wind_capacity_factor > 1.0) {
        throw ValidationError("fleet: capacity factor must be in (0, 1]");
    }
    if (spec.solar_share < 0.0 || spec.solar_share >= 1.0) {
        throw ValidationError("fleet: solar share must be in [0, 1)");
    }
    if (spec.turbine_nominal_power_mw <= 0.0) {
        throw ValidationError("fleet: turbine rating must be positive");
    }
    FleetSize out;
    out.nominal_wind_power_mw = spec.target_average_power_mw *
                                (1.0 - spec.solar_share) /
                                spec.wind_capacity_factor;
    out.turbine_count = static_cast<std::uint64_t>(
        std::ceil(out.nominal_wind_power_mw / spec.turbine_nominal_power_mw));
    return out;
}

double cost_factor(double alpha) {
    if (alpha < 0.0) {
        throw ValidationError("cost factor: alpha must be non-negative");
    }
    return 1.0 + alpha;
}

std::vector<std::chrono::minutes> default_tau_axis() {
    std::vector<std::chrono::minutes> taus;
    for (int h = 0; h <= 48; ++h) taus.emplace_back(60 * h);
    return taus;
}

std::uint64_t dataset_digest(const Dataset& d) {
    std::uint64_t h = kFnvOffset;
    fnv_series(h, d.load());
    fnv_series(h, d.solar());
    fnv_series(h, d.wind_onshore());
    fnv_series(h, d.wind_offshore());
    return h;
}

} // namespace flexstor
