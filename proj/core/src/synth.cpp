#include "flexstor/synth.hpp"

#include "flexstor/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace flexstor {

WaveKind wave_kind_from_string(std::string_view s) {
    if (s == "constant") return WaveKind::constant;
    if (s == "sinusoid") return WaveKind::sinusoid;
    if (s == "square") return WaveKind::square;
    if (s == "noise") return WaveKind::noise;
    throw ParseError("unknown wave kind '" + std::string(s) +
                     "', expected constant|sinusoid|square|noise");
}

namespace {

constexpr std::uint64_t kChannelSalt = 0x9e3779b97f4a7c15ULL;

// Top 53 bits of the engine output; keeps noise channels bit-identical
// across standard library implementations (uniform_real_distribution is not
// pinned by the standard).
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> generate_channel(const WaveSpec& w, const SyntheticSpec& s,
                                     std::string_view name,
                                     std::uint64_t channel_index) {
    if (w.amplitude_mw < 0.0) {
        throw ValidationError("channel " + std::string(name) +
                              ": amplitude must be non-negative");
    }
    if (w.amplitude_mw > w.offset_mw) {
        throw ValidationError("channel " + std::string(name) + ": amplitude " +
                              std::to_string(w.amplitude_mw) +
                              " MW exceeds offset " +
                              std::to_string(w.offset_mw) +
                              " MW, samples would go negative");
    }
    if (w.kind != WaveKind::constant && w.kind != WaveKind::noise &&
        w.period_minutes <= 0.0) {
        throw ValidationError("channel " + std::string(name) +
                              ": period must be positive");
    }

    std::vector<double> out(s.length);
    const double dt_min = static_cast<double>(s.step.count());
    switch (w.kind) {
        case WaveKind::constant:
            for (auto& v : out) v = w.offset_mw;
            break;
        case WaveKind::sinusoid:
            for (std::size_t k = 0; k < out.size(); ++k) {
                const double arg = 2.0 * std::numbers::pi *
                                       (static_cast<double>(k) * dt_min) /
                                       w.period_minutes +
                                   w.phase_rad;
                out[k] = w.offset_mw + w.amplitude_mw * std::sin(arg);
            }
            break;
        case WaveKind::square:
            for (std::size_t k = 0; k < out.size(); ++k) {
                double pos = std::fmod(static_cast<double>(k) * dt_min /
                                               w.period_minutes +
                                           w.phase_rad /
                                               (2.0 * std::numbers::pi),
                                       1.0);
                if (pos < 0.0) pos += 1.0;
                out[k] = w.offset_mw + (pos < 0.5 ? w.amplitude_mw
                                                  : -w.amplitude_mw);
            }
            break;
        case WaveKind::noise: {
            std::mt19937_64 rng(s.seed + channel_index * kChannelSalt);
            for (auto& v : out) {
                v = w.offset_mw + w.amplitude_mw * (2.0 * unit_double(rng) - 1.0);
            }
            break;
        }
    }
    return out;
}

WaveSpec parse_wave(const KvFile& kv, const std::string& prefix) {
    WaveSpec w;
    if (const auto kind = kv.get(prefix + ".kind")) {
        w.kind = wave_kind_from_string(*kind);
    }
    if (const auto v = kv.get_double(prefix + ".offset_mw")) w.offset_mw = *v;
    if (const auto v = kv.get_double(prefix + ".amplitude_mw")) {
        w.amplitude_mw = *v;
    }
    if (const auto v = kv.get_double(prefix + ".period_minutes")) {
        w.period_minutes = *v;
    }
    if (const auto v = kv.get_double(prefix + ".phase_rad")) w.phase_rad = *v;
    return w;
}

} // namespace

Dataset synthesize(const SyntheticSpec& spec) {
    if (spec.length < 2) {
        throw ValidationError("synthetic spec needs length >= 2, got " +
                              std::to_string(spec.length));
    }
    if (spec.step.count() <= 0) {
        throw ValidationError("synthetic spec needs a positive step");
    }
    DatasetMeta meta{spec.source, spec.start.year()};
    return Dataset(
        PowerSeries(spec.start, spec.step,
                    generate_channel(spec.load, spec, "load", 1),
                    Channel::load),
        PowerSeries(spec.start, spec.step,
                    generate_channel(spec.solar, spec, "solar", 2),
                    Channel::solar),
        PowerSeries(spec.start, spec.step,
                    generate_channel(spec.wind_onshore, spec, "wind_onshore", 3),
                    Channel::wind_onshore),
        PowerSeries(spec.start, spec.step,
                    generate_channel(spec.wind_offshore, spec,
                                     "wind_offshore", 4),
                    Channel::wind_offshore),
        std::move(meta));
}

SyntheticSpec parse_synth_spec(const KvFile& kv) {
    kv.require_known({"start", "step_minutes", "length", "seed", "source",
                      "load.", "solar.", "wind_onshore.", "wind_offshore."});
    SyntheticSpec spec;
    if (const auto v = kv.get("start")) spec.start = UtcTime::parse(*v);
    if (const auto v = kv.get_int("step_minutes")) {
        spec.step = std::chrono::minutes(*v);
    }
    spec.length = static_cast<std::size_t>(
        kv.get_uint("length").value_or(0));
    if (const auto v = kv.get_uint("seed")) spec.seed = *v;
    if (const auto v = kv.get("source")) spec.source = *v;
    spec.load = parse_wave(kv, "load");
    spec.solar = parse_wave(kv, "solar");
    spec.wind_onshore = parse_wave(kv, "wind_onshore");
    spec.wind_offshore = parse_wave(kv, "wind_offshore");
    return spec;
}

SyntheticSpec parse_synth_spec_file(const std::filesystem::path& path) {
    return parse_synth_spec(KvFile::parse_file(path));
}

} // namespace flexstor
