#pragma once

#include "flexstor/kvfile.hpp"
#include "flexstor/timeseries.hpp"

#include <cstdint>
#include <filesystem>

namespace flexstor {

enum class WaveKind { constant, sinusoid, square, noise };

WaveKind wave_kind_from_string(std::string_view s);

/// One channel of a synthetic dataset. `noise` draws uniform samples from
/// [offset - amplitude, offset + amplitude]; the periodic kinds use
/// offset + amplitude * wave(2*pi*t/period + phase).
struct WaveSpec {
    WaveKind kind = WaveKind::constant;
    double offset_mw = 0.0;
    double amplitude_mw = 0.0;
    double period_minutes = 1440.0;
    double phase_rad = 0.0;
};

struct SyntheticSpec {
    UtcTime start = UtcTime::from_civil(2019, 1, 1);
    std::chrono::minutes step{15};
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::string source = "synthetic";
    WaveSpec load;
    WaveSpec solar;
    WaveSpec wind_onshore;
    WaveSpec wind_offshore;
};

/// Deterministic in (spec, seed): the same spec always produces a
/// bit-identical Dataset. Throws ValidationError when a channel's amplitude
/// exceeds its offset (samples would go negative) or the spec is malformed.
Dataset synthesize(const SyntheticSpec& spec);

/// Reads a spec from flat key-value text. Channel keys are prefixed:
/// `load.kind`, `load.offset_mw`, `load.amplitude_mw`, `load.period_minutes`,
/// `load.phase_rad`, likewise `solar.`, `wind_onshore.`, `wind_offshore.`;
/// global keys: start, step_minutes, length, seed, source.
SyntheticSpec parse_synth_spec(const KvFile& kv);
SyntheticSpec parse_synth_spec_file(const std::filesystem::path& path);

} // namespace flexstor
