#pragma once

#include "reso/arraydesign.hpp"
#include "reso/audio.hpp"
#include "reso/gainmodel.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace reso {

struct NoiseProfile {
    FreqBand band{20.0, 300.0};
    double level_db_spl = 60.0;
    std::uint64_t seed = 0;
};

struct ChannelModel {
    double distance_m = 1.0;
    double ref_distance_m = 0.05;
    double source_level_db_spl = 60.0;  // at ref_distance
    std::optional<NoiseProfile> ambient;
    double mic_self_noise_db_spl = 30.0;
    double calibration_db_spl = 100.0;  // dB SPL at digital full scale
    bool quantize = true;               // 16-bit quantization of each channel

    void validate() const;
};

struct MultiChannelCapture {
    std::vector<AudioBuffer> channels;
    ArrayDesign design;
    StitchPlan plan;
    std::vector<GainCurve> applied_curves;
};

// 1/r spherical spreading with absolute scale pinned so the source RMS maps
// to source_level dB SPL at the reference distance.
AudioBuffer propagate(const AudioBuffer& source, const ChannelModel& model);

// Band-limited white noise at the profile level; deterministic per seed.
AudioBuffer make_ambient_noise(const NoiseProfile& profile, std::size_t length,
                               double rate, double calibration_db_spl = 100.0);

// Acoustic mix (propagated source + ambient) filtered per element, then
// per-channel microphone self-noise and 16-bit quantization.
MultiChannelCapture capture_multichannel(const AudioBuffer& source,
                                         const ChannelModel& model,
                                         const ArrayDesign& design,
                                         const StitchPlan& plan,
                                         const std::vector<GainCurve>& curves,
                                         std::uint64_t seed);

// Single channel with unit gain everywhere.
AudioBuffer bare_microphone_capture(const AudioBuffer& source, const ChannelModel& model,
                                    std::uint64_t seed);

// Multiply the signal's spectrum bin-wise by the curve (linear interpolation
// between grid points, gain 1 outside the grid).
AudioBuffer apply_gain_curve(const AudioBuffer& signal, const GainCurve& curve);

} // namespace reso
