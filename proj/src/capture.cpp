#include "reso/capture.hpp"

#include "reso/errors.hpp"
#include "reso/fft.hpp"
#include "reso/audio_io.hpp"
#include "reso/rng.hpp"

#include <algorithm>
#include <cmath>

namespace reso {

void ChannelModel::validate() const {
    if (ref_distance_m <= 0.0) throw OutOfDomain("ref_distance must be positive");
    if (distance_m < ref_distance_m)
        throw OutOfDomain("distance must be >= ref_distance");
    if (source_level_db_spl < 0.0 || mic_self_noise_db_spl < 0.0 ||
        calibration_db_spl < 0.0)
        throw OutOfDomain("levels must be non-negative");
    if (ambient) {
        if (ambient->band.lo_hz < 0.0 || ambient->band.lo_hz >= ambient->band.hi_hz)
            throw OutOfDomain("ambient band invalid");
        if (ambient->level_db_spl < 0.0) throw OutOfDomain("ambient level negative");
    }
}

AudioBuffer propagate(const AudioBuffer& source, const ChannelModel& model) {
    model.validate();
    AudioBuffer out = source;
    const double rms = source.rms();
    if (rms <= 0.0) {
        std::fill(out.samples.begin(), out.samples.end(), 0.0);
        return out;
    }
    const double ref_rms = dbspl_to_fs(model.source_level_db_spl, model.calibration_db_spl);
    const double scale = (ref_rms / rms) * (model.ref_distance_m / model.distance_m);
    for (auto& s : out.samples) s *= scale;
    return out;
}

AudioBuffer make_ambient_noise(const NoiseProfile& profile, std::size_t length,
                               double rate, double calibration_db_spl) {
    if (length == 0) return AudioBuffer(rate, {});
    GaussianRng rng(mix_seed(profile.seed, 0xa0b1e47ULL));
    std::vector<double> white(length);
    for (auto& s : white) s = rng.gaussian();

    auto spectrum = fft_real(white);
    const auto n = length;
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = static_cast<double>(std::min(k, n - k)) * rate / static_cast<double>(n);
        if (f < profile.band.lo_hz || f > profile.band.hi_hz) {
            spectrum[k] = 0.0;
        } else {
            any = true;
        }
    }
    if (!any) throw EmptyBand("noise band covers no FFT bins at this length/rate");

    AudioBuffer out(rate, ifft_to_real(spectrum));
    const double rms = out.rms();
    const double target = dbspl_to_fs(profile.level_db_spl, calibration_db_spl);
    if (rms > 0.0) {
        const double scale = target / rms;
        for (auto& s : out.samples) s *= scale;
    }
    return out;
}

AudioBuffer apply_gain_curve(const AudioBuffer& signal, const GainCurve& curve) {
    if (signal.samples.empty()) return signal;
    auto spectrum = fft_real(signal.samples);
    const std::size_t n = spectrum.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double f =
            static_cast<double>(std::min(k, n - k)) * signal.sample_rate / static_cast<double>(n);
        spectrum[k] *= curve.value_at(f);
    }
    return AudioBuffer(signal.sample_rate, ifft_to_real(spectrum));
}

namespace {

void add_self_noise(AudioBuffer& channel, double level_db_spl, double calibration,
                    std::uint64_t seed) {
    const double rms = dbspl_to_fs(level_db_spl, calibration);
    GaussianRng rng(seed);
    for (auto& s : channel.samples) s += rms * rng.gaussian();
}

void quantize_buffer(AudioBuffer& channel) {
    for (auto& s : channel.samples) s = quantize_roundtrip(s);
}

} // namespace

MultiChannelCapture capture_multichannel(const AudioBuffer& source,
                                         const ChannelModel& model,
                                         const ArrayDesign& design,
                                         const StitchPlan& plan,
                                         const std::vector<GainCurve>& curves,
                                         std::uint64_t seed) {
    model.validate();
    if (curves.size() != design.elements.size())
        throw ConfigError("one gain curve per array element required");

    AudioBuffer mix = propagate(source, model);
    if (model.ambient && !mix.samples.empty()) {
        AudioBuffer noise = make_ambient_noise(*model.ambient, mix.samples.size(),
                                               mix.sample_rate, model.calibration_db_spl);
        for (std::size_t i = 0; i < mix.samples.size(); ++i)
            mix.samples[i] += noise.samples[i];
    }

    MultiChannelCapture capture;
    capture.design = design;
    capture.plan = plan;
    capture.applied_curves = curves;
    capture.channels.resize(curves.size());
    for (std::size_t ch = 0; ch < curves.size(); ++ch) {
        AudioBuffer y = apply_gain_curve(mix, curves[ch]);
        if (model.mic_self_noise_db_spl > 0.0 && !y.samples.empty())
            add_self_noise(y, model.mic_self_noise_db_spl, model.calibration_db_spl,
                           mix_seed(seed, 0xc4a2ULL + ch));
        if (model.quantize) quantize_buffer(y);
        capture.channels[ch] = std::move(y);
    }
    return capture;
}

AudioBuffer bare_microphone_capture(const AudioBuffer& source, const ChannelModel& model,
                                    std::uint64_t seed) {
    ArrayDesign design;
    design.target_range = {0.0, source.sample_rate / 2.0};
    ArrayElement e;
    e.label = "bare";
    e.band = design.target_range;
    design.elements.push_back(e);

    GainCurve unit;
    unit.freq_lo = 0.0;
    unit.freq_step = source.sample_rate / 2.0;
    unit.gains = {1.0, 1.0, 1.0};

    StitchPlan plan;
    plan.segments.push_back({0.0, source.sample_rate / 2.0, "bare"});

    auto capture = capture_multichannel(source, model, design, plan, {unit}, seed);
    return capture.channels.front();
}

} // namespace reso
