#include "reso/audio_io.hpp"

#include "reso/errors.hpp"
#include "reso/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace reso {

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 24) & 0xff);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0]) | (static_cast<std::uint16_t>(p[1]) << 8);
}

} // namespace

std::int16_t quantize16(double sample) {
    const double clamped = std::clamp(sample, -1.0, 1.0 - 1.0 / 32768.0);
    const double scaled = clamped * 32768.0;
    // round half away from zero
    const double rounded = scaled >= 0.0 ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
    return static_cast<std::int16_t>(std::clamp(rounded, -32768.0, 32767.0));
}

double quantize_roundtrip(double sample) {
    return static_cast<double>(quantize16(sample)) / 32768.0;
}

void write_wav(const std::string& path, const AudioBuffer& buffer) {
    for (double s : buffer.samples)
        if (!std::isfinite(s)) throw IoError("refusing to write non-finite samples");

    const auto n = static_cast<std::uint32_t>(buffer.samples.size());
    const auto rate = static_cast<std::uint32_t>(std::lround(buffer.sample_rate));
    std::vector<unsigned char> out;
    out.reserve(44 + 2 * n);
    const char* riff = "RIFF";
    out.insert(out.end(), riff, riff + 4);
    put_u32(out, 36 + 2 * n);
    const char* wavefmt = "WAVEfmt ";
    out.insert(out.end(), wavefmt, wavefmt + 8);
    put_u32(out, 16);        // fmt chunk size
    put_u16(out, 1);         // PCM
    put_u16(out, 1);         // mono
    put_u32(out, rate);
    put_u32(out, rate * 2);  // byte rate
    put_u16(out, 2);         // block align
    put_u16(out, 16);        // bits per sample
    const char* data = "data";
    out.insert(out.end(), data, data + 4);
    put_u32(out, 2 * n);
    for (double s : buffer.samples) {
        const std::int16_t q = quantize16(s);
        put_u16(out, static_cast<std::uint16_t>(q));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed for " + path);
}

AudioBuffer read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw Corrupt(path + ": not a RIFF/WAVE file");

    std::uint32_t rate = 0;
    std::uint16_t bits = 0, channels = 0, format = 0;
    bool have_fmt = false;
    std::size_t pos = 12;
    AudioBuffer buffer;
    bool have_data = false;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const std::uint32_t size = get_u32(bytes.data() + pos + 4);
        const std::size_t body = pos + 8;
        if (body + size > bytes.size())
            throw Corrupt(path + ": truncated chunk");
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16) throw Corrupt(path + ": short fmt chunk");
            format = get_u16(bytes.data() + body);
            channels = get_u16(bytes.data() + body + 2);
            rate = get_u32(bytes.data() + body + 4);
            bits = get_u16(bytes.data() + body + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            if (!have_fmt) throw Corrupt(path + ": data chunk precedes fmt");
            if (format != 1 || bits != 16)
                throw UnsupportedFormat(path + ": only 16-bit PCM is supported");
            if (channels != 1)
                throw UnsupportedFormat(path + ": only mono is supported");
            buffer.sample_rate = static_cast<double>(rate);
            buffer.samples.resize(size / 2);
            for (std::size_t i = 0; i < buffer.samples.size(); ++i) {
                const auto raw = static_cast<std::int16_t>(get_u16(bytes.data() + body + 2 * i));
                buffer.samples[i] = static_cast<double>(raw) / 32768.0;
            }
            have_data = true;
        }
        pos = body + size + (size & 1);
    }
    if (!have_fmt || !have_data) throw Corrupt(path + ": missing fmt or data chunk");
    return buffer;
}

AudioBuffer synth_test_signal(const TestSignalSpec& spec) {
    const double nyquist = spec.sample_rate / 2.0;
    const auto n = static_cast<std::size_t>(std::lround(spec.duration_s * spec.sample_rate));
    AudioBuffer out(spec.sample_rate, std::vector<double>(n, 0.0));
    GaussianRng rng(mix_seed(spec.seed, 0x5afe));

    switch (spec.kind) {
        case TestSignalKind::Tone: {
            if (spec.freq_hz >= nyquist)
                throw NyquistViolation("tone frequency above Nyquist");
            const double w = 2.0 * M_PI * spec.freq_hz / spec.sample_rate;
            for (std::size_t i = 0; i < n; ++i)
                out.samples[i] = std::sin(w * static_cast<double>(i));
            break;
        }
        case TestSignalKind::BandNoise: {
            if (spec.band_hi_hz >= nyquist || spec.band_lo_hz >= spec.band_hi_hz)
                throw NyquistViolation("band noise edges invalid for this rate");
            // white noise, then a coarse spectral trim via time-domain
            // resonant shaping is avoided: simple white synthesis followed
            // by FFT masking happens in the capture module; here a plain
            // sum of seeded sinusoids across the band keeps it exact.
            const double step = std::max(1.0, (spec.band_hi_hz - spec.band_lo_hz) / 400.0);
            for (double f = spec.band_lo_hz; f <= spec.band_hi_hz; f += step) {
                const double phase = rng.uniform(0.0, 2.0 * M_PI);
                const double amp = 0.5 + rng.uniform01();
                const double w = 2.0 * M_PI * f / spec.sample_rate;
                for (std::size_t i = 0; i < n; ++i)
                    out.samples[i] += amp * std::sin(w * static_cast<double>(i) + phase);
            }
            break;
        }
        case TestSignalKind::HarmonicVoice: {
            const double f0 = spec.freq_hz > 0.0 ? spec.freq_hz : 120.0;
            if (f0 >= nyquist) throw NyquistViolation("f0 above Nyquist");
            // Slight per-seed detune so trials differ without changing the
            // overall register.
            const double f0_used = f0 * (1.0 + 0.02 * (rng.uniform01() - 0.5));
            // harmonics are confined to [band_lo, band_hi]; the voice is the
            // probe signal for a band-limited channel, so content outside the
            // band would only measure what the channel never carried
            const double lo = std::max(spec.band_lo_hz, 0.0);
            const double hi = std::min(spec.band_hi_hz, 0.95 * nyquist);
            const int harmonics = static_cast<int>(std::floor(hi / f0_used));
            std::vector<double> phases(static_cast<std::size_t>(harmonics));
            for (auto& p : phases) p = rng.uniform(0.0, 2.0 * M_PI);
            const double q = 4.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i) / spec.sample_rate;
                const double frac = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
                // formant sweep across the middle of the band
                const double fc = lo + 0.1 * (hi - lo) + 0.8 * (hi - lo) * frac;
                double v = 0.0;
                for (int h = 1; h <= harmonics; ++h) {
                    const double f = f0_used * h;
                    if (f < lo || f > hi) continue;
                    const double r = f / fc;
                    // resonant 2-pole magnitude response
                    const double denom =
                        std::sqrt((1.0 - r * r) * (1.0 - r * r) + (r / q) * (r / q));
                    const double amp = 1.0 / std::max(denom, 1e-3);
                    v += amp * std::sin(2.0 * M_PI * f * t +
                                        phases[static_cast<std::size_t>(h - 1)]);
                }
                out.samples[i] = v;
            }
            break;
        }
    }

    const double rms = out.rms();
    if (rms > 0.0) {
        const double scale = 0.1 / rms;
        for (auto& s : out.samples) s *= scale;
    }
    return out;
}

} // namespace reso
