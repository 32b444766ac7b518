#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reso/audio_io.hpp"
#include "reso/errors.hpp"
#include "reso/fft.hpp"
#include "reso/rng.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace reso;

namespace {
std::string temp_wav(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
} // namespace

TEST_CASE("quantizer fixed points") {
    CHECK(quantize16(0.0) == 0);
    CHECK(quantize16(0.5) == 16384);
    CHECK(quantize16(1.0) == 32767);  // clamps to full scale minus one LSB
    CHECK(quantize16(-1.0) == -32768);
    CHECK(quantize16(2.5) == 32767);
    CHECK(quantize16(-2.5) == -32768);
}

TEST_CASE("WAV round-trip within one LSB") {
    GaussianRng rng(7);
    AudioBuffer buf(16000.0, {});
    buf.samples.resize(2048);
    for (auto& s : buf.samples) s = 0.8 * (rng.uniform01() * 2.0 - 1.0);

    const std::string path = temp_wav("reso_roundtrip.wav");
    write_wav(path, buf);
    const AudioBuffer back = read_wav(path);
    REQUIRE(back.samples.size() == buf.samples.size());
    CHECK(back.sample_rate == buf.sample_rate);
    for (std::size_t i = 0; i < buf.samples.size(); ++i)
        CHECK(std::abs(back.samples[i] - buf.samples[i]) <= 1.0 / 32768.0);
    std::remove(path.c_str());
}

TEST_CASE("corrupt and unsupported WAV files are rejected") {
    const std::string path = temp_wav("reso_bad.wav");

    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << "RIFFxxxxWAVE";
        f << "data";
        const char size[4] = {static_cast<char>(0xff), 0x00, 0x00, 0x00};
        f.write(size, 4);
        f << "ab"; // much shorter than declared
    }
    CHECK_THROWS_AS(read_wav(path), Corrupt);

    // valid layout but 24-bit
    {
        AudioBuffer buf(16000.0, std::vector<double>(16, 0.0));
        write_wav(path, buf);
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(34); // bits-per-sample field
        const char bits = 24;
        f.write(&bits, 1);
    }
    CHECK_THROWS_AS(read_wav(path), UnsupportedFormat);
    CHECK_THROWS_AS(read_wav("/nonexistent/dir/nothing.wav"), IoError);
    std::remove(path.c_str());
}

TEST_CASE("tone synthesis peaks at the requested frequency") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::Tone;
    spec.freq_hz = 590.0;
    spec.duration_s = 1.0;
    const AudioBuffer tone = synth_test_signal(spec);
    REQUIRE(tone.samples.size() == 16000);
    CHECK(tone.rms() == doctest::Approx(0.1).epsilon(0.01));

    const auto spec_bins = fft_real(tone.samples);
    std::size_t peak = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < spec_bins.size() / 2; ++k)
        if (std::abs(spec_bins[k]) > best) {
            best = std::abs(spec_bins[k]);
            peak = k;
        }
    CHECK(std::abs(static_cast<double>(peak) - 590.0) <= 1.0); // 1 Hz bins at 1 s

    spec.freq_hz = 9000.0;
    CHECK_THROWS_AS(synth_test_signal(spec), NyquistViolation);
}

TEST_CASE("harmonic voice concentrates energy in the speech band") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::HarmonicVoice;
    spec.freq_hz = 120.0;
    spec.duration_s = 2.0;
    spec.seed = 11;
    const AudioBuffer voice = synth_test_signal(spec);
    CHECK(voice.rms() == doctest::Approx(0.1).epsilon(0.01));

    const auto bins = fft_real(voice.samples);
    const double n = static_cast<double>(bins.size());
    double total = 0.0, in_band = 0.0;
    for (std::size_t k = 1; k < bins.size() / 2; ++k) {
        const double f = static_cast<double>(k) * voice.sample_rate / n;
        const double e = std::norm(bins[k]);
        total += e;
        if (f >= 100.0 && f <= 1100.0) in_band += e;
    }
    CHECK(in_band / total >= 0.8);

    // deterministic per seed
    const AudioBuffer again = synth_test_signal(spec);
    CHECK(again.samples == voice.samples);
    spec.seed = 12;
    const AudioBuffer other = synth_test_signal(spec);
    CHECK(other.samples != voice.samples);
}

TEST_CASE("zero-length synthesis") {
    TestSignalSpec spec;
    spec.duration_s = 0.0;
    const AudioBuffer empty = synth_test_signal(spec);
    CHECK(empty.samples.empty());
}
