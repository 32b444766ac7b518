#pragma once

#include "reso/audio.hpp"

#include <cstdint>
#include <string>

namespace reso {

// PCM16 mono WAV, canonical RIFF header, little-endian.
AudioBuffer read_wav(const std::string& path);
void write_wav(const std::string& path, const AudioBuffer& buffer);

// Single-sample quantization used by both the WAV writer and the capture
// model: clamp to [-1, 1 - 2^-15], scale by 32768, round half away from zero.
std::int16_t quantize16(double sample);
double quantize_roundtrip(double sample);

enum class TestSignalKind { Tone, HarmonicVoice, BandNoise };

struct TestSignalSpec {
    TestSignalKind kind = TestSignalKind::Tone;
    double freq_hz = 590.0;        // tone frequency / voice f0
    double band_lo_hz = 250.0;     // band noise low edge
    double band_hi_hz = 1000.0;    // band noise high edge
    double duration_s = 1.0;
    double sample_rate = 16000.0;
    std::uint64_t seed = 0;
};

// Deterministic synthetic sources, RMS-normalized to 0.1 full scale.
// HarmonicVoice is a pulse train at f0 shaped by a resonant formant whose
// center sweeps 250 -> 1000 Hz over the duration.
AudioBuffer synth_test_signal(const TestSignalSpec& spec);

} // namespace reso
