#pragma once

#include "reso/arraydesign.hpp"
#include "reso/capture.hpp"
#include "reso/metrics.hpp"
#include "reso/reconstruct.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace reso {

// One reproducible eavesdropping trial: synthesize a voice-like source,
// capture it through the simulated array (or a bare microphone), run the
// reconstruction chain and score the result.
struct TrialConfig {
    double distance_m = 1.0;
    std::uint64_t seed = 0;
    int trial_index = 0;
    double duration_s = 2.0;
    double sample_rate = 16000.0;

    bool bare_microphone = false;

    // Probe-voice band. Kept inside the passband that survives the default
    // lab noise floor so scores measure reconstruction, not band loss;
    // experiments with wider ambient bands should raise the lower edge to
    // match the coverage that noise suppression preserves.
    double source_band_lo_hz = 400.0;
    double source_band_hi_hz = 1000.0;

    // defect injection into the applied (true) gain curves
    bool inject_defect_jumps = true;
    int max_jumps = 2;
    double jump_gain_lo = 1500.0;
    double jump_gain_hi = 2500.0;

    std::optional<NoiseProfile> ambient; // lab floor / outdoor noise
    ChannelModel channel;                // distance_m is overridden per trial
    PipelineConfig pipeline;

    MfccConfig mfcc;
};

struct TrialArtifacts {
    AudioBuffer source;
    AudioBuffer ground_truth;  // propagated clean source
    AudioBuffer reconstructed;
    EvalReport report;
};

// Default lab floor: low-frequency ambient at 43 dB SPL.
NoiseProfile lab_ambient_profile(std::uint64_t seed = 0);

TrialArtifacts run_trial(const TrialConfig& config);
EvalReport run_trial_report(const TrialConfig& config);

struct SweepRow {
    double distance_m;
    int trial;
    double snr_db;
    double mcd;
    bool success;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double rsa_m = 0.0;
};

// Per-distance trials with per-(distance, trial) seeds; identical results
// in serial and parallel execution.
SweepResult run_sweep(const TrialConfig& base, const std::vector<double>& distances_m,
                      int trials_per_distance, bool parallel = false);

std::string sweep_to_csv(const SweepResult& sweep);

} // namespace reso
