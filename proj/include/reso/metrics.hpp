#pragma once

#include "reso/audio.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace reso {

struct MfccConfig {
    double frame_s = 0.025;
    double hop_s = 0.010;
    std::size_t mel_filters = 26;
    std::size_t coefficients = 13; // c1..c13, excluding c0
    double pre_emphasis = 0.97;
    // Filterbank span. Fidelity is evaluated over the band the system
    // carries; content the channel never transported would otherwise
    // dominate the distance.
    double mel_lo_hz = 300.0;
    double mel_hi_hz = 1000.0;
    // Per-filter energies are floored at max(abs_floor, rel_floor * frame
    // maximum) before the log, bounding the per-frame dynamic range to
    // 30 dB so near-silent filters cannot dominate the cepstra.
    double abs_floor = 1e-10;
    double rel_floor = 1e-3;
};

struct EvalReport {
    double snr_db = 0.0;
    double mcd = 0.0;
    bool success = false;
    double distance_m = 0.0;
    int trial = 0;
    std::map<std::string, std::pair<double, double>> stage_metrics; // stage -> (snr, mcd)
};

// Scale-optimal reference SNR, capped at +100 dB.
double snr_db(const AudioBuffer& reference, const AudioBuffer& test);

// frames x coefficients matrix (c1..c13).
std::vector<std::vector<double>> mfcc(const AudioBuffer& audio,
                                      const MfccConfig& config = {});

// Mean over frames of (10/ln10) * sqrt(2 * sum of squared cepstral diffs).
double mcd(const AudioBuffer& reference, const AudioBuffer& test,
           const MfccConfig& config = {});

// Same distance computed from precomputed cepstral matrices (frames are
// truncated to the shorter of the two).
double mcd_from_cepstra(const std::vector<std::vector<double>>& reference,
                        const std::vector<std::vector<double>>& test);

constexpr double kMcdSuccessThreshold = 8.0;

double success_rate(const std::vector<EvalReport>& reports);

// Largest grid distance such that it and every smaller grid distance have a
// success rate above the threshold; 0 if even the smallest fails.
double rsa(const std::function<EvalReport(double distance_m, int trial)>& scenario,
           const std::vector<double>& distances_m, int trials_per_distance = 30,
           double threshold = 0.8);

} // namespace reso
