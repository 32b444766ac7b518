#pragma once

#include "reso/arraydesign.hpp"
#include "reso/audio.hpp"
#include "reso/capture.hpp"
#include "reso/gainmodel.hpp"

#include <map>
#include <string>
#include <vector>

namespace reso {

struct PipelineConfig {
    StitchPlan stitch_plan;
    bool enable_distortion_suppression = true;
    bool enable_noise_suppression = true;
    bool enable_residual_denoise = true;
    double jump_sigma_factor = 3.0;
    double balance_cap = 10.0;
    double noise_psd_margin_db = 10.0;
    double subtraction_alpha = 1.0;
    double subtraction_beta = 0.1;

    void validate() const;
};

struct NoiseBand {
    double lo_hz = 0.0;
    double hi_hz = 0.0;
};

// Welch analysis settings shared by curve estimation and noise-band
// detection. 1600-sample segments at 16 kHz give the 10 Hz standard grid.
struct WelchConfig {
    std::size_t segment = 1600;
    std::size_t min_segments = 32;
};

// Welch-averaged magnitude-spectrum ratio |Y|/|X| per channel, on the
// segment-rate grid (freq_lo 0, step rate/segment).
std::vector<GainCurve> estimate_gain_curves(const MultiChannelCapture& capture,
                                            const AudioBuffer& reference,
                                            const WelchConfig& welch = {});

// Indices whose neighborhood-median deviation exceeds mean + sigma * std.
std::vector<std::size_t> detect_jump_points(const GainCurve& curve, double sigma_factor);

// Collapse narrowband clusters of excess energy in an estimated curve back to
// single grid bins. Windowed spectral averaging spreads a one-bin spike over
// its neighbors; the cluster's excess power recovers the original height
// (H = sqrt(1.5 * sum(G^2 - bg^2)) for a triangular fine-grid profile) and
// its power centroid recovers the location. Smooth curves pass through
// unchanged.
GainCurve resharpen_spikes(const GainCurve& curve, double sigma_factor = 3.0);

// Iterated median replacement of detected jump bins; statistics recomputed
// each pass; bounded by length-many passes. When `passes_out` is given it
// receives the number of passes that modified the curve.
GainCurve smooth_jumps(const GainCurve& curve, double sigma_factor,
                       std::size_t* passes_out = nullptr);

struct BalanceResult {
    GainCurve corrected;
    GainCurve correction;
    double target = 1.0;
};

// Median-target equalization: correction = clamp(target / G, 1/cap, cap)
// for in-band bins (G >= 1); sub-unity bins are left untouched.
BalanceResult balance_gains(const GainCurve& curve, double cap);

// Assemble one spectrum from per-segment channel bins; zero outside the
// plan's coverage; segments are half-open [lo, hi).
AudioBuffer crop_and_stitch(const MultiChannelCapture& capture, const StitchPlan& plan);

// Inverse equalization of the stitched spectrum from the estimated
// per-element curves: smooth, balance, then apply corrected/raw bin-wise.
AudioBuffer apply_distortion_suppression(const AudioBuffer& stitched,
                                         const std::map<std::string, GainCurve>& estimated,
                                         const StitchPlan& plan,
                                         const PipelineConfig& config);

// Welch PSD thresholding of a noise reference: bins above median + margin
// define the band. Throws EmptyBand when nothing stands out.
NoiseBand detect_noise_band(const AudioBuffer& noise_ref, double margin_db,
                            const WelchConfig& welch = {});

// Same rule on the minimum PSD across all channels of a noise-only capture.
// Each channel amplifies (and, with a defect, may distort) a different band,
// so the per-bin minimum approximates the ambient spectrum as a bare
// microphone would see it.
NoiseBand detect_noise_band(const MultiChannelCapture& noise_capture, double margin_db,
                            const WelchConfig& welch = {});

// Drop every segment whose element's declared band intersects the noise
// band. Throws AllIsolated if nothing remains.
StitchPlan suppress_noise(const StitchPlan& plan, const ArrayDesign& design,
                          const NoiseBand& noise_band);

// Magnitude spectral subtraction with a spectral floor, overlap-add.
AudioBuffer residual_denoise(const AudioBuffer& audio, const AudioBuffer& noise_ref,
                             const PipelineConfig& config);

struct PipelineResult {
    AudioBuffer output;
    std::map<std::string, AudioBuffer> stage_outputs; // "stitched", "denoised", ...
    StitchPlan effective_plan;
    bool noise_suppression_applied = false;
    GainCurve composite_raw;
    GainCurve composite_smoothed;
    GainCurve composite_balanced;
};

// Full reconstruction chain: noise suppression (plan reduction) ->
// crop-and-stitch -> residual denoise -> distortion suppression.
PipelineResult run_pipeline(const MultiChannelCapture& capture,
                            const AudioBuffer& noise_ref,
                            const std::map<std::string, GainCurve>& estimated_curves,
                            const PipelineConfig& config);

} // namespace reso
