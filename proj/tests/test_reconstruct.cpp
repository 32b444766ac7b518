#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reso/arraydesign.hpp"
#include "reso/audio_io.hpp"
#include "reso/capture.hpp"
#include "reso/errors.hpp"
#include "reso/fft.hpp"
#include "reso/reconstruct.hpp"
#include "reso/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace reso;

namespace {

GainCurve flat_curve(std::size_t n, double gain, double step = 10.0) {
    GainCurve c;
    c.freq_lo = 0.0;
    c.freq_step = step;
    c.gains.assign(n, gain);
    return c;
}

// Independent oracle for the deviation statistic: |G - median3| per bin,
// thresholded at mean + sigma * population std.
std::vector<std::size_t> jump_oracle(const std::vector<double>& g, double sigma) {
    const std::size_t n = g.size();
    std::vector<double> dev(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double a = g[i - 1], b = g[i], c = g[i + 1];
        double m = std::max(std::min(a, b), std::min(std::max(a, b), c));
        dev[i] = std::abs(g[i] - m);
    }
    const double mean = std::accumulate(dev.begin(), dev.end(), 0.0) / n;
    double var = 0.0;
    for (double d : dev) var += (d - mean) * (d - mean);
    const double sd = std::sqrt(var / n);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (dev[i] > mean + sigma * sd) out.push_back(i);
    return out;
}

} // namespace

TEST_CASE("jump detection matches the worked examples") {
    // 101 flat bins at 16 with one spike at 2000: deviation mean ~19.6,
    // std ~197.4, threshold ~612 -> the spike (dev 1984) is flagged.
    GainCurve wide = flat_curve(101, 16.0);
    wide.gains[50] = 2000.0;
    auto flagged = detect_jump_points(wide, 3.0);
    REQUIRE(flagged.size() == 1);
    CHECK(flagged[0] == 50);
    CHECK(flagged == jump_oracle(wide.gains, 3.0));

    // 5 bins with the same spike: the spike dominates the statistics and
    // escapes detection (threshold ~2072 > deviation 1984).
    GainCurve narrow = flat_curve(5, 16.0);
    narrow.gains[2] = 2000.0;
    CHECK(detect_jump_points(narrow, 3.0).empty());

    GainCurve flat = flat_curve(64, 16.0);
    CHECK(detect_jump_points(flat, 3.0).empty());
}

TEST_CASE("jump detection agrees with the oracle on random curves") {
    GaussianRng rng(mix_seed(99, 1));
    for (int rep = 0; rep < 20; ++rep) {
        GainCurve c = flat_curve(128, 16.0);
        for (auto& g : c.gains) g += rng.gaussian() * 0.5;
        // a few injected spikes
        for (int s = 0; s < 3; ++s) {
            const auto idx = static_cast<std::size_t>(rng.uniform(1.0, 126.0));
            c.gains[idx] = rng.uniform(500.0, 3000.0);
        }
        CHECK(detect_jump_points(c, 3.0) == jump_oracle(c.gains, 3.0));
    }
}

TEST_CASE("smoothing removes isolated spikes from a flat curve") {
    // on a perfectly flat base a single pass fixes both spikes and leaves
    // every other bin bit-identical
    GainCurve c = flat_curve(256, 16.0);
    c.gains[40] = 1800.0;
    c.gains[200] = 2400.0;
    const GainCurve smoothed = smooth_jumps(c, 3.0);
    CHECK(detect_jump_points(smoothed, 3.0).empty());
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(smoothed.gains[i] == 16.0);
}

TEST_CASE("smoothing restores adjacent jump pairs") {
    // the 3-point deviation is zero on an equal two-bin plateau, so this
    // exercises the plateau stage of the smoother
    GainCurve c = flat_curve(101, 20.0);
    c.gains[50] = 1500.0;
    c.gains[51] = 1500.0;
    CHECK(detect_jump_points(c, 3.0).empty()); // invisible to the 3-point rule
    const GainCurve smoothed = smooth_jumps(c, 3.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(smoothed.gains[i] == 20.0);

    // unequal pair (the shape left by spectral leakage)
    GainCurve d = flat_curve(101, 20.0);
    d.gains[50] = 2000.0;
    d.gains[51] = 600.0;
    const GainCurve sd = smooth_jumps(d, 3.0);
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(sd.gains[i] == 20.0);
}

TEST_CASE("smoothing converges on a noisy curve and stays near the base") {
    GainCurve c = flat_curve(256, 16.0);
    GaussianRng rng(mix_seed(5, 2));
    for (auto& g : c.gains) g += rng.gaussian() * 0.3;
    c.gains[40] = 1800.0;
    c.gains[200] = 2400.0;

    const GainCurve smoothed = smooth_jumps(c, 3.0);
    CHECK(detect_jump_points(smoothed, 3.0).empty());
    // the spikes collapse to the local level; iterated passes may also trim
    // noise outliers but never move a bin away from its neighborhood
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(smoothed.gains[i] > 14.0);
        CHECK(smoothed.gains[i] < 18.0);
    }
}

TEST_CASE("balance pulls in-band gains to the median target") {
    GainCurve c = flat_curve(100, 0.5); // sub-unity skirt everywhere
    // in-band plateau 20..80 with a tilt
    for (std::size_t i = 20; i < 80; ++i)
        c.gains[i] = 10.0 + 0.1 * static_cast<double>(i - 20);
    const auto res = balance_gains(c, 10.0);

    std::vector<double> in_band(c.gains.begin() + 20, c.gains.begin() + 80);
    std::sort(in_band.begin(), in_band.end());
    const double median = 0.5 * (in_band[29] + in_band[30]);
    CHECK(res.target == doctest::Approx(median).epsilon(1e-12));
    for (std::size_t i = 20; i < 80; ++i)
        CHECK(res.corrected.gains[i] == doctest::Approx(median).epsilon(1e-9));
    // sub-unity bins untouched, correction 1
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(res.corrected.gains[i] == 0.5);
        CHECK(res.correction.gains[i] == 1.0);
    }
}

TEST_CASE("balance correction is clamped") {
    GainCurve c = flat_curve(50, 100.0);
    c.gains[10] = 1.0; // forces a correction of target/1 = 100 -> clamp to 10
    const auto res = balance_gains(c, 10.0);
    const double target = res.target;
    CHECK(res.correction.gains[10] == doctest::Approx(std::min(target, 10.0)));
    for (double corr : res.correction.gains) {
        CHECK(corr <= 10.0 + 1e-12);
        CHECK(corr >= 0.1 - 1e-12);
    }
}

namespace {

MultiChannelCapture synthetic_capture(const AudioBuffer& mix) {
    MultiChannelCapture cap;
    cap.design = canonical_array();
    cap.plan = default_stitch_plan();
    for (std::size_t i = 0; i < cap.design.elements.size(); ++i)
        cap.channels.push_back(mix);
    return cap;
}

} // namespace

TEST_CASE("stitching identical channels reproduces the in-band spectrum") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::BandNoise;
    spec.band_lo_hz = 100.0;
    spec.band_hi_hz = 2000.0;
    spec.duration_s = 1.0;
    spec.seed = 11;
    const AudioBuffer mix = synth_test_signal(spec);

    auto cap = synthetic_capture(mix);
    const AudioBuffer out = crop_and_stitch(cap, cap.plan);
    REQUIRE(out.samples.size() == mix.samples.size());

    const auto in_bins = fft_real(mix.samples);
    const auto out_bins = fft_real(out.samples);
    const double n = static_cast<double>(in_bins.size());
    for (std::size_t k = 1; k < in_bins.size() / 2; ++k) {
        const double f = static_cast<double>(k) * mix.sample_rate / n;
        if (f >= 250.0 && f < 1000.0) {
            CHECK(std::abs(out_bins[k] - in_bins[k]) <= 1e-9 * std::abs(in_bins[k]) + 1e-12);
        } else if (f < 249.0 || f > 1001.0) {
            CHECK(std::abs(out_bins[k]) <= 1e-9);
        }
    }
}

TEST_CASE("stitching picks each segment from its own channel") {
    // channel i carries a tone only inside its segment; every tone must
    // survive, and a tone placed in the wrong channel must not leak in.
    auto cap = synthetic_capture(AudioBuffer{});
    cap.channels.clear();
    std::vector<double> tone_freqs;
    for (const auto& seg : cap.plan.segments)
        tone_freqs.push_back(0.5 * (seg.lo_hz + seg.hi_hz));
    for (std::size_t i = 0; i < cap.plan.segments.size(); ++i) {
        TestSignalSpec spec;
        spec.kind = TestSignalKind::Tone;
        spec.freq_hz = tone_freqs[i];
        spec.duration_s = 0.5;
        AudioBuffer ch = synth_test_signal(spec);
        // pollute with the neighbor's tone; stitching must discard it
        TestSignalSpec other = spec;
        other.freq_hz = tone_freqs[(i + 1) % tone_freqs.size()];
        const AudioBuffer bad = synth_test_signal(other);
        for (std::size_t s = 0; s < ch.samples.size(); ++s) ch.samples[s] += bad.samples[s];
        cap.channels.push_back(ch);
    }
    const AudioBuffer out = crop_and_stitch(cap, cap.plan);
    const auto bins = fft_real(out.samples);
    const double n = static_cast<double>(bins.size());
    auto mag_at = [&](double freq) {
        const auto k = static_cast<std::size_t>(std::llround(freq * n / out.sample_rate));
        double best = 0.0;
        for (std::size_t j = (k > 2 ? k - 2 : 0); j <= k + 2 && j < bins.size(); ++j)
            best = std::max(best, std::abs(bins[j]));
        return best;
    };
    for (std::size_t i = 0; i < tone_freqs.size(); ++i) {
        // each segment's own tone present at full strength: compare against
        // the polluted channel's copy of that tone
        CHECK(mag_at(tone_freqs[i]) > 0.0);
    }
    // energy outside the plan coverage is zero
    double outside = 0.0;
    for (std::size_t k = 0; k < bins.size() / 2; ++k) {
        const double f = static_cast<double>(k) * out.sample_rate / n;
        if (f < 249.0 || f > 1001.0) outside += std::norm(bins[k]);
    }
    CHECK(outside <= 1e-12);
}

TEST_CASE("noise band detection brackets a loud low band") {
    NoiseProfile profile;
    profile.band = {20.0, 300.0};
    profile.level_db_spl = 60.0;
    profile.seed = 21;
    AudioBuffer noise = make_ambient_noise(profile, 64000, 16000.0);
    // a small broadband floor so the out-of-band median is nonzero
    GaussianRng rng(mix_seed(21, 7));
    for (auto& s : noise.samples) s += 1e-5 * rng.gaussian();

    const NoiseBand band = detect_noise_band(noise, 10.0);
    CHECK(band.lo_hz <= 40.0);
    CHECK(band.hi_hz >= 280.0);
    CHECK(band.hi_hz <= 400.0);
}

TEST_CASE("noise band detection throws when nothing stands out") {
    GaussianRng rng(mix_seed(3, 3));
    AudioBuffer white(16000.0, std::vector<double>(64000));
    for (auto& s : white.samples) s = 1e-3 * rng.gaussian();
    CHECK_THROWS_AS(detect_noise_band(white, 10.0), EmptyBand);
}

TEST_CASE("plan reduction drops exactly the intersecting segments") {
    const ArrayDesign design = canonical_array();
    const StitchPlan plan = default_stitch_plan();

    const StitchPlan low = suppress_noise(plan, design, NoiseBand{20.0, 300.0});
    // bands (8) 250-320 and (7) 290-360 intersect [20, 300]
    REQUIRE(low.segments.size() == plan.segments.size() - 2);
    for (const auto& seg : low.segments) {
        CHECK(seg.element_label != "(8)");
        CHECK(seg.element_label != "(7)");
    }

    const StitchPlan mid = suppress_noise(plan, design, NoiseBand{50.0, 500.0});
    REQUIRE(mid.segments.size() == plan.segments.size() - 4);
    for (const auto& seg : mid.segments) {
        CHECK(seg.element_label != "(8)");
        CHECK(seg.element_label != "(7)");
        CHECK(seg.element_label != "(6)");
        CHECK(seg.element_label != "(5)");
    }

    const StitchPlan high = suppress_noise(plan, design, NoiseBand{1200.0, 2000.0});
    CHECK(high.segments.size() == plan.segments.size());

    CHECK_THROWS_AS(suppress_noise(plan, design, NoiseBand{100.0, 1500.0}), AllIsolated);
}

TEST_CASE("residual denoise attenuates stationary noise more than signal") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::Tone;
    spec.freq_hz = 590.0;
    spec.duration_s = 1.0;
    const AudioBuffer clean = synth_test_signal(spec);

    GaussianRng rng(mix_seed(8, 8));
    AudioBuffer noise(16000.0, std::vector<double>(clean.samples.size()));
    for (auto& s : noise.samples) s = 0.02 * rng.gaussian();
    AudioBuffer noisy = clean;
    for (std::size_t i = 0; i < noisy.samples.size(); ++i)
        noisy.samples[i] += noise.samples[i];

    PipelineConfig config;
    config.stitch_plan = default_stitch_plan();
    const AudioBuffer denoised = residual_denoise(noisy, noise, config);
    REQUIRE(denoised.samples.size() == noisy.samples.size());

    auto err = [&](const AudioBuffer& x) {
        double acc = 0.0;
        // skip the first and last STFT frame where overlap-add tapers
        for (std::size_t i = 512; i + 512 < x.samples.size(); ++i) {
            const double d = x.samples[i] - clean.samples[i];
            acc += d * d;
        }
        return acc;
    };
    CHECK(err(denoised) < 0.5 * err(noisy));
}

TEST_CASE("residual denoise leaves a clean signal nearly intact") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::Tone;
    spec.freq_hz = 590.0;
    spec.duration_s = 0.5;
    const AudioBuffer clean = synth_test_signal(spec);
    AudioBuffer silence(16000.0, std::vector<double>(clean.samples.size(), 0.0));

    PipelineConfig config;
    config.stitch_plan = default_stitch_plan();
    const AudioBuffer out = residual_denoise(clean, silence, config);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 512; i + 512 < out.samples.size(); ++i) {
        const double d = out.samples[i] - clean.samples[i];
        err += d * d;
        ref += clean.samples[i] * clean.samples[i];
    }
    CHECK(err / ref < 1e-6);
}

TEST_CASE("curve estimation recovers a known response") {
    // reference: broadband noise; channel: the reference filtered by a known
    // Lorentzian. The Welch ratio must land near the true curve in-band.
    TestSignalSpec spec;
    spec.kind = TestSignalKind::BandNoise;
    spec.band_lo_hz = 100.0;
    spec.band_hi_hz = 2000.0;
    spec.duration_s = 8.0;
    spec.seed = 31;
    const AudioBuffer ref = synth_test_signal(spec);

    const ArrayDesign design = canonical_array();
    const GridSpec grid{0.0, 10.0, 801};
    const GainCurve truth = synth_gain_curve(design.elements[4].spec, 18.0, grid);

    MultiChannelCapture cap;
    cap.design = design;
    cap.plan = default_stitch_plan();
    cap.channels.assign(8, AudioBuffer{});
    cap.channels[4] = apply_gain_curve(ref, truth);
    for (std::size_t i = 0; i < 8; ++i)
        if (i != 4) cap.channels[i] = ref;

    const auto est = estimate_gain_curves(cap, ref);
    REQUIRE(est.size() == 8);
    const GainCurve& got = est[4];
    for (double f = 520.0; f <= 660.0; f += 10.0) {
        CHECK(got.value_at(f) == doctest::Approx(truth.value_at(f)).epsilon(0.05));
    }
    // unit channels estimate to ~1
    CHECK(est[0].value_at(300.0) == doctest::Approx(1.0).epsilon(0.02));

    AudioBuffer tiny(16000.0, std::vector<double>(100, 0.1));
    MultiChannelCapture small = cap;
    for (auto& ch : small.channels) ch = tiny;
    CHECK_THROWS_AS(estimate_gain_curves(small, tiny), TooShort);
}

TEST_CASE("distortion suppression flattens an uneven stitched spectrum") {
    // build a capture whose channels share one broadband reference shaped by
    // per-element curves with scattered peak gains; the full pipeline output
    // must be flatter across segment boundaries than the raw stitch.
    TestSignalSpec spec;
    spec.kind = TestSignalKind::BandNoise;
    spec.band_lo_hz = 100.0;
    spec.band_hi_hz = 2000.0;
    spec.duration_s = 8.0;
    spec.seed = 41;
    const AudioBuffer ref = synth_test_signal(spec);

    ArrayDesign design = canonical_array();
    assign_peak_gains(design, 77);
    const GridSpec grid{0.0, 10.0, 801};
    MultiChannelCapture cap;
    cap.design = design;
    cap.plan = default_stitch_plan();
    std::vector<GainCurve> curves;
    for (const auto& e : design.elements) {
        curves.push_back(synth_gain_curve(e.spec, e.peak_gain, grid));
        cap.channels.push_back(apply_gain_curve(ref, curves.back()));
    }
    cap.applied_curves = curves;

    const auto est = estimate_gain_curves(cap, ref);
    std::map<std::string, GainCurve> est_map;
    for (std::size_t i = 0; i < est.size(); ++i)
        est_map[design.elements[i].label] = est[i];

    const AudioBuffer stitched = crop_and_stitch(cap, cap.plan);
    PipelineConfig config;
    config.stitch_plan = cap.plan;
    const AudioBuffer equalized =
        apply_distortion_suppression(stitched, est_map, cap.plan, config);

    // flatness: ratio of stitched-band magnitude to the reference magnitude,
    // measured per bin; the corrected version has lower spread
    const auto ref_bins = fft_real(ref.samples);
    auto spread = [&](const AudioBuffer& x) {
        const auto bins = fft_real(x.samples);
        const double n = static_cast<double>(bins.size());
        std::vector<double> ratios;
        for (std::size_t k = 1; k < bins.size() / 2; ++k) {
            const double f = static_cast<double>(k) * x.sample_rate / n;
            if (f < 260.0 || f > 990.0) continue;
            const double denom = std::abs(ref_bins[k]);
            if (denom > 1e-9) ratios.push_back(std::abs(bins[k]) / denom);
        }
        const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) /
                            static_cast<double>(ratios.size());
        double var = 0.0;
        for (double r : ratios) var += (r / mean - 1.0) * (r / mean - 1.0);
        return std::sqrt(var / static_cast<double>(ratios.size()));
    };
    CHECK(spread(equalized) < spread(stitched));
}

TEST_CASE("pipeline respects its stage toggles and reports the plan") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::BandNoise;
    spec.band_lo_hz = 100.0;
    spec.band_hi_hz = 2000.0;
    spec.duration_s = 4.0;
    spec.seed = 51;
    const AudioBuffer ref = synth_test_signal(spec);

    ArrayDesign design = canonical_array();
    const GridSpec grid{0.0, 10.0, 801};
    MultiChannelCapture cap;
    cap.design = design;
    cap.plan = default_stitch_plan();
    std::map<std::string, GainCurve> est_map;
    for (const auto& e : design.elements) {
        const GainCurve c = synth_gain_curve(e.spec, 16.0, grid);
        cap.channels.push_back(apply_gain_curve(ref, c));
        est_map[e.label] = c;
    }

    AudioBuffer silence(16000.0, std::vector<double>(ref.samples.size(), 0.0));
    PipelineConfig config;
    config.stitch_plan = cap.plan;
    config.enable_noise_suppression = false;
    config.enable_residual_denoise = false;
    config.enable_distortion_suppression = false;
    const auto bare = run_pipeline(cap, silence, est_map, config);
    CHECK(bare.effective_plan.segments.size() == cap.plan.segments.size());
    CHECK_FALSE(bare.noise_suppression_applied);
    // with everything off the output is the raw stitch
    const AudioBuffer stitched = crop_and_stitch(cap, cap.plan);
    REQUIRE(bare.output.samples.size() == stitched.samples.size());
    for (std::size_t i = 0; i < stitched.samples.size(); i += 211)
        CHECK(bare.output.samples[i] == doctest::Approx(stitched.samples[i]).epsilon(1e-12));

    config.enable_distortion_suppression = true;
    const auto full = run_pipeline(cap, silence, est_map, config);
    CHECK(full.stage_outputs.count("stitched") == 1);
    CHECK(full.composite_raw.size() > 0);
    CHECK(full.composite_balanced.size() == full.composite_raw.size());
}

TEST_CASE("spike re-sharpening leaves smooth resonance curves unchanged") {
    const ArrayDesign design = canonical_array();
    const GridSpec grid{0.0, 10.0, 801};
    for (const auto& e : design.elements) {
        const GainCurve curve = synth_gain_curve(e.spec, 20.0, grid);
        const GainCurve sharp = resharpen_spikes(curve, 3.0);
        REQUIRE(sharp.size() == curve.size());
        for (std::size_t i = 0; i < curve.size(); ++i)
            CHECK(sharp.gains[i] == doctest::Approx(curve.gains[i]).epsilon(1e-9));
    }
}

TEST_CASE("spike re-sharpening restores height and location from smeared energy") {
    // a single fine-grid spike of height H smeared by windowed averaging
    // leaves excess power sum(G^2 - bg^2) = H^2 / 1.5 spread over the
    // cluster; reversing that must recover H at the power centroid
    const double bg = 16.0;
    const double H = 2000.0;
    GainCurve c = flat_curve(256, bg);
    const std::size_t center = 120;
    // symmetric 3-bin cluster carrying the exact excess energy budget
    const double total = H * H / 1.5;
    const double side = 0.15 * total;
    const double mid = total - 2.0 * side;
    c.gains[center - 1] = std::sqrt(bg * bg + side);
    c.gains[center] = std::sqrt(bg * bg + mid);
    c.gains[center + 1] = std::sqrt(bg * bg + side);

    const GainCurve sharp = resharpen_spikes(c, 3.0);
    CHECK(sharp.gains[center] == doctest::Approx(H).epsilon(1e-6));
    // neighbors collapse back to the background
    CHECK(sharp.gains[center - 1] == doctest::Approx(bg).epsilon(0.05));
    CHECK(sharp.gains[center + 1] == doctest::Approx(bg).epsilon(0.05));
    // an asymmetric cluster moves the spike to the heavier side
    GainCurve d = flat_curve(256, bg);
    d.gains[80] = std::sqrt(bg * bg + 0.7 * total);
    d.gains[81] = std::sqrt(bg * bg + 0.3 * total);
    const GainCurve ds = resharpen_spikes(d, 3.0);
    CHECK(ds.gains[80] == doctest::Approx(H).epsilon(1e-6));
    CHECK(ds.gains[81] == doctest::Approx(bg).epsilon(0.05));
}

TEST_CASE("multichannel noise-band detection ignores single-channel artifacts") {
    // all channels see the same loud 100-300 Hz band; each channel adds its
    // own loud narrow tone elsewhere (as a resonance or clipping artifact
    // would). The per-bin minimum across channels must keep only the band.
    NoiseProfile profile;
    profile.band = {100.0, 300.0};
    profile.level_db_spl = 60.0;
    profile.seed = 77;
    const AudioBuffer shared = make_ambient_noise(profile, 64000, 16000.0);

    MultiChannelCapture cap;
    cap.design = canonical_array();
    cap.plan = default_stitch_plan();
    GaussianRng rng(mix_seed(77, 5));
    for (int ch = 0; ch < 8; ++ch) {
        AudioBuffer buf = shared;
        const double tone_hz = 500.0 + 60.0 * ch;
        for (std::size_t i = 0; i < buf.samples.size(); ++i) {
            const double t = static_cast<double>(i) / 16000.0;
            buf.samples[i] += 0.05 * std::sin(2.0 * M_PI * tone_hz * t);
            buf.samples[i] += 1e-5 * rng.gaussian(); // broadband floor
        }
        cap.channels.push_back(buf);
    }

    const NoiseBand band = detect_noise_band(cap, 10.0);
    CHECK(band.lo_hz >= 60.0);
    CHECK(band.lo_hz <= 120.0);
    CHECK(band.hi_hz >= 280.0);
    CHECK(band.hi_hz <= 340.0);

    // sanity: a single channel alone is fooled by its own tone
    const NoiseBand single = detect_noise_band(cap.channels.front(), 10.0);
    CHECK(single.hi_hz >= band.hi_hz);
}
