#include "reso/experiment.hpp"

#include "reso/audio_io.hpp"
#include "reso/errors.hpp"
#include "reso/rng.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <thread>
#include <sstream>

namespace reso {

namespace {

constexpr std::size_t kWelchSegment = 1600; // 10 Hz bins at 16 kHz

GridSpec standard_grid(double rate) {
    GridSpec g;
    g.lo_hz = 0.0;
    g.step_hz = rate / static_cast<double>(kWelchSegment);
    g.count = kWelchSegment / 2 + 1;
    return g;
}

// seed streams within a trial
enum : std::uint64_t {
    kStreamSource = 1,
    kStreamPeaks = 2,
    kStreamDefects = 3,
    kStreamCalibNoise = 4,
    kStreamCalibCapture = 5,
    kStreamSignalCapture = 6,
    kStreamNoiseCapture = 7,
};

} // namespace

NoiseProfile lab_ambient_profile(std::uint64_t seed) {
    NoiseProfile p;
    p.band = {20.0, 300.0};
    p.level_db_spl = 43.0;
    p.seed = seed;
    return p;
}

TrialArtifacts run_trial(const TrialConfig& config) {
    const std::uint64_t root =
        mix_seed(config.seed, 0x54524941ULL + static_cast<std::uint64_t>(config.trial_index));

    TrialArtifacts art;

    // 1. source
    TestSignalSpec src_spec;
    src_spec.kind = TestSignalKind::HarmonicVoice;
    src_spec.freq_hz = 120.0;
    src_spec.band_lo_hz = config.source_band_lo_hz;
    src_spec.band_hi_hz = config.source_band_hi_hz;
    src_spec.duration_s = config.duration_s;
    src_spec.sample_rate = config.sample_rate;
    src_spec.seed = mix_seed(root, kStreamSource);
    art.source = synth_test_signal(src_spec);

    // 2. channel at this distance
    ChannelModel model = config.channel;
    model.distance_m = config.distance_m;
    model.ambient = config.ambient;
    if (model.ambient) model.ambient->seed = mix_seed(root, 0xa3bULL);

    art.ground_truth = propagate(art.source, model);

    if (config.bare_microphone) {
        art.reconstructed =
            bare_microphone_capture(art.source, model, mix_seed(root, kStreamSignalCapture));
    } else {
        // 3. array with per-trial peak gains and optional defects
        ArrayDesign design = canonical_array();
        assign_peak_gains(design, mix_seed(root, kStreamPeaks));
        const GridSpec grid = standard_grid(config.sample_rate);
        std::vector<GainCurve> curves;
        for (const auto& e : design.elements)
            curves.push_back(synth_gain_curve(e.spec, e.peak_gain, grid));
        if (config.inject_defect_jumps && config.max_jumps > 0) {
            GaussianRng rng(mix_seed(root, kStreamDefects));
            const int jumps = 1 + static_cast<int>(rng.uniform01() *
                                                   static_cast<double>(config.max_jumps));
            for (int j = 0; j < std::max(1, jumps); ++j) {
                const auto which = static_cast<std::size_t>(
                    rng.uniform01() * static_cast<double>(design.elements.size()));
                const std::size_t idx = std::min(which, design.elements.size() - 1);
                const FreqBand band = design.elements[idx].band;
                DefectModel defect;
                defect.jumps.push_back(
                    {rng.uniform(band.lo_hz, band.hi_hz),
                     rng.uniform(config.jump_gain_lo, config.jump_gain_hi)});
                curves[idx] = inject_defects(curves[idx], defect);
            }
        }

        StitchPlan plan = default_stitch_plan();

        // 4. calibration: white-noise reference captured at the reference
        //    distance with no ambient noise
        ChannelModel calib_model = model;
        calib_model.distance_m = calib_model.ref_distance_m;
        calib_model.ambient.reset();
        const double calib_len_s =
            std::ceil(64.0 * static_cast<double>(kWelchSegment) / config.sample_rate);
        GaussianRng calib_rng(mix_seed(root, kStreamCalibNoise));
        AudioBuffer calib_src(config.sample_rate,
                              std::vector<double>(static_cast<std::size_t>(
                                  calib_len_s * config.sample_rate)));
        // Quiet drive: a defect bin can amplify its 20 Hz sliver ~2500x, and
        // the capture quantizer clips at full scale. At 40 dB SPL (1e-3 RMS
        // at the reference distance) even two worst-case defects stay inside
        // range, while the base response still sits well above the
        // quantization floor per Welch bin.
        calib_model.source_level_db_spl = 40.0;
        for (auto& s : calib_src.samples) s = calib_rng.gaussian();
        const AudioBuffer calib_truth = propagate(calib_src, calib_model);
        const MultiChannelCapture calib_capture = capture_multichannel(
            calib_src, calib_model, design, plan, curves, mix_seed(root, kStreamCalibCapture));
        const auto estimated = estimate_gain_curves(calib_capture, calib_truth,
                                                    {kWelchSegment, 32});
        std::map<std::string, GainCurve> estimated_by_label;
        for (std::size_t i = 0; i < design.elements.size(); ++i)
            estimated_by_label[design.elements[i].label] = estimated[i];

        // 5. signal capture
        const MultiChannelCapture capture = capture_multichannel(
            art.source, model, design, plan, curves, mix_seed(root, kStreamSignalCapture));

        // 6. noise-only capture through the same array; stitched below by
        //    the pipeline for band detection and spectral subtraction
        AudioBuffer silent(config.sample_rate,
                           std::vector<double>(art.source.samples.size(), 0.0));
        const MultiChannelCapture noise_capture = capture_multichannel(
            silent, model, design, plan, curves, mix_seed(root, kStreamNoiseCapture));
        const AudioBuffer noise_ref = crop_and_stitch(noise_capture, plan);

        PipelineConfig pipe = config.pipeline;
        if (pipe.stitch_plan.segments.empty()) pipe.stitch_plan = plan;

        // Band detection uses the per-bin minimum PSD over all channels of
        // the noise-only capture (robust to any single element's resonance
        // or clipping); the stitched reference drives spectral subtraction.
        StitchPlan effective = pipe.stitch_plan;
        bool suppressed = false;
        if (pipe.enable_noise_suppression) {
            try {
                const NoiseBand band =
                    detect_noise_band(noise_capture, pipe.noise_psd_margin_db);
                effective = suppress_noise(effective, design, band);
                suppressed = true;
            } catch (const EmptyBand&) {
            } catch (const TooShort&) {
            } catch (const AllIsolated&) {
                // detected band touches every element: suppressing would
                // leave nothing to stitch, so keep the full plan
            }
        }
        PipelineConfig pipe_run = pipe;
        pipe_run.enable_noise_suppression = false; // already applied above
        pipe_run.stitch_plan = effective;
        const AudioBuffer noise_stitched =
            suppressed ? crop_and_stitch(noise_capture, effective) : noise_ref;
        PipelineResult pr = run_pipeline(capture, noise_stitched, estimated_by_label, pipe_run);
        art.reconstructed = pr.output;
    }

    // 7. score
    art.report.distance_m = config.distance_m;
    art.report.trial = config.trial_index;
    art.report.snr_db = snr_db(art.ground_truth, art.reconstructed);
    art.report.mcd = mcd(art.source, art.reconstructed, config.mfcc);
    art.report.success = art.report.mcd < kMcdSuccessThreshold;
    return art;
}

EvalReport run_trial_report(const TrialConfig& config) { return run_trial(config).report; }

SweepResult run_sweep(const TrialConfig& base, const std::vector<double>& distances_m,
                      int trials_per_distance, bool parallel) {
    SweepResult result;
    std::vector<TrialConfig> jobs;
    for (double d : distances_m) {
        for (int t = 0; t < trials_per_distance; ++t) {
            TrialConfig c = base;
            c.distance_m = d;
            c.trial_index = t;
            jobs.push_back(c);
        }
    }

    std::vector<EvalReport> reports(jobs.size());
    if (parallel) {
        // bounded worker pool: trials are independent and reports are stored
        // by job index, so scheduling cannot change the result
        const unsigned workers =
            std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < jobs.size();
                     i = next.fetch_add(1))
                    reports[i] = run_trial_report(jobs[i]);
            });
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < jobs.size(); ++i) reports[i] = run_trial_report(jobs[i]);
    }

    for (const auto& r : reports)
        result.rows.push_back({r.distance_m, r.trial, r.snr_db, r.mcd, r.success});

    // first-crossing RSA over the already-computed grid
    double best = 0.0;
    for (double d : distances_m) {
        int total = 0, ok = 0;
        for (const auto& r : reports)
            if (r.distance_m == d) {
                ++total;
                if (r.success) ++ok;
            }
        if (total > 0 && static_cast<double>(ok) / total > 0.8)
            best = d;
        else
            break;
    }
    result.rsa_m = best;
    return result;
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::ostringstream out;
    out << "distance_m,trial,snr_db,mcd,success\n";
    out.setf(std::ios::fixed);
    out.precision(6);
    for (const auto& row : sweep.rows)
        out << row.distance_m << ',' << row.trial << ',' << row.snr_db << ',' << row.mcd
            << ',' << (row.success ? 1 : 0) << '\n';
    return out.str();
}

} // namespace reso
