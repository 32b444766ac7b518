// Command-line driver: array design, curve export, capture simulation,
// reconstruction, and distance sweeps.

#include "reso/arraydesign.hpp"
#include "reso/audio_io.hpp"
#include "reso/capture.hpp"
#include "reso/errors.hpp"
#include "reso/experiment.hpp"
#include "reso/gainmodel.hpp"
#include "reso/metrics.hpp"
#include "reso/reconstruct.hpp"
#include "reso/rng.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw reso::IoError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw reso::IoError("cannot write " + path);
    f << text;
    if (!f) throw reso::IoError("write failed for " + path);
}

// Experiment configuration; every field has a default so a minimal config
// file (or none at all) runs the canonical setup.
struct ExperimentConfig {
    std::uint64_t seed = 0;
    double duration_s = 2.0;
    double sample_rate = 16000.0;
    reso::ChannelModel channel;
    std::optional<reso::NoiseProfile> ambient = reso::lab_ambient_profile();
    reso::PipelineConfig pipeline;
    bool inject_defects = true;
    std::vector<double> distances_m = {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0};
    int trials = 30;
};

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("schema_version") && j["schema_version"].get<int>() != 1)
        throw reso::ConfigError("unsupported schema_version");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("duration_s")) cfg.duration_s = j["duration_s"].get<double>();
    if (j.contains("sample_rate")) cfg.sample_rate = j["sample_rate"].get<double>();
    if (j.contains("channel")) {
        const auto& c = j["channel"];
        if (c.contains("distance_m")) cfg.channel.distance_m = c["distance_m"].get<double>();
        if (c.contains("ref_distance_m"))
            cfg.channel.ref_distance_m = c["ref_distance_m"].get<double>();
        if (c.contains("source_level_db_spl"))
            cfg.channel.source_level_db_spl = c["source_level_db_spl"].get<double>();
        if (c.contains("mic_self_noise_db_spl"))
            cfg.channel.mic_self_noise_db_spl = c["mic_self_noise_db_spl"].get<double>();
        if (c.contains("calibration_db_spl"))
            cfg.channel.calibration_db_spl = c["calibration_db_spl"].get<double>();
    }
    if (j.contains("noise")) {
        if (j["noise"].is_null()) {
            cfg.ambient.reset();
        } else {
            reso::NoiseProfile p;
            const auto& nj = j["noise"];
            if (nj.contains("band_hz"))
                p.band = {nj["band_hz"].at(0).get<double>(), nj["band_hz"].at(1).get<double>()};
            if (nj.contains("level_db_spl")) p.level_db_spl = nj["level_db_spl"].get<double>();
            cfg.ambient = p;
        }
    }
    if (j.contains("pipeline")) {
        const auto& p = j["pipeline"];
        if (p.contains("enable_distortion_suppression"))
            cfg.pipeline.enable_distortion_suppression =
                p["enable_distortion_suppression"].get<bool>();
        if (p.contains("enable_noise_suppression"))
            cfg.pipeline.enable_noise_suppression = p["enable_noise_suppression"].get<bool>();
        if (p.contains("enable_residual_denoise"))
            cfg.pipeline.enable_residual_denoise = p["enable_residual_denoise"].get<bool>();
        if (p.contains("jump_sigma_factor"))
            cfg.pipeline.jump_sigma_factor = p["jump_sigma_factor"].get<double>();
        if (p.contains("balance_cap")) cfg.pipeline.balance_cap = p["balance_cap"].get<double>();
        if (p.contains("noise_psd_margin_db"))
            cfg.pipeline.noise_psd_margin_db = p["noise_psd_margin_db"].get<double>();
        if (p.contains("subtraction_alpha"))
            cfg.pipeline.subtraction_alpha = p["subtraction_alpha"].get<double>();
        if (p.contains("subtraction_beta"))
            cfg.pipeline.subtraction_beta = p["subtraction_beta"].get<double>();
    }
    if (j.contains("inject_defects")) cfg.inject_defects = j["inject_defects"].get<bool>();
    if (j.contains("distances_m")) cfg.distances_m = j["distances_m"].get<std::vector<double>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) return ExperimentConfig{};
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw reso::ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

reso::TrialConfig to_trial_config(const ExperimentConfig& cfg) {
    reso::TrialConfig trial;
    trial.seed = cfg.seed;
    trial.duration_s = cfg.duration_s;
    trial.sample_rate = cfg.sample_rate;
    trial.distance_m = cfg.channel.distance_m;
    trial.channel = cfg.channel;
    trial.ambient = cfg.ambient;
    trial.pipeline = cfg.pipeline;
    trial.inject_defect_jumps = cfg.inject_defects;
    return trial;
}

int cmd_design(double lo, double hi, const std::string& candidates_path,
               const std::string& out_path) {
    std::vector<reso::CandidateBand> candidates;
    if (!candidates_path.empty()) {
        const json j = json::parse(read_file(candidates_path));
        for (const auto& c : j.at("candidates"))
            candidates.push_back({c.at("center_hz").get<double>(),
                                  c.at("width_hz").get<double>()});
    } else {
        for (const auto& row : reso::resonator_catalog())
            candidates.push_back({row.band.center(), row.band.width()});
    }

    const reso::FreqBand target{lo, hi};
    std::vector<std::size_t> selected;
    try {
        selected = reso::coverage_optimizer(target, candidates);
    } catch (const reso::Uncoverable& e) {
        std::cerr << "uncoverable: " << e.what() << "\n";
        return kExitConfig;
    }

    reso::ArrayDesign design;
    design.target_range = target;
    const auto& catalog = reso::resonator_catalog();
    for (std::size_t idx : selected) {
        reso::ArrayElement e;
        const reso::FreqBand band = candidates[idx].band();
        // reuse catalog geometry when the band matches a catalog row
        e.label = "cand_" + std::to_string(idx);
        for (const auto& row : catalog) {
            if (std::abs(row.band.lo_hz - band.lo_hz) < 1e-6 &&
                std::abs(row.band.hi_hz - band.hi_hz) < 1e-6) {
                e.label = row.label;
                e.spec.D = row.D_mm;
                e.spec.a = row.a_mm;
                e.spec.d = row.D_mm * (14.0 / 80.0);
            }
        }
        e.band = band;
        design.elements.push_back(e);
    }
    std::sort(design.elements.begin(), design.elements.end(),
              [](const reso::ArrayElement& a, const reso::ArrayElement& b) {
                  return a.band.lo_hz < b.band.lo_hz;
              });

    const reso::CoverageReport report = reso::validate_coverage(design);
    json jr;
    jr["ok"] = report.ok;
    jr["gaps_hz"] = json::array();
    for (const auto& g : report.gaps) jr["gaps_hz"].push_back({g.lo_hz, g.hi_hz});
    jr["element_count"] = design.elements.size();

    reso::StitchPlan plan; // cuts are computed later from measured curves
    write_file(out_path, reso::design_to_json(design, plan));
    std::cout << jr.dump(2) << "\n";
    return report.ok ? kExitOk : kExitConfig;
}

int cmd_gain_curve(const std::string& array_path, const std::vector<std::string>& defect_args,
                   std::uint64_t seed, const std::string& out_path) {
    reso::ArrayDesign design;
    reso::StitchPlan plan = reso::default_stitch_plan();
    if (!array_path.empty()) {
        reso::StitchPlan loaded_plan;
        reso::design_from_json(read_file(array_path), design, loaded_plan);
        if (!loaded_plan.segments.empty()) plan = loaded_plan;
    } else {
        design = reso::canonical_array();
        reso::assign_peak_gains(design, seed);
    }

    const reso::GridSpec grid{0.0, 10.0, 801};
    std::vector<reso::GainCurve> curves;
    for (const auto& e : design.elements)
        curves.push_back(reso::synth_gain_curve(e.spec, e.peak_gain, grid));

    // defects as label:freq:gain
    for (const auto& arg : defect_args) {
        std::istringstream ss(arg);
        std::string label, freq_s, gain_s;
        if (!std::getline(ss, label, ':') || !std::getline(ss, freq_s, ':') ||
            !std::getline(ss, gain_s))
            throw reso::ConfigError("defect must be label:freq_hz:gain, got " + arg);
        bool found = false;
        for (std::size_t i = 0; i < design.elements.size(); ++i) {
            if (design.elements[i].label == label) {
                reso::DefectModel defect;
                defect.jumps.push_back({std::stod(freq_s), std::stod(gain_s)});
                curves[i] = reso::inject_defects(curves[i], defect);
                found = true;
            }
        }
        if (!found) throw reso::ConfigError("unknown element label " + label);
    }

    // composite over the plan, then the suppression stages
    std::map<std::string, reso::GainCurve> by_label;
    for (std::size_t i = 0; i < design.elements.size(); ++i)
        by_label[design.elements[i].label] = curves[i];

    reso::GainCurve composite;
    composite.freq_lo = 250.0;
    composite.freq_step = 10.0;
    for (double f = 250.0; f < 1000.0 - 1e-9; f += 10.0) {
        double g = 1.0;
        for (const auto& seg : plan.segments)
            if (f >= seg.lo_hz && f < seg.hi_hz) {
                g = by_label.at(seg.element_label).value_at(f);
                break;
            }
        composite.gains.push_back(g);
    }
    const reso::GainCurve smoothed = reso::smooth_jumps(composite, 3.0);
    const reso::BalanceResult balanced = reso::balance_gains(smoothed, 10.0);

    std::ostringstream csv;
    csv << "freq_hz";
    for (const auto& e : design.elements) csv << ",raw_" << e.label;
    csv << ",gain_raw,gain_smoothed,gain_balanced\n";
    for (std::size_t b = 0; b < composite.size(); ++b) {
        const double f = composite.freq_at(b);
        csv << f;
        for (const auto& c : curves) csv << ',' << c.value_at(f);
        csv << ',' << composite.gains[b] << ',' << smoothed.gains[b] << ','
            << balanced.corrected.gains[b] << '\n';
    }
    write_file(out_path, csv.str());
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& input_wav,
                 std::uint64_t seed_override, bool have_seed, const std::string& out_dir) {
    ExperimentConfig cfg = load_config(config_path);
    if (have_seed) cfg.seed = seed_override;
    cfg.channel.validate();

    fs::create_directories(out_dir);
    const std::uint64_t root = reso::mix_seed(cfg.seed, 0x514d);

    reso::AudioBuffer source;
    if (!input_wav.empty()) {
        source = reso::read_wav(input_wav);
    } else {
        reso::TestSignalSpec spec;
        spec.kind = reso::TestSignalKind::HarmonicVoice;
        spec.freq_hz = 120.0;
        spec.duration_s = cfg.duration_s;
        spec.sample_rate = cfg.sample_rate;
        spec.seed = reso::mix_seed(root, 1);
        source = reso::synth_test_signal(spec);
    }

    reso::ArrayDesign design = reso::canonical_array();
    reso::assign_peak_gains(design, reso::mix_seed(root, 2));
    const reso::GridSpec grid{0.0, cfg.sample_rate / 1600.0, 801};
    std::vector<reso::GainCurve> curves;
    for (const auto& e : design.elements)
        curves.push_back(reso::synth_gain_curve(e.spec, e.peak_gain, grid));
    if (cfg.inject_defects) {
        reso::GaussianRng rng(reso::mix_seed(root, 3));
        const auto idx = static_cast<std::size_t>(rng.uniform01() *
                                                  static_cast<double>(design.elements.size()));
        const std::size_t which = std::min(idx, design.elements.size() - 1);
        reso::DefectModel defect;
        defect.jumps.push_back(
            {rng.uniform(design.elements[which].band.lo_hz, design.elements[which].band.hi_hz),
             rng.uniform(1500.0, 2500.0)});
        curves[which] = reso::inject_defects(curves[which], defect);
    }

    const reso::StitchPlan plan = reso::default_stitch_plan();
    reso::ChannelModel model = cfg.channel;
    model.ambient = cfg.ambient;
    if (model.ambient) model.ambient->seed = reso::mix_seed(root, 4);

    // calibration capture at the reference distance, no ambient
    reso::ChannelModel calib_model = model;
    calib_model.distance_m = calib_model.ref_distance_m;
    calib_model.ambient.reset();
    reso::GaussianRng calib_rng(reso::mix_seed(root, 5));
    reso::AudioBuffer calib_src(cfg.sample_rate,
                                std::vector<double>(static_cast<std::size_t>(
                                    std::ceil(64.0 * 1600.0))));
    for (auto& s : calib_src.samples) s = 0.1 * calib_rng.gaussian();
    const reso::AudioBuffer calib_truth = reso::propagate(calib_src, calib_model);
    const auto calib_capture = reso::capture_multichannel(calib_src, calib_model, design,
                                                          plan, curves,
                                                          reso::mix_seed(root, 6));

    const auto capture = reso::capture_multichannel(source, model, design, plan, curves,
                                                    reso::mix_seed(root, 7));
    const reso::AudioBuffer truth = reso::propagate(source, model);

    reso::AudioBuffer silent(cfg.sample_rate,
                             std::vector<double>(source.samples.size(), 0.0));
    const auto noise_capture = reso::capture_multichannel(silent, model, design, plan,
                                                          curves, reso::mix_seed(root, 8));

    json manifest;
    manifest["schema_version"] = 1;
    manifest["sample_rate"] = cfg.sample_rate;
    manifest["design"] = json::parse(reso::design_to_json(design, plan));
    manifest["ground_truth"] = "ground_truth.wav";
    manifest["calibration_reference"] = "calibration_reference.wav";
    manifest["channels"] = json::array();
    manifest["calibration_channels"] = json::array();
    manifest["noise_channels"] = json::array();
    reso::write_wav(out_dir + "/ground_truth.wav", truth);
    reso::write_wav(out_dir + "/calibration_reference.wav", calib_truth);
    for (std::size_t i = 0; i < capture.channels.size(); ++i) {
        const std::string name = "capture_ch" + std::to_string(i + 1) + ".wav";
        reso::write_wav(out_dir + "/" + name, capture.channels[i]);
        manifest["channels"].push_back(name);
        const std::string calib_name = "calibration_ch" + std::to_string(i + 1) + ".wav";
        reso::write_wav(out_dir + "/" + calib_name, calib_capture.channels[i]);
        manifest["calibration_channels"].push_back(calib_name);
        const std::string noise_name = "noise_ch" + std::to_string(i + 1) + ".wav";
        reso::write_wav(out_dir + "/" + noise_name, noise_capture.channels[i]);
        manifest["noise_channels"].push_back(noise_name);
    }
    write_file(out_dir + "/manifest.json", manifest.dump(2));
    std::cout << "capture written to " << out_dir << "\n";
    return kExitOk;
}

int cmd_pipeline(const std::string& capture_dir, const std::string& config_path,
                 const std::string& out_path) {
    const std::string manifest_path = capture_dir + "/manifest.json";
    if (!fs::exists(manifest_path)) {
        std::cerr << "missing manifest: " << manifest_path << "\n";
        return kExitIo;
    }
    const json manifest = json::parse(read_file(manifest_path));
    ExperimentConfig cfg = load_config(config_path);

    reso::ArrayDesign design;
    reso::StitchPlan plan;
    reso::design_from_json(manifest.at("design").dump(), design, plan);

    reso::MultiChannelCapture capture;
    capture.design = design;
    capture.plan = plan;
    for (const auto& name : manifest.at("channels"))
        capture.channels.push_back(reso::read_wav(capture_dir + "/" + name.get<std::string>()));

    reso::MultiChannelCapture calib = capture;
    calib.channels.clear();
    for (const auto& name : manifest.at("calibration_channels"))
        calib.channels.push_back(reso::read_wav(capture_dir + "/" + name.get<std::string>()));
    const reso::AudioBuffer calib_ref =
        reso::read_wav(capture_dir + "/" + manifest.at("calibration_reference").get<std::string>());

    reso::MultiChannelCapture noise = capture;
    noise.channels.clear();
    for (const auto& name : manifest.at("noise_channels"))
        noise.channels.push_back(reso::read_wav(capture_dir + "/" + name.get<std::string>()));

    const auto estimated = reso::estimate_gain_curves(calib, calib_ref);
    std::map<std::string, reso::GainCurve> by_label;
    for (std::size_t i = 0; i < design.elements.size(); ++i)
        by_label[design.elements[i].label] = estimated[i];

    reso::PipelineConfig pipe = cfg.pipeline;
    pipe.stitch_plan = plan;

    reso::StitchPlan effective = plan;
    bool suppressed = false;
    if (pipe.enable_noise_suppression) {
        try {
            const auto band =
                reso::detect_noise_band(noise.channels.front(), pipe.noise_psd_margin_db);
            effective = reso::suppress_noise(effective, design, band);
            suppressed = true;
        } catch (const reso::EmptyBand&) {
        } catch (const reso::TooShort&) {
        }
    }
    reso::PipelineConfig pipe_run = pipe;
    pipe_run.enable_noise_suppression = false;
    pipe_run.stitch_plan = effective;
    const reso::AudioBuffer noise_stitched = reso::crop_and_stitch(noise, effective);
    const auto result = reso::run_pipeline(capture, noise_stitched, by_label, pipe_run);

    reso::write_wav(out_path, result.output);
    const fs::path out_base = fs::path(out_path).parent_path();
    for (const auto& [stage, buffer] : result.stage_outputs)
        reso::write_wav((out_base / ("stage_" + stage + ".wav")).string(), buffer);
    if (!result.composite_raw.gains.empty()) {
        std::ostringstream csv;
        csv << "freq_hz,gain_raw,gain_smoothed,gain_balanced\n";
        for (std::size_t b = 0; b < result.composite_raw.size(); ++b)
            csv << result.composite_raw.freq_at(b) << ',' << result.composite_raw.gains[b]
                << ',' << result.composite_smoothed.gains[b] << ','
                << result.composite_balanced.gains[b] << '\n';
        write_file((out_base / "curves.csv").string(), csv.str());
    }

    const reso::AudioBuffer truth =
        reso::read_wav(capture_dir + "/" + manifest.at("ground_truth").get<std::string>());
    json report;
    report["snr_db"] = reso::snr_db(truth, result.output);
    report["noise_suppression_applied"] = suppressed;
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, bool bare, bool parallel,
              bool no_noise_suppression, bool no_distortion_suppression,
              bool no_residual_denoise, std::uint64_t seed_override, bool have_seed,
              const std::string& out_dir) {
    ExperimentConfig cfg = load_config(config_path);
    if (have_seed) cfg.seed = seed_override;
    fs::create_directories(out_dir);

    reso::TrialConfig trial = to_trial_config(cfg);
    trial.bare_microphone = bare;
    if (no_noise_suppression) trial.pipeline.enable_noise_suppression = false;
    if (no_distortion_suppression) trial.pipeline.enable_distortion_suppression = false;
    if (no_residual_denoise) trial.pipeline.enable_residual_denoise = false;

    const auto sweep = reso::run_sweep(trial, cfg.distances_m, cfg.trials, parallel);
    write_file(out_dir + "/sweep.csv", reso::sweep_to_csv(sweep));

    json summary;
    summary["rsa_m"] = sweep.rsa_m;
    summary["trials_per_distance"] = cfg.trials;
    summary["distances_m"] = cfg.distances_m;
    write_file(out_dir + "/summary.json", summary.dump(2));
    std::cout << "RSA " << sweep.rsa_m << " m\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-resonator acoustic capture simulator and reconstruction toolkit"};
    app.require_subcommand(1);

    // design
    auto* design = app.add_subcommand("design", "greedy band covering for a target range");
    double target_lo = 250.0, target_hi = 1000.0;
    std::string candidates_path, design_out = "design.json";
    design->add_option("--target-lo", target_lo, "target range low edge, Hz");
    design->add_option("--target-hi", target_hi, "target range high edge, Hz");
    design->add_option("--candidates", candidates_path, "candidate bands JSON");
    design->add_option("--out", design_out, "output design JSON");

    // gain-curve
    auto* gain = app.add_subcommand("gain-curve", "export raw/smoothed/balanced curves");
    std::string gain_array_path, gain_out = "curves.csv";
    std::vector<std::string> defects;
    std::uint64_t gain_seed = 0;
    gain->add_option("--array", gain_array_path, "array design JSON");
    gain->add_option("--defect", defects, "defect as label:freq_hz:gain");
    gain->add_option("--seed", gain_seed, "peak-gain seed");
    gain->add_option("--out", gain_out, "output CSV");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "synthesize a multichannel capture");
    std::string sim_config, sim_input, sim_out = "capture";
    std::uint64_t sim_seed = 0;
    bool sim_have_seed = false;
    simulate->add_option("--config", sim_config, "experiment config JSON");
    simulate->add_option("--input", sim_input, "source WAV (default: synthetic voice)");
    auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "seed override");
    simulate->add_option("--out", sim_out, "output directory");

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "reconstruct audio from a capture");
    std::string pipe_capture = "capture", pipe_config, pipe_out = "reconstructed.wav";
    pipeline->add_option("--capture", pipe_capture, "capture directory");
    pipeline->add_option("--config", pipe_config, "experiment config JSON");
    pipeline->add_option("--out", pipe_out, "output WAV");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "per-distance trials with RSA summary");
    std::string sweep_config, sweep_out = "sweep";
    bool bare = false, parallel = false;
    bool no_ns = false, no_ds = false, no_rd = false;
    std::uint64_t sweep_seed = 0;
    sweep->add_option("--config", sweep_config, "experiment config JSON");
    sweep->add_flag("--bare", bare, "bare microphone, no resonator array");
    sweep->add_flag("--parallel", parallel, "run trials in parallel");
    sweep->add_flag("--no-noise-suppression", no_ns, "disable noise suppression");
    sweep->add_flag("--no-distortion-suppression", no_ds, "disable distortion suppression");
    sweep->add_flag("--no-residual-denoise", no_rd, "disable spectral subtraction");
    auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "seed override");
    sweep->add_option("--out", sweep_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed())
            return cmd_design(target_lo, target_hi, candidates_path, design_out);
        if (gain->parsed()) return cmd_gain_curve(gain_array_path, defects, gain_seed, gain_out);
        if (simulate->parsed())
            return cmd_simulate(sim_config, sim_input, sim_seed, !sim_seed_opt->empty(),
                                sim_out);
        if (pipeline->parsed()) return cmd_pipeline(pipe_capture, pipe_config, pipe_out);
        if (sweep->parsed())
            return cmd_sweep(sweep_config, bare, parallel, no_ns, no_ds, no_rd, sweep_seed,
                             !sweep_seed_opt->empty(), sweep_out);
    } catch (const reso::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const reso::Corrupt& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const reso::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
