#include "reso/arraydesign.hpp"

#include "reso/errors.hpp"
#include "reso/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace reso {

namespace {
constexpr double kEps = 1e-9;
}

const ArrayElement* ArrayDesign::find(const std::string& label) const {
    for (const auto& e : elements)
        if (e.label == label) return &e;
    return nullptr;
}

FreqBand StitchPlan::coverage() const {
    if (segments.empty()) return {0.0, 0.0};
    return {segments.front().lo_hz, segments.back().hi_hz};
}

void StitchPlan::validate_partition(const FreqBand& target) const {
    if (segments.empty()) throw ConfigError("stitch plan has no segments");
    if (std::abs(segments.front().lo_hz - target.lo_hz) > kEps ||
        std::abs(segments.back().hi_hz - target.hi_hz) > kEps)
        throw ConfigError("stitch plan does not span the target range");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].hi_hz <= segments[i].lo_hz)
            throw ConfigError("stitch segment is empty or inverted");
        if (i > 0 && std::abs(segments[i].lo_hz - segments[i - 1].hi_hz) > kEps)
            throw ConfigError("stitch segments are not contiguous");
    }
}

ArrayDesign canonical_array() {
    ArrayDesign design;
    design.target_range = {250.0, 1000.0};
    design.stack_thickness_mm = 120.0;
    for (const auto& row : resonator_catalog()) {
        ArrayElement e;
        e.label = row.label;
        e.spec.D = row.D_mm;
        e.spec.a = row.a_mm;
        e.spec.N = 8.0;
        e.spec.t = 2.0;
        // Inner diameter scales with the outer one, matching the baseline
        // 14 mm bore at D = 80 mm.
        e.spec.d = row.D_mm * (14.0 / 80.0);
        e.band = row.band;
        e.peak_gain = 16.0;
        design.elements.push_back(e);
    }
    return design;
}

void assign_peak_gains(ArrayDesign& design, std::uint64_t seed, double lo, double hi) {
    for (std::size_t i = 0; i < design.elements.size(); ++i) {
        GaussianRng rng(mix_seed(seed, 0x70656100ULL + i));
        design.elements[i].peak_gain = rng.uniform(lo, hi);
    }
}

StitchPlan default_stitch_plan() {
    StitchPlan plan;
    plan.cut_freqs_hz = {320.0, 360.0, 430.0, 520.0, 620.0, 700.0, 860.0};
    const std::vector<std::string> labels = {"(8)", "(7)", "(6)", "(5)",
                                             "(4)", "(3)", "(2)", "(1)"};
    double lo = 250.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double hi = i < plan.cut_freqs_hz.size() ? plan.cut_freqs_hz[i] : 1000.0;
        plan.segments.push_back({lo, hi, labels[i]});
        lo = hi;
    }
    return plan;
}

StitchPlan compute_cut_points(const std::vector<GainCurve>& curves,
                              const ArrayDesign& design) {
    if (curves.size() != design.elements.size())
        throw ConfigError("one gain curve per element required");
    for (const auto& c : curves) {
        if (std::abs(c.freq_lo - curves.front().freq_lo) > kEps ||
            std::abs(c.freq_step - curves.front().freq_step) > kEps ||
            c.size() != curves.front().size())
            throw ConfigError("gain curves must share one grid");
    }

    StitchPlan plan;
    const auto& grid = curves.front();
    for (std::size_t i = 0; i + 1 < design.elements.size(); ++i) {
        const FreqBand& left = design.elements[i].band;
        const FreqBand& right = design.elements[i + 1].band;
        if (right.lo_hz > left.hi_hz + kEps)
            throw DisjointBands("bands of " + design.elements[i].label + " and " +
                                design.elements[i + 1].label +
                                " neither overlap nor touch");
        const double overlap_lo = right.lo_hz;
        const double overlap_hi = left.hi_hz;
        double best_freq = overlap_lo;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < grid.size(); ++b) {
            const double f = grid.freq_at(b);
            if (f < overlap_lo - kEps || f > overlap_hi + kEps) continue;
            const double g = std::max(curves[i].gains[b], curves[i + 1].gains[b]);
            if (g > best_gain + kEps) {
                best_gain = g;
                best_freq = f;
            }
        }
        plan.cut_freqs_hz.push_back(best_freq);
    }

    double lo = design.target_range.lo_hz;
    for (std::size_t i = 0; i < design.elements.size(); ++i) {
        const double hi = i < plan.cut_freqs_hz.size() ? plan.cut_freqs_hz[i]
                                                       : design.target_range.hi_hz;
        plan.segments.push_back({lo, hi, design.elements[i].label});
        lo = hi;
    }
    plan.validate_partition(design.target_range);
    return plan;
}

CoverageReport validate_coverage(const ArrayDesign& design) {
    CoverageReport report;
    const FreqBand target = design.target_range;
    std::vector<FreqBand> bands;
    for (const auto& e : design.elements) bands.push_back(e.band);
    std::sort(bands.begin(), bands.end(),
              [](const FreqBand& x, const FreqBand& y) { return x.lo_hz < y.lo_hz; });

    double frontier = target.lo_hz;
    for (const auto& b : bands) {
        if (b.hi_hz <= frontier) continue;
        if (b.lo_hz > frontier + kEps) {
            report.gaps.push_back({frontier, std::min(b.lo_hz, target.hi_hz)});
        } else if (b.lo_hz < frontier - kEps && frontier > target.lo_hz) {
            report.overlaps.push_back({b.lo_hz > target.lo_hz ? b.lo_hz : target.lo_hz,
                                       std::min(frontier, b.hi_hz)});
        }
        frontier = std::max(frontier, b.hi_hz);
        if (frontier >= target.hi_hz) break;
    }
    if (frontier < target.hi_hz - kEps) report.gaps.push_back({frontier, target.hi_hz});
    report.ok = report.gaps.empty();
    return report;
}

std::vector<std::size_t> coverage_optimizer(const FreqBand& target,
                                            const std::vector<CandidateBand>& candidates) {
    if (candidates.empty())
        throw Uncoverable("no candidate bands supplied", target.lo_hz);
    std::vector<std::size_t> selected;
    double frontier = target.lo_hz;
    while (frontier < target.hi_hz - kEps) {
        double best_hi = frontier;
        std::size_t best_idx = candidates.size();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const FreqBand b = candidates[i].band();
            if (b.lo_hz <= frontier + kEps && b.hi_hz > best_hi + kEps) {
                best_hi = b.hi_hz;
                best_idx = i;
            }
        }
        if (best_idx == candidates.size())
            throw Uncoverable("coverage stuck at " + std::to_string(frontier) + " Hz",
                              frontier);
        selected.push_back(best_idx);
        frontier = best_hi;
    }
    return selected;
}

std::string design_to_json(const ArrayDesign& design, const StitchPlan& plan) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["target_hz"] = {design.target_range.lo_hz, design.target_range.hi_hz};
    j["stack_thickness_mm"] = design.stack_thickness_mm;
    j["elements"] = nlohmann::json::array();
    for (const auto& e : design.elements) {
        j["elements"].push_back({{"label", e.label},
                                 {"D_mm", e.spec.D},
                                 {"a_mm", e.spec.a},
                                 {"band_hz", {e.band.lo_hz, e.band.hi_hz}},
                                 {"peak_gain", e.peak_gain}});
    }
    j["cuts_hz"] = plan.cut_freqs_hz;
    return j.dump(2);
}

void design_from_json(const std::string& text, ArrayDesign& design, StitchPlan& plan) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid array JSON: ") + e.what());
    }
    try {
        if (!j.contains("schema_version"))
            throw ConfigError("array JSON missing schema_version");
        design = ArrayDesign{};
        design.target_range = {j.at("target_hz").at(0).get<double>(),
                               j.at("target_hz").at(1).get<double>()};
        if (j.contains("stack_thickness_mm"))
            design.stack_thickness_mm = j["stack_thickness_mm"].get<double>();
        for (const auto& je : j.at("elements")) {
            ArrayElement e;
            e.label = je.at("label").get<std::string>();
            e.spec.D = je.at("D_mm").get<double>();
            e.spec.a = je.at("a_mm").get<double>();
            e.spec.d = e.spec.D * (14.0 / 80.0);
            e.band = {je.at("band_hz").at(0).get<double>(),
                      je.at("band_hz").at(1).get<double>()};
            e.peak_gain = je.at("peak_gain").get<double>();
            design.elements.push_back(e);
        }
        plan = StitchPlan{};
        plan.cut_freqs_hz = j.at("cuts_hz").get<std::vector<double>>();
        double lo = design.target_range.lo_hz;
        for (std::size_t i = 0; i < design.elements.size(); ++i) {
            const double hi = i < plan.cut_freqs_hz.size() ? plan.cut_freqs_hz[i]
                                                           : design.target_range.hi_hz;
            plan.segments.push_back({lo, hi, design.elements[i].label});
            lo = hi;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid array JSON: ") + e.what());
    }
}

} // namespace reso
