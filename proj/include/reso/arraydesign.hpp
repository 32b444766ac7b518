#pragma once

#include "reso/gainmodel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace reso {

struct ArrayElement {
    std::string label;
    MetamaterialSpec spec;
    FreqBand band;
    double peak_gain = 16.0;
};

// Ordered multi-resonator system; elements ascend by band low edge.
struct ArrayDesign {
    std::vector<ArrayElement> elements;
    FreqBand target_range{250.0, 1000.0};
    double stack_thickness_mm = 120.0; // metadata only

    const ArrayElement* find(const std::string& label) const;
};

struct StitchSegment {
    double lo_hz = 0.0;
    double hi_hz = 0.0; // half-open [lo, hi)
    std::string element_label;
};

struct StitchPlan {
    std::vector<double> cut_freqs_hz;
    std::vector<StitchSegment> segments;

    FreqBand coverage() const;
    // Throws unless segments are contiguous, non-overlapping and span the
    // given target range exactly.
    void validate_partition(const FreqBand& target) const;
};

struct CoverageReport {
    std::vector<FreqBand> gaps;
    std::vector<FreqBand> overlaps;
    bool ok = false;
};

// The eight-element catalog system with target range [250, 1000] Hz.
// Peak gains default to the baseline 16x.
ArrayDesign canonical_array();

// Draw per-element peak gains uniformly in [15, 22] (one stream per element).
void assign_peak_gains(ArrayDesign& design, std::uint64_t seed,
                       double lo = 15.0, double hi = 22.0);

// The shipped default plan with the seven catalog cut frequencies.
StitchPlan default_stitch_plan();

// Cut between each adjacent pair at the overlap frequency maximizing
// max(G_left, G_right); ties break to the lower frequency.
StitchPlan compute_cut_points(const std::vector<GainCurve>& curves,
                              const ArrayDesign& design);

CoverageReport validate_coverage(const ArrayDesign& design);

struct CandidateBand {
    double center_hz = 0.0;
    double width_hz = 0.0;
    FreqBand band() const { return {center_hz - width_hz / 2.0, center_hz + width_hz / 2.0}; }
};

// Greedy interval covering; returns indices into `candidates` in selection
// order. Throws Uncoverable (with the stuck frontier) if the target cannot
// be covered.
std::vector<std::size_t> coverage_optimizer(const FreqBand& target,
                                            const std::vector<CandidateBand>& candidates);

// JSON round-trip per the array-config schema.
std::string design_to_json(const ArrayDesign& design, const StitchPlan& plan);
void design_from_json(const std::string& text, ArrayDesign& design, StitchPlan& plan);

} // namespace reso
