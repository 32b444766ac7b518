#include "reso/reconstruct.hpp"

#include "reso/errors.hpp"
#include "reso/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace reso {

namespace {

constexpr double kEps = 1e-9;

double median_of_three(double a, double b, double c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                    static_cast<double>(n));
    return w;
}

// Welch-averaged magnitude spectrum (Hann window, 50% overlap), length
// segment/2 + 1 bins.
std::vector<double> welch_magnitude(const std::vector<double>& x,
                                    const WelchConfig& welch) {
    const std::size_t seg = welch.segment;
    const std::size_t hop = seg / 2;
    if (x.size() < seg) throw TooShort("signal shorter than one Welch segment");
    const std::size_t count = 1 + (x.size() - seg) / hop;
    if (count < welch.min_segments)
        throw TooShort("need at least " + std::to_string(welch.min_segments) +
                       " Welch segments");
    const auto window = hann_window(seg);
    std::vector<double> acc(seg / 2 + 1, 0.0);
    std::vector<std::complex<double>> frame(seg);
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t i = 0; i < seg; ++i)
            frame[i] = x[s * hop + i] * window[i];
        auto spec = fft(frame);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += std::abs(spec[k]);
    }
    for (auto& v : acc) v /= static_cast<double>(count);
    return acc;
}

// ΔG(i) = |G(i) - median(G(i-1), G(i), G(i+1))| with replicated edges.
std::vector<double> neighborhood_deviation(const GainCurve& curve) {
    const std::size_t n = curve.size();
    std::vector<double> dg(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = curve.gains[i > 0 ? i - 1 : 0];
        const double next = curve.gains[i + 1 < n ? i + 1 : n - 1];
        dg[i] = std::abs(curve.gains[i] - median_of_three(prev, curve.gains[i], next));
    }
    return dg;
}

} // namespace

void PipelineConfig::validate() const {
    if (jump_sigma_factor <= 0.0) throw ConfigError("jump_sigma_factor must be positive");
    if (balance_cap < 1.0) throw ConfigError("balance_cap must be >= 1");
    if (subtraction_beta <= 0.0 || subtraction_beta >= 1.0)
        throw ConfigError("subtraction_beta must be in (0, 1)");
}

std::vector<GainCurve> estimate_gain_curves(const MultiChannelCapture& capture,
                                            const AudioBuffer& reference,
                                            const WelchConfig& welch) {
    const auto ref_mag = welch_magnitude(reference.samples, welch);
    std::vector<GainCurve> curves;
    curves.reserve(capture.channels.size());
    for (const auto& channel : capture.channels) {
        if (channel.samples.size() != reference.samples.size())
            throw LengthMismatch("calibration channel and reference differ in length");
        const auto chan_mag = welch_magnitude(channel.samples, welch);
        GainCurve curve;
        curve.freq_lo = 0.0;
        curve.freq_step = reference.sample_rate / static_cast<double>(welch.segment);
        curve.gains.resize(chan_mag.size());
        for (std::size_t k = 0; k < chan_mag.size(); ++k)
            curve.gains[k] = ref_mag[k] > 0.0 ? chan_mag[k] / ref_mag[k] : 1.0;
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<std::size_t> detect_jump_points(const GainCurve& curve, double sigma_factor) {
    if (curve.size() < 3) throw TooShort("curve needs at least 3 bins");
    const auto dg = neighborhood_deviation(curve);
    const double mean = std::accumulate(dg.begin(), dg.end(), 0.0) /
                        static_cast<double>(dg.size());
    double var = 0.0;
    for (double v : dg) var += (v - mean) * (v - mean);
    var /= static_cast<double>(dg.size());
    const double threshold = mean + sigma_factor * std::sqrt(var);
    std::vector<std::size_t> flagged;
    for (std::size_t i = 0; i < dg.size(); ++i)
        if (dg[i] > threshold) flagged.push_back(i);
    return flagged;
}

namespace {

// Median over the window [i-half, i+half], truncated at the curve ends.
// Truncation rather than edge replication: replicating would give an edge
// bin a majority of its own window, making a defect in the first or last
// bin undetectable and irreplaceable.
double window_median(const std::vector<double>& g, std::size_t i, std::size_t half) {
    const std::size_t n = g.size();
    const std::size_t lo = i > half ? i - half : 0;
    const std::size_t hi = std::min(i + half, n - 1);
    std::vector<double> w(g.begin() + static_cast<std::ptrdiff_t>(lo),
                          g.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    std::sort(w.begin(), w.end());
    return w[w.size() / 2];
}

// Bins flagged by the same mean + sigma * std rule applied to the deviation
// from a wider window median. The three-point deviation is exactly zero on
// any plateau of two or more adjacent jump bins (each bin is the median of
// its own neighborhood), and a plateau of width w is visible only to windows
// wider than 2w, so callers probe with increasing half-widths.
std::vector<std::size_t> detect_plateau_points(const std::vector<double>& g,
                                               double sigma_factor, std::size_t half) {
    const std::size_t n = g.size();
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i)
        dev[i] = std::abs(g[i] - window_median(g, i, half));
    const double mean = std::accumulate(dev.begin(), dev.end(), 0.0) /
                        static_cast<double>(n);
    double var = 0.0;
    for (double v : dev) var += (v - mean) * (v - mean);
    const double threshold = mean + sigma_factor * std::sqrt(var / static_cast<double>(n));
    std::vector<std::size_t> flagged;
    for (std::size_t i = 0; i < n; ++i)
        if (dev[i] > threshold) flagged.push_back(i);
    return flagged;
}

} // namespace

GainCurve smooth_jumps(const GainCurve& curve, double sigma_factor,
                       std::size_t* passes_out) {
    GainCurve out = curve;
    const std::size_t max_passes = out.size();
    constexpr std::size_t kMaxPlateauHalf = 6;
    std::size_t passes = 0;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        const auto before = out.gains;
        const std::size_t n = before.size();
        const auto flagged = detect_jump_points(out, sigma_factor);
        if (!flagged.empty()) {
            for (std::size_t i : flagged) {
                const double prev = before[i > 0 ? i - 1 : 0];
                const double next = before[i + 1 < n ? i + 1 : n - 1];
                out.gains[i] = median_of_three(prev, before[i], next);
            }
            ++passes;
            continue;
        }
        // isolated jumps are gone; probe for plateaus with widening windows
        bool replaced = false;
        for (std::size_t half = 2; half <= kMaxPlateauHalf && !replaced; ++half) {
            const auto plateaus = detect_plateau_points(before, sigma_factor, half);
            for (std::size_t i : plateaus) {
                out.gains[i] = window_median(before, i, half);
                replaced = true;
            }
        }
        if (!replaced) break;
        ++passes;
    }
    if (passes_out) *passes_out = passes;
    return out;
}

GainCurve resharpen_spikes(const GainCurve& curve, double sigma_factor) {
    const std::size_t n = curve.size();
    if (n < 9) return curve;
    const auto& g = curve.gains;

    // First-pass background: a window median wide enough that a single
    // smeared cluster (up to six bins including tails) is a minority of the
    // window. Two nearby clusters can still contaminate it; the refined
    // background below fixes that.
    std::vector<double> bg0(n);
    for (std::size_t i = 0; i < n; ++i) bg0[i] = window_median(g, i, 6);

    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(g[i] - bg0[i]);
    const double mean = std::accumulate(dev.begin(), dev.end(), 0.0) /
                        static_cast<double>(n);
    double var = 0.0;
    for (double v : dev) var += (v - mean) * (v - mean);
    const double threshold = mean + sigma_factor * std::sqrt(var / static_cast<double>(n));

    // Core spike bins: outliers that also dwarf the local background, so the
    // rounded top of an ordinary resonance is never mistaken for a spike.
    std::vector<bool> core(n, false);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (dev[i] > threshold && g[i] > 3.0 * bg0[i]) {
            core[i] = true;
            any = true;
        }
    }
    if (!any) return curve;

    // Bins within the smear reach of some core bin cannot vouch for the
    // underlying smooth response.
    std::vector<bool> masked(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (!core[i]) continue;
        const std::size_t lo = i >= 3 ? i - 3 : 0;
        const std::size_t hi = std::min(i + 3, n - 1);
        for (std::size_t j = lo; j <= hi; ++j) masked[j] = true;
    }

    // Refined background. Unmasked bins keep a local clean median. Masked
    // bins get a log-domain quadratic fit through nearby clean bins: a
    // resonance top is locally parabolic in log gain, so fitting across the
    // masked span recovers the response the smear is sitting on, which a
    // median of distant skirt bins would underestimate.
    std::vector<double> bg(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, double>> pts; // (offset, ln g)
        if (masked[i]) {
            // nearest few clean bins on each side: distant skirt bins would
            // flatten the fit of a narrow resonance top
            int found = 0;
            for (std::size_t j = i; j-- > 0 && found < 5;)
                if (!masked[j] && g[j] > 0.0 && i - j <= 25) {
                    pts.emplace_back(static_cast<double>(j) - static_cast<double>(i),
                                     std::log(g[j]));
                    ++found;
                }
            found = 0;
            for (std::size_t j = i + 1; j < n && found < 5; ++j)
                if (!masked[j] && g[j] > 0.0 && j - i <= 25) {
                    pts.emplace_back(static_cast<double>(j) - static_cast<double>(i),
                                     std::log(g[j]));
                    ++found;
                }
        } else {
            for (std::size_t half = 6; half < n; half += 10) {
                pts.clear();
                const std::size_t lo = i >= half ? i - half : 0;
                const std::size_t hi = std::min(i + half, n - 1);
                for (std::size_t j = lo; j <= hi; ++j)
                    if (!masked[j] && g[j] > 0.0)
                        pts.emplace_back(static_cast<double>(j) - static_cast<double>(i),
                                         std::log(g[j]));
                if (pts.size() >= 5 || (lo == 0 && hi == n - 1)) break;
            }
        }
        if (pts.empty()) return curve; // everything masked: give up

        if (!masked[i]) {
            std::vector<double> vals;
            vals.reserve(pts.size());
            for (const auto& p : pts) vals.push_back(std::exp(p.second));
            std::nth_element(vals.begin(), vals.begin() + vals.size() / 2, vals.end());
            bg[i] = vals[vals.size() / 2];
            continue;
        }
        bool left = false, right = false;
        for (const auto& p : pts) (p.first < 0.0 ? left : right) = true;
        double fit = 0.0;
        if (left && right && pts.size() >= 5) {
            // quadratic least squares in (offset, ln g); value at offset 0
            double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
            for (const auto& [x, y] : pts) {
                const double x2 = x * x;
                s0 += 1; s1 += x; s2 += x2; s3 += x2 * x; s4 += x2 * x2;
                t0 += y; t1 += x * y; t2 += x2 * y;
            }
            const double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s2 * s3) +
                               s2 * (s1 * s3 - s2 * s2);
            if (std::abs(det) > 1e-9) {
                const double c0 = (t0 * (s2 * s4 - s3 * s3) - s1 * (t1 * s4 - t2 * s3) +
                                   s2 * (t1 * s3 - t2 * s2)) / det;
                fit = std::exp(c0);
            }
        }
        if (fit <= 0.0) {
            // one-sided data: fall back to the nearest clean value
            double best_dist = 1e300, best_y = pts.front().second;
            for (const auto& [x, y] : pts)
                if (std::abs(x) < best_dist) { best_dist = std::abs(x); best_y = y; }
            fit = std::exp(best_y);
        }
        // never above the spikes it must sit under, never below the floor
        double clean_max = 0.0;
        for (const auto& p : pts) clean_max = std::max(clean_max, std::exp(p.second));
        bg[i] = std::clamp(fit, 1e-6, 1.5 * clean_max);
    }

    // Group core bins (single-bin gaps bridged): one spike per group, so two
    // nearby defects are restored separately instead of merging into one.
    std::vector<std::size_t> cores;
    for (std::size_t i = 0; i < n; ++i)
        if (core[i]) cores.push_back(i);
    struct Group { std::size_t lo, hi; };
    std::vector<Group> groups;
    for (std::size_t k : cores) {
        if (!groups.empty() && k <= groups.back().hi + 2)
            groups.back().hi = k;
        else
            groups.push_back({k, k});
    }

    GainCurve out = curve;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        // Grow the cluster over the smear tails, but never past the midpoint
        // toward a neighboring group.
        const std::size_t left_limit =
            gi > 0 ? (groups[gi - 1].hi + groups[gi].lo) / 2 + 1 : 0;
        const std::size_t right_limit =
            gi + 1 < groups.size() ? (groups[gi].hi + groups[gi + 1].lo) / 2 : n - 1;
        std::size_t a = groups[gi].lo;
        while (a > left_limit && g[a - 1] > 2.0 * bg[a - 1]) --a;
        std::size_t b = groups[gi].hi;
        while (b < right_limit && g[b + 1] > 2.0 * bg[b + 1]) ++b;

        double energy = 0.0;
        double weighted_freq = 0.0;
        for (std::size_t j = a; j <= b; ++j) {
            const double excess = std::max(g[j] * g[j] - bg[j] * bg[j], 0.0);
            energy += excess;
            weighted_freq += curve.freq_at(j) * excess;
        }
        if (energy > 0.0) {
            const double centroid = weighted_freq / energy;
            const long target_l = std::lround((centroid - curve.freq_lo) / curve.freq_step);
            const std::size_t target = static_cast<std::size_t>(
                std::clamp(target_l, static_cast<long>(a), static_cast<long>(b)));
            for (std::size_t j = a; j <= b; ++j) out.gains[j] = bg[j];
            // The averaging kernel conserves the spike's excess power; for a
            // triangular one-bin fine-grid profile the height follows from
            // integral(tri^2) = 2/3 per unit half-width.
            const double height = std::max(std::sqrt(1.5 * energy), bg[target]);
            out.gains[target] = height;
            // Kernel skirts leak ~1.1% of the spike height three bins out and
            // ~0.25% four bins out; bins the cluster did not swallow still
            // carry that bias, so subtract it in power (floored at the
            // background, never raised).
            static constexpr double kSkirt[2] = {0.011, 0.0025};
            for (int off = 3; off <= 4; ++off) {
                const double leak = kSkirt[off - 3] * height;
                for (const long j : {static_cast<long>(target) - off,
                                     static_cast<long>(target) + off}) {
                    if (j < 0 || j >= static_cast<long>(n)) continue;
                    const auto ju = static_cast<std::size_t>(j);
                    if (ju >= a && ju <= b) continue; // already replaced
                    const double cleaned = std::sqrt(
                        std::max(out.gains[ju] * out.gains[ju] - leak * leak, 0.0));
                    out.gains[ju] = std::clamp(cleaned, bg[ju], out.gains[ju]);
                }
            }
        }
    }
    return out;
}

BalanceResult balance_gains(const GainCurve& curve, double cap) {
    BalanceResult result;
    result.corrected = curve;
    result.correction = curve;
    std::fill(result.correction.gains.begin(), result.correction.gains.end(), 1.0);

    std::vector<double> in_band;
    for (double g : curve.gains)
        if (g >= 1.0) in_band.push_back(g);
    if (in_band.empty()) {
        result.target = 1.0;
        return result;
    }
    result.target = median(in_band);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double g = curve.gains[i];
        if (g < 1.0) continue;
        const double c = std::clamp(result.target / g, 1.0 / cap, cap);
        result.correction.gains[i] = c;
        result.corrected.gains[i] = g * c;
    }
    return result;
}

AudioBuffer crop_and_stitch(const MultiChannelCapture& capture, const StitchPlan& plan) {
    if (capture.channels.empty()) throw PlanChannelMismatch("capture has no channels");
    const std::size_t n = capture.channels.front().samples.size();
    const double rate = capture.channels.front().sample_rate;

    // map labels to channel indices via the capture's design
    std::vector<const AudioBuffer*> segment_channels;
    for (const auto& seg : plan.segments) {
        std::size_t idx = capture.design.elements.size();
        for (std::size_t i = 0; i < capture.design.elements.size(); ++i)
            if (capture.design.elements[i].label == seg.element_label) idx = i;
        if (idx >= capture.channels.size())
            throw PlanChannelMismatch("no channel for element " + seg.element_label);
        segment_channels.push_back(&capture.channels[idx]);
    }

    std::vector<std::vector<std::complex<double>>> spectra(capture.channels.size());
    auto spectrum_of = [&](const AudioBuffer* buf) -> const std::vector<std::complex<double>>& {
        const std::size_t idx = static_cast<std::size_t>(buf - capture.channels.data());
        if (spectra[idx].empty()) spectra[idx] = fft_real(buf->samples);
        return spectra[idx];
    };

    std::vector<std::complex<double>> out(n, 0.0);
    if (n > 0) {
        for (std::size_t k = 0; k <= n / 2; ++k) {
            const double f = static_cast<double>(k) * rate / static_cast<double>(n);
            for (std::size_t s = 0; s < plan.segments.size(); ++s) {
                if (f >= plan.segments[s].lo_hz && f < plan.segments[s].hi_hz) {
                    const auto& spec = spectrum_of(segment_channels[s]);
                    out[k] = spec[k];
                    if (k > 0 && k < n - k) out[n - k] = spec[n - k];
                    break;
                }
            }
        }
    }
    return AudioBuffer(rate, ifft_to_real(out));
}

namespace {

struct SuppressionCurves {
    GainCurve raw;
    GainCurve smoothed;
    GainCurve balanced;
    GainCurve multiplier;
};

SuppressionCurves build_suppression_curves(const std::map<std::string, GainCurve>& estimated,
                                           const StitchPlan& plan,
                                           const PipelineConfig& config) {
    for (const auto& seg : plan.segments)
        if (estimated.find(seg.element_label) == estimated.end())
            throw MissingCurve("no estimated curve for element " + seg.element_label);

    // Composite curve over the plan's coverage on the estimates' grid.
    const GainCurve& proto = estimated.begin()->second;
    const FreqBand cover = plan.coverage();
    GainCurve raw;
    raw.freq_step = proto.freq_step;
    const auto first_bin =
        static_cast<std::size_t>(std::ceil((cover.lo_hz - proto.freq_lo) / proto.freq_step - kEps));
    raw.freq_lo = proto.freq_lo + proto.freq_step * static_cast<double>(first_bin);
    for (double f = raw.freq_lo; f < cover.hi_hz - kEps; f += raw.freq_step) {
        double g = 1.0;
        for (const auto& seg : plan.segments) {
            if (f >= seg.lo_hz && f < seg.hi_hz) {
                g = estimated.at(seg.element_label).value_at(f);
                break;
            }
        }
        raw.gains.push_back(std::max(g, 1e-6));
    }
    if (raw.size() < 3) throw TooShort("composite curve has fewer than 3 bins");

    SuppressionCurves curves;
    curves.raw = raw;
    curves.smoothed = smooth_jumps(raw, config.jump_sigma_factor);
    curves.balanced = balance_gains(curves.smoothed, config.balance_cap).corrected;
    curves.multiplier = raw;
    for (std::size_t i = 0; i < raw.size(); ++i)
        curves.multiplier.gains[i] = curves.balanced.gains[i] / raw.gains[i];
    return curves;
}

// Divide out the estimated response and impose the balanced composite,
// evaluating both at each fine FFT bin. Two details matter: the divisor for
// a bin must come from the same element's curve the stitch took that bin
// from (a cross-boundary composite would mix neighboring estimates on the
// skirts of a cut), and the ratio must be formed per fine bin (the ratio of
// interpolations is not the interpolation of the ratio).
AudioBuffer apply_equalization(const AudioBuffer& stitched,
                               const std::map<std::string, GainCurve>& estimated,
                               const StitchPlan& plan, const SuppressionCurves& curves) {
    auto bins = fft_real(stitched.samples);
    const std::size_t n = bins.size();
    const double rate = stitched.sample_rate;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t mirror = std::min(k, n - k);
        const double f = static_cast<double>(mirror) * rate / static_cast<double>(n);
        const GainCurve* element_curve = nullptr;
        for (const auto& seg : plan.segments)
            if (f >= seg.lo_hz && f < seg.hi_hz) {
                element_curve = &estimated.at(seg.element_label);
                break;
            }
        if (!element_curve) continue; // outside coverage: stitch zeroed it
        const double raw = element_curve->value_at(f);
        const double balanced = curves.balanced.value_at(f);
        if (raw > kEps) bins[k] *= balanced / raw;
    }
    AudioBuffer out = stitched;
    out.samples = ifft_to_real(bins);
    return out;
}

} // namespace

AudioBuffer apply_distortion_suppression(const AudioBuffer& stitched,
                                         const std::map<std::string, GainCurve>& estimated,
                                         const StitchPlan& plan,
                                         const PipelineConfig& config) {
    config.validate();
    std::map<std::string, GainCurve> sharp;
    for (const auto& [label, curve] : estimated)
        sharp[label] = resharpen_spikes(curve, config.jump_sigma_factor);
    return apply_equalization(stitched, sharp, plan,
                              build_suppression_curves(sharp, plan, config));
}

namespace {

NoiseBand band_from_psd(const std::vector<double>& psd, double step, double nyquist,
                        double margin_db) {
    // skip DC
    std::vector<double> body(psd.begin() + 1, psd.end());
    const double med = median(body);
    const double threshold = med * std::pow(10.0, margin_db / 20.0); // magnitude ratio
    std::vector<std::size_t> flagged;
    for (std::size_t k = 1; k < psd.size(); ++k)
        if (psd[k] > threshold) flagged.push_back(k);
    if (flagged.empty()) throw EmptyBand("no bins exceed the PSD margin");
    if (flagged.size() > 0.8 * static_cast<double>(psd.size() - 1))
        return {0.0, nyquist};

    // Group flagged bins into clusters (gaps of up to two bins bridged) and
    // keep the one with the most excess power, so a lone statistical outlier
    // far from the real band cannot stretch the reported span.
    struct Cluster { std::size_t lo, hi; double power; };
    std::vector<Cluster> clusters;
    for (std::size_t k : flagged) {
        if (!clusters.empty() && k <= clusters.back().hi + 3) {
            clusters.back().hi = k;
            clusters.back().power += psd[k] * psd[k];
        } else {
            clusters.push_back({k, k, psd[k] * psd[k]});
        }
    }
    const auto& best = *std::max_element(
        clusters.begin(), clusters.end(),
        [](const Cluster& a, const Cluster& b) { return a.power < b.power; });
    // Trim spectral-leakage skirts: a band-limited source smears a couple of
    // bins past its true edge, loud enough to clear the global threshold but
    // far below the band interior. Peel edge bins under a quarter of the
    // cluster's median level.
    std::size_t lo = best.lo, hi = best.hi;
    std::vector<double> interior(psd.begin() + static_cast<std::ptrdiff_t>(lo),
                                 psd.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    const double skirt = 0.25 * median(interior);
    while (lo < hi && psd[lo] < skirt) ++lo;
    while (hi > lo && psd[hi] < skirt) --hi;
    return {static_cast<double>(lo) * step, static_cast<double>(hi) * step};
}

} // namespace

NoiseBand detect_noise_band(const AudioBuffer& noise_ref, double margin_db,
                            const WelchConfig& welch) {
    WelchConfig cfg = welch;
    cfg.min_segments = std::max<std::size_t>(cfg.min_segments / 2, 16);
    auto psd = welch_magnitude(noise_ref.samples, cfg);
    const double step = noise_ref.sample_rate / static_cast<double>(cfg.segment);
    return band_from_psd(psd, step, noise_ref.sample_rate / 2.0, margin_db);
}

NoiseBand detect_noise_band(const MultiChannelCapture& noise_capture, double margin_db,
                            const WelchConfig& welch) {
    if (noise_capture.channels.empty())
        throw EmptyBand("noise capture has no channels");
    WelchConfig cfg = welch;
    cfg.min_segments = std::max<std::size_t>(cfg.min_segments / 2, 16);
    // Per-bin minimum across channels: each element amplifies (and, when it
    // carries a defect, may clip and distort) its own band, but never all the
    // same one, so the minimum tracks the ambient spectrum itself.
    std::vector<double> psd;
    for (const auto& ch : noise_capture.channels) {
        auto p = welch_magnitude(ch.samples, cfg);
        if (psd.empty()) {
            psd = std::move(p);
        } else {
            for (std::size_t k = 0; k < psd.size(); ++k)
                psd[k] = std::min(psd[k], p[k]);
        }
    }
    const double rate = noise_capture.channels.front().sample_rate;
    const double step = rate / static_cast<double>(cfg.segment);
    return band_from_psd(psd, step, rate / 2.0, margin_db);
}

StitchPlan suppress_noise(const StitchPlan& plan, const ArrayDesign& design,
                          const NoiseBand& noise_band) {
    StitchPlan reduced;
    for (const auto& seg : plan.segments) {
        const ArrayElement* element = design.find(seg.element_label);
        if (!element)
            throw PlanChannelMismatch("plan references unknown element " + seg.element_label);
        const bool hit = element->band.lo_hz <= noise_band.hi_hz &&
                         noise_band.lo_hz <= element->band.hi_hz;
        if (!hit) reduced.segments.push_back(seg);
    }
    if (reduced.segments.empty())
        throw AllIsolated("noise band intersects every element's declared band");
    for (std::size_t i = 0; i + 1 < reduced.segments.size(); ++i)
        reduced.cut_freqs_hz.push_back(reduced.segments[i].hi_hz);
    return reduced;
}

AudioBuffer residual_denoise(const AudioBuffer& audio, const AudioBuffer& noise_ref,
                             const PipelineConfig& config) {
    config.validate();
    const std::size_t frame = 512;
    const std::size_t hop = frame / 2;
    const std::size_t n = audio.samples.size();
    if (n == 0) return audio;
    // sqrt-Hann at analysis and synthesis: the synthesis window keeps the
    // overlap-add numerator proportional to the window-power denominator, so
    // edge frames (where the window sum is tiny) cannot blow up
    auto window = hann_window(frame);
    for (auto& w : window) w = std::sqrt(w);

    // mean noise magnitude spectrum over whole noise_ref
    std::vector<double> noise_mag(frame / 2 + 1, 0.0);
    if (noise_ref.samples.size() >= frame) {
        const std::size_t count = 1 + (noise_ref.samples.size() - frame) / hop;
        std::vector<std::complex<double>> buf(frame);
        for (std::size_t s = 0; s < count; ++s) {
            for (std::size_t i = 0; i < frame; ++i)
                buf[i] = noise_ref.samples[s * hop + i] * window[i];
            auto spec = fft(buf);
            for (std::size_t k = 0; k < noise_mag.size(); ++k)
                noise_mag[k] += std::abs(spec[k]);
        }
        for (auto& v : noise_mag) v /= static_cast<double>(count);
    }

    std::vector<double> out(n, 0.0);
    std::vector<double> wsum(n, 0.0);
    std::vector<std::complex<double>> buf(frame);
    for (std::size_t start = 0; start < n; start += hop) {
        for (std::size_t i = 0; i < frame; ++i) {
            const std::size_t idx = start + i;
            buf[i] = idx < n ? audio.samples[idx] * window[i] : 0.0;
        }
        auto spec = fft(buf);
        for (std::size_t k = 0; k < frame; ++k) {
            const std::size_t bin = k <= frame / 2 ? k : frame - k;
            const double mag = std::abs(spec[k]);
            const double target =
                std::max(mag - config.subtraction_alpha * noise_mag[bin],
                         config.subtraction_beta * mag);
            if (mag > 0.0) spec[k] *= target / mag;
        }
        auto frame_out = ifft(spec);
        for (std::size_t i = 0; i < frame; ++i) {
            const std::size_t idx = start + i;
            if (idx < n) {
                out[idx] += frame_out[i].real() * window[i];
                wsum[idx] += window[i] * window[i];
            }
        }
        if (start + frame >= n + hop) break;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (wsum[i] > 1e-12) out[i] /= wsum[i];
    return AudioBuffer(audio.sample_rate, std::move(out));
}

PipelineResult run_pipeline(const MultiChannelCapture& capture,
                            const AudioBuffer& noise_ref,
                            const std::map<std::string, GainCurve>& estimated_curves,
                            const PipelineConfig& config) {
    config.validate();
    PipelineResult result;
    StitchPlan plan = config.stitch_plan.segments.empty() ? capture.plan : config.stitch_plan;

    if (config.enable_noise_suppression && !noise_ref.samples.empty()) {
        try {
            const NoiseBand band =
                detect_noise_band(noise_ref, config.noise_psd_margin_db);
            plan = suppress_noise(plan, capture.design, band);
            result.noise_suppression_applied = true;
        } catch (const EmptyBand&) {
            // nothing stands out of the noise floor: keep the full plan
        } catch (const TooShort&) {
            // reference too short to analyze: keep the full plan
        } catch (const AllIsolated&) {
            // suppressing would drop every segment: keep the full plan
        }
    }
    result.effective_plan = plan;

    AudioBuffer current = crop_and_stitch(capture, plan);
    result.stage_outputs["stitched"] = current;

    if (config.enable_residual_denoise && !noise_ref.samples.empty()) {
        current = residual_denoise(current, noise_ref, config);
        result.stage_outputs["denoised"] = current;
    }

    if (config.enable_distortion_suppression && !estimated_curves.empty()) {
        std::map<std::string, GainCurve> sharp;
        for (const auto& [label, curve] : estimated_curves)
            sharp[label] = resharpen_spikes(curve, config.jump_sigma_factor);
        const auto curves = build_suppression_curves(sharp, plan, config);
        result.composite_raw = curves.raw;
        result.composite_smoothed = curves.smoothed;
        result.composite_balanced = curves.balanced;
        current = apply_equalization(current, sharp, plan, curves);
        result.stage_outputs["equalized"] = current;
    }

    result.output = current;
    return result;
}

} // namespace reso
