#include "reso/metrics.hpp"

#include "reso/errors.hpp"
#include "reso/fft.hpp"

#include <algorithm>
#include <cmath>

namespace reso {

namespace {

double htk_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double htk_mel_inv(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

double snr_db(const AudioBuffer& reference, const AudioBuffer& test) {
    if (reference.samples.size() != test.samples.size())
        throw LengthMismatch("snr_db requires equal lengths");
    double rr = 0.0, rt = 0.0;
    for (std::size_t i = 0; i < reference.samples.size(); ++i) {
        rr += reference.samples[i] * reference.samples[i];
        rt += reference.samples[i] * test.samples[i];
    }
    if (rr <= 0.0) throw ZeroReference("reference has zero energy");
    const double s = rt / rr;
    double signal = 0.0, resid = 0.0;
    for (std::size_t i = 0; i < reference.samples.size(); ++i) {
        const double fit = s * reference.samples[i];
        signal += fit * fit;
        const double e = test.samples[i] - fit;
        resid += e * e;
    }
    if (resid <= 0.0 || signal / resid > 1e10) return 100.0;
    return std::min(100.0, 10.0 * std::log10(signal / resid));
}

std::vector<std::vector<double>> mfcc(const AudioBuffer& audio, const MfccConfig& config) {
    const double rate = audio.sample_rate;
    const auto win = static_cast<std::size_t>(std::lround(config.frame_s * rate));
    const auto hop = static_cast<std::size_t>(std::lround(config.hop_s * rate));
    if (audio.samples.size() < win) throw TooShort("audio shorter than one frame");

    // pre-emphasis
    std::vector<double> x(audio.samples.size());
    x[0] = audio.samples[0];
    for (std::size_t i = 1; i < x.size(); ++i)
        x[i] = audio.samples[i] - config.pre_emphasis * audio.samples[i - 1];

    const std::size_t nfft = next_pow2(win);
    const std::size_t bins = nfft / 2 + 1;

    // Hann window
    std::vector<double> window(win);
    for (std::size_t i = 0; i < win; ++i)
        window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                         static_cast<double>(win));

    // triangular mel filterbank on the HTK scale
    const std::size_t m = config.mel_filters;
    const double mel_lo = htk_mel(config.mel_lo_hz);
    const double mel_hi = htk_mel(std::min(config.mel_hi_hz, rate / 2.0));
    std::vector<double> edges(m + 2);
    for (std::size_t i = 0; i < m + 2; ++i)
        edges[i] = htk_mel_inv(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                            static_cast<double>(m + 1));
    std::vector<std::vector<double>> filters(m, std::vector<double>(bins, 0.0));
    for (std::size_t f = 0; f < m; ++f) {
        const double lo = edges[f], mid = edges[f + 1], hi = edges[f + 2];
        for (std::size_t k = 0; k < bins; ++k) {
            const double freq = static_cast<double>(k) * rate / static_cast<double>(nfft);
            if (freq > lo && freq < mid)
                filters[f][k] = (freq - lo) / (mid - lo);
            else if (freq >= mid && freq < hi)
                filters[f][k] = (hi - freq) / (hi - mid);
        }
    }

    const std::size_t frames = 1 + (x.size() - win) / hop;
    std::vector<std::vector<double>> out(frames, std::vector<double>(config.coefficients));
    std::vector<std::complex<double>> frame(nfft);
    for (std::size_t t = 0; t < frames; ++t) {
        std::fill(frame.begin(), frame.end(), std::complex<double>(0.0));
        for (std::size_t i = 0; i < win; ++i)
            frame[i] = x[t * hop + i] * window[i];
        auto spec = fft(frame);
        std::vector<double> power(bins);
        for (std::size_t k = 0; k < bins; ++k) power[k] = std::norm(spec[k]);

        std::vector<double> mel_energy(m);
        double frame_max = 0.0;
        for (std::size_t f = 0; f < m; ++f) {
            double e = 0.0;
            for (std::size_t k = 0; k < bins; ++k) e += filters[f][k] * power[k];
            mel_energy[f] = e;
            frame_max = std::max(frame_max, e);
        }
        const double floor_value =
            std::max(config.abs_floor, config.rel_floor * frame_max);
        std::vector<double> log_mel(m);
        for (std::size_t f = 0; f < m; ++f)
            log_mel[f] = std::log(std::max(mel_energy[f], floor_value));

        // DCT-II (orthonormal), coefficients 1..coefficients
        for (std::size_t c = 1; c <= config.coefficients; ++c) {
            double acc = 0.0;
            for (std::size_t f = 0; f < m; ++f)
                acc += log_mel[f] *
                       std::cos(M_PI * static_cast<double>(c) *
                                (static_cast<double>(f) + 0.5) / static_cast<double>(m));
            out[t][c - 1] = acc * std::sqrt(2.0 / static_cast<double>(m));
        }
    }
    return out;
}

double mcd_from_cepstra(const std::vector<std::vector<double>>& reference,
                        const std::vector<std::vector<double>>& test) {
    const std::size_t frames = std::min(reference.size(), test.size());
    if (frames == 0) throw TooShort("no frames to compare");
    double acc = 0.0;
    for (std::size_t t = 0; t < frames; ++t) {
        const std::size_t dims = std::min(reference[t].size(), test[t].size());
        double sq = 0.0;
        for (std::size_t d = 0; d < dims; ++d) {
            const double delta = reference[t][d] - test[t][d];
            sq += delta * delta;
        }
        acc += (10.0 / std::log(10.0)) * std::sqrt(2.0 * sq);
    }
    return acc / static_cast<double>(frames);
}

double mcd(const AudioBuffer& reference, const AudioBuffer& test, const MfccConfig& config) {
    if (reference.samples.size() != test.samples.size())
        throw LengthMismatch("mcd requires equal lengths");
    return mcd_from_cepstra(mfcc(reference, config), mfcc(test, config));
}

double success_rate(const std::vector<EvalReport>& reports) {
    if (reports.empty()) throw EmptyList("no reports");
    std::size_t ok = 0;
    for (const auto& r : reports)
        if (r.success) ++ok;
    return static_cast<double>(ok) / static_cast<double>(reports.size());
}

double rsa(const std::function<EvalReport(double, int)>& scenario,
           const std::vector<double>& distances_m, int trials_per_distance,
           double threshold) {
    if (distances_m.empty()) throw EmptyGrid("distance grid is empty");
    double best = 0.0;
    for (double d : distances_m) {
        std::vector<EvalReport> reports;
        reports.reserve(static_cast<std::size_t>(trials_per_distance));
        for (int t = 0; t < trials_per_distance; ++t) reports.push_back(scenario(d, t));
        if (success_rate(reports) > threshold)
            best = d;
        else
            break; // first-crossing rule
    }
    return best;
}

} // namespace reso
