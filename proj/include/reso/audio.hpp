#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace reso {

// Mono audio at a fixed sample rate. Samples are dimensionless full-scale
// units nominally in [-1, 1]; values outside that range are preserved (the
// quantizer clamps and records clipping, nothing is silently discarded).
struct AudioBuffer {
    double sample_rate = 16000.0;
    std::vector<double> samples;

    AudioBuffer() = default;
    AudioBuffer(double rate, std::vector<double> data)
        : sample_rate(rate), samples(std::move(data)) {}

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }

    double rms() const {
        if (samples.empty()) return 0.0;
        double acc = 0.0;
        for (double s : samples) acc += s * s;
        return std::sqrt(acc / static_cast<double>(samples.size()));
    }

    double energy() const {
        double acc = 0.0;
        for (double s : samples) acc += s * s;
        return acc;
    }
};

// dB SPL <-> full-scale conversion under a fixed calibration constant
// (level_db_spl == calibration maps to RMS 1.0).
inline double dbspl_to_fs(double level_db_spl, double calibration_db_spl) {
    return std::pow(10.0, (level_db_spl - calibration_db_spl) / 20.0);
}

inline double fs_to_dbspl(double rms_fs, double calibration_db_spl) {
    return calibration_db_spl + 20.0 * std::log10(rms_fs);
}

} // namespace reso
