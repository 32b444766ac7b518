#include "reso/gainmodel.hpp"

#include "reso/errors.hpp"

#include <algorithm>
#include <cmath>

namespace reso {

namespace {

constexpr double kBaseCenterHz = 563.0;
constexpr double kBaseDiameterMm = 80.0;
constexpr double kBasePathWidthMm = 3.2;
constexpr double kAspectRatio = kBasePathWidthMm / kBaseDiameterMm; // 0.04
constexpr double kAspectTolerance = 0.01;

} // namespace

const std::vector<CatalogRow>& resonator_catalog() {
    // Ascending band order; labels follow the build order of the stacked
    // system, largest element first.
    static const std::vector<CatalogRow> rows = {
        {"(8)", 6.4, 160.0, {250.0, 320.0}},
        {"(7)", 5.6, 140.0, {290.0, 360.0}},
        {"(6)", 4.8, 120.0, {350.0, 440.0}},
        {"(5)", 4.0, 100.0, {430.0, 550.0}},
        {"(4)", 3.2, 80.0, {520.0, 660.0}},
        {"(3)", 2.8, 70.0, {580.0, 730.0}},
        {"(2)", 2.4, 60.0, {720.0, 880.0}},
        {"(1)", 2.0, 50.0, {820.0, 1000.0}},
    };
    return rows;
}

void MetamaterialSpec::validate() const {
    if (D < 40.0 || D > 170.0)
        throw OutOfDomain("diameter D=" + std::to_string(D) + " mm outside [40, 170]");
    if (a <= 0.0) throw OutOfDomain("path width a must be positive");
    if (N < 1.0) throw OutOfDomain("turn count N must be >= 1");
    if (t <= 0.0) throw OutOfDomain("wall thickness t must be positive");
    if (d >= D) throw OutOfDomain("inner diameter d must be smaller than D");
    const double ratio = a / D;
    if (std::abs(ratio - kAspectRatio) / kAspectRatio > kAspectTolerance)
        throw NonProportional("a/D=" + std::to_string(ratio) +
                              " deviates more than 1% from 0.04");
}

double GainCurve::value_at(double freq_hz) const {
    if (gains.empty()) return 1.0;
    if (freq_hz < freq_lo || freq_hz > freq_hi()) return 1.0;
    const double pos = (freq_hz - freq_lo) / freq_step;
    const auto i0 = static_cast<std::size_t>(std::floor(pos));
    if (i0 + 1 >= gains.size()) return gains.back();
    const double frac = pos - static_cast<double>(i0);
    return gains[i0] * (1.0 - frac) + gains[i0 + 1] * frac;
}

std::size_t GainCurve::nearest_bin(double freq_hz) const {
    const double pos = (freq_hz - freq_lo) / freq_step;
    const auto i = static_cast<long long>(std::llround(pos));
    if (i < 0) return 0;
    if (i >= static_cast<long long>(gains.size())) return gains.size() - 1;
    return static_cast<std::size_t>(i);
}

void GainCurve::validate() const {
    if (freq_step <= 0.0) throw OutOfDomain("gain curve freq_step must be positive");
    if (gains.size() < 3) throw TooShort("gain curve needs at least 3 bins");
    for (double g : gains)
        if (!std::isfinite(g) || g < 0.0)
            throw OutOfDomain("gain curve values must be finite and non-negative");
}

double resonant_center_frequency(const MetamaterialSpec& spec) {
    spec.validate();
    double k = 0.0;
    if (spec.D < 60.0)
        k = 1.89;
    else if (spec.D < 100.0)
        k = 1.25;
    else if (spec.D < 140.0)
        k = 0.99;
    else
        k = 0.87;
    // a/D is pinned by the proportionality invariant, so the joint scale
    // ratio collapses to D0/D.
    return k * kBaseCenterHz * (kBaseDiameterMm / spec.D);
}

double bandwidth_model(double center_hz) {
    if (center_hz < 200.0 || center_hz > 1200.0)
        throw OutOfDomain("bandwidth model domain is [200, 1200] Hz");
    const auto& rows = resonator_catalog();
    // Rows are ascending in band center.
    if (center_hz <= rows.front().band.center()) return rows.front().band.width();
    if (center_hz >= rows.back().band.center()) return rows.back().band.width();
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double c0 = rows[i].band.center();
        const double c1 = rows[i + 1].band.center();
        if (center_hz >= c0 && center_hz <= c1) {
            const double frac = (center_hz - c0) / (c1 - c0);
            return rows[i].band.width() * (1.0 - frac) + rows[i + 1].band.width() * frac;
        }
    }
    return rows.back().band.width(); // unreachable
}

FreqBand declared_band(const MetamaterialSpec& spec, BandMode mode) {
    spec.validate();
    for (const auto& row : resonator_catalog()) {
        if (std::abs(spec.D - row.D_mm) / row.D_mm <= 0.01 &&
            std::abs(spec.a - row.a_mm) / row.a_mm <= 0.01)
            return row.band;
    }
    if (mode == BandMode::Canonical)
        throw UnknownSpec("geometry D=" + std::to_string(spec.D) + " a=" +
                          std::to_string(spec.a) + " is not a catalog element");

    // Interpolation over the catalog (D -> center) pairs, descending in D.
    const auto& rows = resonator_catalog();
    double center = 0.0;
    if (spec.D >= rows.front().D_mm)
        center = rows.front().band.center();
    else if (spec.D <= rows.back().D_mm)
        center = rows.back().band.center();
    else {
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            const double d_hi = rows[i].D_mm;     // larger diameter
            const double d_lo = rows[i + 1].D_mm; // smaller diameter
            if (spec.D <= d_hi && spec.D >= d_lo) {
                const double frac = (spec.D - d_lo) / (d_hi - d_lo);
                center = rows[i + 1].band.center() * (1.0 - frac) +
                         rows[i].band.center() * frac;
                break;
            }
        }
    }
    const double width = bandwidth_model(center);
    return {center - width / 2.0, center + width / 2.0};
}

double refractive_index(const MetamaterialSpec& spec) {
    spec.validate();
    const double coiled = spec.N * M_PI * (spec.D + spec.d) / 2.0;
    const double straight = (spec.D - spec.d) / 2.0;
    return coiled / straight;
}

double mie_pressure_gain(double p0_pa, double n_r, double lambda0_m,
                         const PhysicalConstants& constants) {
    if (p0_pa <= 0.0 || n_r <= 0.0 || lambda0_m <= 0.0 || constants.rho <= 0.0 ||
        constants.c <= 0.0)
        throw NonPositiveInput("mie_pressure_gain requires strictly positive inputs");
    return p0_pa * (n_r / lambda0_m) *
           std::sqrt(2.0 * constants.rho * constants.c * constants.c /
                     (lambda0_m * lambda0_m));
}

GainCurve synth_gain_curve(const MetamaterialSpec& spec, double peak_gain,
                           const GridSpec& grid) {
    if (peak_gain < 1.0) throw OutOfDomain("peak_gain must be >= 1");
    FreqBand band;
    try {
        band = declared_band(spec, BandMode::Canonical);
    } catch (const UnknownSpec&) {
        band = declared_band(spec, BandMode::Interpolated);
    }
    GainCurve curve;
    curve.freq_lo = grid.lo_hz;
    curve.freq_step = grid.step_hz;
    curve.gains.resize(grid.count);
    if (grid.lo_hz > band.lo_hz || curve.freq_hi() < band.hi_hz)
        throw OutOfDomain("grid does not cover the declared band");
    const double fc = band.center();
    const double bw = band.width();
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double u = 2.0 * (curve.freq_at(i) - fc) / bw;
        curve.gains[i] = 1.0 + (peak_gain - 1.0) / (1.0 + u * u);
    }
    return curve;
}

GainCurve inject_defects(const GainCurve& curve, const DefectModel& defects) {
    GainCurve out = curve;
    for (const auto& jump : defects.jumps) {
        if (jump.gain <= 0.0) throw OutOfDomain("jump gain must be positive");
        if (jump.freq_hz < curve.freq_lo || jump.freq_hz > curve.freq_hi())
            throw JumpOutsideGrid("jump at " + std::to_string(jump.freq_hz) +
                                  " Hz outside curve grid");
        out.gains[out.nearest_bin(jump.freq_hz)] = jump.gain;
    }
    return out;
}

} // namespace reso
