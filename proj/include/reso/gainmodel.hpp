#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace reso {

// Geometry of one coiled-channel resonator. Lengths in millimetres.
struct MetamaterialSpec {
    double D = 80.0;  // outer diameter
    double a = 3.2;   // path width
    double N = 8.0;   // channel turn count
    double t = 2.0;   // wall thickness
    double d = 14.0;  // inner diameter

    // Throws OutOfDomain / NonProportional on violation.
    void validate() const;
};

// Uniformly gridded linear gain multipliers.
struct GainCurve {
    double freq_lo = 0.0;
    double freq_step = 1.0;
    std::vector<double> gains;

    std::size_t size() const { return gains.size(); }
    double freq_at(std::size_t i) const { return freq_lo + freq_step * static_cast<double>(i); }
    double freq_hi() const { return gains.empty() ? freq_lo : freq_at(gains.size() - 1); }

    // Linear interpolation between grid points; 1.0 outside the grid span.
    double value_at(double freq_hz) const;

    // Index of the grid bin nearest to freq_hz (unclamped check by caller).
    std::size_t nearest_bin(double freq_hz) const;

    void validate() const;
};

// Manufacturing-defect description: isolated bins whose gain is replaced.
struct DefectJump {
    double freq_hz = 0.0;
    double gain = 1.0;
};

struct DefectModel {
    std::vector<DefectJump> jumps;
    std::uint64_t seed = 0;
};

struct PhysicalConstants {
    double rho = 1.21;  // air density, kg/m^3
    double c = 343.0;   // speed of sound, m/s
};

struct FreqBand {
    double lo_hz = 0.0;
    double hi_hz = 0.0;
    double center() const { return 0.5 * (lo_hz + hi_hz); }
    double width() const { return hi_hz - lo_hz; }
    bool intersects(const FreqBand& other) const {
        return lo_hz <= other.hi_hz && other.lo_hz <= hi_hz;
    }
};

struct GridSpec {
    double lo_hz = 0.0;
    double step_hz = 10.0;
    std::size_t count = 801;
};

// Staged geometric scaling law for the resonant center frequency.
// Valid for D in [40, 170] mm with a/D fixed at 0.04 (1% tolerance).
double resonant_center_frequency(const MetamaterialSpec& spec);

// Enhancement band of a resonator. Canonical mode returns the tabulated
// band of the matching catalog element and throws UnknownSpec otherwise;
// interpolation mode derives a band for in-between geometries.
enum class BandMode { Canonical, Interpolated };
FreqBand declared_band(const MetamaterialSpec& spec, BandMode mode = BandMode::Canonical);

// Piecewise-linear bandwidth vs. center frequency through the eight catalog
// (center, width) pairs, clamped outside the hull. Domain [200, 1200] Hz.
double bandwidth_model(double center_hz);

// Ratio of coiled path length to the straight radial path (Archimedean
// spiral approximation). A geometric approximation, not a field solution.
double refractive_index(const MetamaterialSpec& spec);

// Literal evaluation of the pressure-amplification formula in SI units.
// Reference-only: the simulator uses empirical peak gains instead.
double mie_pressure_gain(double p0_pa, double n_r, double lambda0_m,
                         const PhysicalConstants& constants = {});

// Lorentzian single-peak gain profile with half-gain points at the declared
// band edges: G(f_c) = peak_gain, G(f_c +- B/2) = (peak_gain + 1) / 2.
GainCurve synth_gain_curve(const MetamaterialSpec& spec, double peak_gain,
                           const GridSpec& grid);

// Replace the nearest grid bin for each jump; later jumps win on ties.
GainCurve inject_defects(const GainCurve& curve, const DefectModel& defects);

// The eight-element catalog (ascending band order): label, geometry, band.
struct CatalogRow {
    std::string label;
    double a_mm;
    double D_mm;
    FreqBand band;
};
const std::vector<CatalogRow>& resonator_catalog();

} // namespace reso
