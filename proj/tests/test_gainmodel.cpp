#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reso/errors.hpp"
#include "reso/gainmodel.hpp"

#include <cmath>

using namespace reso;

namespace {
MetamaterialSpec spec_for(double D, double a) {
    MetamaterialSpec s;
    s.D = D;
    s.a = a;
    s.d = D * (14.0 / 80.0);
    return s;
}
} // namespace

TEST_CASE("resonant center frequency follows the staged scaling law") {
    CHECK(resonant_center_frequency(spec_for(80.0, 3.2)) ==
          doctest::Approx(1.25 * 563.0).epsilon(1e-12));
    CHECK(resonant_center_frequency(spec_for(160.0, 6.4)) ==
          doctest::Approx(0.87 * 563.0 * 0.5).epsilon(1e-12)); // 244.905
    CHECK(resonant_center_frequency(spec_for(50.0, 2.0)) ==
          doctest::Approx(1.89 * 563.0 * 1.6).epsilon(1e-12));
    CHECK_THROWS_AS(resonant_center_frequency(spec_for(30.0, 1.2)), OutOfDomain);
    CHECK_THROWS_AS(resonant_center_frequency(spec_for(80.0, 5.0)), NonProportional);
}

TEST_CASE("resonant frequency strictly decreasing in D within each stage") {
    const double stages[][2] = {{40.0, 60.0}, {60.0, 100.0}, {100.0, 140.0}, {140.0, 170.0}};
    for (const auto& stage : stages) {
        double prev = 1e18;
        for (double D = stage[0]; D < stage[1]; D += 1.0) {
            const double f = resonant_center_frequency(spec_for(D, 0.04 * D));
            CHECK(f < prev);
            prev = f;
        }
    }
}

TEST_CASE("declared band canonical lookup") {
    const FreqBand b5 = declared_band(spec_for(100.0, 4.0));
    CHECK(b5.lo_hz == 430.0);
    CHECK(b5.hi_hz == 550.0);
    const FreqBand b1 = declared_band(spec_for(50.0, 2.0));
    CHECK(b1.lo_hz == 820.0);
    CHECK(b1.hi_hz == 1000.0);
    CHECK_THROWS_AS(declared_band(spec_for(65.0, 2.6)), UnknownSpec);
}

TEST_CASE("declared band interpolation mode") {
    const FreqBand band = declared_band(spec_for(65.0, 2.6), BandMode::Interpolated);
    // center midway between rows (2) and (3): (800 + 655) / 2
    CHECK(band.center() == doctest::Approx(727.5).epsilon(1e-12));
    CHECK(band.width() > 150.0);
    CHECK(band.width() < 160.0);
}

TEST_CASE("bandwidth model reproduces the catalog exactly") {
    const double centers[] = {285, 325, 395, 490, 590, 655, 800, 910};
    const double widths[] = {70, 70, 90, 120, 140, 150, 160, 180};
    for (int i = 0; i < 8; ++i)
        CHECK(bandwidth_model(centers[i]) == doctest::Approx(widths[i]).epsilon(1e-12));
    // group means
    CHECK((120.0 + 90.0 + 70.0 + 70.0) / 4.0 == 87.5);
    CHECK((180.0 + 160.0 + 150.0 + 140.0) / 4.0 == 157.5);
    // interpolated midpoint
    CHECK(bandwidth_model(442.5) == doctest::Approx(105.0).epsilon(1e-12));
    // clamped ends
    CHECK(bandwidth_model(210.0) == 70.0);
    CHECK(bandwidth_model(1150.0) == 180.0);
    CHECK_THROWS_AS(bandwidth_model(150.0), OutOfDomain);
    CHECK_THROWS_AS(bandwidth_model(1250.0), OutOfDomain);
}

TEST_CASE("refractive index approximation") {
    MetamaterialSpec s = spec_for(80.0, 3.2);
    s.N = 8.0;
    s.d = 14.0;
    CHECK(refractive_index(s) == doctest::Approx(8.0 * M_PI * 47.0 / 33.0).epsilon(1e-12));
    s.N = 1.0;
    CHECK(refractive_index(s) == doctest::Approx(M_PI * 47.0 / 33.0).epsilon(1e-12));
    s.N = 8.0;
    s.d = 80.0;
    CHECK_THROWS_AS(refractive_index(s), OutOfDomain);
}

TEST_CASE("pressure gain formula, literal evaluation") {
    PhysicalConstants unit{1.0, 1.0};
    CHECK(mie_pressure_gain(1.0, 2.0, 1.0, unit) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(mie_pressure_gain(0.0, 2.0, 1.0, unit), NonPositiveInput);
    // linearity in P0
    PhysicalConstants air;
    const double p1 = mie_pressure_gain(1.0, 35.79, 343.0 / 563.0, air);
    const double p2 = mie_pressure_gain(2.0, 35.79, 343.0 / 563.0, air);
    CHECK(p2 == doctest::Approx(2.0 * p1).epsilon(1e-12));
}

TEST_CASE("synthetic gain curve is a calibrated Lorentzian") {
    const MetamaterialSpec row4 = spec_for(80.0, 3.2); // band 520-660, center 590
    const GridSpec grid{0.0, 10.0, 801};
    const GainCurve curve = synth_gain_curve(row4, 20.0, grid);
    CHECK(curve.value_at(590.0) == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(curve.value_at(520.0) == doctest::Approx(10.5).epsilon(1e-9));
    CHECK(curve.value_at(660.0) == doctest::Approx(10.5).epsilon(1e-9));

    // flat identity at peak_gain 1
    const GainCurve flat = synth_gain_curve(row4, 1.0, grid);
    for (double g : flat.gains) CHECK(g == doctest::Approx(1.0).epsilon(1e-12));

    // symmetry about the center on a symmetric grid
    const GridSpec sym{390.0, 10.0, 41}; // 390..790, symmetric about 590
    const GainCurve s = synth_gain_curve(row4, 20.0, sym);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double mirror = s.gains[s.size() - 1 - i];
        CHECK(s.gains[i] == doctest::Approx(mirror).epsilon(1e-9));
    }

    CHECK_THROWS_AS(synth_gain_curve(row4, 0.5, grid), OutOfDomain);
    CHECK_THROWS_AS(synth_gain_curve(row4, 20.0, GridSpec{0.0, 10.0, 11}), OutOfDomain);
}

TEST_CASE("defect injection replaces nearest bins only") {
    GainCurve flat;
    flat.freq_lo = 0.0;
    flat.freq_step = 10.0;
    flat.gains.assign(801, 20.0);

    DefectModel defect;
    defect.jumps.push_back({563.0, 1500.0});
    const GainCurve out = inject_defects(flat, defect);
    int changed = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out.gains[i] != flat.gains[i]) {
            ++changed;
            CHECK(out.gains[i] == 1500.0);
            CHECK(out.freq_at(i) == 560.0); // nearest bin to 563
        }
    CHECK(changed == 1);

    // identity on empty jump list
    const GainCurve same = inject_defects(flat, DefectModel{});
    CHECK(same.gains == flat.gains);

    // later jump wins in the same bin
    DefectModel twice;
    twice.jumps.push_back({562.0, 1500.0});
    twice.jumps.push_back({558.0, 1700.0});
    const GainCurve last = inject_defects(flat, twice);
    CHECK(last.gains[56] == 1700.0);

    DefectModel outside;
    outside.jumps.push_back({9000.0, 1500.0});
    CHECK_THROWS_AS(inject_defects(flat, outside), JumpOutsideGrid);
}

TEST_CASE("staged law vs catalog bands disagree for small diameters") {
    // the staged law overshoots the catalog band for the three smallest
    // elements; the catalog wins for the canonical array
    int outside = 0;
    for (const auto& row : resonator_catalog()) {
        const double f = resonant_center_frequency(spec_for(row.D_mm, row.a_mm));
        if (f < row.band.lo_hz || f > row.band.hi_hz) ++outside;
    }
    CHECK(outside >= 3);
}
