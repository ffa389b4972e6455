#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "parax/dispersion.hpp"
#include "parax/fourier.hpp"
#include "parax/grid.hpp"
#include "parax/modes.hpp"
#include "parax/pulse.hpp"

using namespace parax;

namespace {

const TransverseGrid kGrid(64, 16.0);

PulseSpec spec_for(double k0, double sigma, const std::string& mode) {
    return PulseSpec{k0, sigma, ModeSpec::parse(mode)};
}

}  // namespace

TEST_CASE("pulse spec validation") {
    CHECK_NOTHROW(spec_for(40.0, 0.04, "hg:0,0:1:40").validate());
    // Carrier width must stay narrowband.
    CHECK_THROWS_AS(spec_for(40.0, 5.0, "hg:0,0:1:40").validate(), std::invalid_argument);
    CHECK_THROWS_AS(spec_for(40.0, 0.0, "hg:0,0:1:40").validate(), std::invalid_argument);
    // The base mode must ride the central carrier.
    CHECK_THROWS_AS(spec_for(40.0, 0.04, "hg:0,0:1:39").validate(), std::invalid_argument);
}

TEST_CASE("pulse comb shape") {
    const CarrierComb comb = pulse_comb(spec_for(40.0, 0.04, "hg:0,0:1:40"));
    CHECK(comb.size() == 33);
    CHECK(comb.dk() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(comb.k_values().front() == doctest::Approx(40.0 - 0.16).epsilon(1e-12));
    CHECK(comb.k_values().back() == doctest::Approx(40.0 + 0.16).epsilon(1e-12));

    const std::vector<SpectralAmplitude> amps =
        pulse_amplitudes(spec_for(40.0, 0.04, "hg:0,0:1:40"), kGrid);
    REQUIRE(amps.size() == 33);
    // Gaussian carrier weights: the edge carrier sits 4 sigma out.
    const double edge = std::abs(amps.front().at(0, 0)) / std::abs(amps[16].at(0, 0));
    CHECK(edge == doctest::Approx(std::exp(-8.0)).epsilon(1e-10));
}

TEST_CASE("single-carrier superposition reduces to the plain field") {
    const double k = 8.0, dk = 0.25, u = 0.9, v = 1.3;
    const SpectralAmplitude f =
        forward_transform(make_initial_data(ModeSpec::parse("hg:1,0:1:8"), kGrid));
    const DispersionMap hc = builtin_map(BuiltinMap::henochromatic);
    const NullField field = synthesize_multicarrier({f}, CarrierComb({k}, dk), hc, {{u}, {v}});
    // Psi = dk e^{iku} (envelope propagated to v).
    const SampledEnvelope env = inverse_transform(propagate_paraxial(f, v, k));
    const cplx phase = dk * std::exp(cplx{0.0, k * u});
    double worst = 0.0;
    for (std::size_t i = 0; i < env.values.size(); ++i)
        worst = std::max(worst, std::abs(field.plane(0, 0)[i] - phase * env.values[i]));
    CHECK(worst < 1e-13);
}

TEST_CASE("comb fields repeat after one comb period in u") {
    // With k_min/dk an integer every carrier phase e^{iku} has period 2 pi/dk.
    const CarrierComb comb = CarrierComb::uniform(7.0, 0.5, 5);
    const std::vector<SpectralAmplitude> amps(
        comb.size(), forward_transform(make_initial_data(ModeSpec::parse("hg:0,0:1:8"), kGrid)));
    const DispersionMap hc = builtin_map(BuiltinMap::henochromatic);
    const double period = 2.0 * M_PI / comb.dk();
    const NullField field =
        synthesize_multicarrier(amps, comb, hc, {{0.37, 0.37 + period}, {0.6}});
    double worst = 0.0;
    for (std::size_t i = 0; i < field.plane(0, 0).size(); ++i)
        worst = std::max(worst, std::abs(field.plane(0, 0)[i] - field.plane(1, 0)[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("decomposition inverts synthesis over a full comb period") {
    const TransverseGrid grid(32, 12.0);
    const CarrierComb comb = CarrierComb::uniform(8.0, 0.25, 8);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<SpectralAmplitude> fs;
    for (std::size_t j = 0; j < comb.size(); ++j) {
        SpectralAmplitude f(grid);
        for (std::size_t ix = 0; ix < grid.n(); ++ix)
            for (std::size_t iy = 0; iy < grid.n(); ++iy) {
                const double q2 = grid.q(ix) * grid.q(ix) + grid.q(iy) * grid.q(iy);
                f.at(ix, iy) = std::exp(-q2 / 8.0) * cplx{uni(rng), uni(rng)};
            }
        fs.push_back(std::move(f));
    }

    // 16 u stations spanning 2 pi / dk, starting at an arbitrary offset.
    const std::size_t count = 16;
    const double du = 2.0 * M_PI / (comb.dk() * static_cast<double>(count));
    NullSampling sampling;
    for (std::size_t i = 0; i < count; ++i)
        sampling.u_values.push_back(-3.0 + du * static_cast<double>(i));
    sampling.v_values = {1.7};
    const DispersionMap hc = builtin_map(BuiltinMap::henochromatic);
    const NullField field = synthesize_multicarrier(fs, comb, hc, sampling);
    const std::vector<SpectralAmplitude> back = decompose_henochromatic(field, 0, comb);

    REQUIRE(back.size() == comb.size());
    double worst = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) {
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < fs[j].values.size(); ++i) {
            diff = std::max(diff, std::abs(back[j].values[i] - fs[j].values[i]));
            scale = std::max(scale, std::abs(fs[j].values[i]));
        }
        worst = std::max(worst, diff / scale);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("decomposition validation") {
    const TransverseGrid grid(32, 12.0);
    const CarrierComb comb = CarrierComb::uniform(8.0, 0.25, 8);
    const DispersionMap hc = builtin_map(BuiltinMap::henochromatic);
    const SpectralAmplitude f =
        forward_transform(make_initial_data(ModeSpec::parse("hg:0,0:1:8"), grid));
    const std::vector<SpectralAmplitude> fs(8, f);

    // Station count must cover one full comb period: 15 * du != 2 pi / dk.
    const double du = 2.0 * M_PI / (comb.dk() * 16.0);
    NullSampling short_sampling;
    for (std::size_t i = 0; i < 15; ++i)
        short_sampling.u_values.push_back(du * static_cast<double>(i));
    short_sampling.v_values = {0.0};
    const NullField short_field = synthesize_multicarrier(fs, comb, hc, short_sampling);
    CHECK_THROWS_AS(decompose_henochromatic(short_field, 0, comb), std::invalid_argument);

    NullSampling good;
    for (std::size_t i = 0; i < 16; ++i) good.u_values.push_back(du * static_cast<double>(i));
    good.v_values = {0.0};
    const NullField field = synthesize_multicarrier(fs, comb, hc, good);
    CHECK_THROWS_AS(decompose_henochromatic(field, 2, comb), std::invalid_argument);  // bad v index
    CHECK_NOTHROW(decompose_henochromatic(field, 0, comb));

    // Only the henochromatic map supports the null-coordinate factorization.
    const DispersionMap ip = builtin_map(BuiltinMap::initially_paraxial);
    CHECK_THROWS_AS(synthesize_multicarrier(fs, comb, ip, good), std::invalid_argument);
}

TEST_CASE("frozen pulse discrepancies for the fundamental mode") {
    const PulseSpec spec = spec_for(40.0, 0.04, "hg:0,0:1:40");
    const PulseCompareReport report = pulse_compare(spec, kGrid, 21);

    CHECK(report.paraxial_regime_ok);
    CHECK(report.support_q > 0.0);
    CHECK(report.null_plane_residual < 1e-13);
    REQUIRE(report.u_values.size() == 21);
    CHECK(report.u_values.front() == doctest::Approx(-25.0).epsilon(1e-12));
    CHECK(report.u_values.back() == doctest::Approx(25.0).epsilon(1e-12));

    // Frozen lattice oracle values: one pulse length out and half way.
    CHECK(report.discrepancy_vs_u.front() ==
          doctest::Approx(0.21831998168612549).epsilon(1e-6));
    CHECK(report.discrepancy_vs_u[15] == doctest::Approx(0.11014691046846287).epsilon(1e-6));
    // Symmetric in u at t = 0 and zero at the pulse center.
    CHECK(report.discrepancy_vs_u.front() ==
          doctest::Approx(report.discrepancy_vs_u.back()).epsilon(1e-10));
    CHECK(report.discrepancy_vs_u[10] < 1e-12);
    // Growing away from the center.
    CHECK(report.discrepancy_vs_u[15] < report.discrepancy_vs_u[18]);
}

TEST_CASE("discrepancy scales with the ratio u / k0 W^2") {
    const PulseCompareReport narrow =
        pulse_compare(spec_for(40.0, 0.04, "hg:0,0:0.5:40"), kGrid, 21);
    CHECK(narrow.discrepancy_vs_u.front() ==
          doctest::Approx(0.7495313874188088).epsilon(1e-6));

    const PulseCompareReport fast = pulse_compare(spec_for(80.0, 0.04, "hg:0,0:1:80"), kGrid, 21);
    CHECK(fast.discrepancy_vs_u.front() ==
          doctest::Approx(0.11014691046846287).epsilon(1e-6));

    const PulseCompareReport base = pulse_compare(spec_for(40.0, 0.04, "hg:0,0:1:40"), kGrid, 21);
    // Halving W at fixed u quadruples u/(k0 W^2): worse.  Doubling k0 halves
    // it: better.  Doubling k0 W^2 exactly reproduces the half-station value.
    CHECK(narrow.discrepancy_vs_u.front() > base.discrepancy_vs_u.front());
    CHECK(fast.discrepancy_vs_u.front() < base.discrepancy_vs_u.front());
    CHECK(fast.discrepancy_vs_u.front() ==
          doctest::Approx(base.discrepancy_vs_u[15]).epsilon(1e-9));
}

TEST_CASE("wide spectra are reported as out of the paraxial regime") {
    const PulseCompareReport report = pulse_compare(spec_for(2.0, 0.1, "hg:0,0:0.3:2"), kGrid, 5);
    CHECK_FALSE(report.paraxial_regime_ok);
    CHECK(report.support_q > 0.2 * 2.0);
}

TEST_CASE("pulse length in u matches the carrier width") {
    // |Psi| along u at the beam center is Gaussian with 1/e half-width
    // sqrt(2)/sigma; measure the e^{-1/2} crossing and compare to 1/sigma.
    const double sigma = 0.4;
    const PulseSpec spec = spec_for(40.0, sigma, "hg:0,0:1:40");
    const CarrierComb comb = pulse_comb(spec);
    const std::vector<SpectralAmplitude> amps = pulse_amplitudes(spec, kGrid);
    const DispersionMap hc = builtin_map(BuiltinMap::henochromatic);

    const std::size_t count = 64;
    const double du = 2.0 * M_PI / (comb.dk() * static_cast<double>(count));
    NullSampling sampling;
    for (std::size_t i = 0; i < count; ++i)
        sampling.u_values.push_back((static_cast<double>(i) - 32.0) * du);
    sampling.v_values = {0.0};
    const NullField field = synthesize_multicarrier(amps, comb, hc, sampling);

    const std::size_t center = 32 * kGrid.n() + 32;
    std::vector<double> profile(count);
    for (std::size_t i = 0; i < count; ++i) profile[i] = std::abs(field.plane(i, 0)[center]);
    const double peak = profile[32];
    const double target = peak * std::exp(-0.5);
    auto crossing = [&](int dir) {
        int i = 32;
        while (profile[i + dir] > target) i += dir;
        const double f0 = profile[i], f1 = profile[i + dir];
        const double frac = (f0 - target) / (f0 - f1);
        return std::abs((static_cast<double>(i - 32) + dir * frac) * du);
    };
    const double width = 0.5 * (crossing(+1) + crossing(-1));
    CHECK(width == doctest::Approx(1.0 / sigma).epsilon(0.02));
}
