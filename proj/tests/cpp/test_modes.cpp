#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "doctest.h"
#include "parax/fourier.hpp"
#include "parax/grid.hpp"
#include "parax/modes.hpp"

using namespace parax;

namespace {
const TransverseGrid kGrid(64, 16.0);
}

TEST_CASE("mode string parsing") {
    const ModeSpec hg = ModeSpec::parse("hg:2,3:1.5:5");
    REQUIRE(std::holds_alternative<HermiteGauss>(hg.family));
    CHECK(std::get<HermiteGauss>(hg.family).m == 2);
    CHECK(std::get<HermiteGauss>(hg.family).n == 3);
    CHECK(hg.waist == doctest::Approx(1.5));
    CHECK(hg.carrier == doctest::Approx(5.0));
    CHECK(hg.to_string() == "hg:2,3:1.5:5");

    const ModeSpec lg = ModeSpec::parse("lg:-2,1:0.8:12.5");
    REQUIRE(std::holds_alternative<LaguerreGauss>(lg.family));
    CHECK(std::get<LaguerreGauss>(lg.family).l == -2);
    CHECK(std::get<LaguerreGauss>(lg.family).p == 1);

    CHECK_THROWS_AS(ModeSpec::parse("xy:0,0:1:1"), std::invalid_argument);  // unknown family
    CHECK_THROWS_AS(ModeSpec::parse("hg:0:1:1"), std::invalid_argument);    // missing index
    CHECK_THROWS_AS(ModeSpec::parse("hg:0,0:1"), std::invalid_argument);    // missing carrier
    CHECK_THROWS_AS(ModeSpec::parse("hg:0,0:-1:1"), std::invalid_argument); // bad waist
    CHECK_THROWS_AS(ModeSpec::parse("hg:0,0:1:0"), std::invalid_argument);  // bad carrier
    CHECK_THROWS_AS(ModeSpec::parse("hg:-1,0:1:1"), std::invalid_argument); // negative HG index
    CHECK_THROWS_AS(ModeSpec::parse("hg:a,b:1:1"), std::invalid_argument);  // non-numeric
}

TEST_CASE("first ten Hermite-Gauss modes are orthonormal") {
    std::vector<ParaxialWave> waves;
    for (int total = 0; total <= 3; ++total)
        for (int m = 0; m <= total; ++m) {
            const std::string text =
                "hg:" + std::to_string(m) + "," + std::to_string(total - m) + ":1:5";
            waves.push_back(ParaxialWave::from_mode(ModeSpec::parse(text), kGrid));
        }
    REQUIRE(waves.size() == 10);
    for (std::size_t i = 0; i < waves.size(); ++i)
        for (std::size_t j = 0; j < waves.size(); ++j) {
            const cplx g = paraxial_inner_product(waves[i], waves[j]);
            const cplx expected = i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            CHECK(std::abs(g - expected) < 1e-8);
        }
}

TEST_CASE("Laguerre-Gauss norms and vortex orthogonality") {
    for (const char* text : {"lg:0,0:1:5", "lg:1,0:1:5", "lg:-1,0:1:5", "lg:2,1:1.2:5",
                             "lg:0,3:0.9:5", "lg:-3,2:1.1:5"}) {
        const ParaxialWave w = ParaxialWave::from_mode(ModeSpec::parse(text), kGrid);
        CHECK(std::abs(paraxial_inner_product(w, w) - cplx{1.0, 0.0}) < 1e-8);
    }
    // Opposite orbital indices are orthogonal even with identical radial profiles.
    const ParaxialWave plus = ParaxialWave::from_mode(ModeSpec::parse("lg:1,0:1:5"), kGrid);
    const ParaxialWave minus = ParaxialWave::from_mode(ModeSpec::parse("lg:-1,0:1:5"), kGrid);
    CHECK(std::abs(paraxial_inner_product(plus, minus)) < 1e-10);

    // l = 0, p = 0 is the fundamental Gaussian in both families.
    const ParaxialWave hg00 = ParaxialWave::from_mode(ModeSpec::parse("hg:0,0:1:5"), kGrid);
    const ParaxialWave lg00 = ParaxialWave::from_mode(ModeSpec::parse("lg:0,0:1:5"), kGrid);
    CHECK(std::abs(paraxial_inner_product(hg00, lg00) - cplx{1.0, 0.0}) < 1e-10);
}

TEST_CASE("cross-family Gram matches the known HG/LG mixing") {
    // LG(1,0) = (HG(1,0) + i HG(0,1)) / sqrt(2); check the overlaps.
    const ParaxialWave lg = ParaxialWave::from_mode(ModeSpec::parse("lg:1,0:1:5"), kGrid);
    const ParaxialWave hg10 = ParaxialWave::from_mode(ModeSpec::parse("hg:1,0:1:5"), kGrid);
    const ParaxialWave hg01 = ParaxialWave::from_mode(ModeSpec::parse("hg:0,1:1:5"), kGrid);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(paraxial_inner_product(hg10, lg) - cplx{r, 0.0}) < 1e-8);
    CHECK(std::abs(paraxial_inner_product(hg01, lg) - cplx{0.0, r}) < 1e-8);
}

TEST_CASE("fundamental Gaussian propagates by the closed form") {
    const double W = 1.0, k = 5.0;
    const double zR = k * W * W;
    const ParaxialWave wave = ParaxialWave::from_mode(ModeSpec::parse("hg:0,0:1:5"), kGrid);
    for (double z : {0.3, zR}) {
        const SampledEnvelope env = wave.at_station(z).envelope();
        const cplx denom = cplx{1.0, z / zR};
        double worst = 0.0;
        for (std::size_t ix = 0; ix < kGrid.n(); ++ix)
            for (std::size_t iy = 0; iy < kGrid.n(); ++iy) {
                // Skip the window edge, where periodic images of the expanded
                // beam dominate the comparison.
                if (std::abs(kGrid.coord(ix)) > 4.0 || std::abs(kGrid.coord(iy)) > 4.0) continue;
                const double r2 =
                    kGrid.coord(ix) * kGrid.coord(ix) + kGrid.coord(iy) * kGrid.coord(iy);
                const cplx expected = (1.0 / (std::sqrt(M_PI) * W)) / denom *
                                      std::exp(-r2 / (2.0 * W * W * denom));
                worst = std::max(worst, std::abs(env.at(ix, iy) - expected));
            }
        CHECK(worst < 1e-12);
    }
    // On-axis amplitude drops by 1/sqrt(2) at one Rayleigh range.
    const cplx at0 = wave.envelope().at(32, 32);
    const cplx atzR = wave.at_station(zR).envelope().at(32, 32);
    CHECK(std::abs(atzR / at0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("propagation is unitary and the inner product station-independent") {
    const ParaxialWave a = ParaxialWave::from_mode(ModeSpec::parse("hg:2,1:1.1:5"), kGrid);
    const ParaxialWave b = ParaxialWave::from_mode(ModeSpec::parse("lg:1,1:1.1:5"), kGrid);
    const cplx at_waist = paraxial_inner_product(a, b);
    const cplx far = paraxial_inner_product(a.at_station(4.2), b.at_station(4.2));
    CHECK(std::abs(far - at_waist) < 1e-13);
    CHECK(std::abs(paraxial_inner_product(a.at_station(4.2), a.at_station(4.2)) -
                   cplx{1.0, 0.0}) < 1e-10);
    // Mismatched carriers or grids are rejected.
    const ParaxialWave other = ParaxialWave::from_mode(ModeSpec::parse("hg:2,1:1.1:6"), kGrid);
    CHECK_THROWS_AS(paraxial_inner_product(a, other), std::invalid_argument);
}

TEST_CASE("propagated modes satisfy the paraxial equation on the grid") {
    const double k = 5.0;
    const ParaxialWave wave = ParaxialWave::from_mode(ModeSpec::parse("hg:1,1:1:5"), kGrid);
    const double h = 1e-3;
    const double z0 = 0.7;
    const SampledEnvelope minus = wave.at_station(z0 - h).envelope();
    const SampledEnvelope center = wave.at_station(z0).envelope();
    const SampledEnvelope plus = wave.at_station(z0 + h).envelope();
    const double r1 = paraxial_residual_grid(minus, center, plus, k);
    CHECK(r1 < 1e-4);  // second-order z difference of an exact solution

    // Halving h divides the residual by about 4.
    const double h2 = h / 2.0;
    const double r2 = paraxial_residual_grid(wave.at_station(z0 - h2).envelope(),
                                             wave.at_station(z0).envelope(),
                                             wave.at_station(z0 + h2).envelope(), k);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
}
