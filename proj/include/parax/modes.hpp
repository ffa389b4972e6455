#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "parax/fourier.hpp"
#include "parax/grid.hpp"

namespace parax {

struct HermiteGauss {
    unsigned m = 0;
    unsigned n = 0;
};

struct LaguerreGauss {
    int l = 0;
    unsigned p = 0;
};

// A Gaussian beam mode: family indices, waist W, and carrier wavenumber k.
struct ModeSpec {
    std::variant<HermiteGauss, LaguerreGauss> family;
    double waist = 1.0;
    double carrier = 1.0;

    // CLI syntax "hg:m,n:W:k" or "lg:l,p:W:k".  Throws std::invalid_argument
    // on malformed input.
    static ModeSpec parse(std::string_view text);
    std::string to_string() const;
};

// Waist-plane envelope samples at station z = 0, unit-normalized in the
// continuum L2 inner product.  The azimuthal angle for LG modes is
// phi = atan2(y, x).  Warns when grid extent < 8 W.
SampledEnvelope make_initial_data(const ModeSpec& spec, const TransverseGrid& grid);

// Pointwise multiplication by e^{-i ||q||^2 z / 2k}: free-space paraxial
// propagation over a distance z.  Norm-preserving.
SpectralAmplitude propagate_paraxial(const SpectralAmplitude& amp, double z, double k);

// A paraxial solution: spectral data at a given station, with its carrier.
struct ParaxialWave {
    SpectralAmplitude spectrum;
    double carrier;
    double station;

    static ParaxialWave from_envelope(const SampledEnvelope& env, double carrier);
    static ParaxialWave from_mode(const ModeSpec& spec, const TransverseGrid& grid);

    ParaxialWave at_station(double z) const;
    SampledEnvelope envelope() const { return inverse_transform(spectrum, station); }
};

// Station-independent spectral inner product <F1|F2> of two solutions with a
// common carrier.  Throws on carrier or grid mismatch.
cplx paraxial_inner_product(const ParaxialWave& a, const ParaxialWave& b);

// L2 norm of the centered finite-difference residual of the paraxial wave
// equation (2ik d/dz + transverse Laplacian), evaluated at the middle station
// of three equally spaced ones.  Transverse derivatives are spectral.
double paraxial_residual_grid(const SampledEnvelope& minus, const SampledEnvelope& center,
                              const SampledEnvelope& plus, double k);

}  // namespace parax
