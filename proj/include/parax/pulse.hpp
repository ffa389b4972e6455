#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "parax/dispersion.hpp"
#include "parax/grid.hpp"
#include "parax/modes.hpp"
#include "parax/quantum.hpp"
#include "parax/synthesis.hpp"

namespace parax {

// Stations in the null coordinates u = z - ct, v = (z + ct)/2.  u must be
// uniform so the carrier comb can be inverted by a discrete transform in u.
struct NullSampling {
    std::vector<double> u_values;
    std::vector<double> v_values;
};

// Field sampled on null-coordinate stations; planes indexed iu * v_count + iv.
struct NullField {
    TransverseGrid grid;
    std::vector<double> u_values;
    std::vector<double> v_values;
    std::vector<std::vector<cplx>> planes;

    std::size_t plane_index(std::size_t iu, std::size_t iv) const {
        return iu * v_values.size() + iv;
    }
    const std::vector<cplx>& plane(std::size_t iu, std::size_t iv) const {
        return planes[plane_index(iu, iv)];
    }
};

// Gaussian carrier pulse: comb centered at k0 with spectral width dk_sigma
// carrying one transverse mode profile.
struct PulseSpec {
    double k0 = 0.0;
    double dk_sigma = 0.0;
    ModeSpec base_mode;

    // Enforces 0 < dk_sigma < k0/10 and carrier agreement with the mode.
    void validate() const;
};

// 33 carriers spanning k0 +- 4 dk_sigma (spacing dk_sigma/4); Gaussian tail
// truncation below 1e-7.
CarrierComb pulse_comb(const PulseSpec& spec);

// Per-carrier amplitudes G(k) F0(q): the base mode's spectral profile scaled
// by the Gaussian weight exp(-(k-k0)^2 / 2 dk_sigma^2).
std::vector<SpectralAmplitude> pulse_amplitudes(const PulseSpec& spec,
                                                const TransverseGrid& grid);

// Comb superposition on null stations:
//   Psi(s,u,v) = sum_k dk F_k(q->s) e^{iku} e^{-i q^2 v / 2k},
// valid only for the henochromatic map (the phase identity
// kappa z - omega t = ku - q^2 v/2k holds for no other map).
NullField synthesize_multicarrier(const std::vector<SpectralAmplitude>& f_of_k,
                                  const CarrierComb& comb, const DispersionMap& map,
                                  const NullSampling& sampling);

// Same comb superposition on (z, t) stations under any exact-solution map,
// with optional spectral time derivatives for the slice inner product.
SpacetimeField synthesize_multicarrier_spacetime(const std::vector<SpectralAmplitude>& f_of_k,
                                                 const CarrierComb& comb,
                                                 const DispersionMap& map,
                                                 const SpacetimeSampling& sampling,
                                                 bool with_time_derivative = false);

// Inverse of synthesize_multicarrier at one v station: discrete transform in
// u separates the carriers (needs count * du = 2 pi / dk, i.e. the u range
// spans one full comb period), then each carrier is back-propagated by -v.
std::vector<SpectralAmplitude> decompose_henochromatic(const NullField& field,
                                                       std::size_t v_index,
                                                       const CarrierComb& comb);

// Paraxial-field vs henochromatic-field comparison at pulse scale.
struct PulseCompareReport {
    double k0 = 0.0;
    double dk_sigma = 0.0;
    std::string mode;
    bool paraxial_regime_ok = true;  // spectral support inside q < 0.2 k0
    double support_q = 0.0;          // largest shell carrying > 1e-6 of max |F|
    double null_plane_residual = 0.0;
    std::vector<double> u_values;           // stations at t = 0 (u = z there)
    std::vector<double> discrepancy_vs_u;   // masked relative L2 per station
    std::vector<double> ct_values;          // time stations (as c t)
    std::vector<double> discrepancy_vs_t;   // aggregate over z at each t
};

// Compares Psi_pa = Xi(s,z) e^{ik(z-ct)} against Psi_hc = Xi(s,(z+ct)/2) e^{ik(z-ct)}
// for the pulse's base mode at its central carrier: pointwise equality on the
// null plane ct = z, and the masked relative L2 discrepancy over stations
// z in [-u_max, u_max] with u_max = 1/dk_sigma (the pulse length).  The mask
// keeps cells with |Psi_pa| >= 1e-3 of the per-station max.
PulseCompareReport pulse_compare(const PulseSpec& spec, const TransverseGrid& grid,
                                 std::size_t stations = 21, double c = 1.0);

}  // namespace parax
