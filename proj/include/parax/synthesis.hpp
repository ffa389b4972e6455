#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parax/dispersion.hpp"
#include "parax/grid.hpp"

namespace parax {

// Tensor sampling of (z, t) stations on top of a transverse grid.
struct SpacetimeSampling {
    std::vector<double> z_values;
    std::vector<double> t_values;
};

// Full field Psi(s, z, t) sampled on grid x z_values x t_values.  Each plane
// is one transverse slab (row-major, ix * n + iy); planes are indexed
// iz * t_count + it.  When requested at synthesis time, dt_planes holds the
// spectrally computed time derivative on the same stations.
struct SpacetimeField {
    TransverseGrid grid;
    std::vector<double> z_values;
    std::vector<double> t_values;
    double carrier = 0.0;
    std::string map_name;
    std::vector<std::vector<cplx>> planes;
    std::vector<std::vector<cplx>> dt_planes;  // empty unless requested

    std::size_t plane_index(std::size_t iz, std::size_t it) const {
        return iz * t_values.size() + it;
    }
    const std::vector<cplx>& plane(std::size_t iz, std::size_t it) const {
        return planes[plane_index(iz, it)];
    }
};

// Exact mode synthesis: Psi(s,z,t) = int d^2 q/2pi F(q) e^{i q.s} e^{i kappa z - i omega t}.
// Every lattice q carrying non-negligible amplitude (>1e-14 of max |F|) must
// lie inside the map's domain, else std::domain_error naming the q shell.
SpacetimeField synthesize(const SpectralAmplitude& f, double k, const DispersionMap& map,
                          const SpacetimeSampling& sampling,
                          bool with_time_derivative = false);

// Per-component d'Alembertian eigenvalue omega^2/c^2 - q^2 - kappa^2: the
// same functional as positive_frequency_residual, read here as the residual
// the wave operator leaves on one Fourier component (sign convention: applied
// to e^{i q.s + i kappa z - i omega t}, the operator Laplacian - dt^2/c^2
// multiplies by -(this value)).
double wave_residual_spectral(const DispersionMap& map, double q, double k);

// What wave_residual_grid converges to as the station spacing shrinks:
// sqrt( sum_q r(q)^2 |F(q)|^2 dq^2 ) with r the per-component eigenvalue.
// Zero for exact-solution maps; the paraxial map's finite limit.
double wave_residual_oracle(const SpectralAmplitude& f, double k, const DispersionMap& map);

// Grid residual of (Laplacian - (1/c^2) dt^2) Psi: transverse part spectral,
// z and t second derivatives by centered differences on the field's uniform
// stations.  Returns the RMS over interior (z, t) stations of the per-station
// transverse L2 norm.  Needs >= 3 uniform stations in both z and t.
double wave_residual_grid(const SpacetimeField& field, double c = 1.0);

}  // namespace parax
