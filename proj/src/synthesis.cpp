#include "parax/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "parax/fourier.hpp"

namespace parax {

namespace {

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& c : v) m = std::max(m, std::abs(c));
    return m;
}

// Carrying amplitude above threshold => the map must accept this q.
void require_domain_coverage(const SpectralAmplitude& f, double k, const DispersionMap& map) {
    const double floor = 1e-14 * max_abs(f.values);
    const std::size_t n = f.grid.n();
    const std::vector<double> qs = f.grid.q_lattice();
    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            if (std::abs(f.at(ix, iy)) <= floor) continue;
            const double q = std::hypot(qs[ix], qs[iy]);
            if (!map.in_domain(q, k)) {
                std::ostringstream msg;
                msg << map.name() << " map: amplitude " << std::abs(f.at(ix, iy))
                    << " outside domain at q = " << q << " (k = " << k << ")";
                throw std::domain_error(msg.str());
            }
        }
    }
}

void check_uniform(const std::vector<double>& v, const char* what, double* step) {
    if (v.size() < 3) throw std::invalid_argument(std::string(what) + ": need >= 3 stations");
    const double h = v[1] - v[0];
    if (!(h > 0.0)) throw std::invalid_argument(std::string(what) + ": stations must increase");
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (std::abs(v[i + 1] - v[i] - h) > 1e-12 * std::abs(h))
            throw std::invalid_argument(std::string(what) + ": stations must be uniform");
    }
    *step = h;
}

}  // namespace

SpacetimeField synthesize(const SpectralAmplitude& f, double k, const DispersionMap& map,
                          const SpacetimeSampling& sampling, bool with_time_derivative) {
    if (sampling.z_values.empty() || sampling.t_values.empty())
        throw std::invalid_argument("synthesize: empty station list");
    require_finite(f.values, "spectral amplitude");
    require_domain_coverage(f, k, map);

    const std::size_t n = f.grid.n();
    const std::vector<double> qs = f.grid.q_lattice();
    const double c = map.speed_of_light();

    // Phase tables depend only on the radial lattice values.
    std::vector<double> kap(n * n), om(n * n);
    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double q = std::hypot(qs[ix], qs[iy]);
            const bool inside = map.in_domain(q, k);
            kap[ix * n + iy] = inside ? map.kappa(q, k) : 0.0;  // amplitude is negligible here
            om[ix * n + iy] = inside ? map.omega(q, k) : c * k;
        }
    }

    SpacetimeField field{f.grid, sampling.z_values, sampling.t_values, k, map.name(), {}, {}};
    field.planes.reserve(sampling.z_values.size() * sampling.t_values.size());
    if (with_time_derivative)
        field.dt_planes.reserve(sampling.z_values.size() * sampling.t_values.size());

    SpectralAmplitude shifted{f.grid, std::vector<cplx>(n * n)};
    SpectralAmplitude shifted_dt{f.grid, std::vector<cplx>(n * n)};
    for (double z : sampling.z_values) {
        for (double t : sampling.t_values) {
            for (std::size_t j = 0; j < n * n; ++j) {
                const double ph = kap[j] * z - om[j] * t;
                const cplx rot{std::cos(ph), std::sin(ph)};
                shifted.values[j] = f.values[j] * rot;
                if (with_time_derivative)
                    shifted_dt.values[j] = shifted.values[j] * cplx{0.0, -om[j]};
            }
            field.planes.push_back(inverse_transform(shifted).values);
            if (with_time_derivative)
                field.dt_planes.push_back(inverse_transform(shifted_dt).values);
        }
    }
    return field;
}

double wave_residual_spectral(const DispersionMap& map, double q, double k) {
    return positive_frequency_residual(map, q, k);
}

double wave_residual_oracle(const SpectralAmplitude& f, double k, const DispersionMap& map) {
    require_domain_coverage(f, k, map);
    const std::size_t n = f.grid.n();
    const std::vector<double> qs = f.grid.q_lattice();
    double acc = 0.0;
    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double w2 = std::norm(f.at(ix, iy));
            if (w2 == 0.0) continue;
            const double q = std::hypot(qs[ix], qs[iy]);
            if (!map.in_domain(q, k)) continue;  // negligible by coverage check
            const double r = positive_frequency_residual(map, q, k);
            acc += r * r * w2;
        }
    }
    return std::sqrt(acc * f.grid.q_cell_area());
}

double wave_residual_grid(const SpacetimeField& field, double c) {
    double hz = 0.0, ht = 0.0;
    check_uniform(field.z_values, "wave_residual_grid z", &hz);
    check_uniform(field.t_values, "wave_residual_grid t", &ht);
    const std::size_t nz = field.z_values.size(), nt = field.t_values.size();
    const std::size_t n = field.grid.n();
    const std::vector<double> qs = field.grid.q_lattice();

    // Transverse Laplacian of one plane, computed spectrally.
    auto transverse_lap = [&](const std::vector<cplx>& plane) {
        SampledEnvelope env{field.grid, plane, 0.0};
        SpectralAmplitude amp = forward_transform(env);
        for (std::size_t ix = 0; ix < n; ++ix)
            for (std::size_t iy = 0; iy < n; ++iy)
                amp.values[ix * n + iy] *= -(qs[ix] * qs[ix] + qs[iy] * qs[iy]);
        return inverse_transform(amp).values;
    };

    double sum_sq = 0.0;
    std::size_t stations = 0;
    std::vector<cplx> lap;
    for (std::size_t iz = 1; iz + 1 < nz; ++iz) {
        for (std::size_t it = 1; it + 1 < nt; ++it) {
            const std::vector<cplx>& mid = field.plane(iz, it);
            lap = transverse_lap(mid);
            const std::vector<cplx>& zm = field.plane(iz - 1, it);
            const std::vector<cplx>& zp = field.plane(iz + 1, it);
            const std::vector<cplx>& tm = field.plane(iz, it - 1);
            const std::vector<cplx>& tp = field.plane(iz, it + 1);
            double station_sq = 0.0;
            for (std::size_t j = 0; j < n * n; ++j) {
                const cplx dzz = (zp[j] - 2.0 * mid[j] + zm[j]) / (hz * hz);
                const cplx dtt = (tp[j] - 2.0 * mid[j] + tm[j]) / (ht * ht);
                const cplx r = lap[j] + dzz - dtt / (c * c);
                station_sq += std::norm(r);
            }
            sum_sq += station_sq * field.grid.cell_area();
            ++stations;
        }
    }
    return std::sqrt(sum_sq / static_cast<double>(stations));
}

}  // namespace parax
