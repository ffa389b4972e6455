#include "parax/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "parax/fourier.hpp"

namespace parax {

namespace {

constexpr std::size_t kCombCount = 33;   // k0 +- 4 sigma at spacing sigma/4
constexpr double kCombHalfSpanSigmas = 4.0;

void require_henochromatic(const DispersionMap& map) {
    if (map.name() != "henochromatic")
        throw std::invalid_argument(
            "null-coordinate synthesis needs the henochromatic map; the phase identity "
            "kappa z - omega t = k u - q^2 v / 2k fails for " + map.name());
}

void require_comb_amplitudes(const std::vector<SpectralAmplitude>& f_of_k,
                             const CarrierComb& comb) {
    if (f_of_k.size() != comb.size())
        throw std::invalid_argument("need one spectral amplitude per comb carrier");
    for (const SpectralAmplitude& f : f_of_k) {
        if (!(f.grid == f_of_k.front().grid))
            throw std::invalid_argument("comb amplitudes must share one transverse grid");
        require_finite(f.values, "comb amplitude");
    }
}

double uniform_step(const std::vector<double>& v, const char* what) {
    if (v.size() < 2) throw std::invalid_argument(std::string(what) + ": need >= 2 samples");
    const double h = v[1] - v[0];
    if (!(h > 0.0)) throw std::invalid_argument(std::string(what) + ": samples must increase");
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (std::abs(v[i + 1] - v[i] - h) > 1e-12 * h)
            throw std::invalid_argument(std::string(what) + ": samples must be uniform");
    return h;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

}  // namespace

void PulseSpec::validate() const {
    if (!(k0 > 0.0)) throw std::invalid_argument("pulse: central carrier must be positive");
    if (!(dk_sigma > 0.0)) throw std::invalid_argument("pulse: carrier width must be positive");
    if (!(dk_sigma < k0 / 10.0))
        throw std::invalid_argument("pulse: carrier width must satisfy dk_sigma < k0/10");
    if (std::abs(base_mode.carrier - k0) > 1e-12 * k0)
        throw std::invalid_argument("pulse: base mode carrier must equal k0");
}

CarrierComb pulse_comb(const PulseSpec& spec) {
    spec.validate();
    const double dk = 2.0 * kCombHalfSpanSigmas * spec.dk_sigma / static_cast<double>(kCombCount - 1);
    return CarrierComb::uniform(spec.k0 - kCombHalfSpanSigmas * spec.dk_sigma, dk, kCombCount);
}

std::vector<SpectralAmplitude> pulse_amplitudes(const PulseSpec& spec,
                                                const TransverseGrid& grid) {
    spec.validate();
    const CarrierComb comb = pulse_comb(spec);
    const SpectralAmplitude base = forward_transform(make_initial_data(spec.base_mode, grid));
    std::vector<SpectralAmplitude> out;
    out.reserve(comb.size());
    for (double k : comb.k_values()) {
        const double d = (k - spec.k0) / spec.dk_sigma;
        const double g = std::exp(-0.5 * d * d);
        SpectralAmplitude f = base;
        for (cplx& v : f.values) v *= g;
        out.push_back(std::move(f));
    }
    return out;
}

NullField synthesize_multicarrier(const std::vector<SpectralAmplitude>& f_of_k,
                                  const CarrierComb& comb, const DispersionMap& map,
                                  const NullSampling& sampling) {
    require_henochromatic(map);
    require_comb_amplitudes(f_of_k, comb);
    if (sampling.u_values.empty() || sampling.v_values.empty())
        throw std::invalid_argument("null synthesis: empty station list");
    if (sampling.u_values.size() >= 2) uniform_step(sampling.u_values, "null synthesis u stations");

    const TransverseGrid& grid = f_of_k.front().grid;
    const std::size_t n = grid.n();
    const std::vector<double> qs = grid.q_lattice();
    std::vector<double> q2(n * n);
    for (std::size_t ix = 0; ix < n; ++ix)
        for (std::size_t iy = 0; iy < n; ++iy)
            q2[ix * n + iy] = qs[ix] * qs[ix] + qs[iy] * qs[iy];

    NullField field{grid, sampling.u_values, sampling.v_values, {}};
    field.planes.reserve(sampling.u_values.size() * sampling.v_values.size());
    const double dk = comb.dk();
    SpectralAmplitude acc{grid, std::vector<cplx>(n * n)};
    for (double u : sampling.u_values) {
        for (double v : sampling.v_values) {
            std::fill(acc.values.begin(), acc.values.end(), cplx{0.0, 0.0});
            for (std::size_t j = 0; j < comb.size(); ++j) {
                const double k = comb.k_values()[j];
                const std::vector<cplx>& fj = f_of_k[j].values;
                for (std::size_t cell = 0; cell < n * n; ++cell) {
                    const double ph = k * u - q2[cell] * v / (2.0 * k);
                    acc.values[cell] += dk * fj[cell] * cplx{std::cos(ph), std::sin(ph)};
                }
            }
            field.planes.push_back(inverse_transform(acc).values);
        }
    }
    return field;
}

SpacetimeField synthesize_multicarrier_spacetime(const std::vector<SpectralAmplitude>& f_of_k,
                                                 const CarrierComb& comb,
                                                 const DispersionMap& map,
                                                 const SpacetimeSampling& sampling,
                                                 bool with_time_derivative) {
    require_comb_amplitudes(f_of_k, comb);
    if (sampling.z_values.empty() || sampling.t_values.empty())
        throw std::invalid_argument("synthesis: empty station list");

    const TransverseGrid& grid = f_of_k.front().grid;
    const std::size_t n = grid.n();
    const std::vector<double> qs = grid.q_lattice();

    // Phase tables per carrier; the domain check mirrors single-carrier synthesis.
    std::vector<std::vector<double>> kap(comb.size()), om(comb.size());
    for (std::size_t j = 0; j < comb.size(); ++j) {
        const double k = comb.k_values()[j];
        double floor = 0.0;
        for (const cplx& v : f_of_k[j].values) floor = std::max(floor, std::abs(v));
        floor *= 1e-14;
        kap[j].resize(n * n);
        om[j].resize(n * n);
        for (std::size_t ix = 0; ix < n; ++ix) {
            for (std::size_t iy = 0; iy < n; ++iy) {
                const double q = std::hypot(qs[ix], qs[iy]);
                const std::size_t cell = ix * n + iy;
                if (!map.in_domain(q, k)) {
                    if (std::abs(f_of_k[j].values[cell]) > floor) {
                        std::ostringstream msg;
                        msg << map.name() << " map: comb amplitude outside domain at q = " << q
                            << " (carrier " << k << ")";
                        throw std::domain_error(msg.str());
                    }
                    kap[j][cell] = 0.0;
                    om[j][cell] = map.speed_of_light() * k;
                    continue;
                }
                kap[j][cell] = map.kappa(q, k);
                om[j][cell] = map.omega(q, k);
            }
        }
    }

    const double k_center = comb.k_values()[comb.size() / 2];
    SpacetimeField field{grid, sampling.z_values, sampling.t_values,
                         k_center, map.name(), {}, {}};
    const double dk = comb.dk();
    SpectralAmplitude acc{grid, std::vector<cplx>(n * n)};
    SpectralAmplitude acc_dt{grid, std::vector<cplx>(n * n)};
    for (double z : sampling.z_values) {
        for (double t : sampling.t_values) {
            std::fill(acc.values.begin(), acc.values.end(), cplx{0.0, 0.0});
            if (with_time_derivative)
                std::fill(acc_dt.values.begin(), acc_dt.values.end(), cplx{0.0, 0.0});
            for (std::size_t j = 0; j < comb.size(); ++j) {
                const std::vector<cplx>& fj = f_of_k[j].values;
                for (std::size_t cell = 0; cell < n * n; ++cell) {
                    const double ph = kap[j][cell] * z - om[j][cell] * t;
                    const cplx term = dk * fj[cell] * cplx{std::cos(ph), std::sin(ph)};
                    acc.values[cell] += term;
                    if (with_time_derivative)
                        acc_dt.values[cell] += term * cplx{0.0, -om[j][cell]};
                }
            }
            field.planes.push_back(inverse_transform(acc).values);
            if (with_time_derivative)
                field.dt_planes.push_back(inverse_transform(acc_dt).values);
        }
    }
    return field;
}

std::vector<SpectralAmplitude> decompose_henochromatic(const NullField& field,
                                                       std::size_t v_index,
                                                       const CarrierComb& comb) {
    if (v_index >= field.v_values.size())
        throw std::invalid_argument("decompose: v station out of range");
    const std::size_t count = field.u_values.size();
    if (comb.size() > count)
        throw std::invalid_argument("decompose: more carriers than u stations");
    const double du = uniform_step(field.u_values, "decompose u stations");
    const double period = 2.0 * M_PI / comb.dk();
    if (std::abs(static_cast<double>(count) * du - period) > 1e-9 * period)
        throw std::invalid_argument(
            "decompose: u stations must span one full comb period (count * du = 2 pi / dk)");

    const TransverseGrid& grid = field.grid;
    const std::size_t cells = grid.n() * grid.n();

    // Spectral data per u station.
    std::vector<std::vector<cplx>> spectra;
    spectra.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        SampledEnvelope env{grid, field.plane(m, v_index), 0.0};
        spectra.push_back(forward_transform(env).values);
    }

    const double v = field.v_values[v_index];
    const double scale = du / (2.0 * M_PI);
    std::vector<SpectralAmplitude> out;
    out.reserve(comb.size());
    for (double k : comb.k_values()) {
        SpectralAmplitude acc{grid, std::vector<cplx>(cells, cplx{0.0, 0.0})};
        for (std::size_t m = 0; m < count; ++m) {
            const double ph = -k * field.u_values[m];
            const cplx rot = scale * cplx{std::cos(ph), std::sin(ph)};
            const std::vector<cplx>& sp = spectra[m];
            for (std::size_t cell = 0; cell < cells; ++cell)
                acc.values[cell] += sp[cell] * rot;
        }
        out.push_back(propagate_paraxial(acc, -v, k));
    }
    return out;
}

PulseCompareReport pulse_compare(const PulseSpec& spec, const TransverseGrid& grid,
                                 std::size_t stations, double c) {
    spec.validate();
    if (stations < 3 || stations % 2 == 0)
        throw std::invalid_argument("pulse compare: stations must be odd and >= 3");
    check_waist_fit(grid, spec.base_mode.waist);

    const SpectralAmplitude f0 = forward_transform(make_initial_data(spec.base_mode, grid));
    PulseCompareReport report;
    report.k0 = spec.k0;
    report.dk_sigma = spec.dk_sigma;
    report.mode = spec.base_mode.to_string();

    // Spectral support against the paraxial-regime bound q < 0.2 k0.
    double fmax = 0.0;
    for (const cplx& v : f0.values) fmax = std::max(fmax, std::abs(v));
    const std::vector<double> qs = grid.q_lattice();
    const std::size_t n = grid.n();
    for (std::size_t ix = 0; ix < n; ++ix)
        for (std::size_t iy = 0; iy < n; ++iy)
            if (std::abs(f0.at(ix, iy)) > 1e-6 * fmax)
                report.support_q = std::max(report.support_q, std::hypot(qs[ix], qs[iy]));
    report.paraxial_regime_ok = report.support_q < 0.2 * spec.k0;
    if (!report.paraxial_regime_ok)
        std::cerr << "warning: mode support reaches q = " << report.support_q
                  << ", beyond the paraxial-regime bound 0.2 k0 = " << 0.2 * spec.k0 << "\n";

    const DispersionMap pa = builtin_map(BuiltinMap::paraxial, c);
    const DispersionMap hc = builtin_map(BuiltinMap::henochromatic, c);
    const double u_max = 1.0 / spec.dk_sigma;

    // (a) pointwise equality on the null plane ct = z.
    for (double z : {-0.5 * u_max, 0.0, 0.5 * u_max}) {
        const SpacetimeSampling at{{z}, {z / c}};
        const std::vector<cplx> wpa = synthesize(f0, spec.k0, pa, at).planes[0];
        const std::vector<cplx> whc = synthesize(f0, spec.k0, hc, at).planes[0];
        double scale = 0.0, diff = 0.0;
        for (std::size_t cell = 0; cell < wpa.size(); ++cell) {
            scale = std::max(scale, std::abs(wpa[cell]));
            diff = std::max(diff, std::abs(whc[cell] - wpa[cell]));
        }
        report.null_plane_residual = std::max(report.null_plane_residual, diff / scale);
    }

    // (b), (c): masked relative L2 discrepancy, per u station at t = 0 and
    // aggregated over the co-moving window z = u + ct at each t station.
    const std::vector<double> us = linspace(-u_max, u_max, stations);
    report.u_values = us;
    report.ct_values = linspace(-u_max, u_max, 5);
    for (double ct : report.ct_values) {
        std::vector<double> zs(us.size());
        for (std::size_t i = 0; i < us.size(); ++i) zs[i] = us[i] + ct;
        const SpacetimeSampling window{zs, {ct / c}};
        const SpacetimeField wpa = synthesize(f0, spec.k0, pa, window);
        const SpacetimeField whc = synthesize(f0, spec.k0, hc, window);
        double agg_num = 0.0, agg_den = 0.0;
        for (std::size_t iz = 0; iz < zs.size(); ++iz) {
            const std::vector<cplx>& ppa = wpa.plane(iz, 0);
            const std::vector<cplx>& phc = whc.plane(iz, 0);
            double scale = 0.0;
            for (const cplx& v : ppa) scale = std::max(scale, std::abs(v));
            const double gate = 1e-3 * scale;
            double num = 0.0, den = 0.0;
            for (std::size_t cell = 0; cell < ppa.size(); ++cell) {
                if (std::abs(ppa[cell]) < gate) continue;
                num += std::norm(phc[cell] - ppa[cell]);
                den += std::norm(ppa[cell]);
            }
            agg_num += num;
            agg_den += den;
            if (ct == 0.0) report.discrepancy_vs_u.push_back(std::sqrt(num / den));
        }
        report.discrepancy_vs_t.push_back(std::sqrt(agg_num / agg_den));
    }
    return report;
}

}  // namespace parax
