#include "parax/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace parax {

namespace {

void require_same_map(const DispersionMap& a, const DispersionMap& b) {
    if (a.name() != b.name())
        throw std::invalid_argument("inner product across different maps (" + a.name() +
                                    " vs " + b.name() + ") is not defined");
}

void require_consistent_c(const DispersionMap& map, const PhysicalConstants& consts) {
    if (std::abs(map.speed_of_light() - consts.c) > 1e-12 * std::abs(consts.c))
        throw std::invalid_argument("map and constants disagree on c");
}

double rho_factor(DensityOfStates rho, double knorm) {
    return rho == DensityOfStates::unit ? 1.0 : 1.0 / (2.0 * knorm);
}

// Quadrature of conj(F1) F2 * omega/|dkappa/dk| over the lattice, with the
// same negligibility rule as synthesis for out-of-domain cells.  The rho
// route keeps the density-of-states factors explicit instead of cancelled.
cplx weighted_quadrature(const SpectralAmplitude& f1, const SpectralAmplitude& f2, double k,
                         const DispersionMap& map, const PhysicalConstants& consts,
                         bool explicit_rho) {
    if (!(f1.grid == f2.grid))
        throw std::invalid_argument("inner product needs a common transverse grid");
    const std::size_t n = f1.grid.n();
    const std::vector<double> qs = f1.grid.q_lattice();
    double floor1 = 0.0, floor2 = 0.0;
    for (const cplx& v : f1.values) floor1 = std::max(floor1, std::abs(v));
    for (const cplx& v : f2.values) floor2 = std::max(floor2, std::abs(v));
    floor1 *= 1e-14;
    floor2 *= 1e-14;

    const double c = consts.c;
    cplx acc = 0.0;
    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            const cplx a = f1.at(ix, iy);
            const cplx b = f2.at(ix, iy);
            if (a == 0.0 && b == 0.0) continue;
            const double q = std::hypot(qs[ix], qs[iy]);
            if (!map.in_domain(q, k)) {
                if (std::abs(a) <= floor1 && std::abs(b) <= floor2) continue;
                std::ostringstream msg;
                msg << map.name() << " map: inner product amplitude outside domain at q = " << q;
                throw std::domain_error(msg.str());
            }
            if (explicit_rho) {
                // amplitude normalization g = sqrt(2 pi * 2 (omega/c) / rho) / |dk/dk|
                // integrated against measure |dkappa/dk| rho dq^2
                const double omc = map.omega(q, k) / c;
                const double drv = std::abs(map.dkappa_dk(q, k));
                const double rho = rho_factor(consts.rho, omc);
                const double g = std::sqrt(2.0 * M_PI * 2.0 * omc / rho) / drv;
                acc += std::conj(a) * b * (drv * rho * g * g);
            } else {
                acc += std::conj(a) * b * unitarity_weight(map, q, k);
            }
        }
    }
    return acc * f1.grid.q_cell_area();
}

}  // namespace

CarrierComb::CarrierComb(std::vector<double> k_values, double dk)
    : k_values_(std::move(k_values)), dk_(dk) {
    if (k_values_.empty()) throw std::invalid_argument("carrier comb: empty");
    for (double k : k_values_)
        if (!(k > 0.0)) throw std::invalid_argument("carrier comb: carriers must be positive");
    if (k_values_.size() == 1) {
        if (!(dk_ > 0.0))
            throw std::invalid_argument("carrier comb: single carrier needs explicit dk > 0");
        return;
    }
    const double step = k_values_[1] - k_values_[0];
    if (!(step > 0.0))
        throw std::invalid_argument("carrier comb: carriers must be strictly increasing");
    for (std::size_t i = 0; i + 1 < k_values_.size(); ++i) {
        if (std::abs(k_values_[i + 1] - k_values_[i] - step) > 1e-12 * step)
            throw std::invalid_argument("carrier comb: spacing must be uniform to 1e-12");
    }
    if (dk_ != 0.0 && std::abs(dk_ - step) > 1e-12 * step)
        throw std::invalid_argument("carrier comb: dk does not match the spacing");
    dk_ = step;
}

CarrierComb CarrierComb::uniform(double k_min, double dk, std::size_t count) {
    if (count == 0) throw std::invalid_argument("carrier comb: empty");
    if (!(dk > 0.0)) throw std::invalid_argument("carrier comb: dk must be positive");
    std::vector<double> ks(count);
    for (std::size_t i = 0; i < count; ++i) ks[i] = k_min + dk * static_cast<double>(i);
    return CarrierComb(std::move(ks), dk);
}

std::size_t CarrierComb::index_of(double k) const {
    const double tol = 1e-9 * dk_;
    for (std::size_t i = 0; i < k_values_.size(); ++i)
        if (std::abs(k_values_[i] - k) <= tol) return i;
    std::ostringstream msg;
    msg << "carrier " << k << " is not on the comb";
    throw std::invalid_argument(msg.str());
}

cplx inner_product_spectral(const SpectralAmplitude& f1, double k1, const DispersionMap& map1,
                            const SpectralAmplitude& f2, double k2, const DispersionMap& map2,
                            const CarrierComb& comb, const PhysicalConstants& consts) {
    require_same_map(map1, map2);
    require_consistent_c(map1, consts);
    const std::size_t i1 = comb.index_of(k1);
    const std::size_t i2 = comb.index_of(k2);
    if (i1 != i2) return 0.0;  // distinct carriers are exactly orthogonal
    const cplx quad = weighted_quadrature(f1, f2, k1, map1, consts, false);
    return quad * (4.0 * M_PI / (consts.hbar * consts.c * consts.c * comb.dk()));
}

cplx inner_product_spectral_multicarrier(const std::vector<SpectralAmplitude>& f1,
                                         const std::vector<SpectralAmplitude>& f2,
                                         const DispersionMap& map, const CarrierComb& comb,
                                         const PhysicalConstants& consts) {
    if (f1.size() != comb.size() || f2.size() != comb.size())
        throw std::invalid_argument("multicarrier inner product: one amplitude per carrier");
    require_consistent_c(map, consts);
    cplx acc = 0.0;
    const double dk = comb.dk();
    for (std::size_t i = 0; i < comb.size(); ++i) {
        const double k = comb.k_values()[i];
        const cplx quad = weighted_quadrature(f1[i], f2[i], k, map, consts, false);
        acc += dk * dk * quad * (4.0 * M_PI / (consts.hbar * consts.c * consts.c * dk));
    }
    return acc;
}

cplx inner_product_slice(const SpacetimeField& a, const SpacetimeField& b,
                         const PhysicalConstants& consts, std::size_t t_index) {
    if (a.map_name == "paraxial" || b.map_name == "paraxial")
        throw std::invalid_argument(
            "slice inner product needs exact solutions; the paraxial field is not one");
    if (a.map_name != b.map_name)
        throw std::invalid_argument("slice inner product across different maps");
    if (!(a.grid == b.grid))
        throw std::invalid_argument("slice inner product needs a common transverse grid");
    if (a.dt_planes.empty() || b.dt_planes.empty())
        throw std::invalid_argument(
            "slice inner product needs time derivatives (synthesize with_time_derivative)");
    if (a.z_values.size() != b.z_values.size() || a.z_values.size() < 2)
        throw std::invalid_argument("slice inner product needs matching z stations (>= 2)");
    for (std::size_t i = 0; i < a.z_values.size(); ++i)
        if (std::abs(a.z_values[i] - b.z_values[i]) > 1e-12)
            throw std::invalid_argument("slice inner product needs matching z stations");
    if (t_index >= a.t_values.size() || t_index >= b.t_values.size())
        throw std::invalid_argument("slice inner product: t station out of range");
    if (std::abs(a.t_values[t_index] - b.t_values[t_index]) > 1e-12)
        throw std::invalid_argument("slice inner product needs a common t station");
    const double hz = a.z_values[1] - a.z_values[0];
    for (std::size_t i = 0; i + 1 < a.z_values.size(); ++i)
        if (std::abs(a.z_values[i + 1] - a.z_values[i] - hz) > 1e-12 * std::abs(hz))
            throw std::invalid_argument("slice inner product needs uniform z stations");

    const std::size_t cells = a.grid.n() * a.grid.n();
    cplx acc = 0.0;
    for (std::size_t iz = 0; iz < a.z_values.size(); ++iz) {
        const std::vector<cplx>& pa = a.plane(iz, t_index);
        const std::vector<cplx>& pb = b.plane(iz, t_index);
        const std::vector<cplx>& da = a.dt_planes[a.plane_index(iz, t_index)];
        const std::vector<cplx>& db = b.dt_planes[b.plane_index(iz, t_index)];
        for (std::size_t j = 0; j < cells; ++j)
            acc += std::conj(pa[j]) * db[j] - std::conj(da[j]) * pb[j];
    }
    acc *= a.grid.cell_area() * hz;
    return acc * cplx{0.0, 1.0} / (consts.hbar * consts.c * consts.c);
}

double rho_invariance_check(const SpectralAmplitude& f, double k, const DispersionMap& map,
                            const CarrierComb& comb, const PhysicalConstants& consts) {
    require_consistent_c(map, consts);
    comb.index_of(k);
    PhysicalConstants unit = consts;
    unit.rho = DensityOfStates::unit;
    PhysicalConstants inv = consts;
    inv.rho = DensityOfStates::inverse_2k;
    // The 1/(2 pi)^2 rho in the expansion and the (2 pi)^3 rho under the g^2
    // collapse to the same 4 pi; both routes keep their factors explicit.
    const cplx a = weighted_quadrature(f, f, k, map, unit, true) / (2.0 * M_PI);
    const cplx b = weighted_quadrature(f, f, k, map, inv, true) / (2.0 * M_PI);
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) throw std::invalid_argument("rho invariance check: zero amplitude");
    return std::abs(a - b) / scale;
}

double unitarity_defect(const DispersionMap& map, double k, double q_max, std::size_t points) {
    if (points < 2) throw std::invalid_argument("unitarity defect: need >= 2 sweep points");
    const double q_min = 1e-4 * k;
    if (!(q_max > q_min)) throw std::invalid_argument("unitarity defect: q_max too small");
    const double ref = unitarity_weight(map, 1e-9 * k, k);
    const double ratio = q_max / q_min;
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
        const double q = q_min * std::pow(ratio, frac);
        worst = std::max(worst, std::abs(unitarity_weight(map, q, k) / ref - 1.0));
    }
    return worst;
}

WeightSweepReport weight_sweep(const DispersionMap& map, double k, double q_max,
                               std::size_t points) {
    if (points < 2) throw std::invalid_argument("weight sweep: need >= 2 sweep points");
    const double q_min = 1e-4 * k;
    if (!(q_max > q_min)) throw std::invalid_argument("weight sweep: q_max too small");
    WeightSweepReport report;
    report.map = map.name();
    report.k = k;
    report.q_max = q_max;
    const double ref = unitarity_weight(map, 1e-9 * k, k);
    const double ratio = q_max / q_min;
    for (std::size_t i = 0; i < points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
        WeightSample sample;
        sample.q = q_min * std::pow(ratio, frac);
        if (map.in_domain(sample.q, k)) {
            sample.weight = unitarity_weight(map, sample.q, k);
            report.defect = std::max(report.defect, std::abs(sample.weight / ref - 1.0));
        } else {
            sample.domain_error = true;
            report.any_domain_error = true;
        }
        report.samples.push_back(sample);
    }
    return report;
}

}  // namespace parax
