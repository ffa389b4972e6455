#include "parax/dispersion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "parax/quantum.hpp"

namespace parax {

DispersionMap::DispersionMap(std::string name, double c, RadialFn kappa, RadialFn omega,
                             RadialFn dkappa_dk, DomainFn domain)
    : name_(std::move(name)),
      c_(c),
      kappa_(std::move(kappa)),
      omega_(std::move(omega)),
      dkappa_dk_(std::move(dkappa_dk)),
      domain_(std::move(domain)) {
    if (!(c_ > 0.0) || !std::isfinite(c_)) {
        throw std::invalid_argument("DispersionMap: c must be positive");
    }
}

bool DispersionMap::in_domain(double qnorm, double k) const {
    if (!(k > 0.0) || qnorm < 0.0) return false;
    return domain_ ? domain_(qnorm, k) : true;
}

void DispersionMap::require_domain(double qnorm, double k) const {
    if (!in_domain(qnorm, k)) {
        std::ostringstream msg;
        msg << "DispersionMap '" << name_ << "': (||q||=" << qnorm << ", k=" << k
            << ") is outside the map domain";
        throw std::domain_error(msg.str());
    }
}

double DispersionMap::kappa(double qnorm, double k) const {
    require_domain(qnorm, k);
    return kappa_(qnorm, k);
}

double DispersionMap::omega(double qnorm, double k) const {
    require_domain(qnorm, k);
    return omega_(qnorm, k);
}

double DispersionMap::dkappa_dk(double qnorm, double k) const {
    require_domain(qnorm, k);
    return dkappa_dk_(qnorm, k);
}

double DispersionMap::kappa(double qx, double qy, double k) const {
    return kappa(std::hypot(qx, qy), k);
}

double DispersionMap::omega(double qx, double qy, double k) const {
    return omega(std::hypot(qx, qy), k);
}

DispersionMap builtin_map(BuiltinMap which, double c) {
    switch (which) {
        case BuiltinMap::paraxial:
            return DispersionMap(
                "paraxial", c,
                [](double q, double k) { return k - q * q / (2.0 * k); },
                [c](double /*q*/, double k) { return c * k; },
                [](double q, double k) { return 1.0 + q * q / (2.0 * k * k); });
        case BuiltinMap::monochromatic:
            return DispersionMap(
                "monochromatic", c,
                [](double q, double k) { return std::sqrt(k * k - q * q); },
                [c](double /*q*/, double k) { return c * k; },
                [](double q, double k) { return k / std::sqrt(k * k - q * q); },
                [](double q, double k) { return q < k; });
        case BuiltinMap::initially_paraxial:
            return DispersionMap(
                "initially_paraxial", c,
                [](double q, double k) { return k - q * q / (2.0 * k); },
                [c](double q, double k) {
                    const double q2 = q * q;
                    return c * std::sqrt(k * k + q2 * q2 / (4.0 * k * k));
                },
                [](double q, double k) { return 1.0 + q * q / (2.0 * k * k); });
        case BuiltinMap::henochromatic:
            return DispersionMap(
                "henochromatic", c,
                [](double q, double k) { return k - q * q / (4.0 * k); },
                [c](double q, double k) { return c * (k + q * q / (4.0 * k)); },
                [](double q, double k) { return 1.0 + q * q / (4.0 * k * k); });
    }
    throw std::invalid_argument("builtin_map: unknown selector");
}

DispersionMap family_map(double alpha, double beta, double c) {
    if (beta == 0.0 || !std::isfinite(alpha) || !std::isfinite(beta)) {
        throw std::invalid_argument("family_map: beta must be nonzero and finite");
    }
    const double up = 0.5 * std::exp(alpha);
    const double dn = 0.5 * std::exp(-alpha);
    auto lead = [up, beta](double q, double k) {
        return up * std::pow(k, beta) * std::pow(q, 1.0 - beta);
    };
    auto trail = [dn, beta](double q, double k) {
        return dn * std::pow(q, 1.0 + beta) * std::pow(k, -beta);
    };
    auto omega_over_c = [lead, trail](double q, double k) { return lead(q, k) + trail(q, k); };
    // Powers of q = 0 diverge unless both exponents are nonnegative.
    auto domain = [beta](double q, double /*k*/) {
        return q > 0.0 || (beta >= -1.0 && beta <= 1.0);
    };
    // The parameters are part of the identity: distinct family members must
    // not pass for the same map in cross-map checks.
    std::ostringstream label;
    label.precision(17);
    label << "family:" << alpha << "," << beta;
    return DispersionMap(
        label.str(), c,
        [lead, trail](double q, double k) { return lead(q, k) - trail(q, k); },
        [omega_over_c, c](double q, double k) { return c * omega_over_c(q, k); },
        [omega_over_c, beta](double q, double k) { return beta / k * omega_over_c(q, k); },
        domain);
}

DispersionMap eta_map(std::function<double(double)> eta, double c) {
    if (!eta) throw std::invalid_argument("eta_map: eta function required");
    auto kap = [eta](double q, double k) { return q * std::sinh(eta(q / k)); };
    auto dkdk = [kap](double q, double k) {
        const double h = 1e-6 * k;
        return (kap(q, k + h) - kap(q, k - h)) / (2.0 * h);
    };
    return DispersionMap(
        "eta", c, kap,
        [eta, c](double q, double k) { return c * q * std::cosh(eta(q / k)); }, dkdk,
        [](double q, double /*k*/) { return q > 0.0; });
}

double positive_frequency_residual(const DispersionMap& map, double qnorm, double k) {
    const double w = map.omega(qnorm, k) / map.speed_of_light();
    const double kap = map.kappa(qnorm, k);
    return w * w - qnorm * qnorm - kap * kap;
}

double unitarity_weight(const DispersionMap& map, double qnorm, double k) {
    const double dk = map.dkappa_dk(qnorm, k);
    const double w = map.omega(qnorm, k);
    const double tiny = 1e-300;
    if (!(std::abs(dk) > tiny)) {
        throw std::domain_error("unitarity_weight: d kappa/d k vanishes at (||q||=" +
                                std::to_string(qnorm) + ", k=" + std::to_string(k) + ")");
    }
    return w / std::abs(dk);
}

std::pair<double, double> consistency_residual(const DispersionMap& map, double k,
                                               double probe_scale) {
    if (!(probe_scale > 0.0)) {
        throw std::invalid_argument("consistency_residual: probe scale must be positive");
    }
    const double probe = probe_scale * k;
    const double ck = map.speed_of_light() * k;
    const double rk = std::abs(map.kappa(probe, k) - k) / k;
    const double rw = std::abs(map.omega(probe, k) - ck) / ck;
    return {rk, rw};
}

UniquenessReport uniqueness_sweep(double alpha_min, double alpha_max, std::size_t n_alpha,
                                  double beta_min, double beta_max, std::size_t n_beta,
                                  double k, double c) {
    if (n_alpha < 1 || n_beta < 1 || !(alpha_min <= alpha_max) || !(beta_min <= beta_max)) {
        throw std::invalid_argument("uniqueness_sweep: degenerate lattice ranges");
    }
    if (!(k > 0.0)) throw std::invalid_argument("uniqueness_sweep: k must be positive");

    auto lattice = [](double lo, double hi, std::size_t n, std::size_t i) {
        return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };

    UniquenessReport report;
    report.points.reserve(n_alpha * n_beta);
    const double target_alpha = std::log(2.0);
    const double target_beta = 1.0;
    double best_dist = std::numeric_limits<double>::infinity();
    double min1 = std::numeric_limits<double>::infinity();
    double min2 = std::numeric_limits<double>::infinity();

    for (std::size_t ia = 0; ia < n_alpha; ++ia) {
        const double a = lattice(alpha_min, alpha_max, n_alpha, ia);
        for (std::size_t ib = 0; ib < n_beta; ++ib) {
            const double b = lattice(beta_min, beta_max, n_beta, ib);
            const DispersionMap map = family_map(a, b, c);
            UniquenessPoint pt;
            pt.alpha = a;
            pt.beta = b;
            pt.unitarity_defect = unitarity_defect(map, k, 0.9 * k);
            const auto [rk, rw] = consistency_residual(map, k);
            pt.consistency_kappa = rk;
            pt.consistency_omega = rw;

            const std::size_t idx = report.points.size();
            const double cons = pt.consistency();
            if (cons < min1) {
                min2 = min1;
                min1 = cons;
                report.argmin = idx;
            } else if (cons < min2) {
                min2 = cons;
            }
            if (pt.unitarity_defect > report.max_unitarity_defect) {
                report.max_unitarity_defect = pt.unitarity_defect;
            }
            const double da = a - target_alpha;
            const double db = b - target_beta;
            const double dist = da * da + db * db;
            if (dist < best_dist) {
                best_dist = dist;
                report.nearest_to_unique = idx;
            }
            report.points.push_back(pt);
        }
    }
    report.min_consistency = min1;
    report.second_min_consistency = min2;
    return report;
}

DispersionMap parse_map_string(std::string_view text, double c) {
    if (text == "pa") return builtin_map(BuiltinMap::paraxial, c);
    if (text == "mc") return builtin_map(BuiltinMap::monochromatic, c);
    if (text == "ip") return builtin_map(BuiltinMap::initially_paraxial, c);
    if (text == "hc") return builtin_map(BuiltinMap::henochromatic, c);
    constexpr std::string_view prefix = "family:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto args = text.substr(prefix.size());
        const auto comma = args.find(',');
        if (comma != std::string_view::npos) {
            try {
                const double alpha = std::stod(std::string(args.substr(0, comma)));
                const double beta = std::stod(std::string(args.substr(comma + 1)));
                return family_map(alpha, beta, c);
            } catch (const std::invalid_argument&) {
            } catch (const std::out_of_range&) {
            }
        }
    }
    throw std::invalid_argument("unknown map \"" + std::string(text) +
                                "\" (expected pa, mc, ip, hc, or family:alpha,beta)");
}

}  // namespace parax
