#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parax {

// One candidate mapping from beam modes to spacetime fields: the pair
// (kappa(q,k), omega(q,k)) assigning longitudinal wavenumber and frequency to
// each transverse Fourier component.  All maps are isotropic; the radial
// overloads take ||q|| directly and the vector overloads reduce to them.
class DispersionMap {
public:
    using RadialFn = std::function<double(double qnorm, double k)>;
    using DomainFn = std::function<bool(double qnorm, double k)>;

    DispersionMap(std::string name, double c, RadialFn kappa, RadialFn omega,
                  RadialFn dkappa_dk, DomainFn domain = nullptr);

    const std::string& name() const { return name_; }
    double speed_of_light() const { return c_; }

    bool in_domain(double qnorm, double k) const;
    double kappa(double qnorm, double k) const;
    double omega(double qnorm, double k) const;
    double dkappa_dk(double qnorm, double k) const;

    double kappa(double qx, double qy, double k) const;
    double omega(double qx, double qy, double k) const;

private:
    void require_domain(double qnorm, double k) const;

    std::string name_;
    double c_;
    RadialFn kappa_;
    RadialFn omega_;
    RadialFn dkappa_dk_;
    DomainFn domain_;
};

enum class BuiltinMap { paraxial, monochromatic, initially_paraxial, henochromatic };

// The four literature candidates.  The monochromatic map's domain excludes
// ||q|| >= k; evaluation there throws std::domain_error naming the q shell.
DispersionMap builtin_map(BuiltinMap which, double c = 1.0);

// General unitary family kappa = (e^a/2) k^b q^{1-b} - (e^{-a}/2) q^{1+b} k^{-b},
// omega/c the same with +.  family_map(ln 2, 1) coincides with the
// henochromatic builtin.  Throws for beta = 0.
DispersionMap family_map(double alpha, double beta, double c = 1.0);

// kappa = ||q|| sinh eta(||q||/k), omega = c ||q|| cosh eta(||q||/k); satisfies
// the positive-frequency constraint identically.  dkappa/dk falls back to a
// centered difference with step 1e-6 k.  Domain is ||q|| > 0.
DispersionMap eta_map(std::function<double(double)> eta, double c = 1.0);

// (omega/c)^2 - ||q||^2 - kappa^2; zero iff the synthesized component solves
// the positive-frequency wave equation.
double positive_frequency_residual(const DispersionMap& map, double qnorm, double k);

// The spectral weight omega / |d kappa / d k|.  Throws std::domain_error when
// the derivative vanishes.
double unitarity_weight(const DispersionMap& map, double qnorm, double k);

// (|kappa(probe,k) - k| / k, |omega(probe,k) - ck| / ck) at probe = scale * k.
std::pair<double, double> consistency_residual(const DispersionMap& map, double k,
                                               double probe_scale = 1e-6);

struct UniquenessPoint {
    double alpha = 0.0;
    double beta = 0.0;
    double unitarity_defect = 0.0;
    double consistency_kappa = 0.0;
    double consistency_omega = 0.0;

    double consistency() const {
        return consistency_kappa > consistency_omega ? consistency_kappa : consistency_omega;
    }
};

struct UniquenessReport {
    std::vector<UniquenessPoint> points;  // alpha-major lattice order
    std::size_t argmin = 0;               // index of minimal consistency residual
    std::size_t nearest_to_unique = 0;    // lattice point nearest (ln 2, 1)
    double min_consistency = 0.0;
    double second_min_consistency = 0.0;
    double max_unitarity_defect = 0.0;

    bool argmin_at_expected() const { return argmin == nearest_to_unique; }
};

// Evaluates the (alpha, beta) lattice: per-point unitarity defect (sup of the
// weight spread over a log q sweep up to 0.9 k) and small-q consistency
// residual.  The unique near-zero of the latter sits at (ln 2, 1).
UniquenessReport uniqueness_sweep(double alpha_min, double alpha_max, std::size_t n_alpha,
                                  double beta_min, double beta_max, std::size_t n_beta,
                                  double k, double c = 1.0);

// CLI selection strings: "pa", "mc", "ip", "hc", "family:alpha,beta".
DispersionMap parse_map_string(std::string_view text, double c = 1.0);

}  // namespace parax
