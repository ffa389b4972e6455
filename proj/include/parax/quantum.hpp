#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "parax/dispersion.hpp"
#include "parax/grid.hpp"
#include "parax/synthesis.hpp"

namespace parax {

enum class DensityOfStates { unit, inverse_2k };

struct PhysicalConstants {
    double c = 1.0;
    double hbar = 1.0;
    DensityOfStates rho = DensityOfStates::unit;
};

// Finite set of carrier wavenumbers with uniform spacing dk, the discrete
// surrogate for the carrier continuum; delta(0) maps to 1/dk.
class CarrierComb {
public:
    // Validates: all k > 0, strictly increasing, spacing uniform to 1e-12
    // relative.  A single-carrier comb needs dk passed explicitly.
    explicit CarrierComb(std::vector<double> k_values, double dk = 0.0);

    static CarrierComb uniform(double k_min, double dk, std::size_t count);

    const std::vector<double>& k_values() const { return k_values_; }
    double dk() const { return dk_; }
    std::size_t size() const { return k_values_.size(); }

    // Index of a carrier on the comb; throws std::invalid_argument otherwise.
    std::size_t index_of(double k) const;

private:
    std::vector<double> k_values_;
    double dk_;
};

// Discretized relativistic inner product of two single-carrier fields:
// 0 when k1 != k2 on the comb, else
//   (4 pi / (hbar c^2 dk)) * sum_q conj(F1) F2 * omega/|dkappa/dk| * dq^2.
// Cross-map products are rejected.
cplx inner_product_spectral(const SpectralAmplitude& f1, double k1, const DispersionMap& map1,
                            const SpectralAmplitude& f2, double k2, const DispersionMap& map2,
                            const CarrierComb& comb, const PhysicalConstants& consts);

// Inner product of two comb superpositions Psi = sum_k dk * Psi_k:
// sum over carriers of dk^2 * inner_product_spectral at that carrier.
cplx inner_product_spectral_multicarrier(const std::vector<SpectralAmplitude>& f1,
                                         const std::vector<SpectralAmplitude>& f2,
                                         const DispersionMap& map, const CarrierComb& comb,
                                         const PhysicalConstants& consts);

// Position-space form: (i/hbar c^2) * int d^3 r (conj(Psi1) dt Psi2 - dt conj(Psi1) Psi2)
// over the field's z stations at one t station.  Both fields must carry
// spectrally computed time derivatives (synthesize with_time_derivative) and
// must come from an exact-solution map (the paraxial map is rejected).
cplx inner_product_slice(const SpacetimeField& a, const SpacetimeField& b,
                         const PhysicalConstants& consts, std::size_t t_index = 0);

// Relative difference of the explicit density-of-states pipeline under
// rho = 1 and rho = 1/2||k||; vanishes by the rho cancellation.
double rho_invariance_check(const SpectralAmplitude& f, double k, const DispersionMap& map,
                            const CarrierComb& comb, const PhysicalConstants& consts);

// sup over a log-spaced sweep q in [1e-4 k, q_max] of |w(q,k)/w(q->0,k) - 1|.
double unitarity_defect(const DispersionMap& map, double k, double q_max,
                        std::size_t points = 200);

struct WeightSample {
    double q = 0.0;
    double weight = 0.0;
    bool domain_error = false;
};

struct WeightSweepReport {
    std::string map;
    double k = 0.0;
    double q_max = 0.0;
    double defect = 0.0;  // over in-domain samples
    std::vector<WeightSample> samples;
    bool any_domain_error = false;
};

// Tolerant variant of the defect sweep for reporting: out-of-domain samples
// are flagged instead of thrown.
WeightSweepReport weight_sweep(const DispersionMap& map, double k, double q_max,
                               std::size_t points = 200);

}  // namespace parax
