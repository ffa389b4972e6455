#include "parax/grid.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace parax {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

TransverseGrid::TransverseGrid(std::size_t n, double extent)
    : n_(n), extent_(extent) {
    if (n < 8 || !is_power_of_two(n)) {
        throw std::invalid_argument("TransverseGrid: n must be a power of two >= 8, got " +
                                    std::to_string(n));
    }
    if (!(extent > 0.0) || !std::isfinite(extent)) {
        throw std::invalid_argument("TransverseGrid: extent must be positive and finite");
    }
    spacing_ = extent_ / static_cast<double>(n_);
    q_spacing_ = 2.0 * std::numbers::pi / extent_;
    q_lattice_.resize(n_);
    const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
    for (std::size_t i = 0; i < n_; ++i) {
        const auto m = static_cast<std::ptrdiff_t>(i);
        const auto signed_m = m < half ? m : m - static_cast<std::ptrdiff_t>(n_);
        q_lattice_[i] = q_spacing_ * static_cast<double>(signed_m);
    }
}

double TransverseGrid::q_max() const {
    return std::numbers::pi * static_cast<double>(n_) / extent_;
}

std::vector<double> TransverseGrid::q_sorted() const {
    std::vector<double> out(n_);
    const auto half = n_ / 2;
    // DFT order is 0..n/2-1, -n/2..-1; rotating by n/2 makes it ascending.
    for (std::size_t i = 0; i < n_; ++i) out[i] = q_lattice_[(i + half) % n_];
    return out;
}

SampledEnvelope::SampledEnvelope(TransverseGrid g, std::vector<cplx> v, double z)
    : grid(std::move(g)), values(std::move(v)), station(z) {
    if (values.size() != grid.n() * grid.n()) {
        throw std::invalid_argument("SampledEnvelope: values shape does not match grid");
    }
    if (!std::isfinite(station)) {
        throw std::invalid_argument("SampledEnvelope: station must be finite");
    }
}

SampledEnvelope::SampledEnvelope(const TransverseGrid& g, double z)
    : grid(g), values(g.n() * g.n(), cplx{0.0, 0.0}), station(z) {
    if (!std::isfinite(station)) {
        throw std::invalid_argument("SampledEnvelope: station must be finite");
    }
}

SpectralAmplitude::SpectralAmplitude(TransverseGrid g, std::vector<cplx> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.n() * grid.n()) {
        throw std::invalid_argument("SpectralAmplitude: values shape does not match grid");
    }
}

SpectralAmplitude::SpectralAmplitude(const TransverseGrid& g)
    : grid(g), values(g.n() * g.n(), cplx{0.0, 0.0}) {}

void require_finite(const std::vector<cplx>& values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + ": non-finite sample rejected");
        }
    }
}

bool check_waist_fit(const TransverseGrid& grid, double waist) {
    if (grid.extent() >= 8.0 * waist) return true;
    std::cerr << "parax: warning: window extent " << grid.extent() << " is below 8x waist "
              << waist << "; periodic wrap-around may exceed stated tolerances\n";
    return false;
}

}  // namespace parax
