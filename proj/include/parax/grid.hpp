#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace parax {

using cplx = std::complex<double>;

// Square sampled window in the transverse plane together with its conjugate
// wave-vector lattice.  Sample coordinates are x_i = (i - n/2) * spacing, so
// the window is [-L/2, L/2) with periodic closure.  The q lattice is
// DFT-ordered, q_m = 2*pi*m/L with m = 0..n/2-1, -n/2..-1.
class TransverseGrid {
public:
    // n must be a power of two, n >= 8; extent is the window side length L > 0.
    TransverseGrid(std::size_t n, double extent);

    std::size_t n() const { return n_; }
    double extent() const { return extent_; }
    double spacing() const { return spacing_; }
    double cell_area() const { return spacing_ * spacing_; }
    double q_spacing() const { return q_spacing_; }
    double q_cell_area() const { return q_spacing_ * q_spacing_; }
    double q_max() const;

    // Transverse coordinate of sample index i along either axis.
    double coord(std::size_t i) const {
        return (static_cast<double>(i) - static_cast<double>(n_) / 2.0) * spacing_;
    }

    // Per-axis wave-vector values, DFT-ordered.
    const std::vector<double>& q_lattice() const { return q_lattice_; }
    double q(std::size_t i) const { return q_lattice_[i]; }

    // Monotone ascending copy of the per-axis lattice, for reporting.
    std::vector<double> q_sorted() const;

    bool operator==(const TransverseGrid& other) const {
        return n_ == other.n_ && extent_ == other.extent_;
    }
    bool operator!=(const TransverseGrid& other) const { return !(*this == other); }

private:
    std::size_t n_;
    double extent_;
    double spacing_;
    double q_spacing_;
    std::vector<double> q_lattice_;
};

// Complex envelope samples at one longitudinal station, row-major (ix * n + iy).
struct SampledEnvelope {
    TransverseGrid grid;
    std::vector<cplx> values;
    double station = 0.0;

    SampledEnvelope(TransverseGrid g, std::vector<cplx> v, double z);
    SampledEnvelope(const TransverseGrid& g, double z = 0.0);

    cplx& at(std::size_t ix, std::size_t iy) { return values[ix * grid.n() + iy]; }
    const cplx& at(std::size_t ix, std::size_t iy) const { return values[ix * grid.n() + iy]; }
};

// Complex spectral samples on the grid's q lattice, row-major (iqx * n + iqy).
struct SpectralAmplitude {
    TransverseGrid grid;
    std::vector<cplx> values;

    SpectralAmplitude(TransverseGrid g, std::vector<cplx> v);
    explicit SpectralAmplitude(const TransverseGrid& g);

    cplx& at(std::size_t ix, std::size_t iy) { return values[ix * grid.n() + iy]; }
    const cplx& at(std::size_t ix, std::size_t iy) const { return values[ix * grid.n() + iy]; }
};

// Throws std::invalid_argument if any sample is NaN/Inf.
void require_finite(const std::vector<cplx>& values, const char* what);

// Warns on stderr when the window is narrower than 8 waists; returns false then.
bool check_waist_fit(const TransverseGrid& grid, double waist);

}  // namespace parax
