#include "parax/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace parax {

namespace {

// FFTW plans are created once per grid size under a lock and then executed
// with the new-array interface, which is safe for concurrent callers as long
// as each call owns its buffers.  FFTW_UNALIGNED lets plain std::vector
// storage be used for execution.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan forward(std::size_t n) { return get(n).fwd; }
    fftw_plan backward(std::size_t n) { return get(n).bwd; }

private:
    struct Entry {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    Entry& get(std::size_t n) {
        std::scoped_lock lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        const int ni = static_cast<int>(n);
        fftw_complex* scratch_in = fftw_alloc_complex(n * n);
        fftw_complex* scratch_out = fftw_alloc_complex(n * n);
        Entry entry;
        entry.fwd = fftw_plan_dft_2d(ni, ni, scratch_in, scratch_out, FFTW_FORWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        entry.bwd = fftw_plan_dft_2d(ni, ni, scratch_in, scratch_out, FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch_in);
        fftw_free(scratch_out);
        if (entry.fwd == nullptr || entry.bwd == nullptr) {
            throw std::runtime_error("fourier: FFTW plan creation failed");
        }
        return plans_.emplace(n, entry).first->second;
    }

    std::mutex mutex_;
    std::map<std::size_t, Entry> plans_;
};

fftw_complex* as_fftw(std::vector<cplx>& v) {
    return reinterpret_cast<fftw_complex*>(v.data());
}

// The sampled window is centered, x_j = (j - n/2) ds, so relative to the
// index-origin DFT every spectral value picks up a checkerboard sign
// (-1)^{mx+my}.  Both transforms keep that phase on the spectral side.
void apply_checkerboard(std::vector<cplx>& values, std::size_t n, double scale) {
    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double sign = ((ix + iy) & 1u) ? -scale : scale;
            values[ix * n + iy] *= sign;
        }
    }
}

}  // namespace

SpectralAmplitude forward_transform(const SampledEnvelope& env) {
    require_finite(env.values, "forward_transform");
    const std::size_t n = env.grid.n();
    std::vector<cplx> in(env.values);
    std::vector<cplx> out(n * n);
    fftw_execute_dft(PlanCache::instance().forward(n), as_fftw(in), as_fftw(out));
    const double scale = env.grid.cell_area() / (2.0 * std::numbers::pi);
    apply_checkerboard(out, n, scale);
    return SpectralAmplitude(env.grid, std::move(out));
}

SampledEnvelope inverse_transform(const SpectralAmplitude& amp, double station) {
    require_finite(amp.values, "inverse_transform");
    const std::size_t n = amp.grid.n();
    std::vector<cplx> in(amp.values);
    apply_checkerboard(in, n, 1.0);
    std::vector<cplx> out(n * n);
    fftw_execute_dft(PlanCache::instance().backward(n), as_fftw(in), as_fftw(out));
    const double scale = amp.grid.q_cell_area() / (2.0 * std::numbers::pi);
    for (auto& v : out) v *= scale;
    return SampledEnvelope(amp.grid, std::move(out), station);
}

namespace {

cplx weighted_dot(const std::vector<cplx>& a, const std::vector<cplx>& b, double cell) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc * cell;
}

}  // namespace

cplx l2_inner_product(const SampledEnvelope& a, const SampledEnvelope& b) {
    if (a.grid != b.grid) {
        throw std::invalid_argument("l2_inner_product: grid mismatch");
    }
    return weighted_dot(a.values, b.values, a.grid.cell_area());
}

cplx l2_inner_product(const SpectralAmplitude& a, const SpectralAmplitude& b) {
    if (a.grid != b.grid) {
        throw std::invalid_argument("l2_inner_product: grid mismatch");
    }
    return weighted_dot(a.values, b.values, a.grid.q_cell_area());
}

}  // namespace parax
