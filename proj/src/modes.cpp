#include "parax/modes.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace parax {

namespace {

// Physicists' Hermite polynomial H_m by the three-term recurrence.
double hermite(unsigned m, double x) {
    double h0 = 1.0;
    if (m == 0) return h0;
    double h1 = 2.0 * x;
    for (unsigned j = 2; j <= m; ++j) {
        const double h2 = 2.0 * x * h1 - 2.0 * static_cast<double>(j - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// Associated Laguerre polynomial L_p^a by the three-term recurrence.
double laguerre(unsigned p, unsigned a, double x) {
    double l0 = 1.0;
    if (p == 0) return l0;
    double l1 = 1.0 + static_cast<double>(a) - x;
    for (unsigned j = 2; j <= p; ++j) {
        const double dj = static_cast<double>(j);
        const double da = static_cast<double>(a);
        const double l2 = ((2.0 * dj - 1.0 + da - x) * l1 - (dj - 1.0 + da) * l0) / dj;
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned j = 2; j <= n; ++j) f *= static_cast<double>(j);
    return f;
}

void validate(const ModeSpec& spec) {
    if (!(spec.waist > 0.0) || !std::isfinite(spec.waist)) {
        throw std::invalid_argument("ModeSpec: waist must be positive");
    }
    if (!(spec.carrier > 0.0) || !std::isfinite(spec.carrier)) {
        throw std::invalid_argument("ModeSpec: carrier must be positive");
    }
}

}  // namespace

SampledEnvelope make_initial_data(const ModeSpec& spec, const TransverseGrid& grid) {
    validate(spec);
    check_waist_fit(grid, spec.waist);

    const std::size_t n = grid.n();
    const double W = spec.waist;
    SampledEnvelope env(grid, 0.0);

    if (const auto* hg = std::get_if<HermiteGauss>(&spec.family)) {
        const double norm =
            1.0 / std::sqrt(W * W * std::pow(2.0, double(hg->m + hg->n)) * factorial(hg->m) *
                            factorial(hg->n) * std::numbers::pi);
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = grid.coord(ix);
            const double hx = hermite(hg->m, x / W);
            const double gx = std::exp(-x * x / (2.0 * W * W));
            for (std::size_t iy = 0; iy < n; ++iy) {
                const double y = grid.coord(iy);
                env.at(ix, iy) = norm * hx * hermite(hg->n, y / W) * gx *
                                 std::exp(-y * y / (2.0 * W * W));
            }
        }
    } else {
        const auto& lg = std::get<LaguerreGauss>(spec.family);
        const unsigned la = static_cast<unsigned>(std::abs(lg.l));
        const double norm =
            std::sqrt(factorial(lg.p) / (std::numbers::pi * W * W * factorial(lg.p + la)));
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = grid.coord(ix);
            for (std::size_t iy = 0; iy < n; ++iy) {
                const double y = grid.coord(iy);
                const double r2 = (x * x + y * y) / (W * W);
                const double phi = std::atan2(y, x);
                const double radial = std::pow(r2, 0.5 * double(la)) * laguerre(lg.p, la, r2) *
                                      std::exp(-r2 / 2.0);
                env.at(ix, iy) = norm * radial *
                                 cplx{std::cos(lg.l * phi), std::sin(lg.l * phi)};
            }
        }
    }
    return env;
}

SpectralAmplitude propagate_paraxial(const SpectralAmplitude& amp, double z, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("propagate_paraxial: carrier must be positive");
    }
    const std::size_t n = amp.grid.n();
    SpectralAmplitude out(amp.grid, amp.values);
    for (std::size_t ix = 0; ix < n; ++ix) {
        const double qx = amp.grid.q(ix);
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double qy = amp.grid.q(iy);
            const double phase = -(qx * qx + qy * qy) * z / (2.0 * k);
            out.at(ix, iy) *= cplx{std::cos(phase), std::sin(phase)};
        }
    }
    return out;
}

ParaxialWave ParaxialWave::from_envelope(const SampledEnvelope& env, double carrier) {
    if (!(carrier > 0.0)) {
        throw std::invalid_argument("ParaxialWave: carrier must be positive");
    }
    return ParaxialWave{forward_transform(env), carrier, env.station};
}

ParaxialWave ParaxialWave::from_mode(const ModeSpec& spec, const TransverseGrid& grid) {
    return from_envelope(make_initial_data(spec, grid), spec.carrier);
}

ParaxialWave ParaxialWave::at_station(double z) const {
    return ParaxialWave{propagate_paraxial(spectrum, z - station, carrier), carrier, z};
}

cplx paraxial_inner_product(const ParaxialWave& a, const ParaxialWave& b) {
    if (a.carrier != b.carrier) {
        throw std::invalid_argument("paraxial_inner_product: carrier mismatch");
    }
    if (a.spectrum.grid != b.spectrum.grid) {
        throw std::invalid_argument("paraxial_inner_product: grid mismatch");
    }
    // Propagate both to z = 0; the result is station-independent because the
    // propagator has unit modulus.
    return l2_inner_product(a.at_station(0.0).spectrum, b.at_station(0.0).spectrum);
}

double paraxial_residual_grid(const SampledEnvelope& minus, const SampledEnvelope& center,
                              const SampledEnvelope& plus, double k) {
    if (minus.grid != center.grid || center.grid != plus.grid) {
        throw std::invalid_argument("paraxial_residual_grid: grid mismatch");
    }
    const double h_lo = center.station - minus.station;
    const double h_hi = plus.station - center.station;
    if (!(h_lo > 0.0) || std::abs(h_hi - h_lo) > 1e-12 * std::abs(h_lo)) {
        throw std::invalid_argument("paraxial_residual_grid: stations must be equally spaced");
    }
    const double h = h_lo;
    const std::size_t n = center.grid.n();

    // Transverse Laplacian of the middle slice, spectrally.
    SpectralAmplitude mid = forward_transform(center);
    for (std::size_t ix = 0; ix < n; ++ix) {
        const double qx = mid.grid.q(ix);
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double qy = mid.grid.q(iy);
            mid.at(ix, iy) *= -(qx * qx + qy * qy);
        }
    }
    const SampledEnvelope lap = inverse_transform(mid, center.station);

    double acc = 0.0;
    const cplx two_ik{0.0, 2.0 * k};
    for (std::size_t i = 0; i < center.values.size(); ++i) {
        const cplx dz = (plus.values[i] - minus.values[i]) / (2.0 * h);
        const cplx r = two_ik * dz + lap.values[i];
        acc += std::norm(r);
    }
    return std::sqrt(acc * center.grid.cell_area());
}

namespace {

// Splits on sep; throws on the wrong piece count.
std::vector<std::string_view> split(std::string_view text, char sep, std::size_t expect) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    if (parts.size() != expect) {
        throw std::invalid_argument("ModeSpec: expected " + std::to_string(expect) + " '" + sep +
                                    "'-separated fields in \"" + std::string(text) + "\"");
    }
    return parts;
}

double parse_double(std::string_view text, const char* what) {
    std::string buf(text);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) {
        throw std::invalid_argument(std::string("ModeSpec: bad ") + what + " \"" + buf + "\"");
    }
    return v;
}

long parse_long(std::string_view text, const char* what) {
    std::string buf(text);
    char* end = nullptr;
    const long v = std::strtol(buf.c_str(), &end, 10);
    if (end != buf.c_str() + buf.size() || buf.empty()) {
        throw std::invalid_argument(std::string("ModeSpec: bad ") + what + " \"" + buf + "\"");
    }
    return v;
}

}  // namespace

ModeSpec ModeSpec::parse(std::string_view text) {
    const auto parts = split(text, ':', 4);
    const auto indices = split(parts[1], ',', 2);
    ModeSpec spec;
    if (parts[0] == "hg") {
        const long m = parse_long(indices[0], "HG index m");
        const long n = parse_long(indices[1], "HG index n");
        if (m < 0 || n < 0) throw std::invalid_argument("ModeSpec: HG indices must be >= 0");
        spec.family = HermiteGauss{static_cast<unsigned>(m), static_cast<unsigned>(n)};
    } else if (parts[0] == "lg") {
        const long l = parse_long(indices[0], "LG index l");
        const long p = parse_long(indices[1], "LG index p");
        if (p < 0) throw std::invalid_argument("ModeSpec: LG index p must be >= 0");
        spec.family = LaguerreGauss{static_cast<int>(l), static_cast<unsigned>(p)};
    } else {
        throw std::invalid_argument("ModeSpec: unknown family \"" + std::string(parts[0]) +
                                    "\" (expected hg or lg)");
    }
    spec.waist = parse_double(parts[2], "waist");
    spec.carrier = parse_double(parts[3], "carrier");
    validate(spec);
    return spec;
}

namespace {

// Shortest decimal that round-trips, so parse(to_string(spec)) == spec.
std::string short_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string ModeSpec::to_string() const {
    std::string out;
    if (const auto* hg = std::get_if<HermiteGauss>(&family)) {
        out = "hg:" + std::to_string(hg->m) + "," + std::to_string(hg->n);
    } else {
        const auto& lg = std::get<LaguerreGauss>(family);
        out = "lg:" + std::to_string(lg.l) + "," + std::to_string(lg.p);
    }
    out += ":" + short_double(waist) + ":" + short_double(carrier);
    return out;
}

}  // namespace parax
