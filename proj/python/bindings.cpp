#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <stdexcept>
#include <vector>

#include "parax/dispersion.hpp"
#include "parax/fourier.hpp"
#include "parax/grid.hpp"
#include "parax/modes.hpp"
#include "parax/pulse.hpp"
#include "parax/quantum.hpp"
#include "parax/synthesis.hpp"

namespace py = pybind11;
using namespace parax;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

TransverseGrid grid_of(const carray& a, double extent) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw std::invalid_argument("expected a square 2-d complex array");
    return TransverseGrid(static_cast<std::size_t>(a.shape(0)), extent);
}

std::vector<cplx> values_of(const carray& a) {
    const cplx* p = a.data();
    return std::vector<cplx>(p, p + a.size());
}

py::array_t<cplx> array_of(const TransverseGrid& grid, const std::vector<cplx>& v) {
    py::array_t<cplx> out({grid.n(), grid.n()});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

PhysicalConstants constants_of(double c, double hbar, const std::string& rho) {
    PhysicalConstants consts;
    consts.c = c;
    consts.hbar = hbar;
    if (rho == "unit")
        consts.rho = DensityOfStates::unit;
    else if (rho == "inverse_2k")
        consts.rho = DensityOfStates::inverse_2k;
    else
        throw std::invalid_argument("rho must be 'unit' or 'inverse_2k'");
    return consts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "paraxial modes as exact scalar-field states";

    py::class_<TransverseGrid>(m, "TransverseGrid")
        .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("extent"))
        .def_property_readonly("n", &TransverseGrid::n)
        .def_property_readonly("extent", &TransverseGrid::extent)
        .def_property_readonly("spacing", &TransverseGrid::spacing)
        .def_property_readonly("q_spacing", &TransverseGrid::q_spacing)
        .def_property_readonly("q_max", &TransverseGrid::q_max)
        .def("coord", &TransverseGrid::coord, py::arg("i"))
        .def("q", &TransverseGrid::q, py::arg("i"));

    py::class_<DispersionMap>(m, "DispersionMap")
        .def_property_readonly("name", &DispersionMap::name)
        .def_property_readonly("c", &DispersionMap::speed_of_light)
        .def("kappa", py::overload_cast<double, double>(&DispersionMap::kappa, py::const_),
             py::arg("q"), py::arg("k"))
        .def("omega", py::overload_cast<double, double>(&DispersionMap::omega, py::const_),
             py::arg("q"), py::arg("k"))
        .def("dkappa_dk", &DispersionMap::dkappa_dk, py::arg("q"), py::arg("k"))
        .def("in_domain", &DispersionMap::in_domain, py::arg("q"), py::arg("k"));

    py::class_<CarrierComb>(m, "CarrierComb")
        .def(py::init<std::vector<double>, double>(), py::arg("k_values"), py::arg("dk") = 0.0)
        .def_static("uniform", &CarrierComb::uniform, py::arg("k_min"), py::arg("dk"),
                    py::arg("count"))
        .def_property_readonly("k_values", &CarrierComb::k_values)
        .def_property_readonly("dk", &CarrierComb::dk);

    m.def("make_map", &parse_map_string, py::arg("spec"), py::arg("c") = 1.0,
          "pa, mc, ip, hc, or family:alpha,beta");
    m.def("family_map", &family_map, py::arg("alpha"), py::arg("beta"), py::arg("c") = 1.0);
    m.def(
        "eta_map",
        [](const std::function<double(double)>& eta, double c) { return eta_map(eta, c); },
        py::arg("eta"), py::arg("c") = 1.0,
        "map kappa = q sinh(eta(q/k)), omega = c q cosh(eta(q/k))");

    m.def("positive_frequency_residual", &positive_frequency_residual, py::arg("map"),
          py::arg("q"), py::arg("k"));
    m.def("unitarity_weight", &unitarity_weight, py::arg("map"), py::arg("q"), py::arg("k"));
    m.def("consistency_residual", &consistency_residual, py::arg("map"), py::arg("k"),
          py::arg("probe_scale") = 1e-6);
    m.def("unitarity_defect", &unitarity_defect, py::arg("map"), py::arg("k"), py::arg("q_max"),
          py::arg("points") = 200);

    m.def(
        "uniqueness_sweep",
        [](double a_min, double a_max, std::size_t na, double b_min, double b_max, std::size_t nb,
           double k, double c) {
            const UniquenessReport r = uniqueness_sweep(a_min, a_max, na, b_min, b_max, nb, k, c);
            py::list points;
            for (const UniquenessPoint& p : r.points)
                points.append(py::dict(py::arg("alpha") = p.alpha, py::arg("beta") = p.beta,
                                       py::arg("consistency") = p.consistency(),
                                       py::arg("unitarity_defect") = p.unitarity_defect));
            return py::dict(py::arg("points") = points, py::arg("argmin") = r.argmin,
                            py::arg("argmin_at_expected") = r.argmin_at_expected(),
                            py::arg("min_consistency") = r.min_consistency,
                            py::arg("second_min_consistency") = r.second_min_consistency,
                            py::arg("max_unitarity_defect") = r.max_unitarity_defect);
        },
        py::arg("alpha_min"), py::arg("alpha_max"), py::arg("alpha_points"), py::arg("beta_min"),
        py::arg("beta_max"), py::arg("beta_points"), py::arg("k") = 1.0, py::arg("c") = 1.0);

    m.def(
        "mode_envelope",
        [](const std::string& mode, std::size_t n, double extent) {
            const ModeSpec spec = ModeSpec::parse(mode);
            const TransverseGrid grid(n, extent);
            return array_of(grid, make_initial_data(spec, grid).values);
        },
        py::arg("mode"), py::arg("n"), py::arg("extent"),
        "waist-plane envelope samples for hg:m,n:W:k or lg:l,p:W:k");

    m.def(
        "forward_transform",
        [](const carray& field, double extent, double station) {
            const TransverseGrid grid = grid_of(field, extent);
            return array_of(grid,
                            forward_transform(SampledEnvelope(grid, values_of(field), station))
                                .values);
        },
        py::arg("field"), py::arg("extent"), py::arg("station") = 0.0);

    m.def(
        "inverse_transform",
        [](const carray& spectrum, double extent) {
            const TransverseGrid grid = grid_of(spectrum, extent);
            return array_of(grid,
                            inverse_transform(SpectralAmplitude(grid, values_of(spectrum))).values);
        },
        py::arg("spectrum"), py::arg("extent"));

    m.def(
        "paraxial_inner_product",
        [](const carray& fa, const carray& fb, double extent, double ka, double kb, double za,
           double zb) {
            const TransverseGrid grid = grid_of(fa, extent);
            const ParaxialWave a{SpectralAmplitude(grid, values_of(fa)), ka, za};
            const ParaxialWave b{SpectralAmplitude(grid, values_of(fb)), kb, zb};
            return paraxial_inner_product(a, b);
        },
        py::arg("spectrum_a"), py::arg("spectrum_b"), py::arg("extent"), py::arg("k_a"),
        py::arg("k_b"), py::arg("z_a") = 0.0, py::arg("z_b") = 0.0,
        "beam-frame L2 product after propagating both to z = 0");

    m.def(
        "propagate_paraxial",
        [](const carray& spectrum, double dz, double k, double extent) {
            const TransverseGrid grid = grid_of(spectrum, extent);
            return array_of(grid,
                            propagate_paraxial(SpectralAmplitude(grid, values_of(spectrum)), dz, k)
                                .values);
        },
        py::arg("spectrum"), py::arg("dz"), py::arg("k"), py::arg("extent"));

    m.def(
        "quantum_inner_product",
        [](const carray& fa, double ka, const carray& fb, double kb, const DispersionMap& map,
           const CarrierComb& comb, double extent, double c, double hbar, const std::string& rho) {
            const TransverseGrid grid = grid_of(fa, extent);
            return inner_product_spectral(SpectralAmplitude(grid, values_of(fa)), ka, map,
                                          SpectralAmplitude(grid, values_of(fb)), kb, map, comb,
                                          constants_of(c, hbar, rho));
        },
        py::arg("spectrum_a"), py::arg("k_a"), py::arg("spectrum_b"), py::arg("k_b"),
        py::arg("map"), py::arg("comb"), py::arg("extent"), py::arg("c") = 1.0,
        py::arg("hbar") = 1.0, py::arg("rho") = "unit");

    m.def(
        "weight_sweep",
        [](const DispersionMap& map, double k, double q_max, std::size_t points) {
            const WeightSweepReport r = weight_sweep(map, k, q_max, points);
            py::list samples;
            for (const WeightSample& s : r.samples)
                samples.append(py::dict(py::arg("q") = s.q, py::arg("weight") = s.weight,
                                        py::arg("domain_error") = s.domain_error));
            return py::dict(py::arg("map") = r.map, py::arg("k") = r.k,
                            py::arg("q_max") = r.q_max, py::arg("defect") = r.defect,
                            py::arg("weight_samples") = samples,
                            py::arg("any_domain_error") = r.any_domain_error);
        },
        py::arg("map"), py::arg("k"), py::arg("q_max"), py::arg("points") = 200);

    m.def(
        "synthesize",
        [](const carray& spectrum, double k, const DispersionMap& map, double extent,
           const std::vector<double>& z_values, const std::vector<double>& t_values) {
            const TransverseGrid grid = grid_of(spectrum, extent);
            const SpacetimeField field = synthesize(SpectralAmplitude(grid, values_of(spectrum)),
                                                    k, map, {z_values, t_values});
            const std::size_t nz = z_values.size(), nt = t_values.size(), n = grid.n();
            py::array_t<cplx> out({nz, nt, n, n});
            cplx* p = out.mutable_data();
            for (std::size_t iz = 0; iz < nz; ++iz)
                for (std::size_t it = 0; it < nt; ++it) {
                    const std::vector<cplx>& plane = field.plane(iz, it);
                    std::copy(plane.begin(), plane.end(), p);
                    p += plane.size();
                }
            return out;
        },
        py::arg("spectrum"), py::arg("k"), py::arg("map"), py::arg("extent"), py::arg("z_values"),
        py::arg("t_values"), "exact field Psi on (z, t) stations; shape (nz, nt, n, n)");

    m.def(
        "wave_residual_spectral",
        [](const DispersionMap& map, double q, double k) {
            return wave_residual_spectral(map, q, k);
        },
        py::arg("map"), py::arg("q"), py::arg("k"));

    m.def(
        "completeness_roundtrip",
        [](const std::vector<carray>& spectra, double extent, double k_min, double dk,
           std::size_t u_count, double v, double c) {
            if (spectra.empty()) throw std::invalid_argument("need at least one spectrum");
            const TransverseGrid grid = grid_of(spectra.front(), extent);
            std::vector<SpectralAmplitude> fs;
            for (const carray& a : spectra) fs.emplace_back(grid, values_of(a));
            const CarrierComb comb = CarrierComb::uniform(k_min, dk, fs.size());
            const double du = 2.0 * M_PI / (dk * static_cast<double>(u_count));
            NullSampling sampling;
            for (std::size_t i = 0; i < u_count; ++i)
                sampling.u_values.push_back(static_cast<double>(i) * du);
            sampling.v_values = {v};
            const DispersionMap map = builtin_map(BuiltinMap::henochromatic, c);
            const NullField field = synthesize_multicarrier(fs, comb, map, sampling);
            const std::vector<SpectralAmplitude> back = decompose_henochromatic(field, 0, comb);
            double worst = 0.0;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                double diff = 0.0, scale = 0.0;
                for (std::size_t i = 0; i < fs[j].values.size(); ++i) {
                    diff = std::max(diff, std::abs(back[j].values[i] - fs[j].values[i]));
                    scale = std::max(scale, std::abs(fs[j].values[i]));
                }
                worst = std::max(worst, diff / scale);
            }
            return worst;
        },
        py::arg("spectra"), py::arg("extent"), py::arg("k_min"), py::arg("dk"),
        py::arg("u_count"), py::arg("v") = 0.0, py::arg("c") = 1.0,
        "max relative error of decompose(synthesize) over the carrier comb");

    m.def(
        "pulse_compare",
        [](double k0, double dk_sigma, const std::string& mode, std::size_t n, double extent,
           std::size_t stations, double c) {
            const PulseSpec spec{k0, dk_sigma, ModeSpec::parse(mode)};
            const PulseCompareReport r = pulse_compare(spec, TransverseGrid(n, extent), stations, c);
            return py::dict(py::arg("k0") = r.k0, py::arg("dk_sigma") = r.dk_sigma,
                            py::arg("mode") = r.mode,
                            py::arg("paraxial_regime_ok") = r.paraxial_regime_ok,
                            py::arg("support_q") = r.support_q,
                            py::arg("null_plane_residual") = r.null_plane_residual,
                            py::arg("u_values") = r.u_values,
                            py::arg("discrepancy_vs_u") = r.discrepancy_vs_u,
                            py::arg("ct_values") = r.ct_values,
                            py::arg("discrepancy_vs_t") = r.discrepancy_vs_t);
        },
        py::arg("k0"), py::arg("dk_sigma"), py::arg("mode"), py::arg("n") = 64,
        py::arg("extent") = 16.0, py::arg("stations") = 21, py::arg("c") = 1.0);
}
