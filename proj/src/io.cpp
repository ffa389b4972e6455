#include "parax/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace parax {

std::string format_float(double value) {
    char buf[40];
    const std::to_chars_result res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw std::runtime_error("float formatting failed");
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

}  // namespace

void write_field_csv(const std::string& path, const TransverseGrid& grid,
                     const std::vector<cplx>& values, double station) {
    if (values.size() != grid.n() * grid.n())
        throw std::invalid_argument("field dump: value count does not match grid");
    std::ofstream out = open_out(path);
    out << "# n=" << grid.n() << ",extent=" << format_float(grid.extent())
        << ",station=" << format_float(station) << "\n";
    out << "ix,iy,x,y,re,im\n";
    const std::size_t n = grid.n();
    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = 0; iy < n; ++iy) {
            const cplx v = values[ix * n + iy];
            out << ix << ',' << iy << ',' << format_float(grid.coord(ix)) << ','
                << format_float(grid.coord(iy)) << ',' << format_float(v.real()) << ','
                << format_float(v.imag()) << "\n";
        }
    }
}

void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& x,
                     const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("curve dump: length mismatch");
    std::ofstream out = open_out(path);
    out << x_name << ',' << y_name << "\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << format_float(x[i]) << ',' << format_float(y[i]) << "\n";
}

void write_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

ordered_json to_json(const WeightSweepReport& report) {
    ordered_json j;
    j["map"] = report.map;
    j["k"] = report.k;
    j["q_max"] = report.q_max;
    j["defect"] = report.defect;
    ordered_json samples = ordered_json::array();
    for (const WeightSample& s : report.samples) {
        ordered_json row;
        row["q"] = s.q;
        if (s.domain_error)
            row["domain_error"] = true;
        else
            row["weight"] = s.weight;
        samples.push_back(row);
    }
    j["weight_samples"] = samples;
    if (report.any_domain_error) j["any_domain_error"] = true;
    return j;
}

ordered_json to_json(const UniquenessReport& report) {
    ordered_json j;
    const UniquenessPoint& best = report.points[report.argmin];
    const UniquenessPoint& expect = report.points[report.nearest_to_unique];
    j["argmin"] = {{"alpha", best.alpha}, {"beta", best.beta}};
    j["nearest_to_unique"] = {{"alpha", expect.alpha}, {"beta", expect.beta}};
    j["argmin_at_expected"] = report.argmin_at_expected();
    j["min_consistency"] = report.min_consistency;
    j["second_min_consistency"] = report.second_min_consistency;
    j["max_unitarity_defect"] = report.max_unitarity_defect;
    ordered_json points = ordered_json::array();
    for (const UniquenessPoint& p : report.points) {
        points.push_back({{"alpha", p.alpha},
                          {"beta", p.beta},
                          {"unitarity_defect", p.unitarity_defect},
                          {"consistency", p.consistency()}});
    }
    j["points"] = points;
    return j;
}

ordered_json to_json(const PulseCompareReport& report) {
    ordered_json j;
    j["k0"] = report.k0;
    j["dk_sigma"] = report.dk_sigma;
    j["mode"] = report.mode;
    j["paraxial_regime_ok"] = report.paraxial_regime_ok;
    j["support_q"] = report.support_q;
    j["null_plane_residual"] = report.null_plane_residual;
    ordered_json curve = ordered_json::array();
    for (std::size_t i = 0; i < report.u_values.size(); ++i)
        curve.push_back({{"u", report.u_values[i]}, {"value", report.discrepancy_vs_u[i]}});
    j["discrepancy_curve"] = curve;
    ordered_json tcurve = ordered_json::array();
    for (std::size_t i = 0; i < report.ct_values.size(); ++i)
        tcurve.push_back({{"ct", report.ct_values[i]}, {"value", report.discrepancy_vs_t[i]}});
    j["discrepancy_vs_t"] = tcurve;
    return j;
}

}  // namespace parax
