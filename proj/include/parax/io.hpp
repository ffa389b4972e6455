#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "parax/dispersion.hpp"
#include "parax/grid.hpp"
#include "parax/pulse.hpp"
#include "parax/quantum.hpp"

namespace parax {

using ordered_json = nlohmann::ordered_json;

// Shortest-exact decimal for byte-deterministic reports: 17 significant
// digits round-trip any double.
std::string format_float(double value);

// CSV dump (ix, iy, x, y, re, im) with a grid-metadata header line.
void write_field_csv(const std::string& path, const TransverseGrid& grid,
                     const std::vector<cplx>& values, double station);

// Two-column curve CSV with named header.
void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& x,
                     const std::vector<double>& y);

void write_json_file(const std::string& path, const ordered_json& j);

ordered_json to_json(const WeightSweepReport& report);
ordered_json to_json(const UniquenessReport& report);
ordered_json to_json(const PulseCompareReport& report);

}  // namespace parax
