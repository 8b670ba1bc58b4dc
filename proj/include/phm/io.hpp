#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "phm/features.hpp"
#include "phm/geometry.hpp"
#include "phm/kernel.hpp"
#include "phm/learn.hpp"
#include "phm/persistence.hpp"
#include "phm/raster.hpp"

namespace phm {

using Json = nlohmann::json;

/// Shortest decimal text that parses back to the same double; "inf"/"-inf"
/// for infinities.
std::string format_double(double v);
/// Inverse of format_double. Throws ParseError.
double parse_double(std::string_view text);

struct Filtration {
    SimplicialComplex complex;
    WeightVector weights;
};

/// One simplex per line, `v1 v2 ... vn ; weight`, in total order. Lines
/// starting with `#` and blank lines are skipped on reading.
void write_filtration(std::ostream& out, const SimplicialComplex& complex, std::span<const double> w);
Filtration read_filtration(std::istream& in);
void write_filtration_file(const std::string& path, const SimplicialComplex& complex, std::span<const double> w);
Filtration read_filtration_file(const std::string& path);

/// `x,y` header then one point per row.
void write_points_csv(const std::string& path, const PointCloud& cloud);
PointCloud read_points_csv(const std::string& path);
/// Row order permuted with a seeded shuffle.
PointCloud shuffle_points(PointCloud cloud, std::uint64_t seed);

Json diagram_to_json(const AnnotatedDiagram& diagram);
AnnotatedDiagram diagram_from_json(const Json& j);

/// One row per feature vector, comma separated.
void write_matrix_csv(const std::string& path, const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> read_matrix_csv(const std::string& path);
void write_int_matrix_csv(const std::string& path, const std::vector<std::vector<int>>& rows);
std::vector<std::vector<int>> read_int_matrix_csv(const std::string& path);

/// `simplex_index,weight`.
void write_heatmap_csv(const std::string& path, const std::vector<double>& w);
std::vector<double> read_heatmap_csv(const std::string& path);

/// `row,col,heat`, one line per cell in index order.
void write_raster_csv(const std::vector<double>& heat, const RasterGrid& grid, const std::string& path);
std::vector<double> read_raster_csv(const std::string& path, const RasterGrid& grid);

Json model_to_json(const LinearModel& model);
LinearModel model_from_json(const Json& j);

Json feature_spec_to_json(const FeatureSpec& spec);
FeatureSpec feature_spec_from_json(const Json& j);

Json expected_to_json(const ExpectedHeatmap& e);

/// Pretty-printed with a trailing newline. Throws IoError.
void write_json(const std::string& path, const Json& j);
/// Throws IoError or ParseError.
Json read_json(const std::string& path);

/// Whole file as a string. Throws IoError.
std::string read_text(const std::string& path);

}  // namespace phm
