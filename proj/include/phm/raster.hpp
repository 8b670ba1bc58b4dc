#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "phm/geometry.hpp"
#include "phm/heatmap.hpp"

namespace phm {

/// The square [lo, hi]^2 cut into g x g congruent cells. Cell (col, row) with
/// col along x and row along y has index row * g + col.
struct RasterGrid {
    double lo = 0.0;
    double hi = 1.0;
    int g = 1;

    void validate() const;
    std::size_t cells() const { return static_cast<std::size_t>(g) * static_cast<std::size_t>(g); }
    double cell_size() const { return (hi - lo) / g; }
    std::size_t index(int col, int row) const { return static_cast<std::size_t>(row) * g + col; }
    /// Lower edge of column/row i.
    double edge(int i) const { return i == g ? hi : lo + (hi - lo) * static_cast<double>(i) / g; }
};

/// Sparse (cell index, fraction) list for one simplex.
using CellFractions = std::vector<std::pair<std::size_t, double>>;

/// Share of a simplex's realization falling in each cell: length share for
/// segments, area share for triangles and an equal split over the closed
/// cells containing a point. Degenerate simplices use the rule of their
/// actual dimension. Parts outside the region are dropped.
CellFractions pi_simplex(const Simplex& sigma, const GeometricRealization& phi, const RasterGrid& grid);

CellFractions pi_point(const Point2& p, const RasterGrid& grid);
CellFractions pi_segment(const Point2& a, const Point2& b, const RasterGrid& grid);
CellFractions pi_triangle(const Point2& a, const Point2& b, const Point2& c, const RasterGrid& grid);

/// heat_i = sum over simplices of w(s) * Pi_i(s).
std::vector<double> rasterize(const SimplicialComplex& complex, std::span<const double> w,
                              const GeometricRealization& phi, const RasterGrid& grid);

/// Rasterized heatmap of the weights x with vertex positions y.
std::vector<double> theta(const SimplicialComplex& complex, std::span<const double> x, std::span<const double> y,
                          const HeatmapConfig& config, const RasterGrid& grid);

enum class RasterStyle { Grayscale, Diverging };

/// Writes a PGM (grayscale, min-max normalized) or PPM (diverging: blue
/// negative, white zero, orange positive) image plus a companion CSV next to
/// it. Returns the CSV path. Throws IoError.
std::string write_raster(const std::vector<double>& heat, const RasterGrid& grid, const std::string& path,
                         RasterStyle style);

/// RGB colour of a value on the diverging scale, `scale` = max |heat|.
std::array<int, 3> diverging_color(double value, double scale);

}  // namespace phm
