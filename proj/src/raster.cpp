#include "phm/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "phm/errors.hpp"
#include "phm/io.hpp"

namespace phm {

void RasterGrid::validate() const {
    if (!(lo < hi)) throw InvalidArgument("raster grid needs lo < hi");
    if (g < 1) throw InvalidArgument("raster grid needs at least one cell per side");
}

namespace {

// Closed cells along one axis that contain coordinate v.
std::vector<int> closed_cells(double v, const RasterGrid& grid) {
    std::vector<int> out;
    if (!(v >= grid.lo && v <= grid.hi)) return out;
    const int guess = static_cast<int>(std::floor((v - grid.lo) / grid.cell_size()));
    for (int i = std::max(0, guess - 1); i <= std::min(grid.g - 1, guess + 1); ++i)
        if (grid.edge(i) <= v && v <= grid.edge(i + 1)) out.push_back(i);
    return out;
}

// Owning cell along one axis under the half-open rule [e_i, e_{i+1}), with
// the last cell closed on the right.
int half_open_cell(double v, const RasterGrid& grid) {
    const auto cells = closed_cells(v, grid);
    if (cells.empty()) return -1;
    return cells.size() == 1 ? cells.front() : cells.back();
}

// Candidate cell range along one axis for the interval [a, b].
std::pair<int, int> span_cells(double a, double b, const RasterGrid& grid) {
    const double h = grid.cell_size();
    const int first = static_cast<int>(std::floor((std::max(a, grid.lo) - grid.lo) / h)) - 1;
    const int last = static_cast<int>(std::floor((std::min(b, grid.hi) - grid.lo) / h)) + 1;
    return {std::max(0, first), std::min(grid.g - 1, last)};
}

using Polygon = std::vector<Point2>;

// Keeps the part of `poly` with sign * (coord - bound) >= 0 where coord is x
// (axis 0) or y (axis 1).
Polygon clip(const Polygon& poly, int axis, double bound, double sign) {
    Polygon out;
    if (poly.empty()) return out;
    auto coord = [axis](const Point2& p) { return axis == 0 ? p.x : p.y; };
    auto inside = [&](const Point2& p) { return sign * (coord(p) - bound) >= 0.0; };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& cur = poly[i];
        const Point2& nxt = poly[(i + 1) % poly.size()];
        const bool in_cur = inside(cur), in_nxt = inside(nxt);
        if (in_cur) out.push_back(cur);
        if (in_cur != in_nxt) {
            const double t = (bound - coord(cur)) / (coord(nxt) - coord(cur));
            Point2 p{cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)};
            if (axis == 0)
                p.x = bound;
            else
                p.y = bound;
            out.push_back(p);
        }
    }
    return out;
}

double polygon_area(const Polygon& poly) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % poly.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * std::abs(s);
}

}  // namespace

CellFractions pi_point(const Point2& p, const RasterGrid& grid) {
    const auto cols = closed_cells(p.x, grid);
    const auto rows = closed_cells(p.y, grid);
    CellFractions out;
    const double share = 1.0 / static_cast<double>(cols.size() * rows.size());
    for (int r : rows)
        for (int c : cols) out.emplace_back(grid.index(c, r), share);
    return out;
}

CellFractions pi_segment(const Point2& a, const Point2& b, const RasterGrid& grid) {
    if (a == b) return pi_point(a, grid);
    const double dx = b.x - a.x, dy = b.y - a.y;

    auto [c0, c1] = span_cells(std::min(a.x, b.x), std::max(a.x, b.x), grid);
    auto [r0, r1] = span_cells(std::min(a.y, b.y), std::max(a.y, b.y), grid);
    // A segment lying on a grid line belongs to one side only.
    if (dx == 0.0) {
        const int c = half_open_cell(a.x, grid);
        if (c < 0) return {};
        c0 = c1 = c;
    }
    if (dy == 0.0) {
        const int r = half_open_cell(a.y, grid);
        if (r < 0) return {};
        r0 = r1 = r;
    }

    CellFractions out;
    for (int r = r0; r <= r1; ++r) {
        double ty0 = 0.0, ty1 = 1.0;
        if (dy != 0.0) {
            const double s0 = (grid.edge(r) - a.y) / dy, s1 = (grid.edge(r + 1) - a.y) / dy;
            ty0 = std::max(0.0, std::min(s0, s1));
            ty1 = std::min(1.0, std::max(s0, s1));
            if (!(ty1 > ty0)) continue;
        }
        for (int c = c0; c <= c1; ++c) {
            double t0 = ty0, t1 = ty1;
            if (dx != 0.0) {
                const double s0 = (grid.edge(c) - a.x) / dx, s1 = (grid.edge(c + 1) - a.x) / dx;
                t0 = std::max(t0, std::min(s0, s1));
                t1 = std::min(t1, std::max(s0, s1));
            }
            if (t1 > t0) out.emplace_back(grid.index(c, r), t1 - t0);
        }
    }
    return out;
}

CellFractions pi_triangle(const Point2& a, const Point2& b, const Point2& c, const RasterGrid& grid) {
    if (orient2d(a, b, c) == 0) {
        // Collinear: use the longest side, which covers the other vertex.
        auto d2 = [](const Point2& p, const Point2& q) { return (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y); };
        const double ab = d2(a, b), bc = d2(b, c), ca = d2(c, a);
        if (ab >= bc && ab >= ca) return pi_segment(a, b, grid);
        if (bc >= ca) return pi_segment(b, c, grid);
        return pi_segment(c, a, grid);
    }
    const double total = polygon_area({a, b, c});
    const auto [c0, c1] = span_cells(std::min({a.x, b.x, c.x}), std::max({a.x, b.x, c.x}), grid);
    const auto [r0, r1] = span_cells(std::min({a.y, b.y, c.y}), std::max({a.y, b.y, c.y}), grid);
    CellFractions out;
    const Polygon tri{a, b, c};
    for (int r = r0; r <= r1; ++r) {
        const Polygon band = clip(clip(tri, 1, grid.edge(r), 1.0), 1, grid.edge(r + 1), -1.0);
        if (band.size() < 3) continue;
        for (int col = c0; col <= c1; ++col) {
            const Polygon cell = clip(clip(band, 0, grid.edge(col), 1.0), 0, grid.edge(col + 1), -1.0);
            if (cell.size() < 3) continue;
            const double area = polygon_area(cell);
            if (area > 0.0) out.emplace_back(grid.index(col, r), area / total);
        }
    }
    return out;
}

CellFractions pi_simplex(const Simplex& sigma, const GeometricRealization& phi, const RasterGrid& grid) {
    grid.validate();
    const auto& v = sigma.vertices;
    switch (v.size()) {
        case 1: return pi_point(phi(v[0]), grid);
        case 2: return pi_segment(phi(v[0]), phi(v[1]), grid);
        case 3: return pi_triangle(phi(v[0]), phi(v[1]), phi(v[2]), grid);
        default: throw InvalidArgument("rasterization supports simplices of dimension at most 2");
    }
}

std::vector<double> rasterize(const SimplicialComplex& complex, std::span<const double> w,
                              const GeometricRealization& phi, const RasterGrid& grid) {
    grid.validate();
    if (w.size() != complex.size()) throw LengthMismatch("heatmap length does not match the complex");
    std::vector<double> heat(grid.cells(), 0.0);
    for (std::size_t s = 0; s < complex.size(); ++s) {
        if (w[s] == 0.0) continue;
        for (const auto& [cell, frac] : pi_simplex(complex.simplex(s), phi, grid)) heat[cell] += w[s] * frac;
    }
    return heat;
}

std::vector<double> theta(const SimplicialComplex& complex, std::span<const double> x, std::span<const double> y,
                          const HeatmapConfig& config, const RasterGrid& grid) {
    const HeatmapWeights hw = heatmap_at(complex, x, config);
    return rasterize(complex, hw.w, GeometricRealization::from_flat(y), grid);
}

std::array<int, 3> diverging_color(double value, double scale) {
    constexpr std::array<double, 3> white{255, 255, 255};
    constexpr std::array<double, 3> orange{230, 97, 1};
    constexpr std::array<double, 3> blue{33, 102, 172};
    std::array<int, 3> rgb{255, 255, 255};
    if (!(scale > 0.0)) return rgb;
    const double t = std::clamp(value / scale, -1.0, 1.0);
    const auto& end = t >= 0.0 ? orange : blue;
    const double s = std::abs(t);
    for (int k = 0; k < 3; ++k) rgb[k] = static_cast<int>(std::lround(white[k] + s * (end[k] - white[k])));
    return rgb;
}

std::string write_raster(const std::vector<double>& heat, const RasterGrid& grid, const std::string& path,
                         RasterStyle style) {
    grid.validate();
    if (heat.size() != grid.cells()) throw LengthMismatch("heat vector does not match the grid");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");

    if (style == RasterStyle::Grayscale) {
        const auto [mn, mx] = std::minmax_element(heat.begin(), heat.end());
        const double lo = *mn, range = *mx - *mn;
        out << "P2\n" << grid.g << ' ' << grid.g << "\n255\n";
        for (int r = grid.g - 1; r >= 0; --r) {
            for (int c = 0; c < grid.g; ++c) {
                const double v = heat[grid.index(c, r)];
                const long level = range > 0.0 ? std::lround(255.0 * (v - lo) / range) : 0;
                out << level << (c + 1 < grid.g ? ' ' : '\n');
            }
        }
    } else {
        double scale = 0.0;
        for (double v : heat) scale = std::max(scale, std::abs(v));
        out << "P3\n" << grid.g << ' ' << grid.g << "\n255\n";
        for (int r = grid.g - 1; r >= 0; --r) {
            for (int c = 0; c < grid.g; ++c) {
                const auto rgb = diverging_color(heat[grid.index(c, r)], scale);
                out << rgb[0] << ' ' << rgb[1] << ' ' << rgb[2] << (c + 1 < grid.g ? ' ' : '\n');
            }
        }
    }
    if (!out) throw IoError("failed writing " + path);

    std::string csv = path;
    const auto slash = csv.find_last_of('/');
    const auto dot = csv.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) csv.erase(dot);
    csv += ".csv";
    write_raster_csv(heat, grid, csv);
    return csv;
}

}  // namespace phm
