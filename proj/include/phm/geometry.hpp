#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "phm/simplicial.hpp"

namespace phm {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

struct PointCloud {
    std::vector<Point2> points;

    std::size_t size() const { return points.size(); }
};

/// Vertex positions: vertex id v sits at positions[v].
struct GeometricRealization {
    std::vector<Point2> positions;

    const Point2& operator()(VertexId v) const { return positions.at(static_cast<std::size_t>(v)); }

    /// Flattened (x0, y0, x1, y1, ...) coordinates.
    Vec flatten() const;
    static GeometricRealization from_flat(std::span<const double> y);
};

/// Sign of the orientation determinant of (a, b, c): +1 counter-clockwise,
/// -1 clockwise, 0 collinear. Exact.
int orient2d(const Point2& a, const Point2& b, const Point2& c);

/// Sign of the in-circle determinant: for counter-clockwise (a, b, c), +1 iff
/// d lies strictly inside their circumcircle, 0 iff cocircular. Exact.
int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Delaunay triangulation as a 2-complex. Vertex ids are input indices; the
/// total order is vertices, then edges, then triangles, each lexicographic.
///
/// Cocircular quadruples are resolved toward the diagonal whose endpoints come
/// first in lexicographic (x, y) point order. Throws Collinear or
/// DuplicatePoints.
std::pair<SimplicialComplex, GeometricRealization> delaunay2d(const PointCloud& cloud);

/// Alpha filtration values on a planar Delaunay complex: 0 on vertices, squared
/// circumradius on triangles, squared half-length on Gabriel edges (closed
/// diametral disc empty of other input points) and the smallest incident
/// triangle value on the remaining edges.
WeightVector alpha_weights(const SimplicialComplex& complex, const GeometricRealization& realization);

/// Vietoris-Rips complex of the threshold graph up to `max_dim` (<= 2). The
/// weight of a simplex is its largest pairwise distance.
std::tuple<SimplicialComplex, WeightVector, GeometricRealization> rips_complex(const PointCloud& cloud,
                                                                               int max_dim, double threshold);

/// Squared circumradius of a triangle.
double circumradius_squared(const Point2& a, const Point2& b, const Point2& c);

}  // namespace phm
