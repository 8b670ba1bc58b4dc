#include "phm/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "phm/errors.hpp"

namespace phm {

Vec GeometricRealization::flatten() const {
    Vec y;
    y.reserve(2 * positions.size());
    for (const auto& p : positions) {
        y.push_back(p.x);
        y.push_back(p.y);
    }
    return y;
}

GeometricRealization GeometricRealization::from_flat(std::span<const double> y) {
    if (y.size() % 2 != 0) throw DimensionMismatch("flattened planar positions need an even length");
    GeometricRealization r;
    r.positions.reserve(y.size() / 2);
    for (std::size_t i = 0; i + 1 < y.size(); i += 2) r.positions.push_back({y[i], y[i + 1]});
    return r;
}

double circumradius_squared(const Point2& a, const Point2& b, const Point2& c) {
    const double ab = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    const double bc = (c.x - b.x) * (c.x - b.x) + (c.y - b.y) * (c.y - b.y);
    const double ca = (a.x - c.x) * (a.x - c.x) + (a.y - c.y) * (a.y - c.y);
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return ab * bc * ca / (4.0 * cross * cross);
}

namespace {

using Tri = std::array<int, 3>;  // counter-clockwise

std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

class Triangulator {
public:
    Triangulator(const std::vector<Point2>& pts, const std::vector<int>& rank) : pts_(pts), rank_(rank) {}

    void add(const Tri& t) {
        const int id = static_cast<int>(tris_.size());
        tris_.push_back(t);
        link(id);
    }

    void legalize_all() {
        std::vector<std::pair<int, int>> stack;
        for (const auto& t : tris_)
            for (int e = 0; e < 3; ++e) {
                const int a = t[e], b = t[(e + 1) % 3];
                if (a < b) stack.emplace_back(a, b);
            }
        while (!stack.empty()) {
            auto [a, b] = stack.back();
            stack.pop_back();
            auto it1 = directed_.find(edge_key(a, b));
            auto it2 = directed_.find(edge_key(b, a));
            if (it1 == directed_.end() || it2 == directed_.end()) continue;
            const int t1 = it1->second, t2 = it2->second;
            const int c = opposite(t1, a, b);
            const int d = opposite(t2, b, a);
            if (!should_flip(a, b, c, d)) continue;
            unlink(t1);
            unlink(t2);
            tris_[t1] = {a, d, c};
            tris_[t2] = {d, b, c};
            link(t1);
            link(t2);
            stack.emplace_back(a, d);
            stack.emplace_back(d, b);
            stack.emplace_back(b, c);
            stack.emplace_back(c, a);
        }
    }

    const std::vector<Tri>& triangles() const { return tris_; }

private:
    void link(int id) {
        const Tri& t = tris_[id];
        for (int e = 0; e < 3; ++e) directed_[edge_key(t[e], t[(e + 1) % 3])] = id;
    }
    void unlink(int id) {
        const Tri& t = tris_[id];
        for (int e = 0; e < 3; ++e) directed_.erase(edge_key(t[e], t[(e + 1) % 3]));
    }
    int opposite(int id, int a, int b) const {
        for (int v : tris_[id])
            if (v != a && v != b) return v;
        return -1;
    }

    // Edge ab is shared by ccw triangles (a, b, c) and (b, a, d).
    bool should_flip(int a, int b, int c, int d) const {
        const int s = incircle(pts_[a], pts_[b], pts_[c], pts_[d]);
        if (s > 0) return true;
        if (s < 0) return false;
        auto diag = [&](int u, int v) {
            return std::minmax(rank_[u], rank_[v]);
        };
        return diag(c, d) < diag(a, b);
    }

    const std::vector<Point2>& pts_;
    const std::vector<int>& rank_;
    std::vector<Tri> tris_;
    std::unordered_map<std::uint64_t, int> directed_;
};

bool lex_less(const Point2& p, const Point2& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); }

}  // namespace

std::pair<SimplicialComplex, GeometricRealization> delaunay2d(const PointCloud& cloud) {
    const auto& pts = cloud.points;
    const int n = static_cast<int>(pts.size());
    for (const auto& p : pts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("point cloud has non-finite coordinates");
    if (n < 3) throw Collinear("a triangulation needs at least 3 non-collinear points");

    std::vector<int> sorted(n);
    std::iota(sorted.begin(), sorted.end(), 0);
    std::sort(sorted.begin(), sorted.end(), [&](int i, int j) {
        if (lex_less(pts[i], pts[j])) return true;
        if (lex_less(pts[j], pts[i])) return false;
        return i < j;
    });
    std::vector<int> rank(n);
    for (int r = 0; r < n; ++r) rank[sorted[r]] = r;
    for (int r = 0; r + 1 < n; ++r)
        if (pts[sorted[r]] == pts[sorted[r + 1]])
            throw DuplicatePoints("points " + std::to_string(sorted[r]) + " and " + std::to_string(sorted[r + 1]) +
                                  " coincide");

    // First point off the line through the two smallest points.
    int k = 2;
    int turn = 0;
    for (; k < n; ++k) {
        turn = orient2d(pts[sorted[0]], pts[sorted[1]], pts[sorted[k]]);
        if (turn != 0) break;
    }
    if (k == n) throw Collinear("all points are collinear");

    Triangulator tri(pts, rank);
    std::vector<int> hull;  // counter-clockwise
    const int apex = sorted[k];
    for (int i = 0; i + 1 < k; ++i) {
        const int u = sorted[i], v = sorted[i + 1];
        tri.add(turn > 0 ? Tri{u, v, apex} : Tri{v, u, apex});
    }
    if (turn > 0) {
        for (int i = 0; i < k; ++i) hull.push_back(sorted[i]);
    } else {
        for (int i = k - 1; i >= 0; --i) hull.push_back(sorted[i]);
    }
    hull.push_back(apex);

    // Sweep in lexicographic order: every new point lies strictly outside
    // the current hull, and the hull edges it sees form one contiguous run.
    for (int r = k + 1; r < n; ++r) {
        const int p = sorted[r];
        const std::size_t h = hull.size();
        std::vector<char> visible(h);
        for (std::size_t i = 0; i < h; ++i)
            visible[i] = orient2d(pts[hull[i]], pts[hull[(i + 1) % h]], pts[p]) < 0;
        std::size_t start = h;
        for (std::size_t i = 0; i < h; ++i)
            if (visible[i] && !visible[(i + h - 1) % h]) {
                start = i;
                break;
            }
        if (start == h) throw Error("internal: no visible hull edge during sweep");
        std::size_t end = start;
        while (visible[(end + 1) % h]) end = (end + 1) % h;
        for (std::size_t i = start;; i = (i + 1) % h) {
            tri.add(Tri{hull[(i + 1) % h], hull[i], p});
            if (i == end) break;
        }
        std::vector<int> next;
        next.reserve(h + 1);
        next.push_back(hull[start]);
        next.push_back(p);
        for (std::size_t i = (end + 1) % h; i != start; i = (i + 1) % h) next.push_back(hull[i]);
        hull.swap(next);
    }

    tri.legalize_all();

    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> faces;
    for (auto t : tri.triangles()) {
        std::sort(t.begin(), t.end());
        faces.push_back(t);
        edges.push_back({t[0], t[1]});
        edges.push_back({t[1], t[2]});
        edges.push_back({t[0], t[2]});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::sort(faces.begin(), faces.end());

    std::vector<std::vector<VertexId>> list;
    list.reserve(n + edges.size() + faces.size());
    for (int v = 0; v < n; ++v) list.push_back({v});
    for (const auto& e : edges) list.push_back({e[0], e[1]});
    for (const auto& f : faces) list.push_back({f[0], f[1], f[2]});
    return {build_complex(list), GeometricRealization{pts}};
}

WeightVector alpha_weights(const SimplicialComplex& complex, const GeometricRealization& realization) {
    WeightVector w(Vec(complex.size(), 0.0));
    const auto& dims = complex.by_dimension();
    if (dims.size() > 3) throw InvalidArgument("alpha weights are defined for planar complexes only");

    std::vector<double> min_coface(complex.size(), std::numeric_limits<double>::infinity());
    if (dims.size() > 2) {
        for (std::size_t t : dims[2]) {
            const auto& v = complex.simplex(t).vertices;
            w[t] = circumradius_squared(realization(v[0]), realization(v[1]), realization(v[2]));
            for (std::size_t e : complex.faces(t)) min_coface[e] = std::min(min_coface[e], w[t]);
        }
    }
    if (dims.size() > 1) {
        const auto ids = complex.vertex_ids();
        for (std::size_t e : dims[1]) {
            const auto& v = complex.simplex(e).vertices;
            const Point2& a = realization(v[0]);
            const Point2& b = realization(v[1]);
            bool gabriel = true;
            for (VertexId id : ids) {
                if (id == v[0] || id == v[1]) continue;
                const Point2& p = realization(id);
                // p is in the closed diametral disc iff angle apb >= 90 degrees.
                if ((a.x - p.x) * (b.x - p.x) + (a.y - p.y) * (b.y - p.y) <= 0.0) {
                    gabriel = false;
                    break;
                }
            }
            const double half_sq = 0.25 * ((b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y));
            w[e] = gabriel || !std::isfinite(min_coface[e]) ? half_sq : min_coface[e];
        }
    }
    return w;
}

std::tuple<SimplicialComplex, WeightVector, GeometricRealization> rips_complex(const PointCloud& cloud,
                                                                               int max_dim, double threshold) {
    if (max_dim < 0 || max_dim > 2) throw InvalidArgument("rips_complex supports max_dim in [0, 2]");
    const int n = static_cast<int>(cloud.size());
    const auto& p = cloud.points;
    auto dist = [&](int i, int j) { return std::hypot(p[i].x - p[j].x, p[i].y - p[j].y); };

    std::vector<std::vector<VertexId>> list;
    Vec weights;
    for (int v = 0; v < n; ++v) {
        list.push_back({v});
        weights.push_back(0.0);
    }
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    if (max_dim >= 1) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (dist(i, j) <= threshold) {
                    adj[i][j] = adj[j][i] = 1;
                    list.push_back({i, j});
                    weights.push_back(dist(i, j));
                }
    }
    if (max_dim >= 2) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (!adj[i][j]) continue;
                for (int k = j + 1; k < n; ++k)
                    if (adj[i][k] && adj[j][k]) {
                        list.push_back({i, j, k});
                        weights.push_back(std::max({dist(i, j), dist(i, k), dist(j, k)}));
                    }
            }
    }
    return {build_complex(list), WeightVector(std::move(weights)), GeometricRealization{p}};
}

}  // namespace phm
