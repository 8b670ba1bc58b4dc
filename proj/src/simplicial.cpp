#include "phm/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "phm/errors.hpp"

namespace phm {

namespace {

std::string describe(const std::vector<VertexId>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s + "]";
}

void check_length(const SimplicialComplex& complex, std::size_t n) {
    if (n != complex.size())
        throw LengthMismatch("weight vector has length " + std::to_string(n) + ", complex has " +
                             std::to_string(complex.size()) + " simplices");
}

}  // namespace

std::optional<std::size_t> SimplicialComplex::find(const std::vector<VertexId>& sorted_vertices) const {
    auto it = lookup_.find(sorted_vertices);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::vector<VertexId> SimplicialComplex::vertex_ids() const {
    std::vector<VertexId> ids;
    if (by_dim_.empty()) return ids;
    for (std::size_t i : by_dim_[0]) ids.push_back(simplices_[i].vertices[0]);
    std::sort(ids.begin(), ids.end());
    return ids;
}

SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& simplex_list) {
    SimplicialComplex c;
    c.simplices_.reserve(simplex_list.size());
    for (std::size_t i = 0; i < simplex_list.size(); ++i) {
        std::vector<VertexId> v = simplex_list[i];
        if (v.empty()) throw InvalidSimplex("simplex " + std::to_string(i) + " has no vertices");
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw InvalidSimplex("simplex " + describe(v) + " repeats a vertex");
        if (!c.lookup_.emplace(v, i).second) throw DuplicateSimplex("simplex " + describe(v) + " listed twice");
        c.simplices_.push_back(Simplex{std::move(v), i});
    }

    c.face_table_.resize(c.simplices_.size());
    for (const Simplex& s : c.simplices_) {
        const int d = s.dim();
        c.max_dim_ = std::max(c.max_dim_, d);
        if (static_cast<int>(c.by_dim_.size()) <= d) c.by_dim_.resize(d + 1);
        c.by_dim_[d].push_back(s.order_index);
        if (d == 0) continue;
        auto& faces = c.face_table_[s.order_index];
        faces.reserve(s.vertices.size());
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
            std::vector<VertexId> face;
            face.reserve(s.vertices.size() - 1);
            for (std::size_t k = 0; k < s.vertices.size(); ++k)
                if (k != drop) face.push_back(s.vertices[k]);
            auto idx = c.find(face);
            if (!idx) throw MissingFace("face " + describe(face) + " of " + describe(s.vertices) + " is absent");
            faces.push_back(*idx);
        }
        std::sort(faces.begin(), faces.end());
    }
    return c;
}

bool validate_monotone(const SimplicialComplex& complex, std::span<const double> w) {
    check_length(complex, w.size());
    for (std::size_t i = 0; i < complex.size(); ++i)
        for (std::size_t f : complex.faces(i))
            if (!(w[f] <= w[i])) return false;
    return true;
}

WeightVector monotone_repair(const SimplicialComplex& complex, std::span<const double> x) {
    check_length(complex, x.size());
    WeightVector w(Vec(x.begin(), x.end()));
    for (const auto& group : complex.by_dimension())
        for (std::size_t i : group)
            for (std::size_t f : complex.faces(i)) w[i] = std::max(w[i], w[f]);
    return w;
}

FiltrationOrder filtration_order(const SimplicialComplex& complex, const WeightVector& w) {
    if (!validate_monotone(complex, w)) throw NotMonotone("weights are not monotone on the complex");
    FiltrationOrder order;
    order.permutation.resize(complex.size());
    std::iota(order.permutation.begin(), order.permutation.end(), std::size_t{0});
    // Equal weights go by dimension first and only then by the total order,
    // which need not list faces before cofaces.
    std::stable_sort(order.permutation.begin(), order.permutation.end(), [&](std::size_t a, std::size_t b) {
        if (w[a] != w[b]) return w[a] < w[b];
        return complex.simplex(a).dim() < complex.simplex(b).dim();
    });
    order.position.resize(complex.size());
    for (std::size_t p = 0; p < order.permutation.size(); ++p) order.position[order.permutation[p]] = p;
    return order;
}

}  // namespace phm
