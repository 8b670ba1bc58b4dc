#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace phm {

using VertexId = int;
using Vec = std::vector<double>;

/// A simplex of a totally ordered complex. `order_index` is its position in
/// the complex's total order.
struct Simplex {
    std::vector<VertexId> vertices;  // strictly increasing
    std::size_t order_index = 0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Finite simplicial complex with a fixed total order on its simplices.
///
/// The total order is the order in which simplices were listed; it is not
/// required to put faces before cofaces. Immutable after construction.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }

    const Simplex& simplex(std::size_t i) const { return simplices_[i]; }
    const std::vector<Simplex>& simplices() const { return simplices_; }

    /// Order indices of the codimension-1 faces of simplex `i`.
    const std::vector<std::size_t>& faces(std::size_t i) const { return face_table_[i]; }

    std::optional<std::size_t> find(const std::vector<VertexId>& sorted_vertices) const;

    int max_dim() const { return max_dim_; }

    /// Order indices grouped by dimension, each group in total order.
    const std::vector<std::vector<std::size_t>>& by_dimension() const { return by_dim_; }

    /// Distinct vertex ids, ascending.
    std::vector<VertexId> vertex_ids() const;

private:
    friend SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>&);

    std::vector<Simplex> simplices_;
    std::vector<std::vector<std::size_t>> face_table_;
    std::vector<std::vector<std::size_t>> by_dim_;
    std::map<std::vector<VertexId>, std::size_t> lookup_;
    int max_dim_ = -1;
};

/// A real weight per simplex, indexed by order index.
struct WeightVector {
    Vec values;

    WeightVector() = default;
    explicit WeightVector(Vec v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

/// Simplices sorted by (weight, dimension, order index). `position[order_index]`
/// is the inverse permutation.
struct FiltrationOrder {
    std::vector<std::size_t> permutation;
    std::vector<std::size_t> position;

    std::size_t size() const { return permutation.size(); }
};

/// Builds a complex whose total order is the order of `simplex_list`. Vertex
/// lists may be given in any order; they are sorted.
///
/// Throws MissingFace when some face is not listed, DuplicateSimplex when a
/// vertex set appears twice and InvalidSimplex for empty lists or repeated
/// vertices.
SimplicialComplex build_complex(const std::vector<std::vector<VertexId>>& simplex_list);

/// True iff every face weighs at most as much as each of its cofaces.
bool validate_monotone(const SimplicialComplex& complex, std::span<const double> w);
inline bool validate_monotone(const SimplicialComplex& complex, const WeightVector& w) {
    return validate_monotone(complex, std::span<const double>(w.values));
}

/// Least monotone majorant of x: w(s) = max(x(s), max over faces w(t)),
/// evaluated in increasing dimension. Fixes monotone inputs.
WeightVector monotone_repair(const SimplicialComplex& complex, std::span<const double> x);

/// Sort by (weight, dimension, order index), so faces precede cofaces even
/// when the total order lists a coface first. Throws NotMonotone.
FiltrationOrder filtration_order(const SimplicialComplex& complex, const WeightVector& w);

}  // namespace phm
