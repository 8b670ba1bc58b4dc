#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "phm/simplicial.hpp"

namespace phm {

/// Square sparse matrix over Z2 stored column-wise; each column is a strictly
/// increasing list of row indices. Rows and columns are filtration positions.
struct SparseZ2Matrix {
    std::vector<std::vector<std::size_t>> columns;

    SparseZ2Matrix() = default;
    explicit SparseZ2Matrix(std::size_t n) : columns(n) {}

    std::size_t n() const { return columns.size(); }

    /// Largest nonzero row of column j, if any.
    std::optional<std::size_t> pivot(std::size_t j) const {
        if (columns[j].empty()) return std::nullopt;
        return columns[j].back();
    }

    static SparseZ2Matrix identity(std::size_t n);
};

/// Adds column `src` into `dst` over Z2 (sorted symmetric difference).
void add_column(std::vector<std::size_t>& dst, const std::vector<std::size_t>& src);

/// Output of the standard column reduction. D * V = R over Z2 and no two
/// nonzero columns of R share a pivot.
struct ReductionResult {
    SparseZ2Matrix R;
    SparseZ2Matrix V;
    /// pivot_column[row] is the column whose pivot is `row`.
    std::vector<std::optional<std::size_t>> pivot_column;
};

/// A Z2 chain: strictly increasing order indices of simplices of one dimension.
struct Z2Chain {
    std::vector<std::size_t> simplices;
    int dim = 0;

    bool is_zero() const { return simplices.empty(); }
    bool operator==(const Z2Chain& other) const = default;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct AnnotatedPoint {
    double birth = 0.0;
    double death = kInfinity;
    int degree = 0;
    std::size_t birth_simplex = 0;
    std::optional<std::size_t> death_simplex;  // empty for essential classes
    Z2Chain rep_cycle;
    std::optional<Z2Chain> bounding_chain;  // empty for essential classes

    bool essential() const { return !death_simplex.has_value(); }
    double persistence() const { return death - birth; }
};

/// Points sorted by degree; within a degree, finite points appear in order of
/// their death column and essential classes in order of their birth column.
struct AnnotatedDiagram {
    std::vector<AnnotatedPoint> points;

    /// Indices into `points` of the given degree.
    std::vector<std::size_t> indices_of_degree(int degree) const;
    int max_degree() const;
};

/// Boundary matrix with rows and columns in filtration order.
SparseZ2Matrix boundary_matrix(const SimplicialComplex& complex, const FiltrationOrder& order);

/// Standard left-to-right column reduction with V tracking.
ReductionResult reduce(const SparseZ2Matrix& D);

/// Reads the pairing, chains and birth/death values off a reduction.
AnnotatedDiagram annotate(const ReductionResult& result, const SimplicialComplex& complex,
                          const WeightVector& w, const FiltrationOrder& order);

/// Z2 boundary of a chain. Throws DimZero for 0-chains.
Z2Chain boundary_of(const Z2Chain& chain, const SimplicialComplex& complex);

/// Z2 sum of two chains of the same dimension.
Z2Chain operator+(const Z2Chain& a, const Z2Chain& b);

/// filtration_order -> boundary_matrix -> reduce -> annotate.
AnnotatedDiagram compute_diagram(const SimplicialComplex& complex, const WeightVector& w);

}  // namespace phm
