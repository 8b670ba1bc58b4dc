#include "phm/persistence.hpp"

#include <algorithm>
#include <iterator>

#include "phm/errors.hpp"

namespace phm {

SparseZ2Matrix SparseZ2Matrix::identity(std::size_t n) {
    SparseZ2Matrix m(n);
    for (std::size_t j = 0; j < n; ++j) m.columns[j] = {j};
    return m;
}

void add_column(std::vector<std::size_t>& dst, const std::vector<std::size_t>& src) {
    std::vector<std::size_t> out;
    out.reserve(dst.size() + src.size());
    std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
    dst.swap(out);
}

std::vector<std::size_t> AnnotatedDiagram::indices_of_degree(int degree) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].degree == degree) out.push_back(i);
    return out;
}

int AnnotatedDiagram::max_degree() const {
    int d = -1;
    for (const auto& p : points) d = std::max(d, p.degree);
    return d;
}

SparseZ2Matrix boundary_matrix(const SimplicialComplex& complex, const FiltrationOrder& order) {
    SparseZ2Matrix D(complex.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        auto& col = D.columns[pos];
        for (std::size_t f : complex.faces(order.permutation[pos])) col.push_back(order.position[f]);
        std::sort(col.begin(), col.end());
    }
    return D;
}

ReductionResult reduce(const SparseZ2Matrix& D) {
    const std::size_t n = D.n();
    ReductionResult res{D, SparseZ2Matrix::identity(n), std::vector<std::optional<std::size_t>>(n)};
    auto& R = res.R.columns;
    auto& V = res.V.columns;
    for (std::size_t j = 0; j < n; ++j) {
        while (!R[j].empty()) {
            const std::size_t low = R[j].back();
            const auto owner = res.pivot_column[low];
            if (!owner) {
                res.pivot_column[low] = j;
                break;
            }
            add_column(R[j], R[*owner]);
            add_column(V[j], V[*owner]);
        }
    }
    return res;
}

namespace {

Z2Chain to_chain(const std::vector<std::size_t>& positions, const FiltrationOrder& order,
                 const SimplicialComplex& complex) {
    Z2Chain c;
    c.simplices.reserve(positions.size());
    for (std::size_t p : positions) c.simplices.push_back(order.permutation[p]);
    std::sort(c.simplices.begin(), c.simplices.end());
    c.dim = c.simplices.empty() ? 0 : complex.simplex(c.simplices.front()).dim();
    return c;
}

}  // namespace

AnnotatedDiagram annotate(const ReductionResult& result, const SimplicialComplex& complex,
                          const WeightVector& w, const FiltrationOrder& order) {
    AnnotatedDiagram dgm;
    const std::size_t n = result.R.n();
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t sigma_j = order.permutation[j];
        if (auto low = result.R.pivot(j)) {
            const std::size_t sigma_i = order.permutation[*low];
            AnnotatedPoint p;
            p.birth = w[sigma_i];
            p.death = w[sigma_j];
            p.degree = complex.simplex(sigma_i).dim();
            p.birth_simplex = sigma_i;
            p.death_simplex = sigma_j;
            p.rep_cycle = to_chain(result.R.columns[j], order, complex);
            p.bounding_chain = to_chain(result.V.columns[j], order, complex);
            dgm.points.push_back(std::move(p));
        } else if (!result.pivot_column[j]) {
            // Zero column that never becomes a pivot: V column j is a cycle
            // that is never filled in.
            AnnotatedPoint p;
            p.birth = w[sigma_j];
            p.degree = complex.simplex(sigma_j).dim();
            p.birth_simplex = sigma_j;
            p.rep_cycle = to_chain(result.V.columns[j], order, complex);
            dgm.points.push_back(std::move(p));
        }
    }
    std::stable_sort(dgm.points.begin(), dgm.points.end(),
                     [](const AnnotatedPoint& a, const AnnotatedPoint& b) { return a.degree < b.degree; });
    return dgm;
}

Z2Chain boundary_of(const Z2Chain& chain, const SimplicialComplex& complex) {
    if (chain.dim <= 0) throw DimZero("boundary of a 0-chain is undefined here");
    Z2Chain out;
    out.dim = chain.dim - 1;
    std::vector<std::size_t> faces;
    for (std::size_t s : chain.simplices) {
        const auto& f = complex.faces(s);
        faces.insert(faces.end(), f.begin(), f.end());
    }
    std::sort(faces.begin(), faces.end());
    // Keep faces that occur an odd number of times.
    for (std::size_t i = 0; i < faces.size();) {
        std::size_t k = i;
        while (k < faces.size() && faces[k] == faces[i]) ++k;
        if ((k - i) % 2 == 1) out.simplices.push_back(faces[i]);
        i = k;
    }
    return out;
}

Z2Chain operator+(const Z2Chain& a, const Z2Chain& b) {
    Z2Chain out{a.simplices, a.is_zero() ? b.dim : a.dim};
    add_column(out.simplices, b.simplices);
    return out;
}

AnnotatedDiagram compute_diagram(const SimplicialComplex& complex, const WeightVector& w) {
    const FiltrationOrder order = filtration_order(complex, w);
    return annotate(reduce(boundary_matrix(complex, order)), complex, w, order);
}

}  // namespace phm
