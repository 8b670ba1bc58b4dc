#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "phm/persistence.hpp"

namespace phm {

inline constexpr int kNoAttribution = -1;

struct OrderedPoint {
    double birth = 0.0;
    double death = 0.0;
    std::size_t source = 0;  // index into AnnotatedDiagram::points
};

/// Finite points of one degree, by persistence descending; ties go to the
/// smaller death-simplex order index.
struct OrderedDiagram {
    std::vector<OrderedPoint> points;

    std::size_t size() const { return points.size(); }
};

/// Sampling of the landscape: n_t equally spaced values of t in [t_min, t_max]
/// and the first n_levels levels.
struct LandscapeGrid {
    double t_min = 0.0;
    double t_max = 1.0;
    int n_t = 100;
    int n_levels = 10;

    void validate() const;
    double t(int j) const;
    std::size_t cells() const { return static_cast<std::size_t>(n_t) * static_cast<std::size_t>(n_levels); }
};

/// Landscape samples with, per cell, the ordered-diagram index that attains
/// the value (kNoAttribution where the value is 0). Storage is level-major:
/// cell (k, j) sits at k * n_t + j.
struct StructuredFeatureVector {
    int n_levels = 0;
    int n_t = 0;
    std::vector<double> values;
    std::vector<int> attribution;

    double value(int level, int j) const { return values[static_cast<std::size_t>(level) * n_t + j]; }
    int owner(int level, int j) const { return attribution[static_cast<std::size_t>(level) * n_t + j]; }

    /// Phi_i: the values attributed to feature i, zero elsewhere.
    std::vector<double> component(int i) const;
};

/// Degree-0 deaths sorted descending, zero padded or truncated to a fixed
/// length. `attribution` holds AnnotatedDiagram point indices.
struct DeathVector {
    std::vector<double> entries;
    std::vector<int> attribution;
};

OrderedDiagram order_diagram(const AnnotatedDiagram& diagram, int degree);

std::vector<double> lifetime_map(const OrderedDiagram& od);

/// Tent value of (birth, death) at t.
double tent(double birth, double death, double t);

StructuredFeatureVector landscape(const OrderedDiagram& od, const LandscapeGrid& grid);

/// Essential degree-0 classes enter with the largest simplex weight of the
/// filtration. Every simplex is a birth or a death simplex of some point, so
/// that weight is read off the diagram itself.
DeathVector death_vector(const AnnotatedDiagram& diagram, std::size_t length);

/// Largest birth or finite death over all points.
double max_filtration_value(const AnnotatedDiagram& diagram);

/// Largest death among finite points of `degree` with positive persistence,
/// 0 when there are none. Used as the default landscape range: zero-length
/// points can sit far out (alpha values of thin hull triangles) and carry no
/// landscape mass.
double max_positive_death(const AnnotatedDiagram& diagram, int degree);

/// Landscape of one homology degree on a fixed grid.
struct LandscapeFeature {
    int degree = 1;
    LandscapeGrid grid;
};

/// Death vector of fixed length.
struct DeathVectorFeature {
    std::size_t length = 0;
};

using FeatureSpec = std::variant<LandscapeFeature, DeathVectorFeature>;

/// A flattened feature vector. `attribution` uses the feature's own point
/// indexing (ordered-diagram index for landscapes, diagram index for death
/// vectors); `owners` maps that index to an AnnotatedDiagram point index.
struct FeatureRow {
    std::vector<double> values;
    std::vector<int> attribution;
    std::vector<std::size_t> owners;
};

FeatureRow featurize(const AnnotatedDiagram& diagram, const FeatureSpec& spec);

}  // namespace phm
