#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phm/features.hpp"
#include "phm/learn.hpp"
#include "phm/persistence.hpp"

namespace phm {

enum class ChainSelector { BirthSimplex, DeathSimplex, RepCycle, BoundingChain };

ChainSelector parse_selector(const std::string& name);
std::string to_string(ChainSelector sel);

/// F(b, d) = c.
struct ConstantF {
    double c = 1.0;
};

/// F(b, d) = d - b.
struct PersistenceF {};

/// Explicit F value per AnnotatedDiagram point index.
struct PointWeightsF {
    std::vector<double> values;
};

/// F read off a linear model: features of the diagram are computed with
/// `features`, then split per point with model_to_F.
struct LearnedF {
    LinearModel model;
    FeatureSpec features;
    bool absolute = false;
};

using WeightFunctionF = std::variant<ConstantF, PersistenceF, PointWeightsF, LearnedF>;

struct HeatmapOptions {
    bool include_essential = false;
    bool drop_zero_persistence = false;
    bool record_provenance = false;
};

/// Persistence heatmap as one real weight per simplex.
struct HeatmapWeights {
    std::vector<double> w;
    /// Per simplex, (diagram point index, contribution); filled only when
    /// requested.
    std::vector<std::vector<std::pair<std::size_t, double>>> provenance;
    /// Sum of F over the points that were distributed.
    double total_F = 0.0;
};

/// F evaluated at every diagram point (indexed like diagram.points).
std::vector<double> evaluate_F(const WeightFunctionF& F, const AnnotatedDiagram& diagram);

/// The chain a selector picks for a point, or nullptr when the point has none
/// (death-side chains of essential classes).
const Z2Chain* select_chain(const AnnotatedPoint& p, ChainSelector sel, Z2Chain& scratch);

/// For each included point of `degree`, F_i is split equally over the members
/// of its selected chain. Essential classes are skipped unless requested and
/// always skipped for death-side selectors. Throws EmptyChain.
HeatmapWeights heatmap(const AnnotatedDiagram& diagram, const SimplicialComplex& complex, int degree,
                       const WeightFunctionF& F, ChainSelector sel, const HeatmapOptions& options = {});

/// The heatmap as a point of R^k.
inline const std::vector<double>& heatmap_as_point(const HeatmapWeights& hw) { return hw.w; }

/// Everything needed to evaluate eta on a fixed complex.
struct HeatmapConfig {
    int degree = 1;
    WeightFunctionF F = PersistenceF{};
    ChainSelector selector = ChainSelector::RepCycle;
    HeatmapOptions options;
};

/// eta(x): repairs x onto the monotone cone, computes the annotated diagram
/// and the heatmap.
HeatmapWeights heatmap_at(const SimplicialComplex& complex, std::span<const double> x, const HeatmapConfig& config);

}  // namespace phm
