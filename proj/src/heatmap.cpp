#include "phm/heatmap.hpp"

#include <cmath>

#include "phm/errors.hpp"

namespace phm {

ChainSelector parse_selector(const std::string& name) {
    if (name == "birth_simplex" || name == "birth") return ChainSelector::BirthSimplex;
    if (name == "death_simplex" || name == "death") return ChainSelector::DeathSimplex;
    if (name == "rep_cycle" || name == "cycle") return ChainSelector::RepCycle;
    if (name == "bounding_chain" || name == "bounding") return ChainSelector::BoundingChain;
    throw InvalidArgument("unknown chain selector '" + name + "'");
}

std::string to_string(ChainSelector sel) {
    switch (sel) {
        case ChainSelector::BirthSimplex: return "birth_simplex";
        case ChainSelector::DeathSimplex: return "death_simplex";
        case ChainSelector::RepCycle: return "rep_cycle";
        case ChainSelector::BoundingChain: return "bounding_chain";
    }
    return "?";
}

std::vector<double> evaluate_F(const WeightFunctionF& F, const AnnotatedDiagram& diagram) {
    const std::size_t n = diagram.points.size();
    return std::visit(
        [&](const auto& f) -> std::vector<double> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantF>) {
                return std::vector<double>(n, f.c);
            } else if constexpr (std::is_same_v<T, PersistenceF>) {
                std::vector<double> out(n);
                for (std::size_t i = 0; i < n; ++i) out[i] = diagram.points[i].persistence();
                return out;
            } else if constexpr (std::is_same_v<T, PointWeightsF>) {
                if (f.values.size() != n)
                    throw DimensionMismatch("per-point F has " + std::to_string(f.values.size()) +
                                            " values for " + std::to_string(n) + " points");
                return f.values;
            } else {
                const FeatureRow row = featurize(diagram, f.features);
                const std::vector<double> local =
                    model_to_F(f.model, row.values, row.attribution, row.owners.size(), f.absolute);
                std::vector<double> out(n, 0.0);
                for (std::size_t j = 0; j < local.size(); ++j) out[row.owners[j]] += local[j];
                return out;
            }
        },
        F);
}

const Z2Chain* select_chain(const AnnotatedPoint& p, ChainSelector sel, Z2Chain& scratch) {
    switch (sel) {
        case ChainSelector::BirthSimplex:
            scratch.simplices = {p.birth_simplex};
            scratch.dim = p.degree;
            return &scratch;
        case ChainSelector::DeathSimplex:
            if (!p.death_simplex) return nullptr;
            scratch.simplices = {*p.death_simplex};
            scratch.dim = p.degree + 1;
            return &scratch;
        case ChainSelector::RepCycle: return &p.rep_cycle;
        case ChainSelector::BoundingChain: return p.bounding_chain ? &*p.bounding_chain : nullptr;
    }
    return nullptr;
}

HeatmapWeights heatmap(const AnnotatedDiagram& diagram, const SimplicialComplex& complex, int degree,
                       const WeightFunctionF& F, ChainSelector sel, const HeatmapOptions& options) {
    HeatmapWeights hw;
    hw.w.assign(complex.size(), 0.0);
    if (options.record_provenance) hw.provenance.resize(complex.size());

    const std::vector<double> values = evaluate_F(F, diagram);
    Z2Chain scratch;
    for (std::size_t i = 0; i < diagram.points.size(); ++i) {
        const AnnotatedPoint& p = diagram.points[i];
        if (p.degree != degree) continue;
        if (p.essential() && !options.include_essential) continue;
        if (!p.essential() && options.drop_zero_persistence && p.death == p.birth) continue;
        if (!std::isfinite(values[i])) continue;
        const Z2Chain* chain = select_chain(p, sel, scratch);
        if (!chain) continue;
        if (chain->is_zero()) throw EmptyChain("point " + std::to_string(i) + " has an empty " + to_string(sel));
        const double share = values[i] / static_cast<double>(chain->simplices.size());
        for (std::size_t s : chain->simplices) {
            if (s >= hw.w.size()) throw EmptyChain("chain refers to simplex " + std::to_string(s) + " outside the complex");
            hw.w[s] += share;
            if (options.record_provenance) hw.provenance[s].emplace_back(i, share);
        }
        hw.total_F += values[i];
    }
    return hw;
}

HeatmapWeights heatmap_at(const SimplicialComplex& complex, std::span<const double> x, const HeatmapConfig& config) {
    const WeightVector w = monotone_repair(complex, x);
    const AnnotatedDiagram dgm = compute_diagram(complex, w);
    return heatmap(dgm, complex, config.degree, config.F, config.selector, config.options);
}

}  // namespace phm
