#include "phm/features.hpp"

#include <algorithm>
#include <numeric>

#include "phm/errors.hpp"

namespace phm {

void LandscapeGrid::validate() const {
    if (!(t_min < t_max)) throw InvalidArgument("landscape grid needs t_min < t_max");
    if (n_t < 2) throw InvalidArgument("landscape grid needs n_t >= 2");
    if (n_levels < 1) throw InvalidArgument("landscape grid needs n_levels >= 1");
}

double LandscapeGrid::t(int j) const {
    if (j == n_t - 1) return t_max;
    return t_min + (t_max - t_min) * static_cast<double>(j) / static_cast<double>(n_t - 1);
}

std::vector<double> StructuredFeatureVector::component(int i) const {
    std::vector<double> phi(values.size(), 0.0);
    for (std::size_t c = 0; c < values.size(); ++c)
        if (attribution[c] == i) phi[c] = values[c];
    return phi;
}

OrderedDiagram order_diagram(const AnnotatedDiagram& diagram, int degree) {
    OrderedDiagram od;
    for (std::size_t i = 0; i < diagram.points.size(); ++i) {
        const auto& p = diagram.points[i];
        if (p.degree != degree || p.essential()) continue;
        od.points.push_back({p.birth, p.death, i});
    }
    std::stable_sort(od.points.begin(), od.points.end(), [&](const OrderedPoint& a, const OrderedPoint& b) {
        const double pa = a.death - a.birth, pb = b.death - b.birth;
        if (pa != pb) return pa > pb;
        return *diagram.points[a.source].death_simplex < *diagram.points[b.source].death_simplex;
    });
    return od;
}

std::vector<double> lifetime_map(const OrderedDiagram& od) {
    std::vector<double> out;
    out.reserve(od.size());
    for (const auto& p : od.points) out.push_back(p.death - p.birth);
    return out;
}

double tent(double birth, double death, double t) {
    const double mid = 0.5 * (birth + death);
    if (birth < t && t <= mid) return t - birth;
    if (mid < t && t < death) return death - t;
    return 0.0;
}

StructuredFeatureVector landscape(const OrderedDiagram& od, const LandscapeGrid& grid) {
    grid.validate();
    StructuredFeatureVector out;
    out.n_levels = grid.n_levels;
    out.n_t = grid.n_t;
    out.values.assign(grid.cells(), 0.0);
    out.attribution.assign(grid.cells(), kNoAttribution);

    const std::size_t n = od.size();
    std::vector<std::pair<double, int>> ranked(n);
    const std::size_t levels = std::min<std::size_t>(n, static_cast<std::size_t>(grid.n_levels));
    for (int j = 0; j < grid.n_t; ++j) {
        const double t = grid.t(j);
        for (std::size_t i = 0; i < n; ++i)
            ranked[i] = {tent(od.points[i].birth, od.points[i].death, t), static_cast<int>(i)};
        // Larger value first; among equal values the smaller index wins.
        std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(levels), ranked.end(),
                          [](const auto& a, const auto& b) {
                              return a.first != b.first ? a.first > b.first : a.second < b.second;
                          });
        for (std::size_t k = 0; k < levels; ++k) {
            if (ranked[k].first <= 0.0) break;
            const std::size_t cell = k * static_cast<std::size_t>(grid.n_t) + static_cast<std::size_t>(j);
            out.values[cell] = ranked[k].first;
            out.attribution[cell] = ranked[k].second;
        }
    }
    return out;
}

double max_filtration_value(const AnnotatedDiagram& diagram) {
    double m = 0.0;
    bool any = false;
    for (const auto& p : diagram.points) {
        const double v = p.essential() ? p.birth : std::max(p.birth, p.death);
        m = any ? std::max(m, v) : v;
        any = true;
    }
    return m;
}

double max_positive_death(const AnnotatedDiagram& diagram, int degree) {
    double m = 0.0;
    for (const auto& p : diagram.points)
        if (p.degree == degree && !p.essential() && p.death > p.birth) m = std::max(m, p.death);
    return m;
}

DeathVector death_vector(const AnnotatedDiagram& diagram, std::size_t length) {
    const double top = max_filtration_value(diagram);
    std::vector<std::pair<double, int>> deaths;
    for (std::size_t i = 0; i < diagram.points.size(); ++i) {
        const auto& p = diagram.points[i];
        if (p.degree != 0) continue;
        deaths.emplace_back(p.essential() ? top : p.death, static_cast<int>(i));
    }
    std::stable_sort(deaths.begin(), deaths.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    DeathVector dv;
    dv.entries.assign(length, 0.0);
    dv.attribution.assign(length, kNoAttribution);
    for (std::size_t k = 0; k < std::min(length, deaths.size()); ++k) {
        dv.entries[k] = deaths[k].first;
        dv.attribution[k] = deaths[k].second;
    }
    return dv;
}

FeatureRow featurize(const AnnotatedDiagram& diagram, const FeatureSpec& spec) {
    FeatureRow row;
    if (const auto* ls = std::get_if<LandscapeFeature>(&spec)) {
        const OrderedDiagram od = order_diagram(diagram, ls->degree);
        StructuredFeatureVector sfv = landscape(od, ls->grid);
        row.values = std::move(sfv.values);
        row.attribution = std::move(sfv.attribution);
        for (const auto& p : od.points) row.owners.push_back(p.source);
    } else {
        DeathVector dv = death_vector(diagram, std::get<DeathVectorFeature>(spec).length);
        row.values = std::move(dv.entries);
        row.attribution = std::move(dv.attribution);
        row.owners.resize(diagram.points.size());
        std::iota(row.owners.begin(), row.owners.end(), std::size_t{0});
    }
    return row;
}

}  // namespace phm
