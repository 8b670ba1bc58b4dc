#include "phm/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "phm/errors.hpp"
#include "phm/rng.hpp"

namespace phm {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::size_t check_design(const std::vector<std::vector<double>>& X, std::size_t n_targets) {
    if (X.size() != n_targets)
        throw DimensionMismatch(std::to_string(X.size()) + " samples but " + std::to_string(n_targets) + " targets");
    if (X.size() < 2) throw DimensionMismatch("training needs at least 2 samples");
    const std::size_t dim = X.front().size();
    for (const auto& x : X)
        if (x.size() != dim) throw DimensionMismatch("feature vectors differ in length");
    return dim;
}

// Pointwise loss derivative with respect to the decision value.
using LossSlope = double (*)(double decision, double target, double tube);

double hinge_slope(double decision, double target, double) { return target * decision < 1.0 ? -target : 0.0; }

double tube_slope(double decision, double target, double tube) {
    const double r = decision - target;
    if (r > tube) return 1.0;
    if (r < -tube) return -1.0;
    return 0.0;
}

// Averaged stochastic subgradient descent on
//   lambda/2 |f|^2 + mean_i loss(f . x_i + b, y_i)
// with step eta_t = eta0 / (1 + lambda eta0 t).
//
// The iteration runs on features scaled by c = 1 / max |x_i| with lambda c^2
// in place of lambda. That is the same problem in the variable f / c, so the
// minimizer is unchanged, but the bias and the feature weights now move at
// comparable rates; landscape values are often 1e-3 or smaller and SGD on the
// raw scale barely moves f. The returned model is in the original units and
// is the epoch-end average with the lowest objective.
template <class Objective>
LinearModel sgd(const std::vector<std::vector<double>>& X, const std::vector<double>& targets, LossSlope slope,
                double initial_bias, const TrainOptions& opt, Objective objective) {
    if (!(opt.lambda > 0.0)) throw InvalidArgument("lambda must be positive");
    if (opt.epochs < 1) throw InvalidArgument("epochs must be at least 1");
    const std::size_t n = X.size();
    const std::size_t dim = X.front().size();

    double max_sq = 0.0;
    for (const auto& x : X) max_sq = std::max(max_sq, dot(x, x));
    const double c = max_sq > 0.0 ? 1.0 / std::sqrt(max_sq) : 1.0;
    const double lambda = opt.lambda * c * c;
    // One step moves a decision value by at most about one unit.
    const double eta0 = 0.5;

    std::vector<double> f(dim, 0.0), f_avg(dim, 0.0);
    double b = initial_bias, b_avg = initial_bias;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng = substream(opt.seed, 0);

    LinearModel model;
    model.options = opt;
    model.f.assign(dim, 0.0);
    std::size_t t = 0;
    for (int epoch = 0; epoch < opt.epochs; ++epoch) {
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i : perm) {
            const double eta = eta0 / (1.0 + lambda * eta0 * static_cast<double>(t));
            const double g = slope(c * dot(f, X[i]) + b, targets[i], opt.epsilon_tube);
            const double shrink = 1.0 - eta * lambda;
            for (std::size_t k = 0; k < dim; ++k) f[k] = shrink * f[k] - eta * g * c * X[i][k];
            b -= eta * g;
            ++t;
            const double mix = 1.0 / static_cast<double>(t + 1);
            for (std::size_t k = 0; k < dim; ++k) f_avg[k] += mix * (f[k] - f_avg[k]);
            b_avg += mix * (b - b_avg);
        }
        // Subgradient steps do not descend, so keep the best epoch-end average.
        LinearModel candidate = model;
        for (std::size_t k = 0; k < dim; ++k) candidate.f[k] = c * f_avg[k];
        candidate.b = b_avg;
        const double value = objective(candidate);
        if (epoch == 0 || value < model.objective_history.back()) {
            model.f = std::move(candidate.f);
            model.b = candidate.b;
            model.objective_history.push_back(value);
        } else {
            model.objective_history.push_back(model.objective_history.back());
        }
    }
    return model;
}

}  // namespace

double LinearModel::decision(const std::vector<double>& v) const {
    if (v.size() != f.size()) throw DimensionMismatch("feature vector length does not match the model");
    return dot(f, v) + b;
}

double svm_objective(const LinearModel& m, const std::vector<std::vector<double>>& X, const std::vector<int>& y) {
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) loss += std::max(0.0, 1.0 - y[i] * m.decision(X[i]));
    return 0.5 * m.options.lambda * dot(m.f, m.f) + loss / static_cast<double>(X.size());
}

double svr_objective(const LinearModel& m, const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        loss += std::max(0.0, std::abs(m.decision(X[i]) - y[i]) - m.options.epsilon_tube);
    return 0.5 * m.options.lambda * dot(m.f, m.f) + loss / static_cast<double>(X.size());
}

LinearModel train_svm(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                      const TrainOptions& options) {
    check_design(X, y.size());
    bool has_pos = false, has_neg = false;
    for (int label : y) {
        if (label == 1)
            has_pos = true;
        else if (label == -1)
            has_neg = true;
        else
            throw DegenerateLabels("labels must be -1 or +1");
    }
    if (!has_pos || !has_neg) throw DegenerateLabels("both labels must be present");
    const std::vector<double> targets(y.begin(), y.end());
    LinearModel m = sgd(X, targets, hinge_slope, 0.0, options,
                        [&](const LinearModel& cur) { return svm_objective(cur, X, y); });
    m.kind = "svm";
    return m;
}

LinearModel train_svr(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                      const TrainOptions& options) {
    check_design(X, y.size());
    if (options.epsilon_tube < 0.0) throw InvalidArgument("epsilon tube must be non-negative");
    // Start the intercept at the target mean so that the slope terms only
    // have to explain the variation.
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    LinearModel m = sgd(X, y, tube_slope, mean, options,
                        [&](const LinearModel& cur) { return svr_objective(cur, X, y); });
    m.kind = "svr";
    return m;
}

std::vector<LinearModel> train_one_vs_rest(const std::vector<std::vector<double>>& X, const std::vector<int>& classes,
                                           const TrainOptions& options) {
    const std::set<int> distinct(classes.begin(), classes.end());
    if (distinct.size() < 2) throw DegenerateLabels("one-vs-rest needs at least two classes");
    std::vector<LinearModel> models;
    for (int c : distinct) {
        std::vector<int> y;
        y.reserve(classes.size());
        for (int k : classes) y.push_back(k == c ? 1 : -1);
        models.push_back(train_svm(X, y, options));
    }
    return models;
}

std::vector<double> model_to_F(const LinearModel& model, const std::vector<double>& v,
                               const std::vector<int>& attribution, std::size_t n_points, bool absolute) {
    if (v.size() != model.f.size() || attribution.size() != v.size())
        throw DimensionMismatch("model, feature vector and attribution lengths differ");
    std::vector<double> F(n_points, 0.0);
    std::vector<std::size_t> cells(n_points, 0);
    std::size_t attributed = 0;
    for (std::size_t c = 0; c < v.size(); ++c) {
        const int owner = attribution[c];
        if (owner < 0) continue;
        if (static_cast<std::size_t>(owner) >= n_points)
            throw DimensionMismatch("attribution refers to point " + std::to_string(owner) + " of " +
                                    std::to_string(n_points));
        F[owner] += v[c] * (absolute ? std::abs(model.f[c]) : model.f[c]);
        ++cells[owner];
        ++attributed;
    }
    if (!absolute && attributed > 0)
        for (std::size_t j = 0; j < n_points; ++j)
            F[j] += model.b * static_cast<double>(cells[j]) / static_cast<double>(attributed);
    return F;
}

}  // namespace phm
