#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phm {

struct TrainOptions {
    double lambda = 1e-3;
    int epochs = 200;
    std::uint64_t seed = 0;
    double epsilon_tube = 0.01;  // regression only
};

/// Linear decision function f . v + b.
struct LinearModel {
    std::vector<double> f;
    double b = 0.0;

    std::string kind = "svm";  // "svm" or "svr"
    TrainOptions options;
    /// Best regularized objective over the epoch-end averaged iterates so far,
    /// one entry per epoch; the model holds the iterate that attained the last.
    std::vector<double> objective_history;

    double decision(const std::vector<double>& v) const;
};

/// lambda/2 |f|^2 + mean hinge loss.
double svm_objective(const LinearModel& m, const std::vector<std::vector<double>>& X, const std::vector<int>& y);

/// lambda/2 |f|^2 + mean epsilon-insensitive loss.
double svr_objective(const LinearModel& m, const std::vector<std::vector<double>>& X, const std::vector<double>& y);

/// Primal hinge-loss SVM by averaged stochastic subgradient descent with a
/// seeded per-epoch shuffle. Labels must be -1 or +1 and both must occur.
/// Throws DegenerateLabels or DimensionMismatch.
LinearModel train_svm(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                      const TrainOptions& options = {});

/// Linear epsilon-insensitive regression, same solver as train_svm.
LinearModel train_svr(const std::vector<std::vector<double>>& X, const std::vector<double>& y,
                      const TrainOptions& options = {});

/// One model per class, class c labelled +1 against the rest.
std::vector<LinearModel> train_one_vs_rest(const std::vector<std::vector<double>>& X, const std::vector<int>& classes,
                                           const TrainOptions& options = {});

/// Per-point share of the decision value. Cell c contributes v[c] * f[c] to
/// the point it is attributed to, and every attributed cell carries an equal
/// share of the bias. With `absolute`, point j gets sum of v[c] * |f[c]| over
/// its cells and no bias.
///
/// `attribution[c]` is a point index in [0, n_points) or negative for none.
/// Throws DimensionMismatch.
std::vector<double> model_to_F(const LinearModel& model, const std::vector<double>& v,
                               const std::vector<int>& attribution, std::size_t n_points, bool absolute = false);

}  // namespace phm
