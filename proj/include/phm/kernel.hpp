#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phm/heatmap.hpp"
#include "phm/raster.hpp"
#include "phm/rng.hpp"

namespace phm {

enum class KernelFamily { Triangular, Epanechnikov, Gaussian };

KernelFamily parse_kernel_family(const std::string& name);
std::string to_string(KernelFamily family);

/// Isotropic kernel density on R^dim with bandwidth alpha. Every output
/// component is smoothed with this same density.
struct KernelSpec {
    KernelFamily family = KernelFamily::Triangular;
    double alpha = 1.0;
    int dim = 1;

    void validate() const;
};

/// Volume of the unit ball in R^k.
double unit_ball_volume(int k);

double kernel_density(const KernelSpec& spec, std::span<const double> x);

/// Density of the kernel as a function of |x| only.
double kernel_profile(const KernelSpec& spec, double r);

/// Distribution function of |eps| for eps drawn from the kernel.
double radius_cdf(const KernelSpec& spec, double r);

/// Lipschitz constant of the density itself (compact families only).
double density_lipschitz_constant(const KernelSpec& spec);

/// Lipschitz bound of eta * K near x for |eta|_inf < M: 2M(k+1)sqrt(k)/alpha,
/// 2M(k+2)sqrt(k)/alpha or 2M sqrt(k)/(alpha sqrt(2 pi)) with k = spec.dim.
double convolution_lipschitz_bound(const KernelSpec& spec, double M);

/// One draw: uniform direction, radius by inverse distribution function
/// (Gaussian: dim independent normals scaled by alpha).
std::vector<double> sample_perturbation(const KernelSpec& spec, Rng& rng);

struct ExpectedHeatmap {
    std::vector<double> mean;
    std::vector<double> std_error;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    KernelSpec kernel;
};

/// Mean and standard error of the rows of `samples` (all of equal length).
/// The sums are taken in row order so the result is independent of how the
/// rows were produced.
void summarize_samples(const std::vector<std::vector<double>>& samples, std::vector<double>& mean,
                       std::vector<double>& std_error);

/// A map R^dim -> R^m whose kernel smoothing is being estimated.
using Field = std::function<std::vector<double>(std::span<const double>)>;

/// Monte-Carlo estimate of (field * K)(x) = E[field(x - eps)]. Sample j uses
/// substream(seed, j), so the output is the same for every worker count.
ExpectedHeatmap monte_carlo_convolution(const Field& field, std::span<const double> x, const KernelSpec& spec,
                                        std::size_t n, std::uint64_t seed, unsigned workers = 1);

/// E[eta(repair(x - eps))] for eps ~ K on R^k.
ExpectedHeatmap expected_heatmap(std::span<const double> x, const SimplicialComplex& complex,
                                 const HeatmapConfig& config, const KernelSpec& spec, std::size_t n,
                                 std::uint64_t seed, unsigned workers = 1);

/// E[Theta(repair(x - eps_x), y - eps_y)] for (eps_x, eps_y) ~ K on R^(k+2n).
ExpectedHeatmap expected_theta(std::span<const double> x, std::span<const double> y,
                               const SimplicialComplex& complex, const HeatmapConfig& config,
                               const RasterGrid& grid, const KernelSpec& spec, std::size_t n, std::uint64_t seed,
                               unsigned workers = 1);

/// eta as a function of the coordinates `free` of x, the others held at
/// `base`.
Field heatmap_field(const SimplicialComplex& complex, std::vector<double> base, std::vector<std::size_t> free,
                    HeatmapConfig config);

/// Theta as a function of the concatenated (x, y).
Field theta_field(const SimplicialComplex& complex, std::size_t k, HeatmapConfig config, RasterGrid grid);

/// Heatmap of the complex {0, 1, 01} as a function of the two vertex weights
/// with the edge weight fixed: degree 0, persistence F, birth-simplex
/// selector. Bounded, with a jump across x0 = x1.
Field two_vertex_field(double edge_weight);

/// Convolution evaluated by a tensor-product midpoint rule (dim <= 3). The
/// field is sampled once on a grid covering every u within `reach` of
/// `center`; each evaluation reuses those samples.
class QuadratureConvolution {
public:
    QuadratureConvolution(const Field& field, std::vector<double> center, double reach, const KernelSpec& spec,
                          int points_per_axis);

    std::vector<double> operator()(std::span<const double> u) const;

    /// Largest |component| among the sampled field values.
    double sup_norm() const { return sup_norm_; }

private:
    KernelSpec spec_;
    int dim_;
    std::size_t m_ = 0;
    std::vector<std::vector<double>> nodes_;
    std::vector<std::vector<double>> values_;
    double sup_norm_ = 0.0;
};

enum class ProbeMode { Quadrature, MonteCarlo };

struct ProbeOptions {
    ProbeMode mode = ProbeMode::Quadrature;
    int quadrature_points = 160;    // per axis
    std::size_t mc_samples = 2000;  // per evaluation, common to u and v
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct LipschitzReport {
    double max_ratio = 0.0;
    double bound = 0.0;
    double M = 0.0;
    std::size_t pairs = 0;
};

/// `count` pairs drawn uniformly from the ball B_radius(center).
std::vector<std::pair<std::vector<double>, std::vector<double>>> random_pairs_in_ball(
    std::span<const double> center, double radius, std::size_t count, std::uint64_t seed);

/// Largest |E(u) - E(v)| / |u - v| over the pairs, next to the theoretical
/// bound with M the observed sup-norm of the field around `center`.
LipschitzReport lipschitz_probe(const Field& field, std::span<const double> center, const KernelSpec& spec,
                                const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs,
                                const ProbeOptions& options = {});

}  // namespace phm
