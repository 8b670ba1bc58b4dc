// Command-line front end for the persistence heatmap pipeline.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "phm/datagen.hpp"
#include "phm/errors.hpp"
#include "phm/features.hpp"
#include "phm/heatmap.hpp"
#include "phm/io.hpp"
#include "phm/kernel.hpp"
#include "phm/learn.hpp"
#include "phm/raster.hpp"

#ifndef PHM_VERSION
#define PHM_VERSION "0.0.0"
#endif

using namespace phm;

namespace {

constexpr int kUsageError = 2;

// Options that only steer execution; they are left out of the manifest so
// manifests do not depend on the machine.
const std::vector<std::string> kExecutionOptions = {"workers"};

Json echo_parameters(const CLI::App& sub) {
    Json params = Json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help") continue;
        if (std::find(kExecutionOptions.begin(), kExecutionOptions.end(), name) != kExecutionOptions.end()) continue;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            if (opt->get_expected_max() > 1)
                params[name] = res;
            else if (opt->get_type_size() == 0)
                params[name] = true;
            else
                params[name] = res.back();
        } else if (!opt->get_default_str().empty()) {
            params[name] = opt->get_default_str();
        }
    }
    return params;
}

std::string default_manifest_path(const std::string& output) { return output + ".manifest.json"; }

void write_manifest(const CLI::App& sub, const std::string& output, const std::string& manifest,
                    std::uint64_t seed, Json extra = Json::object()) {
    Json j;
    j["tool"] = "phm";
    j["version"] = PHM_VERSION;
    j["subcommand"] = sub.get_name();
    j["seed"] = seed;
    j["parameters"] = echo_parameters(sub);
    j["outputs"] = extra;
    write_json(manifest.empty() ? default_manifest_path(output) : manifest, j);
}

// Common seed / manifest / output options.
struct Common {
    std::uint64_t seed = 0;
    std::string output;
    std::string manifest;

    void attach(CLI::App* sub, bool output_required = true) {
        sub->add_option("--seed", seed, "random seed");
        auto* o = sub->add_option("-o,--output", output, "output path");
        if (output_required) o->required();
        sub->add_option("--manifest", manifest, "manifest path (default: next to the output)");
    }
};

struct FOptions {
    std::string kind = "persistence";
    double constant = 1.0;
    std::string model;
    bool absolute = false;
    std::string selector = "rep_cycle";
    int degree = 1;
    bool include_essential = false;
    bool drop_zero = false;

    void attach(CLI::App* sub) {
        sub->add_option("--F", kind, "weight function")
            ->check(CLI::IsMember({"persistence", "constant", "model"}));
        sub->add_option("--constant", constant, "value for --F constant");
        sub->add_option("--model", model, "model JSON for --F model")->check(CLI::ExistingFile);
        sub->add_flag("--absolute", absolute, "use |feature coefficients| in the learned F");
        sub->add_option("--selector", selector, "chain selector")
            ->check(CLI::IsMember({"birth_simplex", "death_simplex", "rep_cycle", "bounding_chain"}));
        sub->add_option("--degree", degree, "homology degree")->check(CLI::NonNegativeNumber);
        sub->add_flag("--include-essential", include_essential, "distribute F of essential classes too");
        sub->add_flag("--drop-zero", drop_zero, "skip zero-persistence points");
    }

    HeatmapConfig config() const {
        HeatmapConfig c;
        c.degree = degree;
        c.selector = parse_selector(selector);
        c.options.include_essential = include_essential;
        c.options.drop_zero_persistence = drop_zero;
        if (kind == "constant") {
            c.F = ConstantF{constant};
        } else if (kind == "model") {
            if (model.empty()) throw InvalidArgument("--F model needs --model");
            const Json j = read_json(model);
            if (!j.contains("features")) throw ParseError(model + ": model has no feature spec");
            c.F = LearnedF{model_from_json(j), feature_spec_from_json(j["features"]), absolute};
        } else {
            c.F = PersistenceF{};
        }
        return c;
    }
};

struct GenOptions {
    std::string kind = "annulus";
    std::string cls;
    std::size_t n = 200;
    double noise = 0.0;
    double r_in = 0.8, r_out = 1.0, cx = 0.0, cy = 0.0;
    double twist_r = 4.0;
    std::vector<double> initial;

    void attach(CLI::App* sub) {
        sub->add_option("--kind", kind, "generator")
            ->check(CLI::IsMember({"annulus", "double_annulus", "uniform_disc", "linked_twist"}));
        sub->add_option("--class", cls, "preset shape: A, B or C (overrides --kind and radii)")
            ->check(CLI::IsMember({"A", "B", "C"}));
        sub->add_option("--n", n, "number of points")->check(CLI::PositiveNumber);
        sub->add_option("--noise", noise, "Gaussian noise sigma")->check(CLI::NonNegativeNumber);
        sub->add_option("--r-in", r_in, "inner radius");
        sub->add_option("--r-out", r_out, "outer radius");
        sub->add_option("--cx", cx, "annulus center x");
        sub->add_option("--cy", cy, "annulus center y");
        sub->add_option("--twist-r", twist_r, "linked twist parameter");
        sub->add_option("--initial", initial, "linked twist start point x y")->expected(2);
    }

    GeneratorSpec spec(std::uint64_t seed) const {
        if (cls == "A") return class_a_spec(n, noise, seed);
        if (cls == "B") return class_b_spec(n, noise, seed);
        if (cls == "C") return class_c_spec(n, noise, seed);
        GeneratorSpec s;
        s.kind = parse_generator_kind(kind);
        s.n = n;
        s.noise = noise;
        s.seed = seed;
        s.twist_r = twist_r;
        if (initial.size() == 2) s.initial = Point2{initial[0], initial[1]};
        if (s.kind == GeneratorKind::Annulus) s.annuli = {Annulus{{cx, cy}, r_in, r_out}};
        if (s.kind == GeneratorKind::DoubleAnnulus) s.annuli = class_b_spec(n, noise, seed).annuli;
        return s;
    }
};

struct GridOptions {
    double lo = -1.5, hi = 1.5;
    int g = 64;

    void attach(CLI::App* sub) {
        sub->add_option("--lo", lo, "grid lower corner (both axes)");
        sub->add_option("--hi", hi, "grid upper corner (both axes)");
        sub->add_option("--g", g, "cells per side")->check(CLI::PositiveNumber);
    }
    RasterGrid grid() const { return RasterGrid{lo, hi, g}; }
};

RasterStyle parse_style(const std::string& s) { return s == "grayscale" ? RasterStyle::Grayscale : RasterStyle::Diverging; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence heatmaps: filtrations, annotated diagrams, features, models and rasters"};
    app.set_version_flag("--version", PHM_VERSION);
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a point cloud (or shuffle an ingested one)");
    Common gen_c;
    gen_c.attach(gen);
    GenOptions gen_o;
    gen_o.attach(gen);
    std::string gen_input;
    bool gen_shuffle = false;
    gen->add_option("--input", gen_input, "ingest this point CSV instead of generating")->check(CLI::ExistingFile);
    gen->add_flag("--shuffle", gen_shuffle, "permute row order with the seed");

    // filtration
    auto* filt = app.add_subcommand("filtration", "build an alpha or Rips filtration from points");
    Common filt_c;
    filt_c.attach(filt);
    std::string filt_points, filt_type = "alpha";
    int filt_max_dim = 2;
    double filt_threshold = std::numeric_limits<double>::infinity();
    filt->add_option("--points", filt_points, "point CSV")->required()->check(CLI::ExistingFile);
    filt->add_option("--type", filt_type, "filtration type")->check(CLI::IsMember({"alpha", "rips"}));
    filt->add_option("--max-dim", filt_max_dim, "Rips dimension")->check(CLI::Range(0, 2));
    filt->add_option("--threshold", filt_threshold, "Rips distance threshold");

    // persistence
    auto* pers = app.add_subcommand("persistence", "annotated persistence diagram of a filtration");
    Common pers_c;
    pers_c.attach(pers);
    std::string pers_filt;
    pers->add_option("--filtration", pers_filt, "filtration file")->required()->check(CLI::ExistingFile);

    // features
    auto* feat = app.add_subcommand("features", "landscape or death-vector features of diagrams");
    Common feat_c;
    feat_c.attach(feat);
    std::vector<std::string> feat_diagrams;
    std::string feat_type = "landscape", feat_attr, feat_spec;
    int feat_degree = 1, feat_nt = 100, feat_levels = 10;
    double feat_tmin = 0.0;
    double feat_tmax = std::numeric_limits<double>::quiet_NaN();
    std::size_t feat_length = 0;
    feat->add_option("--diagrams", feat_diagrams, "diagram JSON files, one row each")
        ->required()
        ->check(CLI::ExistingFile);
    feat->add_option("--type", feat_type, "feature map")->check(CLI::IsMember({"landscape", "death-vector"}));
    feat->add_option("--degree", feat_degree, "landscape degree")->check(CLI::NonNegativeNumber);
    feat->add_option("--t-min", feat_tmin, "landscape grid start");
    feat->add_option("--t-max", feat_tmax, "landscape grid end (default: largest death of a point with positive persistence)");
    feat->add_option("--n-t", feat_nt, "landscape grid size")->check(CLI::Range(2, 1000000));
    feat->add_option("--n-levels", feat_levels, "landscape levels")->check(CLI::PositiveNumber);
    feat->add_option("--length", feat_length, "death-vector length (default: longest diagram)");
    feat->add_option("--attribution", feat_attr, "attribution CSV output");
    feat->add_option("--spec", feat_spec, "feature spec JSON output");

    // train
    auto* train = app.add_subcommand("train", "train a linear SVM or SVR on feature rows");
    Common train_c;
    train_c.attach(train);
    std::string train_features, train_labels, train_kind = "svm", train_spec;
    TrainOptions train_opts;
    train->add_option("--features", train_features, "feature CSV")->required()->check(CLI::ExistingFile);
    train->add_option("--labels", train_labels, "label CSV, one per line")->required()->check(CLI::ExistingFile);
    train->add_option("--kind", train_kind, "model kind")->check(CLI::IsMember({"svm", "svr"}));
    train->add_option("--lambda", train_opts.lambda, "regularization")->check(CLI::PositiveNumber);
    train->add_option("--epochs", train_opts.epochs, "epochs")->check(CLI::PositiveNumber);
    train->add_option("--epsilon", train_opts.epsilon_tube, "SVR tube width")->check(CLI::NonNegativeNumber);
    train->add_option("--feature-spec", train_spec, "feature spec JSON to store with the model")
        ->check(CLI::ExistingFile);

    // heatmap
    auto* heat = app.add_subcommand("heatmap", "persistence heatmap weights per simplex");
    Common heat_c;
    heat_c.attach(heat);
    FOptions heat_f;
    heat_f.attach(heat);
    std::string heat_filt, heat_diag;
    heat->add_option("--filtration", heat_filt, "filtration file")->required()->check(CLI::ExistingFile);
    heat->add_option("--diagram", heat_diag, "diagram JSON (default: recomputed)")->check(CLI::ExistingFile);

    // expected-heatmap
    auto* eh = app.add_subcommand("expected-heatmap", "kernel-smoothed heatmap by Monte Carlo");
    Common eh_c;
    eh_c.attach(eh);
    FOptions eh_f;
    eh_f.attach(eh);
    std::string eh_filt, eh_kernel = "triangular";
    double eh_alpha = 0.1;
    std::size_t eh_samples = 1000;
    unsigned eh_workers = 1;
    eh->add_option("--filtration", eh_filt, "filtration file")->required()->check(CLI::ExistingFile);
    eh->add_option("--kernel", eh_kernel, "kernel family")
        ->check(CLI::IsMember({"triangular", "epanechnikov", "gaussian"}));
    eh->add_option("--alpha", eh_alpha, "bandwidth")->check(CLI::PositiveNumber);
    eh->add_option("--samples", eh_samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
    eh->add_option("--workers", eh_workers, "threads")->check(CLI::PositiveNumber);

    // experiment-ephm
    auto* ex = app.add_subcommand("experiment-ephm", "mean rasterized heatmap over freshly generated clouds");
    Common ex_c;
    ex_c.attach(ex);
    GenOptions ex_g;
    ex_g.attach(ex);
    FOptions ex_f;
    ex_f.attach(ex);
    GridOptions ex_grid;
    ex_grid.attach(ex);
    std::size_t ex_clouds = 10;
    unsigned ex_workers = 1;
    std::string ex_style = "diverging", ex_json;
    ex->add_option("--clouds", ex_clouds, "number of clouds")->check(CLI::PositiveNumber);
    ex->add_option("--workers", ex_workers, "threads")->check(CLI::PositiveNumber);
    ex->add_option("--style", ex_style, "image style")->check(CLI::IsMember({"grayscale", "diverging"}));
    ex->add_option("--json", ex_json, "mean and stderr JSON output");

    // raster
    auto* ras = app.add_subcommand("raster", "rasterize simplex weights onto a grid image");
    Common ras_c;
    ras_c.attach(ras);
    GridOptions ras_grid;
    ras_grid.attach(ras);
    std::string ras_filt, ras_heat, ras_points, ras_style = "diverging";
    ras->add_option("--filtration", ras_filt, "filtration file")->required()->check(CLI::ExistingFile);
    ras->add_option("--heatmap", ras_heat, "heatmap CSV")->required()->check(CLI::ExistingFile);
    ras->add_option("--points", ras_points, "vertex positions CSV")->required()->check(CLI::ExistingFile);
    ras->add_option("--style", ras_style, "image style")->check(CLI::IsMember({"grayscale", "diverging"}));

    // stability-probe
    auto* sp = app.add_subcommand("stability-probe", "empirical Lipschitz ratio of a smoothed toy heatmap");
    Common sp_c;
    sp_c.attach(sp);
    std::string sp_kernel = "triangular", sp_mode = "quadrature";
    double sp_alpha = 0.5, sp_edge = 1.0;
    std::vector<double> sp_center{0.0, 0.0};
    std::size_t sp_pairs = 1000, sp_mc = 2000;
    int sp_points = 160;
    unsigned sp_workers = 1;
    sp->add_option("--kernel", sp_kernel, "kernel family")
        ->check(CLI::IsMember({"triangular", "epanechnikov", "gaussian"}));
    sp->add_option("--alpha", sp_alpha, "bandwidth")->check(CLI::PositiveNumber);
    sp->add_option("--edge-weight", sp_edge, "fixed edge weight of the toy complex");
    sp->add_option("--center", sp_center, "probe center")->expected(2);
    sp->add_option("--pairs", sp_pairs, "number of pairs")->check(CLI::PositiveNumber);
    sp->add_option("--mode", sp_mode, "convolution evaluation")->check(CLI::IsMember({"quadrature", "mc"}));
    sp->add_option("--quadrature-points", sp_points, "quadrature nodes per axis")->check(CLI::Range(2, 4000));
    sp->add_option("--mc-samples", sp_mc, "Monte-Carlo samples per evaluation")->check(CLI::PositiveNumber);
    sp->add_option("--workers", sp_workers, "threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*gen) {
            PointCloud cloud;
            Json extra;
            if (!gen_input.empty()) {
                cloud = read_points_csv(gen_input);
            } else {
                const GeneratorSpec spec = gen_o.spec(gen_c.seed);
                cloud = generate(spec);
                Json annuli = Json::array();
                for (const Annulus& a : spec.annuli)
                    annuli.push_back({{"center", {a.center.x, a.center.y}}, {"r_in", a.r_in}, {"r_out", a.r_out}});
                extra["generator"] = {{"kind", to_string(spec.kind)}, {"annuli", annuli}};
            }
            if (gen_shuffle) cloud = shuffle_points(std::move(cloud), gen_c.seed);
            write_points_csv(gen_c.output, cloud);
            extra["points"] = gen_c.output;
            extra["n"] = cloud.size();
            write_manifest(*gen, gen_c.output, gen_c.manifest, gen_c.seed, extra);
        } else if (*filt) {
            const PointCloud cloud = read_points_csv(filt_points);
            if (filt_type == "alpha") {
                const auto [complex, phi] = delaunay2d(cloud);
                write_filtration_file(filt_c.output, complex, alpha_weights(complex, phi).values);
            } else {
                const auto [complex, w, phi] = rips_complex(cloud, filt_max_dim, filt_threshold);
                write_filtration_file(filt_c.output, complex, w.values);
            }
            write_manifest(*filt, filt_c.output, filt_c.manifest, filt_c.seed, {{"filtration", filt_c.output}});
        } else if (*pers) {
            const Filtration f = read_filtration_file(pers_filt);
            write_json(pers_c.output, diagram_to_json(compute_diagram(f.complex, f.weights)));
            write_manifest(*pers, pers_c.output, pers_c.manifest, pers_c.seed, {{"diagram", pers_c.output}});
        } else if (*feat) {
            std::vector<AnnotatedDiagram> diagrams;
            for (const auto& path : feat_diagrams) diagrams.push_back(diagram_from_json(read_json(path)));
            FeatureSpec spec;
            if (feat_type == "landscape") {
                LandscapeFeature l;
                l.degree = feat_degree;
                l.grid.n_t = feat_nt;
                l.grid.n_levels = feat_levels;
                l.grid.t_min = feat_tmin;
                if (std::isnan(feat_tmax)) {
                    double mx = feat_tmin;
                    for (const auto& d : diagrams) mx = std::max(mx, max_positive_death(d, feat_degree));
                    if (!(mx > feat_tmin)) mx = feat_tmin + 1.0;
                    feat_tmax = mx;
                }
                l.grid.t_max = feat_tmax;
                spec = l;
            } else {
                std::size_t len = feat_length;
                if (len == 0)
                    for (const auto& d : diagrams) len = std::max(len, d.indices_of_degree(0).size());
                spec = DeathVectorFeature{len};
            }
            std::vector<std::vector<double>> rows;
            std::vector<std::vector<int>> attribution;
            for (const auto& d : diagrams) {
                FeatureRow row = featurize(d, spec);
                // Attribution is written in diagram point indices.
                std::vector<int> attr(row.attribution.size(), kNoAttribution);
                for (std::size_t c = 0; c < attr.size(); ++c)
                    if (row.attribution[c] >= 0) attr[c] = static_cast<int>(row.owners[row.attribution[c]]);
                rows.push_back(std::move(row.values));
                attribution.push_back(std::move(attr));
            }
            write_matrix_csv(feat_c.output, rows);
            Json extra{{"features", feat_c.output}, {"feature_spec", feature_spec_to_json(spec)}};
            if (!feat_attr.empty()) {
                write_int_matrix_csv(feat_attr, attribution);
                extra["attribution"] = feat_attr;
            }
            if (!feat_spec.empty()) {
                write_json(feat_spec, feature_spec_to_json(spec));
                extra["spec"] = feat_spec;
            }
            write_manifest(*feat, feat_c.output, feat_c.manifest, feat_c.seed, extra);
        } else if (*train) {
            const auto X = read_matrix_csv(train_features);
            const auto label_rows = read_matrix_csv(train_labels);
            train_opts.seed = train_c.seed;
            LinearModel model;
            if (train_kind == "svm") {
                std::vector<int> y;
                for (const auto& r : label_rows) {
                    if (r.size() != 1 || (r[0] != 1.0 && r[0] != -1.0))
                        throw ParseError("SVM labels must be -1 or 1, one per line");
                    y.push_back(static_cast<int>(r[0]));
                }
                model = train_svm(X, y, train_opts);
            } else {
                std::vector<double> y;
                for (const auto& r : label_rows) {
                    if (r.size() != 1) throw ParseError("labels must be one per line");
                    y.push_back(r[0]);
                }
                model = train_svr(X, y, train_opts);
            }
            Json j = model_to_json(model);
            if (!train_spec.empty()) j["features"] = read_json(train_spec);
            write_json(train_c.output, j);
            write_manifest(*train, train_c.output, train_c.manifest, train_c.seed, {{"model", train_c.output}});
        } else if (*heat) {
            const Filtration f = read_filtration_file(heat_filt);
            const HeatmapConfig config = heat_f.config();
            std::vector<double> w;
            if (!heat_diag.empty()) {
                const AnnotatedDiagram d = diagram_from_json(read_json(heat_diag));
                w = heatmap(d, f.complex, config.degree, config.F, config.selector, config.options).w;
            } else {
                w = heatmap_at(f.complex, f.weights.values, config).w;
            }
            write_heatmap_csv(heat_c.output, w);
            write_manifest(*heat, heat_c.output, heat_c.manifest, heat_c.seed, {{"heatmap", heat_c.output}});
        } else if (*eh) {
            const Filtration f = read_filtration_file(eh_filt);
            const KernelSpec spec{parse_kernel_family(eh_kernel), eh_alpha, static_cast<int>(f.complex.size())};
            const ExpectedHeatmap e =
                expected_heatmap(f.weights.values, f.complex, eh_f.config(), spec, eh_samples, eh_c.seed, eh_workers);
            write_json(eh_c.output, expected_to_json(e));
            write_manifest(*eh, eh_c.output, eh_c.manifest, eh_c.seed, {{"expected_heatmap", eh_c.output}});
        } else if (*ex) {
            const GeneratorSpec g = ex_g.spec(ex_c.seed);
            const RasterGrid grid = ex_grid.grid();
            const ExperimentResult r =
                experiment_expected_phm(g, ex_clouds, ex_f.config(), grid, ex_c.seed, ex_workers);
            const std::string csv = write_raster(r.heat.mean, grid, ex_c.output, parse_style(ex_style));
            Json extra{{"image", ex_c.output}, {"csv", csv}, {"total_F", r.total_F}};
            if (!ex_json.empty()) {
                write_json(ex_json, Json{{"mean", r.heat.mean},
                                         {"stderr", r.heat.std_error},
                                         {"n_samples", r.heat.n_samples},
                                         {"seed", r.heat.seed}});
                extra["json"] = ex_json;
            }
            write_manifest(*ex, ex_c.output, ex_c.manifest, ex_c.seed, extra);
        } else if (*ras) {
            const Filtration f = read_filtration_file(ras_filt);
            const std::vector<double> w = read_heatmap_csv(ras_heat);
            const PointCloud cloud = read_points_csv(ras_points);
            const RasterGrid grid = ras_grid.grid();
            const std::vector<double> h = rasterize(f.complex, w, GeometricRealization{cloud.points}, grid);
            const std::string csv = write_raster(h, grid, ras_c.output, parse_style(ras_style));
            write_manifest(*ras, ras_c.output, ras_c.manifest, ras_c.seed, {{"image", ras_c.output}, {"csv", csv}});
        } else if (*sp) {
            const KernelSpec spec{parse_kernel_family(sp_kernel), sp_alpha, 2};
            const auto pairs = random_pairs_in_ball(sp_center, sp_alpha, sp_pairs, sp_c.seed);
            ProbeOptions opts;
            opts.mode = sp_mode == "mc" ? ProbeMode::MonteCarlo : ProbeMode::Quadrature;
            opts.quadrature_points = sp_points;
            opts.mc_samples = sp_mc;
            opts.seed = sp_c.seed;
            opts.workers = sp_workers;
            const LipschitzReport rep = lipschitz_probe(two_vertex_field(sp_edge), sp_center, spec, pairs, opts);
            write_json(sp_c.output, Json{{"max_ratio", rep.max_ratio},
                                         {"bound", rep.bound},
                                         {"M", rep.M},
                                         {"pairs", rep.pairs},
                                         {"within_bound", rep.max_ratio <= rep.bound}});
            write_manifest(*sp, sp_c.output, sp_c.manifest, sp_c.seed, {{"report", sp_c.output}});
        }
    } catch (const phm::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
