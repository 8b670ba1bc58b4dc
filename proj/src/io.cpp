#include "phm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "phm/errors.hpp"
#include "phm/rng.hpp"

namespace phm {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (text == "inf" || text == "+inf") return kInfinity;
    if (text == "-inf") return -kInfinity;
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError("not a number: '" + std::string(text) + "'");
    return v;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("failed writing " + path);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

long long parse_int(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParseError("not an integer: '" + std::string(text) + "'");
    return v;
}

std::string_view strip_cr(const std::string& line) {
    std::string_view v(line);
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    return v;
}

}  // namespace

std::string read_text(const std::string& path) {
    std::ifstream in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_filtration(std::ostream& out, const SimplicialComplex& complex, std::span<const double> w) {
    if (w.size() != complex.size()) throw LengthMismatch("weights do not match the complex");
    for (std::size_t i = 0; i < complex.size(); ++i) {
        for (VertexId v : complex.simplex(i).vertices) out << v << ' ';
        out << "; " << format_double(w[i]) << '\n';
    }
}

Filtration read_filtration(std::istream& in) {
    std::vector<std::vector<VertexId>> simplices;
    Vec weights;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto semi = line.find(';');
        if (semi == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing ';'");
        std::istringstream verts(line.substr(0, semi));
        std::vector<VertexId> s;
        std::string tok;
        while (verts >> tok) s.push_back(static_cast<VertexId>(parse_int(tok)));
        try {
            weights.push_back(parse_double(std::string_view(line).substr(semi + 1)));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        simplices.push_back(std::move(s));
    }
    Filtration f{build_complex(simplices), WeightVector{std::move(weights)}};
    return f;
}

void write_filtration_file(const std::string& path, const SimplicialComplex& complex, std::span<const double> w) {
    std::ofstream out = open_out(path);
    write_filtration(out, complex, w);
    finish(out, path);
}

Filtration read_filtration_file(const std::string& path) {
    std::ifstream in = open_in(path);
    return read_filtration(in);
}

void write_points_csv(const std::string& path, const PointCloud& cloud) {
    std::ofstream out = open_out(path);
    out << "x,y\n";
    for (const Point2& p : cloud.points) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
    finish(out, path);
}

PointCloud read_points_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    PointCloud cloud;
    std::string line;
    bool header = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view v = strip_cr(line);
        if (v.empty()) continue;
        if (header) {
            header = false;
            if (v == "x,y") continue;
        }
        const auto parts = split(v, ',');
        if (parts.size() != 2) throw ParseError(path + ":" + std::to_string(lineno) + ": expected two columns");
        cloud.points.push_back({parse_double(parts[0]), parse_double(parts[1])});
    }
    return cloud;
}

PointCloud shuffle_points(PointCloud cloud, std::uint64_t seed) {
    Rng rng = substream(seed, 0);
    std::shuffle(cloud.points.begin(), cloud.points.end(), rng);
    return cloud;
}

namespace {

Json double_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    return Json(v);
}

double double_from_json(const Json& j) {
    if (j.is_string()) return parse_double(j.get<std::string>());
    if (!j.is_number()) throw ParseError("expected a number");
    return j.get<double>();
}

}  // namespace

Json diagram_to_json(const AnnotatedDiagram& diagram) {
    Json points = Json::array();
    for (const AnnotatedPoint& p : diagram.points) {
        Json jp;
        jp["birth"] = double_to_json(p.birth);
        jp["death"] = double_to_json(p.death);
        jp["degree"] = p.degree;
        jp["birth_simplex"] = p.birth_simplex;
        if (p.death_simplex) jp["death_simplex"] = *p.death_simplex;
        jp["rep_cycle"] = p.rep_cycle.simplices;
        if (p.bounding_chain) jp["bounding_chain"] = p.bounding_chain->simplices;
        points.push_back(std::move(jp));
    }
    return Json{{"points", std::move(points)}};
}

AnnotatedDiagram diagram_from_json(const Json& j) {
    AnnotatedDiagram d;
    try {
        for (const Json& jp : j.at("points")) {
            AnnotatedPoint p;
            p.birth = double_from_json(jp.at("birth"));
            p.death = double_from_json(jp.at("death"));
            p.degree = jp.at("degree").get<int>();
            p.birth_simplex = jp.at("birth_simplex").get<std::size_t>();
            if (jp.contains("death_simplex")) p.death_simplex = jp["death_simplex"].get<std::size_t>();
            p.rep_cycle = {jp.at("rep_cycle").get<std::vector<std::size_t>>(), p.degree};
            if (jp.contains("bounding_chain"))
                p.bounding_chain = Z2Chain{jp["bounding_chain"].get<std::vector<std::size_t>>(), p.degree + 1};
            d.points.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed diagram: ") + e.what());
    }
    return d;
}

void write_matrix_csv(const std::string& path, const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_out(path);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
    finish(out, path);
}

std::vector<std::vector<double>> read_matrix_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view v = strip_cr(line);
        if (v.empty()) continue;
        std::vector<double> row;
        for (auto part : split(v, ',')) row.push_back(parse_double(part));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_int_matrix_csv(const std::string& path, const std::vector<std::vector<int>>& rows) {
    std::ofstream out = open_out(path);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << '\n';
    }
    finish(out, path);
}

std::vector<std::vector<int>> read_int_matrix_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view v = strip_cr(line);
        if (v.empty()) continue;
        std::vector<int> row;
        for (auto part : split(v, ',')) row.push_back(static_cast<int>(parse_int(part)));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_heatmap_csv(const std::string& path, const std::vector<double>& w) {
    std::ofstream out = open_out(path);
    out << "simplex_index,weight\n";
    for (std::size_t i = 0; i < w.size(); ++i) out << i << ',' << format_double(w[i]) << '\n';
    finish(out, path);
}

std::vector<double> read_heatmap_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::vector<double> w;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        const std::string_view v = strip_cr(line);
        if (v.empty()) continue;
        if (header) {
            header = false;
            if (v == "simplex_index,weight") continue;
        }
        const auto parts = split(v, ',');
        if (parts.size() != 2) throw ParseError(path + ": expected simplex_index,weight");
        const auto idx = parse_int(parts[0]);
        if (idx != static_cast<long long>(w.size())) throw ParseError(path + ": simplex indices must be consecutive");
        w.push_back(parse_double(parts[1]));
    }
    return w;
}

void write_raster_csv(const std::vector<double>& heat, const RasterGrid& grid, const std::string& path) {
    if (heat.size() != grid.cells()) throw LengthMismatch("heat vector does not match the grid");
    std::ofstream out = open_out(path);
    out << "row,col,heat\n";
    for (int r = 0; r < grid.g; ++r)
        for (int c = 0; c < grid.g; ++c) out << r << ',' << c << ',' << format_double(heat[grid.index(c, r)]) << '\n';
    finish(out, path);
}

std::vector<double> read_raster_csv(const std::string& path, const RasterGrid& grid) {
    std::ifstream in = open_in(path);
    std::vector<double> heat(grid.cells(), 0.0);
    std::vector<char> seen(grid.cells(), 0);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        const std::string_view v = strip_cr(line);
        if (v.empty()) continue;
        if (header) {
            header = false;
            if (v == "row,col,heat") continue;
        }
        const auto parts = split(v, ',');
        if (parts.size() != 3) throw ParseError(path + ": expected row,col,heat");
        const auto r = parse_int(parts[0]), c = parse_int(parts[1]);
        if (r < 0 || c < 0 || r >= grid.g || c >= grid.g) throw ParseError(path + ": cell outside the grid");
        const std::size_t i = grid.index(static_cast<int>(c), static_cast<int>(r));
        heat[i] = parse_double(parts[2]);
        seen[i] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw ParseError(path + ": missing cells");
    return heat;
}

Json model_to_json(const LinearModel& model) {
    return Json{{"kind", model.kind},
                {"f", model.f},
                {"b", model.b},
                {"lambda", model.options.lambda},
                {"epochs", model.options.epochs},
                {"seed", model.options.seed},
                {"epsilon_tube", model.options.epsilon_tube}};
}

LinearModel model_from_json(const Json& j) {
    LinearModel m;
    try {
        m.f = j.at("f").get<std::vector<double>>();
        m.b = j.at("b").get<double>();
        m.options.lambda = j.at("lambda").get<double>();
        m.options.epochs = j.at("epochs").get<int>();
        m.options.seed = j.at("seed").get<std::uint64_t>();
        m.kind = j.value("kind", std::string("svm"));
        m.options.epsilon_tube = j.value("epsilon_tube", m.options.epsilon_tube);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model: ") + e.what());
    }
    return m;
}

Json feature_spec_to_json(const FeatureSpec& spec) {
    if (const auto* l = std::get_if<LandscapeFeature>(&spec))
        return Json{{"type", "landscape"},
                    {"degree", l->degree},
                    {"t_min", l->grid.t_min},
                    {"t_max", l->grid.t_max},
                    {"n_t", l->grid.n_t},
                    {"n_levels", l->grid.n_levels}};
    return Json{{"type", "death-vector"}, {"length", std::get<DeathVectorFeature>(spec).length}};
}

FeatureSpec feature_spec_from_json(const Json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "landscape") {
            LandscapeFeature l;
            l.degree = j.at("degree").get<int>();
            l.grid.t_min = j.at("t_min").get<double>();
            l.grid.t_max = j.at("t_max").get<double>();
            l.grid.n_t = j.at("n_t").get<int>();
            l.grid.n_levels = j.at("n_levels").get<int>();
            return l;
        }
        if (type == "death-vector") return DeathVectorFeature{j.at("length").get<std::size_t>()};
        throw ParseError("unknown feature type '" + type + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed feature spec: ") + e.what());
    }
}

Json expected_to_json(const ExpectedHeatmap& e) {
    return Json{{"mean", e.mean},
                {"stderr", e.std_error},
                {"n_samples", e.n_samples},
                {"seed", e.seed},
                {"kernel", {{"family", to_string(e.kernel.family)}, {"alpha", e.kernel.alpha}, {"dim", e.kernel.dim}}}};
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

Json read_json(const std::string& path) {
    const std::string text = read_text(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace phm
