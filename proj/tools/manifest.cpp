#include "manifest.hpp"

#include "aquant/report.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace aquant::cli {

using nlohmann::json;

ManifestError::ManifestError(int line, const std::string& message)
    : Error(line > 0 ? "manifest line " + std::to_string(line) + ": " + message : "manifest: " + message),
      line_(line) {}

namespace {

// Finds keys in the raw text so schema errors can point at a line.
class Locator {
public:
    explicit Locator(const std::string& text) : text_(text) {}

    // Line of the last key in path, searching each key after the previous one.
    int line_of(const std::vector<std::string>& path) const {
        size_t pos = 0;
        for (const auto& key : path) {
            size_t found = find_key(key, pos);
            if (found == std::string::npos) return path.size() > 1 ? line_of({path.begin(), path.end() - 1}) : 1;
            pos = found;
        }
        return line_at(pos);
    }

    int line_at(size_t pos) const {
        int line = 1;
        for (size_t i = 0; i < pos && i < text_.size(); ++i)
            if (text_[i] == '\n') ++line;
        return line;
    }

private:
    size_t find_key(const std::string& key, size_t from) const {
        const std::string quoted = "\"" + key + "\"";
        size_t pos = text_.find(quoted, from);
        while (pos != std::string::npos) {
            size_t k = pos + quoted.size();
            while (k < text_.size() && std::isspace(static_cast<unsigned char>(text_[k]))) ++k;
            if (k < text_.size() && text_[k] == ':') return pos;
            pos = text_.find(quoted, pos + 1);
        }
        return std::string::npos;
    }

    const std::string& text_;
};

using Path = std::vector<std::string>;

Path extend(Path p, const std::string& key) {
    p.push_back(key);
    return p;
}

std::string dotted(const Path& p) {
    std::string s;
    for (const auto& k : p) s += (s.empty() ? "" : ".") + k;
    return s.empty() ? "manifest" : s;
}

class Reader {
public:
    explicit Reader(const std::string& text) : loc_(text) {}

    [[noreturn]] void fail(const Path& p, const std::string& msg) const { throw ManifestError(loc_.line_of(p), msg); }

    void require_object(const json& j, const Path& p) const {
        if (!j.is_object()) fail(p, dotted(p) + " must be an object");
    }

    void check_keys(const json& j, const Path& p, const std::set<std::string>& allowed) const {
        require_object(j, p);
        for (const auto& [key, value] : j.items())
            if (!allowed.count(key)) fail(extend(p, key), "unknown key '" + key + "' in " + dotted(p));
    }

    const json& require(const json& j, const Path& p, const std::string& key) const {
        if (!j.contains(key)) fail(p, "missing required key '" + key + "' in " + dotted(p));
        return j.at(key);
    }

    double number(const json& j, const Path& p) const {
        if (!j.is_number()) fail(p, dotted(p) + " must be a number");
        return j.get<double>();
    }

    int integer(const json& j, const Path& p) const {
        if (!j.is_number_integer()) fail(p, dotted(p) + " must be an integer");
        return j.get<int>();
    }

    std::string string(const json& j, const Path& p) const {
        if (!j.is_string()) fail(p, dotted(p) + " must be a string");
        return j.get<std::string>();
    }

    Vec vector(const json& j, const Path& p) const {
        if (!j.is_array()) fail(p, dotted(p) + " must be an array of numbers");
        Vec v(static_cast<int>(j.size()));
        for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = number(j[i], p);
        return v;
    }

    AtlasPtr atlas(const json& j, const Path& p) const {
        require_object(j, p);
        const std::string kind = string(require(j, p, "kind"), extend(p, "kind"));
        if (kind == "sphere2" || kind == "torus2") {
            check_keys(j, p, {"kind"});
            return kind == "sphere2" ? Atlas::sphere2() : Atlas::torus2();
        }
        if (kind == "euclidean") {
            check_keys(j, p, {"kind", "dimension"});
            const int d = integer(require(j, p, "dimension"), extend(p, "dimension"));
            if (d < 1) fail(extend(p, "dimension"), "dimension must be positive");
            return Atlas::euclidean(d);
        }
        if (kind == "product") {
            check_keys(j, p, {"kind", "factors"});
            const json& f = require(j, p, "factors");
            if (!f.is_array() || f.size() != 2) fail(extend(p, "factors"), "a product needs exactly two factors");
            return Atlas::product(atlas(f[0], extend(p, "factors")), atlas(f[1], extend(p, "factors")));
        }
        fail(extend(p, "kind"), "unknown manifold kind '" + kind + "'");
    }

    TwoFormField form(const json& j, const Path& p, AtlasPtr a) const {
        require_object(j, p);
        const std::string kind = string(require(j, p, "kind"), extend(p, "kind"));
        if (kind == "zero") {
            check_keys(j, p, {"kind"});
            return zero_form(a);
        }
        if (kind == "scaled_area") {
            check_keys(j, p, {"kind", "lambda"});
            if (a->kind() != ManifoldKind::sphere2) fail(p, "scaled_area needs the sphere2 manifold");
            return area_form(a, number(require(j, p, "lambda"), extend(p, "lambda")));
        }
        if (kind == "coordinate") {
            check_keys(j, p, {"kind", "scale", "i", "j"});
            if (a->chart_count() != 1) fail(p, "coordinate forms need a single-chart manifold");
            const double scale = j.contains("scale") ? number(j["scale"], extend(p, "scale")) : 1.0;
            const int i = j.contains("i") ? integer(j["i"], extend(p, "i")) : 0;
            const int k = j.contains("j") ? integer(j["j"], extend(p, "j")) : 1;
            if (i < 0 || k < 0 || i >= a->dimension() || k >= a->dimension() || i == k)
                fail(p, "coordinate indices out of range");
            return coordinate_form(a, scale, i, k);
        }
        if (kind == "sum_on_product") {
            check_keys(j, p, {"kind", "lambda1", "lambda2"});
            if (a->kind() != ManifoldKind::product || a->factor(0)->kind() != ManifoldKind::sphere2 ||
                a->factor(1)->kind() != ManifoldKind::sphere2)
                fail(p, "sum_on_product needs a product of two spheres");
            return product_form(a, area_form(a->factor(0), number(require(j, p, "lambda1"), extend(p, "lambda1"))),
                                area_form(a->factor(1), number(require(j, p, "lambda2"), extend(p, "lambda2"))));
        }
        if (kind == "polynomial") {
            check_keys(j, p, {"kind", "terms", "closed"});
            if (a->chart_count() != 1) fail(p, "polynomial forms need a single-chart manifold");
            if (j.contains("closed") && !j["closed"].is_boolean()) fail(extend(p, "closed"), "closed must be a boolean");
            const bool closed = j.contains("closed") ? j["closed"].get<bool>() : true;
            std::vector<FormTerm> terms;
            const json& ts = require(j, p, "terms");
            if (!ts.is_array()) fail(extend(p, "terms"), "terms must be an array");
            const Path tp = extend(p, "terms");
            for (const auto& t : ts) {
                check_keys(t, tp, {"i", "j", "monomials"});
                FormTerm ft{integer(require(t, tp, "i"), extend(tp, "i")), integer(require(t, tp, "j"), extend(tp, "j")),
                            Polynomial(a->dimension())};
                if (ft.i < 0 || ft.j < 0 || ft.i >= a->dimension() || ft.j >= a->dimension() || ft.i == ft.j)
                    fail(tp, "form term indices out of range");
                const json& ms = require(t, tp, "monomials");
                const Path mp = extend(tp, "monomials");
                if (!ms.is_array()) fail(mp, "monomials must be an array");
                for (const auto& m : ms) {
                    check_keys(m, mp, {"coef", "powers"});
                    Vec pw = vector(require(m, mp, "powers"), extend(mp, "powers"));
                    if (pw.size() != a->dimension()) fail(extend(mp, "powers"), "one power per coordinate is needed");
                    std::vector<int> powers;
                    for (int q = 0; q < pw.size(); ++q) powers.push_back(static_cast<int>(pw(q)));
                    ft.coefficient.add_term(number(require(m, mp, "coef"), extend(mp, "coef")), powers);
                }
                terms.push_back(std::move(ft));
            }
            return polynomial_form(a, terms, closed);
        }
        fail(extend(p, "kind"), "unknown form kind '" + kind + "'");
    }

    ChartPoint point(const json& j, const Path& p, const Atlas& a) const {
        Vec y = vector(j, p);
        if (y.size() != a.embedding_dimension())
            fail(p, "point needs " + std::to_string(a.embedding_dimension()) + " embedding coordinates");
        try {
            return a.normalize(a.from_embedding(y));
        } catch (const Error& e) {
            fail(p, e.what());
        }
    }

private:
    Locator loc_;
};

}  // namespace

Manifest parse_manifest(const std::string& text, std::optional<std::uint64_t> seed_override) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ManifestError(Locator(text).line_at(e.byte > 0 ? e.byte - 1 : 0), std::string("malformed JSON: ") + e.what());
    }
    Reader r(text);
    const Path root;
    r.check_keys(j, root,
                 {"scenario", "manifold", "form", "basepoint", "samples", "generators", "resolution", "tolerances",
                  "seed", "expect", "options"});
    Manifest m;
    m.scenario = j.contains("scenario") ? r.string(j["scenario"], {"scenario"}) : "unnamed";
    m.manifold_spec = r.require(j, root, "manifold");
    m.atlas = r.atlas(m.manifold_spec, {"manifold"});
    m.form_spec = j.contains("form") ? j["form"] : json{{"kind", "zero"}};
    m.form = r.form(m.form_spec, {"form"}, m.atlas);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) r.fail({"seed"}, "seed must be a non-negative integer");
        m.seed = j["seed"].get<std::uint64_t>();
    }
    if (seed_override) m.seed = *seed_override;
    m.basepoint = j.contains("basepoint") ? r.point(j["basepoint"], {"basepoint"}, *m.atlas)
                                          : m.atlas->normalize(default_basepoint(*m.atlas));

    if (j.contains("resolution")) {
        const json& res = j["resolution"];
        r.check_keys(res, {"resolution"}, {"n_t", "n_eps"});
        if (res.contains("n_t")) m.resolution.n_t = r.integer(res["n_t"], {"resolution", "n_t"});
        if (res.contains("n_eps")) m.resolution.n_eps = r.integer(res["n_eps"], {"resolution", "n_eps"});
        if (m.resolution.n_t < 4 || m.resolution.n_t % 2 || m.resolution.n_eps < 4 || m.resolution.n_eps % 2)
            r.fail({"resolution"}, "resolutions must be even and at least 4");
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        r.require_object(t, {"tolerances"});
        for (const auto& [key, value] : t.items()) {
            const Path kp{"tolerances", key};
            try {
                set_tolerance(m.tolerances, key, r.number(value, kp));
            } catch (const InvalidInput& e) {
                r.fail(kp, e.what());
            }
        }
    }

    // Sample points: explicit list or the basepoint plus random points.
    int random_count = 2;
    bool with_base = true;
    if (j.contains("samples")) {
        const json& s = j["samples"];
        const Path sp{"samples"};
        r.check_keys(s, sp, {"points", "random", "include_basepoint"});
        if (s.contains("points")) {
            if (!s["points"].is_array()) r.fail(extend(sp, "points"), "points must be an array");
            for (const auto& q : s["points"]) m.samples.push_back(r.point(q, extend(sp, "points"), *m.atlas));
            random_count = 0;
            with_base = false;
        }
        if (s.contains("random")) random_count = r.integer(s["random"], extend(sp, "random"));
        if (s.contains("include_basepoint")) {
            if (!s["include_basepoint"].is_boolean())
                r.fail(extend(sp, "include_basepoint"), "include_basepoint must be a boolean");
            with_base = s["include_basepoint"].get<bool>();
        }
        if (random_count < 0) r.fail(extend(sp, "random"), "random sample count must be non-negative");
    }
    if (with_base) m.samples.insert(m.samples.begin(), m.basepoint);
    for (const auto& q : random_points(*m.atlas, random_count, m.seed)) m.samples.push_back(m.atlas->normalize(q));
    if (m.samples.empty()) r.fail({"samples"}, "at least one sample point is needed");

    if (j.contains("generators")) {
        const json& g = j["generators"];
        const Path gp{"generators"};
        if (!g.is_array()) r.fail(gp, "generators must be an array");
        std::vector<GeneratorSpec> specs;
        for (const auto& e : g) {
            r.check_keys(e, gp, {"map", "factor", "direction", "reach", "orientation"});
            if (r.string(r.require(e, gp, "map"), extend(gp, "map")) != "lasso")
                r.fail(extend(gp, "map"), "only lasso generators are supported");
            GeneratorSpec spec;
            if (e.contains("factor")) spec.factor = r.integer(e["factor"], extend(gp, "factor"));
            if (e.contains("direction")) {
                Vec v = r.vector(e["direction"], extend(gp, "direction"));
                if (v.size() != 3) r.fail(extend(gp, "direction"), "direction needs three components");
                spec.direction = Eigen::Vector3d(v(0), v(1), v(2));
            }
            if (e.contains("reach")) spec.reach = r.number(e["reach"], extend(gp, "reach"));
            if (e.contains("orientation")) spec.orientation = r.integer(e["orientation"], extend(gp, "orientation"));
            const bool product = m.atlas->kind() == ManifoldKind::product;
            if (product && (spec.factor < 0 || spec.factor > 1 ||
                            m.atlas->factor(spec.factor)->kind() != ManifoldKind::sphere2))
                r.fail(extend(gp, "factor"), "factor must name a sphere factor of the product");
            if (!product && m.atlas->kind() != ManifoldKind::sphere2)
                r.fail(gp, "lasso generators need a sphere or a product with sphere factors");
            specs.push_back(spec);
        }
        m.generators = specs;
    }

    if (j.contains("expect")) {
        m.expect = j["expect"];
        r.check_keys(m.expect, {"expect"}, {"verdict", "classification", "k", "chern"});
    }
    if (j.contains("options")) {
        m.options = j["options"];
        const Path op{"options"};
        r.check_keys(m.options, op, {"groupoid", "loops", "quotient", "sections", "samples", "filling_direction"});
        if (m.options.contains("loops")) r.integer(m.options["loops"], extend(op, "loops"));
        if (m.options.contains("sections")) r.integer(m.options["sections"], extend(op, "sections"));
        if (m.options.contains("samples")) r.integer(m.options["samples"], extend(op, "samples"));
        if (m.options.contains("groupoid")) r.string(m.options["groupoid"], extend(op, "groupoid"));
        if (m.options.contains("quotient") && !m.options["quotient"].is_boolean())
            r.fail(extend(op, "quotient"), "quotient must be a boolean");
        if (m.options.contains("filling_direction")) {
            Vec v = r.vector(m.options["filling_direction"], extend(op, "filling_direction"));
            if (v.size() != 3) r.fail(extend(op, "filling_direction"), "filling_direction needs three components");
        }
    }
    return m;
}

Manifest load_manifest(const std::string& path, std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw ManifestError(0, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str(), seed_override);
}

std::vector<SquareMap> generator_maps(const Manifest& m, const ChartPoint& p) {
    if (!m.generators) return default_generators(m.atlas, p);
    std::vector<SquareMap> out;
    for (const auto& g : *m.generators) {
        const double reach = g.reach > 0 ? g.reach : std::numbers::pi;
        if (m.atlas->kind() == ManifoldKind::sphere2) {
            Eigen::Vector3d q = m.atlas->embed(p);
            Eigen::Vector3d u = g.direction.value_or(default_direction(q));
            if ((u - u.dot(q) * q).norm() < 1e-8) u = default_direction(q);
            out.push_back(lasso_map(m.atlas, q, u, reach, g.orientation));
        } else {
            auto [p1, p2] = m.atlas->split_point(p);
            const ChartPoint& here = g.factor == 0 ? p1 : p2;
            const ChartPoint& other = g.factor == 0 ? p2 : p1;
            AtlasPtr sphere = m.atlas->factor(g.factor);
            Eigen::Vector3d q = sphere->embed(here);
            Eigen::Vector3d u = g.direction.value_or(default_direction(q));
            if ((u - u.dot(q) * q).norm() < 1e-8) u = default_direction(q);
            out.push_back(factor_map(m.atlas, lasso_map(sphere, q, u, reach, g.orientation), g.factor, other));
        }
    }
    return out;
}

}  // namespace aquant::cli
