#include "commands.hpp"

#include "selftest.hpp"

#include "aquant/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace aquant::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// Verdict and payload of one command run.
struct Outcome {
    std::string verdict;
    json result = json::object();
    std::vector<std::string> notes;
    std::vector<CsvTable> tables;
    bool inconclusive = false;
    bool failed = false;  // a check ran and did not pass
    // Values an expectation can be compared against.
    json observed = json::object();
};

struct Context {
    const Manifest* m = nullptr;
    Resolution res;
    Tolerances tol;
    std::uint64_t seed = 1;
    const RunOptions* options = nullptr;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string coords(const ChartPoint& p) {
    std::string s;
    for (int k = 0; k < p.x.size(); ++k) s += (k ? " " : "") + num(p.x(k));
    return s;
}

const Manifest& need_manifest(const Context& c) {
    if (!c.m) throw InvalidInput("this command needs a manifest (--manifest)");
    return *c.m;
}

int option_int(const Manifest& m, const char* key, int fallback) {
    return m.options.contains(key) ? m.options[key].get<int>() : fallback;
}

std::vector<std::vector<SphereGrid>> generator_grids(const Context& c) {
    const Manifest& m = *c.m;
    std::vector<std::vector<SphereGrid>> out;
    for (const auto& p : m.samples) out.push_back(sample_generators(*m.atlas, generator_maps(m, p), c.res));
    return out;
}

Cochain form_cochain(const Manifest& m) { return cochain_from_form(tangent_algebroid(m.atlas), m.form); }

CsvTable period_table(const std::vector<PeriodSample>& samples) {
    CsvTable t{"periods", {"sample", "chart", "x", "integrals", "classification", "generator", "iterations", "termination"}, {}};
    for (size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        std::string ints;
        for (size_t q = 0; q < s.integrals.size(); ++q) ints += (q ? " " : "") + num(s.integrals[q]);
        t.rows.push_back({std::to_string(k), std::to_string(s.point.chart), coords(s.point), ints,
                          to_string(s.group.classification), num(s.group.generator), std::to_string(s.group.iterations),
                          to_string(s.group.end)});
    }
    return t;
}

Outcome cmd_periods(const Context& c) {
    const Manifest& m = need_manifest(c);
    auto pair = DeskGroupoid::pair(m.atlas);
    Cochain c2 = form_cochain(m);
    const auto grids = generator_grids(c);
    Outcome o;
    std::vector<PeriodSample> samples;
    for (size_t k = 0; k < m.samples.size(); ++k)
        samples.push_back(period_group_at(*pair, c2, m.samples[k], grids[k], c.tol));
    const PeriodClass first = samples.front().group.classification;
    bool agree = true;
    for (const auto& s : samples) agree = agree && s.group.classification == first;
    o.result["samples"] = samples;
    o.tables.push_back(period_table(samples));
    if (agree) {
        o.verdict = to_string(first);
        o.observed["classification"] = o.verdict;
    } else {
        o.verdict = "inconclusive";
        o.inconclusive = true;
        o.notes.push_back("period classifications differ between sample points");
    }
    return o;
}

Outcome cmd_integrability(const Context& c) {
    const Manifest& m = need_manifest(c);
    const std::string g = m.options.value("groupoid", "pair");
    if (g != "pair") throw Unsupported("integrability runs on the pair groupoid of the manifest");
    auto pair = DeskGroupoid::pair(m.atlas);
    IntegrabilityReport rep = integrability_verdict(*pair, form_cochain(m), m.samples, generator_grids(c), c.tol);
    Outcome o;
    o.verdict = to_string(rep.verdict);
    o.inconclusive = rep.verdict == Integrability::inconclusive;
    o.result = rep;
    o.notes = rep.notes;
    o.tables.push_back(period_table(rep.samples));
    const PeriodClass first = rep.samples.front().group.classification;
    if (std::all_of(rep.samples.begin(), rep.samples.end(),
                    [&](const PeriodSample& s) { return s.group.classification == first; }))
        o.observed["classification"] = to_string(first);
    return o;
}

Outcome cmd_prequantize(const Context& c) {
    const Manifest& m = need_manifest(c);
    PrequantReport rep = prequantizable(m.atlas, m.form, m.samples, generator_grids(c), c.tol);
    Outcome o;
    o.verdict = to_string(rep.verdict);
    o.inconclusive = rep.verdict == PrequantVerdict::inconclusive;
    o.result = rep;
    o.notes = rep.notes;
    o.tables.push_back(period_table(rep.samples));
    if (rep.verdict == PrequantVerdict::prequantizable) o.observed["k"] = rep.k;
    return o;
}

Outcome cmd_check_cocycle(const Context& c) {
    const Manifest& m = need_manifest(c);
    Cochain c2 = form_cochain(m);
    std::vector<ChartPoint> pts = m.samples;
    for (const auto& p : random_points(*m.atlas, option_int(m, "samples", 20), c.seed + 1))
        pts.push_back(m.atlas->normalize(p));
    CocycleReport rep = is_cocycle(c2, pts);
    AlgebroidPtr ext = central_extension(c2);
    double jac = 0;
    for (const auto& p : pts) jac = std::max(jac, jacobi_residual(*ext, p));
    Outcome o;
    o.verdict = rep.verdict ? "cocycle" : "not_cocycle";
    o.result = {{"cocycle", rep},
                {"extension_jacobi_residual", jac},
                {"points", pts.size()},
                {"closedness_residual", m.form.closedness_residual(pts)}};
    if ((jac <= rep.tolerance) != rep.verdict)
        o.notes.push_back("Jacobi identity of the central extension disagrees with the cocycle residual");
    return o;
}

Outcome cmd_monodromy(const Context& c) {
    const Manifest& m = need_manifest(c);
    Cochain c2 = form_cochain(m);
    const auto grids = generator_grids(c);
    Outcome o;
    CsvTable t{"monodromy", {"sample", "generator", "r", "direct", "difference", "endpoint_defect"}, {}};
    json rows = json::array();
    double worst = 0;
    int count = 0;
    for (size_t k = 0; k < grids.size(); ++k)
        for (size_t q = 0; q < grids[k].size(); ++q) {
            MonodromyResult r = monodromy_r(c2, grids[k][q]);
            const double direct = integrate_over_sphere(m.form, grids[k][q]).value;
            const double diff = std::abs(r.value - direct);
            worst = std::max(worst, diff);
            ++count;
            rows.push_back({{"sample", k}, {"generator", q}, {"monodromy", r}, {"direct", direct}, {"difference", diff}});
            t.rows.push_back({std::to_string(k), std::to_string(q), num(r.value), num(direct), num(diff),
                              num(r.endpoint_defect)});
        }
    if (count == 0) o.notes.push_back("no generator spheres at the sample points");
    o.verdict = worst <= c.tol.r ? "agree" : "disagree";
    o.failed = worst > c.tol.r;
    o.result = {{"comparisons", rows}, {"max_difference", worst}, {"tolerance", c.tol.r}};
    o.tables.push_back(t);
    return o;
}

Outcome cmd_verify_multiplicative(const Context& c) {
    const Manifest& m = need_manifest(c);
    const std::string kind = m.options.value("groupoid", "pair");
    GroupoidPtr g;
    GroupoidForm w;
    if (kind == "pair") {
        g = DeskGroupoid::pair(m.atlas);
        w = pair_groupoid_form(m.form);
    } else if (kind == "pair_wrong_sign") {
        g = DeskGroupoid::pair(m.atlas);
        w = wrong_sign_pair_form(m.form);
    } else if (kind == "circle") {
        g = DeskGroupoid::circle_bundle(m.atlas);
        w = circle_angle_form(g);
    } else {
        throw InvalidInput("unknown groupoid option '" + kind + "' (pair, pair_wrong_sign, circle)");
    }
    const int n = option_int(m, "samples", 1000);
    constexpr double bound = 1e-10;
    MultiplicativityReport rep = multiplicativity_residual(*g, w, n, c.seed);
    InfinitesimalData inf = rho_star(*g, w, m.samples);
    Outcome o;
    o.verdict = rep.residual <= bound ? "multiplicative" : "not_multiplicative";
    o.result = {{"groupoid", g->name()},
                {"multiplicativity", rep},
                {"tolerance", bound},
                {"axiom_residual", groupoid_axiom_residual(*g, 50, c.seed + 1)},
                {"rho_star", {{"c1_residual", inf.c1_residual},
                              {"c2_residual", inf.c2_residual},
                              {"consistency_residual", inf.consistency_residual}}}};
    return o;
}

// Random section of the fiber with polynomial coefficients of degree two.
TensorField random_section(int rank, int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Polynomial> comps;
    for (int k = 0; k < rank; ++k) {
        Polynomial p = Polynomial::constant(d, u(rng));
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                std::vector<int> lin(d, 0), quad(d, 0);
                lin[i] = 1;
                quad[i] += 1;
                quad[j] += 1;
                if (j == i) p.add_term(u(rng), lin);
                p.add_term(u(rng), quad);
            }
        comps.push_back(p);
    }
    return TensorField::polynomial(comps, d);
}

Outcome cmd_reconstruct_theta(const Context& c) {
    const Manifest& m = need_manifest(c);
    AlgebroidPtr ext = a_omega(m.form);
    Cochain l = canonical_transgression(ext);
    Cochain pc = pullback_to_extension(*ext->extension_cocycle(), ext);
    const int d = m.atlas->dimension(), r = ext->rank(), n = c.res.n_t;
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    Vec v(d), w(d);
    for (int k = 0; k < d; ++k) {
        v(k) = u(rng);
        w(k) = u(rng);
    }
    // Path x0 + t v + 0.1 sin(pi t) w in the chart of the basepoint.
    const ChartPoint x0 = m.basepoint;
    BasePath base;
    std::vector<Vec> fiber;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        Vec a(r);
        a.head(d) = v + 0.1 * kPi * std::cos(kPi * t) * w;
        a(d) = 0.5 + std::cos(2 * kPi * t);
        base.points.push_back(ChartPoint{x0.chart, x0.x + t * v + 0.1 * std::sin(kPi * t) * w});
        fiber.push_back(a);
    }
    for (const auto& p : base.points)
        if (!m.atlas->in_domain(p.chart, p.x)) throw DomainError("test path leaves the chart of the basepoint");
    APath a = make_apath(ext, base, fiber, c.tol.path);

    PathVariation vert{std::vector<Vec>(n + 1, Vec::Zero(d)), std::vector<Vec>(n + 1, Vec::Unit(r, d))};
    const double theta_vert = theta_eval(l, pc, a, vert);
    const int sections = option_int(m, "sections", 5);
    CsvTable t{"theta", {"section", "theta", "direction_norm", "relative"}, {}};
    double worst = 0;
    for (int k = 0; k < sections; ++k) {
        VariationField eta([](double s) { return std::sin(kPi * s); }, [](double s) { return kPi * std::cos(kPi * s); },
                           random_section(r, d, rng));
        PathVariation X = action_direction(a, eta);
        const double th = theta_eval(l, pc, a, X);
        const double rel = std::abs(th) / std::max(X.norm(), 1e-300);
        worst = std::max(worst, rel);
        t.rows.push_back({std::to_string(k), num(th), num(X.norm()), num(rel)});
    }
    Outcome o;
    o.verdict = worst <= c.tol.basic ? "basic" : "not_basic";
    o.result = {{"theta_vertical", theta_vert},
                {"max_relative_theta_on_actions", worst},
                {"sections", sections},
                {"tolerance", c.tol.basic}};
    if (std::abs(theta_vert - 1.0) > 1e-6) o.notes.push_back("theta on the vertical direction differs from 1");
    o.tables.push_back(t);
    return o;
}

void require_sphere(const Manifest& m, const char* what) {
    if (m.atlas->kind() != ManifoldKind::sphere2) throw Unsupported(std::string(what) + " is available on sphere2 only");
}

Outcome cmd_holonomy(const Context& c) {
    const Manifest& m = need_manifest(c);
    require_sphere(m, "holonomy");
    PathBundle b = PathBundle::build(m.atlas, m.form, m.basepoint, c.res, c.tol);
    const bool quotient = m.options.value("quotient", false);
    std::optional<PathBundle> q;
    if (quotient) q = b.quotient_to_circle();
    const Eigen::Vector3d p = m.atlas->embed(m.basepoint);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> reach(0.3, 2.8);
    std::bernoulli_distribution flip(0.5);
    const int loops = option_int(m, "loops", 5);
    std::vector<SphereGrid> fills;
    CsvTable t{"holonomy", {"loop", "reach", "orientation", "raw", "value", "quotient_value"}, {}};
    json rows = json::array();
    for (int k = 0; k < loops; ++k) {
        Eigen::Vector3d v(g(rng), g(rng), g(rng));
        v = (v - v.dot(p) * p).normalized();
        const double rc = reach(rng);
        const int orient = flip(rng) ? 1 : -1;
        fills.push_back(filling_grid(*m.atlas, lasso_map(m.atlas, p, v, rc, orient), c.res));
        const SphereGrid& f = fills.back();
        HolonomyResult h = b.holonomy(f.row(f.n_eps()), f);
        json row{{"loop", k}, {"reach", rc}, {"orientation", orient}, {"holonomy", h}};
        std::string qv;
        if (q) {
            const double v2 = q->holonomy(f.row(f.n_eps()), f).value;
            row["quotient_value"] = v2;
            qv = num(v2);
        }
        rows.push_back(row);
        t.rows.push_back({std::to_string(k), num(rc), std::to_string(orient), num(h.raw), num(h.value), qv});
    }
    double worst = 0;
    for (int k = 0; k + 1 < loops; ++k) {
        SphereGrid f12 = concatenate_fillings(*m.atlas, fills[k], fills[k + 1]);
        const double h12 = b.holonomy(f12.row(f12.n_eps()), f12).value;
        const double h1 = b.holonomy(fills[k].row(fills[k].n_eps()), fills[k]).value;
        const double h2 = b.holonomy(fills[k + 1].row(fills[k + 1].n_eps()), fills[k + 1]).value;
        worst = std::max(worst, b.structural_group().distance(h12, h1 + h2));
    }
    Outcome o;
    o.verdict = worst <= 2 * c.tol.r ? "additive" : "not_additive";
    o.failed = worst > 2 * c.tol.r;
    o.result = {{"structural_group", b.structural_group().presentation()},
                {"periods", b.periods()},
                {"loops", rows},
                {"max_additivity_defect", worst},
                {"additivity_tolerance", 2 * c.tol.r}};
    if (q) o.result["quotient"] = {{"structural_group", q->structural_group().presentation()}, {"k", q->quotient_index()}};
    if (loops < 2) o.notes.push_back("fewer than two loops: additivity is not probed");
    o.tables.push_back(t);
    return o;
}

Outcome cmd_chern(const Context& c) {
    const Manifest& m = need_manifest(c);
    require_sphere(m, "chern");
    PathBundle b = PathBundle::build(m.atlas, m.form, m.basepoint, c.res, c.tol);
    const Eigen::Vector3d p = m.atlas->embed(m.basepoint);
    Eigen::Vector3d u = default_direction(p);
    if (m.options.contains("filling_direction")) {
        const auto d = m.options["filling_direction"].get<std::vector<double>>();
        Eigen::Vector3d v(d[0], d[1], d[2]);
        v -= v.dot(p) * p;
        if (v.norm() < 1e-8) throw InvalidInput("filling_direction is parallel to the basepoint");
        u = v.normalized();
    }
    SphereGrid upper = filling_grid(*m.atlas, lasso_map(m.atlas, p, u, kPi / 2, 1), c.res);
    SphereGrid lower = filling_grid(*m.atlas, lasso_map(m.atlas, p, -u, kPi / 2, 1), c.res);
    ChernResult ch = b.chern_number(upper, lower);
    Outcome o;
    o.verdict = "integral";
    o.result = {{"chern", ch}, {"structural_group", b.structural_group().presentation()}};
    o.observed["chern"] = ch.number;
    return o;
}

Outcome cmd_selftest(const Context& c) {
    std::vector<std::string> names = selftest_names();
    if (c.options->select) {
        names.clear();
        std::stringstream ss(*c.options->select);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) names.push_back(item);
    }
    std::vector<SelfCheck> checks = run_selftest(names, c.tol, c.res);
    Outcome o;
    CsvTable t{"selftest", {"check", "pass", "value", "threshold", "detail"}, {}};
    json rows = json::array();
    int failed = 0;
    for (const auto& s : checks) {
        failed += s.pass ? 0 : 1;
        rows.push_back({{"name", s.name}, {"pass", s.pass}, {"value", s.value}, {"threshold", s.threshold}, {"detail", s.detail}});
        t.rows.push_back({s.name, s.pass ? "true" : "false", num(s.value), num(s.threshold), s.detail});
    }
    o.verdict = failed ? "fail" : "pass";
    o.failed = failed > 0;
    o.result = {{"checks", rows}, {"failed", failed}, {"run", checks.size()}};
    o.tables.push_back(t);
    return o;
}

// A command and the verdicts it can return. A manifest verdict expectation
// outside this list belongs to another command and is not compared.
struct Command {
    std::function<Outcome(const Context&)> fn;
    std::vector<std::string> verdicts;
};

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"periods", {cmd_periods, {"trivial", "discrete", "indiscrete", "inconclusive"}}},
        {"integrability", {cmd_integrability, {"integrable", "non_integrable", "inconclusive"}}},
        {"prequantize", {cmd_prequantize, {"prequantizable", "not_prequantizable", "inconclusive"}}},
        {"check-cocycle", {cmd_check_cocycle, {"cocycle", "not_cocycle"}}},
        {"monodromy", {cmd_monodromy, {"agree", "disagree"}}},
        {"verify-multiplicative", {cmd_verify_multiplicative, {"multiplicative", "not_multiplicative"}}},
        {"reconstruct-theta", {cmd_reconstruct_theta, {"basic", "not_basic"}}},
        {"holonomy", {cmd_holonomy, {"additive", "not_additive"}}},
        {"chern", {cmd_chern, {"integral"}}},
        {"selftest", {cmd_selftest, {"pass", "fail"}}},
    };
    return table;
}

json base_report(const std::string& command, const Manifest* m, const Context& c) {
    json r;
    r["command"] = command;
    r["scenario"] = m ? json(m->scenario) : json(nullptr);
    r["manifold"] = m ? m->manifold_spec : json(nullptr);
    r["form"] = m ? m->form_spec : json(nullptr);
    r["seed"] = c.seed;
    r["tolerances"] = c.tol;
    r["resolution"] = c.res;
    r["expect"] = m ? m->expect : json::object();
    r["expectation_met"] = nullptr;
    r["notes"] = json::array();
    r["result"] = json::object();
    return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : commands()) n.push_back(k);
        return n;
    }();
    return names;
}

RunResult execute(const std::string& command, const Manifest* manifest, const RunOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult out;
    Context c;
    c.m = manifest;
    c.options = &options;
    if (manifest) {
        c.res = manifest->resolution;
        c.tol = manifest->tolerances;
        c.seed = manifest->seed;
    } else if (command == "selftest") {
        c.res = {160, 160};
    }
    if (options.seed) c.seed = *options.seed;
    try {
        if (options.n_t) c.res.n_t = *options.n_t;
        if (options.n_eps) c.res.n_eps = *options.n_eps;
        if (c.res.n_t < 4 || c.res.n_t % 2 || c.res.n_eps < 4 || c.res.n_eps % 2)
            throw InvalidInput("resolutions must be even and at least 4");
        for (const auto& [key, value] : options.tol_overrides) set_tolerance(c.tol, key, value);
    } catch (const Error& e) {
        out.report = base_report(command, manifest, c);
        out.report["verdict"] = "error";
        out.report["notes"].push_back(e.what());
        return out;
    }
    out.report = base_report(command, manifest, c);
    auto it = commands().find(command);
    if (it == commands().end()) {
        out.report["verdict"] = "error";
        out.report["notes"].push_back("unknown command: " + command);
        return out;
    }
    try {
        Outcome o = it->second.fn(c);
        out.report["verdict"] = o.verdict;
        out.report["result"] = o.result;
        for (const auto& n : o.notes) out.report["notes"].push_back(n);
        out.tables = std::move(o.tables);
        out.exit_code = o.failed ? 1 : (o.inconclusive ? 2 : 0);

        // Expectations are compared only against quantities the command produced.
        if (manifest && !manifest->expect.empty()) {
            bool met = true;
            int compared = 0;
            for (const auto& [key, want] : manifest->expect.items()) {
                const auto& vocab = it->second.verdicts;
                const bool own_verdict = key == "verdict" && want.is_string() &&
                                         std::find(vocab.begin(), vocab.end(), want.get<std::string>()) != vocab.end();
                json got = own_verdict ? json(o.verdict) : (o.observed.contains(key) ? o.observed[key] : json());
                if (got.is_null()) {
                    out.report["notes"].push_back("expectation '" + key + "' does not apply to this command");
                    continue;
                }
                ++compared;
                if (got != want) {
                    met = false;
                    out.report["notes"].push_back("expected " + key + " " + want.dump() + ", got " + got.dump());
                }
            }
            if (compared > 0) out.report["expectation_met"] = met;
            if (!met) out.exit_code = 1;
        }
    } catch (const Refusal& e) {
        out.report["verdict"] = "refused";
        out.report["notes"].push_back(e.what());
        out.exit_code = 1;
    } catch (const std::exception& e) {
        out.report["verdict"] = "error";
        out.report["notes"].push_back(e.what());
        out.exit_code = 1;
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::string to_csv(const CsvTable& t) {
    auto field = [](const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    };
    auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (size_t k = 0; k < row.size(); ++k) s += (k ? "," : "") + field(row[k]);
        return s + "\r\n";
    };
    std::string s = line(t.header);
    for (const auto& r : t.rows) s += line(r);
    return s;
}

int run(const std::string& command, const std::optional<std::string>& manifest_path, const RunOptions& options) {
    namespace fs = std::filesystem;
    RunResult res;
    std::optional<Manifest> manifest;
    std::string load_error;
    try {
        if (manifest_path) manifest = load_manifest(*manifest_path, options.seed);
    } catch (const ManifestError& e) {
        load_error = e.what();
    } catch (const Error& e) {
        load_error = e.what();
    }
    if (!load_error.empty()) {
        res.report = {{"command", command}, {"verdict", "error"}, {"notes", {load_error}}, {"expectation_met", nullptr}};
        res.exit_code = 1;
    } else {
        res = execute(command, manifest ? &*manifest : nullptr, options);
    }

    try {
        fs::create_directories(options.out_dir);
        auto write = [&](const std::string& name, const std::string& text) {
            std::ofstream f(fs::path(options.out_dir) / name, std::ios::binary);
            f << text;
            if (!f) throw Error("cannot write " + name);
        };
        if (options.format != "csv") write("report.json", dump_report(res.report));
        if (options.format != "json")
            for (const auto& t : res.tables) write(t.name + ".csv", to_csv(t));
        write("timing.json", dump_report(json{{"command", command}, {"wall_seconds", res.wall_seconds}}));
    } catch (const std::exception& e) {
        std::cerr << "aquant: " << e.what() << "\n";
        return 1;
    }
    std::cout << command << ": " << res.report.value("verdict", std::string("error")) << " (exit " << res.exit_code
              << ")\n";
    for (const auto& n : res.report.value("notes", json::array())) std::cout << "  " << n.get<std::string>() << "\n";
    return res.exit_code;
}

}  // namespace aquant::cli
