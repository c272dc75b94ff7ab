#include "aquant/prequant.hpp"

#include <algorithm>
#include <cmath>

namespace aquant {

std::string to_string(PrequantVerdict v) {
    switch (v) {
        case PrequantVerdict::prequantizable: return "prequantizable";
        case PrequantVerdict::not_prequantizable: return "not_prequantizable";
        case PrequantVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

PrequantReport prequantizable(const std::vector<PeriodSample>& samples, const Tolerances& tol) {
    PrequantReport rep;
    rep.samples = samples;
    rep.tol_integer = tol.integer;
    bool indiscrete = false;
    std::vector<int> ks;
    for (const auto& s : samples) {
        const PeriodGroup& g = s.group;
        if (g.classification == PeriodClass::indiscrete) {
            indiscrete = true;
        } else if (g.classification == PeriodClass::discrete) {
            const long k = std::max(1L, std::lround(g.generator));
            rep.max_integer_defect = std::max(rep.max_integer_defect, std::abs(g.generator - static_cast<double>(k)));
            ks.push_back(static_cast<int>(k));
        }
    }
    if (indiscrete) {
        rep.verdict = PrequantVerdict::not_prequantizable;
        rep.notes.push_back("period group is dense at some sample point");
        return rep;
    }
    if (rep.max_integer_defect > 10 * tol.integer) {
        rep.verdict = PrequantVerdict::not_prequantizable;
        rep.notes.push_back("period generator is not an integer");
        return rep;
    }
    if (rep.max_integer_defect > tol.integer) {
        rep.verdict = PrequantVerdict::inconclusive;
        rep.notes.push_back("period generator lies in the ambiguity band between tol and 10 tol of an integer");
        return rep;
    }
    rep.verdict = PrequantVerdict::prequantizable;
    if (ks.empty()) {
        rep.notes.push_back("trivial periods");
    } else if (std::all_of(ks.begin(), ks.end(), [&](int k) { return k == ks.front(); })) {
        rep.k = ks.front();
    } else {
        rep.notes.push_back("integral generators differ between sample points; no common k");
    }
    if (ks.size() != samples.size() && !ks.empty())
        rep.notes.push_back("period groups are trivial at some samples and discrete at others");
    return rep;
}

PrequantReport prequantizable(AtlasPtr atlas, const TwoFormField& omega, const std::vector<ChartPoint>& points,
                              const std::vector<std::vector<SphereGrid>>& generators, const Tolerances& tol) {
    if (points.size() != generators.size()) throw InvalidInput("one generator list is needed per sample point");
    GroupoidPtr pair = DeskGroupoid::pair(atlas);
    Cochain c = cochain_from_form(pair->algebroid(), omega);
    std::vector<PeriodSample> samples;
    for (size_t k = 0; k < points.size(); ++k) samples.push_back(period_group_at(*pair, c, points[k], generators[k], tol));
    return prequantizable(samples, tol);
}

ChartPoint default_basepoint(const Atlas& atlas) {
    switch (atlas.kind()) {
        case ManifoldKind::sphere2: return atlas.from_embedding(Eigen::Vector3d(1, 0, 0));
        case ManifoldKind::product:
            return atlas.join_point(default_basepoint(*atlas.factor(0)), default_basepoint(*atlas.factor(1)));
        default: return ChartPoint{0, Vec::Zero(atlas.dimension())};
    }
}

namespace {

bool contains_torus(const Atlas& atlas) {
    if (atlas.kind() == ManifoldKind::torus2) return true;
    if (atlas.kind() == ManifoldKind::product) return contains_torus(*atlas.factor(0)) || contains_torus(*atlas.factor(1));
    return false;
}

bool near_antipodal(const Atlas& atlas, const ChartPoint& p, const ChartPoint& q) {
    switch (atlas.kind()) {
        case ManifoldKind::sphere2: return (atlas.embed(p) + atlas.embed(q)).norm() < 1e-3;
        case ManifoldKind::product: {
            auto [p1, p2] = atlas.split_point(p);
            auto [q1, q2] = atlas.split_point(q);
            return near_antipodal(*atlas.factor(0), p1, q1) || near_antipodal(*atlas.factor(1), p2, q2);
        }
        default: return false;
    }
}

// Point at parameter e on the interpolation from p to q. Spheres use
// spherical interpolation, or a normalized chord pushed off along n.
ChartPoint interpolate(const Atlas& atlas, const ChartPoint& p, const ChartPoint& q, double e, const Vec* n) {
    switch (atlas.kind()) {
        case ManifoldKind::euclidean: {
            Vec qx = atlas.to_chart(q, p.chart).x;
            return ChartPoint{p.chart, (1 - e) * p.x + e * qx};
        }
        case ManifoldKind::sphere2: {
            const Vec P = atlas.embed(p), Q = atlas.embed(q);
            Vec v;
            if (n) {
                v = (1 - e) * P + e * Q + e * (1 - e) * (*n);
                if (v.norm() < 1e-6) throw DivergenceError("perturbed interpolation passes through the origin");
            } else {
                const double ang = std::acos(std::clamp(P.dot(Q), -1.0, 1.0));
                if (ang < 1e-12) {
                    v = (1 - e) * P + e * Q;
                } else {
                    v = (std::sin((1 - e) * ang) * P + std::sin(e * ang) * Q) / std::sin(ang);
                }
            }
            return atlas.from_embedding(v.normalized());
        }
        case ManifoldKind::product: {
            auto [p1, p2] = atlas.split_point(p);
            auto [q1, q2] = atlas.split_point(q);
            return atlas.join_point(interpolate(*atlas.factor(0), p1, q1, e, n),
                                    interpolate(*atlas.factor(1), p2, q2, e, n));
        }
        case ManifoldKind::torus2: break;
    }
    throw Unsupported("no homotopy strategy on the torus");
}

int even_at_least(int n) { return n % 2 == 0 ? n : n + 1; }

}  // namespace

PathBundle PathBundle::build(AtlasPtr atlas, TwoFormField omega, ChartPoint x0, const Resolution& res,
                             const Tolerances& tol) {
    auto grids = sample_generators(*atlas, default_generators(atlas, x0), res);
    return build(std::move(atlas), std::move(omega), std::move(x0), grids, res, tol);
}

PathBundle PathBundle::build(AtlasPtr atlas, TwoFormField omega, ChartPoint x0, const std::vector<SphereGrid>& generators,
                             const Resolution& res, const Tolerances& tol) {
    if (contains_torus(*atlas))
        throw Refusal("path bundles are built on simply connected manifolds only; the torus is excluded");
    if (!omega.declared_closed()) throw InvalidInput("path bundle needs a closed 2-form");
    std::vector<double> integrals;
    for (const auto& g : generators) {
        if (atlas->distance(g.at(0, 0), x0) > 1e-8) throw BoundaryError("generator sphere is not based at x0");
        integrals.push_back(integrate_over_sphere(omega, g).value);
    }
    PeriodGroup periods = reduce_period_group(integrals, tol.gen, tol.euclid_cap);
    if (periods.classification == PeriodClass::indiscrete)
        throw Refusal("period group is dense: the quotient of paths is not a smooth principal bundle");
    PathBundle b;
    b.atlas_ = std::move(atlas);
    b.omega_ = std::move(omega);
    b.x0_ = b.atlas_->normalize(x0);
    b.structural_ = StructuralGroup{periods};
    b.res_ = res;
    b.tol_ = tol;
    return b;
}

PathBundleElement PathBundle::identity() const { return PathBundleElement{constant_path(x0_, res_.n_t), 0.0}; }

SphereGrid PathBundle::homotopy(const BasePath& g0_in, const BasePath& g1_in, std::string* strategy) const {
    const int n = even_at_least(res_.n_t);
    BasePath g0 = resample(*atlas_, g0_in, n), g1 = resample(*atlas_, g1_in, n);
    if (atlas_->distance(g0.start(), x0_) > 1e-10 || atlas_->distance(g1.start(), x0_) > 1e-10)
        throw BoundaryError("bundle paths must start at the basepoint");
    if (atlas_->distance(g0.end(), g1.end()) > 1e-10) throw BoundaryError("paths have different endpoints");
    bool antipodal = false;
    for (int i = 0; i <= n; ++i) antipodal = antipodal || near_antipodal(*atlas_, g0.points[i], g1.points[i]);
    auto build_grid = [&](const Vec* push) {
        return SphereGrid::from_map(
            *atlas_, even_at_least(res_.n_eps), n,
            [&](double e, double t) {
                const int i = static_cast<int>(std::lround(t * n));
                return interpolate(*atlas_, g0.points[i], g1.points[i], e, push);
            },
            GridMarker::fixed_endpoints);
    };
    if (!antipodal) {
        if (strategy) *strategy = "interpolation";
        return build_grid(nullptr);
    }
    // Near-antipodal samples make spherical interpolation ill-defined; push
    // the chord off along a fixed direction, trying a second one on failure.
    const Vec pushes[2] = {Eigen::Vector3d(0.36, -0.48, 0.8), Eigen::Vector3d(-0.64, 0.6, 0.48)};
    for (const Vec& push : pushes) {
        try {
            if (strategy) *strategy = "perturbed_interpolation";
            return build_grid(&push);
        } catch (const DivergenceError&) {
        }
    }
    throw DivergenceError("homotopy strategy failed on antipodal samples");
}

BundleEquivalence PathBundle::equivalence_test(const PathBundleElement& e0, const PathBundleElement& e1) const {
    BundleEquivalence out;
    SphereGrid h = homotopy(e0.path, e1.path, &out.strategy);
    QuadratureResult q = integrate_over_homotopy(omega_, h);
    out.integral = q.value;
    out.warnings = q.warnings;
    out.r_difference = e1.r - e0.r;
    out.defect = periods().distance_to_group(out.r_difference - out.integral);
    out.verdict = out.defect <= tol_.r;
    return out;
}

PathBundleElement PathBundle::act(const PathBundleElement& e, double s) const { return PathBundleElement{e.path, e.r + s}; }

PathBundleElement PathBundle::transport(const PathBundleElement& e, const BasePath& extension) const {
    if (atlas_->distance(e.path.end(), extension.start()) > 1e-8)
        throw BoundaryError("extension does not start at the endpoint of the element");
    const int n = even_at_least(std::max(e.path.intervals(), res_.n_t));
    return PathBundleElement{concatenate(*atlas_, e.path, extension, n), e.r};
}

HolonomyResult PathBundle::holonomy(const BasePath& loop, const SphereGrid& filling) const {
    if (atlas_->distance(loop.start(), x0_) > 1e-8 || atlas_->distance(loop.end(), x0_) > 1e-8)
        throw BoundaryError("holonomy needs a loop at the basepoint");
    for (int i = 0; i <= filling.n_t(); ++i)
        if (atlas_->distance(filling.at(0, i), x0_) > 1e-8)
            throw BoundaryError("filling does not start at the constant path");
    BasePath last = filling.row(filling.n_eps());
    BasePath target = resample(*atlas_, loop, filling.n_t());
    const double match = loop.intervals() == filling.n_t() ? 1e-8 : 1e-6;
    for (int i = 0; i <= filling.n_t(); ++i)
        if (atlas_->distance(last.points[i], target.points[i]) > match)
            throw BoundaryError("filling does not end at the loop");
    QuadratureResult q = integrate_over_homotopy(omega_, filling);
    HolonomyResult h;
    h.raw = -q.value;
    h.value = structural_.reduce(h.raw);
    h.warnings = q.warnings;
    return h;
}

ChernResult PathBundle::chern_number(const SphereGrid& upper, const SphereGrid& lower) const {
    if (upper.n_t() != lower.n_t()) throw InvalidInput("fillings need a common sample count");
    BasePath a = upper.row(upper.n_eps()), b = reverse(lower.row(lower.n_eps()));
    for (int i = 0; i <= upper.n_t(); ++i)
        if (atlas_->distance(a.points[i], b.points[i]) > 1e-6)
            throw BoundaryError("lower filling does not bound the reversed loop of the upper one");
    ChernResult c;
    c.integral = integrate_over_homotopy(omega_, upper).value + integrate_over_homotopy(omega_, lower).value;
    c.number = static_cast<int>(std::lround(c.integral));
    if (std::abs(c.integral - c.number) > 1e-3)
        throw ConsistencyError("sphere integral " + std::to_string(c.integral) + " is not an integer");
    return c;
}

PathBundle PathBundle::quotient_to_circle() const {
    const PeriodGroup& p = periods();
    int k = 0;
    if (p.classification == PeriodClass::discrete) {
        const long r = std::lround(p.generator);
        if (r < 1 || std::abs(p.generator - static_cast<double>(r)) > tol_.integer)
            throw Refusal("form is not prequantizable: period generator " + p.describe() + " is not an integer");
        k = static_cast<int>(r);
    } else if (p.classification != PeriodClass::trivial) {
        throw Refusal("form is not prequantizable");
    }
    PathBundle b = *this;
    b.structural_ = StructuralGroup{reduce_period_group({1.0}, tol_.gen, tol_.euclid_cap)};
    b.quotient_index_ = k;
    return b;
}

SphereGrid filling_grid(const Atlas& atlas, const SquareMap& g, const Resolution& res) {
    return sample_map(atlas, g, res.n_eps, res.n_t, GridMarker::fixed_endpoints);
}

SphereGrid concatenate_fillings(const Atlas& atlas, const SphereGrid& first, const SphereGrid& second) {
    if (first.n_eps() != second.n_eps() || first.n_t() != second.n_t())
        throw InvalidInput("fillings need a common resolution");
    std::vector<BasePath> rows;
    for (int j = 0; j <= first.n_eps(); ++j)
        rows.push_back(concatenate(atlas, first.row(j), second.row(j), even_at_least(first.n_t())));
    return SphereGrid::from_rows(rows, GridMarker::fixed_endpoints);
}

}  // namespace aquant
