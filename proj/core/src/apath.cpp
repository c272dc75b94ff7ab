#include "aquant/apath.hpp"

#include "parallel.hpp"

#include <cmath>
#include <string>

namespace aquant {

namespace {

struct Interp {
    int first = 0;
    std::array<double, 4> w{};
};

// Four-point Lagrange weights at u = s * n on nodes first..first+3.
Interp interp_weights(double s, int n) {
    Interp r;
    const double u = std::clamp(s, 0.0, 1.0) * n;
    const int i = std::min(static_cast<int>(std::floor(u)), n - 1);
    r.first = std::clamp(i - 1, 0, n - 3);
    for (int m = 0; m < 4; ++m) {
        double w = 1.0;
        for (int q = 0; q < 4; ++q)
            if (q != m) w *= (u - (r.first + q)) / static_cast<double>(m - q);
        r.w[m] = w;
    }
    return r;
}

}  // namespace

Connection::Connection(AlgebroidPtr algebroid, TensorField christoffel)
    : algebroid_(std::move(algebroid)), christoffel_(std::move(christoffel)) {
    const int r = algebroid_->rank(), d = algebroid_->dimension();
    if (christoffel_.components() != r * d * r || christoffel_.dimension() != d)
        throw InvalidInput("Christoffel field has the wrong shape");
}

Connection Connection::flat(AlgebroidPtr algebroid) {
    const int r = algebroid->rank(), d = algebroid->dimension();
    return Connection(algebroid, TensorField::zero(r * d * r, d));
}

Mat Connection::contract(int chart, const Vec& x, const Vec& v) const {
    const int r = algebroid_->rank(), d = algebroid_->dimension();
    Vec g = christoffel_.value(chart, x);
    Mat m = Mat::Zero(r, r);
    for (int k = 0; k < r; ++k)
        for (int mu = 0; mu < d; ++mu)
            for (int i = 0; i < r; ++i) m(k, i) += g((k * d + mu) * r + i) * v(mu);
    return m;
}

Vec a_torsion(const Connection& conn, const ChartPoint& p, const Vec& a, const Vec& b) {
    const auto& A = *conn.algebroid();
    Mat rho = A.anchor(p);
    return conn.contract(p.chart, p.x, rho * a) * b - conn.contract(p.chart, p.x, rho * b) * a -
           A.structure_bracket(p.chart, p.x, a, b);
}

double APath::max_fiber() const {
    double m = 0.0;
    for (const auto& v : fiber) m = std::max(m, v.norm());
    return m;
}

double APath::residual() const {
    const Atlas& atlas = *algebroid->atlas();
    const int n = intervals();
    if (algebroid->dimension() == 0 || n < 4) return 0.0;
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
        Vec d = path_derivative(atlas, base, i);
        worst = std::max(worst, (d - algebroid->anchor(base.points[i]) * fiber[i]).norm());
    }
    return worst / std::max(1.0, max_fiber());
}

APath make_apath(AlgebroidPtr algebroid, BasePath base, std::vector<Vec> fiber, double tol) {
    if (base.points.size() != fiber.size()) throw InvalidInput("A-path base and fiber sample counts differ");
    for (const auto& v : fiber)
        if (v.size() != algebroid->rank()) throw InvalidInput("A-path fiber value has the wrong rank");
    APath a{std::move(algebroid), std::move(base), std::move(fiber)};
    const double res = a.residual();
    if (res > tol)
        throw InvalidInput("not an A-path: residual " + std::to_string(res) + " exceeds " + std::to_string(tol));
    return a;
}

APath zero_path(AlgebroidPtr algebroid, const ChartPoint& p, int n) {
    const int r = algebroid->rank();
    return APath{algebroid, constant_path(p, n), std::vector<Vec>(n + 1, Vec::Zero(r))};
}

APathSample sample_apath(const APath& a, double s) {
    const Atlas& atlas = *a.algebroid->atlas();
    const int n = a.intervals();
    if (n < 3) throw InvalidInput("interpolating an A-path needs at least three intervals");
    const Interp w = interp_weights(s, n);
    const int chart = a.base.points[std::clamp(static_cast<int>(std::lround(s * n)), 0, n)].chart;
    Vec x = Vec::Zero(atlas.dimension());
    Vec f = Vec::Zero(a.algebroid->rank());
    for (int m = 0; m < 4; ++m) {
        const ChartPoint& p = a.base.points[w.first + m];
        x += w.w[m] * (p.chart == chart ? p.x : atlas.transition(p.chart, chart, p.x));
        f += w.w[m] * a.algebroid->transport_fiber(p, chart, a.fiber[w.first + m]);
    }
    ChartPoint q{chart, x};
    const int pc = atlas.preferred_chart(q);
    if (pc != chart) {
        f = a.algebroid->transport_fiber(q, pc, f);
        q = atlas.to_chart(q, pc);
    }
    return {q, f};
}

SphereGrid APathFamily::base_grid(GridMarker marker) const {
    std::vector<BasePath> b;
    for (const auto& r : rows) b.push_back(r.base);
    return SphereGrid::from_rows(b, marker);
}

namespace {

// Node data expressed in one chart: point, fiber, eps-derivatives.
struct Local {
    Vec x, a, da, dg;
};

class BSolver {
public:
    BSolver(const APathFamily& family, const Connection& conn)
        : fam_(family), conn_(conn), A_(*family.rows.front().algebroid), atlas_(*A_.atlas()) {
        m_ = family.n_eps();
        n_ = family.n_t();
        if (m_ < 4 || n_ < 4) throw InvalidInput("solve_b needs at least four intervals in each direction");
        for (const auto& r : family.rows)
            if (r.intervals() != n_) throw InvalidInput("family rows have different sample counts");
        own_.resize(static_cast<size_t>(m_ + 1) * (n_ + 1));
        detail::parallel_for(m_ + 1, [&](int j) {
            for (int i = 0; i <= n_; ++i) own_[j * (n_ + 1) + i] = compute(j, i, point(j, i).chart);
        });
    }

    const ChartPoint& point(int j, int i) const { return fam_.rows[j].base.points[i]; }

    Local compute(int j, int i, int chart) const {
        Local l;
        const ChartPoint& p = point(j, i);
        l.x = p.chart == chart ? p.x : atlas_.transition(p.chart, chart, p.x);
        l.a = A_.transport_fiber(p, chart, fam_.rows[j].fiber[i]);
        const Stencil s = derivative_stencil(j, m_);
        l.da = Vec::Zero(A_.rank());
        l.dg = Vec::Zero(atlas_.dimension());
        for (int q = 0; q < 5; ++q) {
            if (s.weights[q] == 0.0) continue;
            const int jj = s.first + q;
            const ChartPoint& pq = point(jj, i);
            l.da += s.weights[q] * A_.transport_fiber(pq, chart, fam_.rows[jj].fiber[i]);
            l.dg += s.weights[q] * (pq.chart == chart ? pq.x : atlas_.transition(pq.chart, chart, pq.x));
        }
        l.da *= m_;
        l.dg *= m_;
        return l;
    }

    Local fetch(int j, int i, int chart) const {
        if (point(j, i).chart == chart) return own_[j * (n_ + 1) + i];
        return compute(j, i, chart);
    }

    Vec rhs(int chart, const Local& l, const Vec& b) const {
        Mat rho = A_.anchor(chart, l.x);
        Vec ra = rho * l.a, rb = rho * b;
        Vec torsion = conn_.contract(chart, l.x, ra) * b - conn_.contract(chart, l.x, rb) * l.a -
                      A_.structure_bracket(chart, l.x, l.a, b);
        return l.da + conn_.contract(chart, l.x, l.dg) * l.a - conn_.contract(chart, l.x, ra) * b + torsion;
    }

    // Integrates row j with step `stride` samples; returns b at the visited nodes.
    std::vector<Vec> row(int j, int stride) const {
        const int r = A_.rank();
        std::vector<Vec> b(n_ + 1, Vec::Zero(r));
        const double h = static_cast<double>(stride) / n_;
        Vec cur = Vec::Zero(r);
        for (int i = 0; i + stride <= n_; i += stride) {
            const int c = point(j, i).chart;
            const Local l0 = fetch(j, i, c);
            const Local l1 = fetch(j, i + stride, c);
            Local lm;
            if (stride == 2) {
                lm = fetch(j, i + 1, c);
            } else {
                const MidpointWeights w = midpoint_weights(i, n_);
                lm = {Vec::Zero(l0.x.size()), Vec::Zero(r), Vec::Zero(r), Vec::Zero(l0.dg.size())};
                for (int q = 0; q < 4; ++q) {
                    Local lq = fetch(j, w.first + q, c);
                    lm.x += w.weights[q] * lq.x;
                    lm.a += w.weights[q] * lq.a;
                    lm.da += w.weights[q] * lq.da;
                    lm.dg += w.weights[q] * lq.dg;
                }
            }
            Vec k1 = rhs(c, l0, cur);
            Vec k2 = rhs(c, lm, cur + 0.5 * h * k1);
            Vec k3 = rhs(c, lm, cur + 0.5 * h * k2);
            Vec k4 = rhs(c, l1, cur + h * k3);
            cur += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            if (!cur.allFinite() || cur.norm() > 1e8)
                throw DivergenceError("b-equation diverged on row " + std::to_string(j) + " at sample " +
                                      std::to_string(i + stride));
            const int c1 = point(j, i + stride).chart;
            if (c1 != c) cur = A_.frame_transition(c, c1, l1.x) * cur;
            b[i + stride] = cur;
        }
        return b;
    }

    int m() const { return m_; }
    int n() const { return n_; }

private:
    const APathFamily& fam_;
    const Connection& conn_;
    const Algebroid& A_;
    const Atlas& atlas_;
    int m_ = 0, n_ = 0;
    std::vector<Local> own_;
};

}  // namespace

BSolution solve_b(const APathFamily& family, const Connection& conn) {
    if (family.rows.size() < 2) throw InvalidInput("family needs at least two rows");
    BSolver solver(family, conn);
    const int m = solver.m(), n = solver.n();
    BSolution out;
    out.b.resize(m + 1);
    std::vector<double> defect(m + 1, 0.0), err(m + 1, 0.0);
    detail::parallel_for(m + 1, [&](int j) {
        out.b[j] = solver.row(j, 1);
        defect[j] = out.b[j][n].norm();
        if (n % 2 == 0 && n >= 8) err[j] = (out.b[j][n] - solver.row(j, 2)[n]).norm() / 15.0;
    });
    for (int j = 0; j <= m; ++j) {
        out.endpoint_defect = std::max(out.endpoint_defect, defect[j]);
        out.error_estimate = std::max(out.error_estimate, err[j]);
    }
    return out;
}

HomotopyReport is_homotopy(const APathFamily& family, const Connection& conn, const Tolerances& tol) {
    HomotopyReport rep;
    const Atlas& atlas = *family.rows.front().algebroid->atlas();
    double amax = 0.0;
    for (const auto& r : family.rows) {
        rep.row_residual = std::max(rep.row_residual, r.residual());
        amax = std::max(amax, r.max_fiber());
        rep.base_endpoint_drift = std::max(rep.base_endpoint_drift, atlas.distance(r.base.start(), family.rows[0].base.start()));
        rep.base_endpoint_drift = std::max(rep.base_endpoint_drift, atlas.distance(r.base.end(), family.rows[0].base.end()));
    }
    BSolution b = solve_b(family, conn);
    rep.endpoint_defect = b.endpoint_defect;
    rep.error_estimate = b.error_estimate;
    rep.threshold = tol.hom * std::max(1.0, amax);
    rep.verdict = rep.row_residual <= tol.path && rep.base_endpoint_drift <= 1e-8 && rep.endpoint_defect <= rep.threshold;
    return rep;
}

VariationField::VariationField(std::function<double(double)> s, std::function<double(double)> ds, TensorField section)
    : s_(std::move(s)), ds_(std::move(ds)), section_(std::move(section)) {
    if (std::abs(s_(0.0)) > 1e-14 || std::abs(s_(1.0)) > 1e-14)
        throw InvalidInput("variation field must vanish at t = 0 and t = 1");
    if (section_.dimension() > 0 && section_.max_order() < 1)
        throw MissingDerivative("variation field needs the first derivatives of its section");
}

Vec VariationField::value(double t, const ChartPoint& p) const { return s_(t) * section_.value(p.chart, p.x); }
Vec VariationField::dt(double t, const ChartPoint& p) const { return ds_(t) * section_.value(p.chart, p.x); }
Mat VariationField::dx(double t, const ChartPoint& p) const {
    if (section_.dimension() == 0) return Mat::Zero(section_.components(), 0);
    return s_(t) * section_.evaluate(p.chart, p.x, 1).gradient;
}

double PathVariation::norm() const {
    double s = 0.0;
    for (const auto& v : base) s = std::max(s, v.norm());
    for (const auto& v : fiber) s = std::max(s, v.norm());
    return s;
}

PathVariation action_direction(const APath& a, const VariationField& eta) {
    const auto& A = *a.algebroid;
    const int n = a.intervals();
    PathVariation v;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const ChartPoint& p = a.base.points[i];
        Mat rho = A.anchor(p);
        Vec e = eta.value(t, p);
        v.base.push_back(rho * e);
        v.fiber.push_back(eta.dt(t, p) + A.structure_bracket(p.chart, p.x, a.fiber[i], e) + eta.dx(t, p) * (rho * a.fiber[i]));
    }
    return v;
}

APath xi_flow(const APath& a0, const VariationField& eta, double eps, int steps) {
    const auto& A = *a0.algebroid;
    const Atlas& atlas = *A.atlas();
    const int n = a0.intervals();
    if (steps < 1) throw InvalidInput("xi_flow needs at least one step");
    APath out = a0;
    const double h = eps / steps;
    detail::parallel_for(n + 1, [&](int i) {
        const double t = static_cast<double>(i) / n;
        ChartPoint p = a0.base.points[i];
        Vec a = a0.fiber[i];
        auto f = [&](int chart, const Vec& x, const Vec& av, Vec& dx, Vec& da) {
            ChartPoint q{chart, x};
            Mat rho = A.anchor(q);
            Vec e = eta.value(t, q);
            dx = rho * e;
            da = eta.dt(t, q) + A.structure_bracket(chart, x, av, e) + eta.dx(t, q) * (rho * av);
        };
        for (int s = 0; s < steps; ++s) {
            Vec dx1, da1, dx2, da2, dx3, da3, dx4, da4;
            f(p.chart, p.x, a, dx1, da1);
            f(p.chart, p.x + 0.5 * h * dx1, a + 0.5 * h * da1, dx2, da2);
            f(p.chart, p.x + 0.5 * h * dx2, a + 0.5 * h * da2, dx3, da3);
            f(p.chart, p.x + h * dx3, a + h * da3, dx4, da4);
            p.x += h / 6.0 * (dx1 + 2 * dx2 + 2 * dx3 + dx4);
            a += h / 6.0 * (da1 + 2 * da2 + 2 * da3 + da4);
            if (!p.x.allFinite() || !a.allFinite()) throw DivergenceError("xi_flow left the chart domain");
            const int pc = atlas.preferred_chart(p);
            if (pc != p.chart) {
                a = A.transport_fiber(p, pc, a);
                p = atlas.to_chart(p, pc);
            }
        }
        out.base.points[i] = p;
        out.fiber[i] = a;
    });
    return out;
}

APath concatenate(const APath& first, const APath& second) {
    const Atlas& atlas = *first.algebroid->atlas();
    if (atlas.distance(second.base.end(), first.base.start()) > 1e-8)
        throw BoundaryError("concatenated A-paths do not meet");
    const int n = 2 * std::max(first.intervals(), second.intervals());
    APath out{first.algebroid, {}, {}};
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const bool early = t <= 0.5;
        const double u = early ? 2 * t : 2 * t - 1;
        APathSample s = sample_apath(early ? second : first, bump(u));
        out.base.points.push_back(s.point);
        out.fiber.push_back(2.0 * bump_derivative(u) * s.fiber);
    }
    return out;
}

APath reverse(const APath& a) {
    APath out{a.algebroid, reverse(a.base), {}};
    for (auto it = a.fiber.rbegin(); it != a.fiber.rend(); ++it) out.fiber.push_back(-*it);
    return out;
}

APathFamily reparametrized_family(const APath& a, const std::function<double(double, double)>& psi,
                                  const std::function<double(double, double)>& dpsi_dt, int n_eps) {
    APathFamily fam;
    const int n = a.intervals();
    for (int j = 0; j <= n_eps; ++j) {
        const double eps = static_cast<double>(j) / n_eps;
        APath row{a.algebroid, {}, {}};
        for (int i = 0; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            APathSample s = sample_apath(a, psi(eps, t));
            row.base.points.push_back(s.point);
            row.fiber.push_back(dpsi_dt(eps, t) * s.fiber);
        }
        fam.rows.push_back(std::move(row));
    }
    return fam;
}

APathFamily unit_law_family(const APath& a, int n_eps) {
    // psi_1 stays at 0 on [0, 1/2], then follows the bump reparametrization.
    auto psi1 = [](double t) { return t <= 0.5 ? 0.0 : bump(2 * t - 1); };
    auto dpsi1 = [](double t) { return t <= 0.5 ? 0.0 : 2 * bump_derivative(2 * t - 1); };
    return reparametrized_family(
        a, [=](double e, double t) { return (1 - e) * t + e * psi1(t); },
        [=](double e, double t) { return (1 - e) + e * dpsi1(t); }, n_eps);
}

APathFamily inverse_law_family(const APath& a, int n_eps) {
    // psi_2 runs 0 -> 1 -> 0; the concatenation of a and its reverse is psi_2' a(psi_2).
    auto psi2 = [](double t) { return t <= 0.5 ? bump(2 * t) : bump(2 - 2 * t); };
    auto dpsi2 = [](double t) { return t <= 0.5 ? 2 * bump_derivative(2 * t) : -2 * bump_derivative(2 - 2 * t); };
    return reparametrized_family(
        a, [=](double e, double t) { return (1 - e) * psi2(t); },
        [=](double e, double t) { return (1 - e) * dpsi2(t); }, n_eps);
}

APathFamily tangent_family(AlgebroidPtr tangent, const SphereGrid& grid) {
    if (tangent->kind() != AlgebroidKind::tangent) throw InvalidInput("tangent_family needs a tangent algebroid");
    const Atlas& atlas = *tangent->atlas();
    APathFamily fam;
    for (int j = 0; j <= grid.n_eps(); ++j) {
        APath row{tangent, grid.row(j), {}};
        for (int i = 0; i <= grid.n_t(); ++i) row.fiber.push_back(grid_dt(atlas, grid, j, i));
        fam.rows.push_back(std::move(row));
    }
    return fam;
}

APath dR_lift_pair(AlgebroidPtr tangent, const BasePath& targets, const std::vector<ChartPoint>& sources,
                   double drift_tol) {
    if (tangent->kind() != AlgebroidKind::tangent) throw InvalidInput("pair-groupoid lift needs a tangent algebroid");
    if (sources.size() != targets.points.size()) throw InvalidInput("source and target sample counts differ");
    const Atlas& atlas = *tangent->atlas();
    for (const auto& s : sources)
        if (atlas.distance(s, sources.front()) > drift_tol)
            throw BoundaryError("source drift: path leaves its source fiber");
    APath a{tangent, targets, {}};
    for (int i = 0; i <= targets.intervals(); ++i) a.fiber.push_back(path_derivative(atlas, targets, i));
    return a;
}

APath dR_lift_matrix(AlgebroidPtr algebra, const std::vector<Mat>& basis, const std::vector<Mat>& path) {
    const int r = algebra->rank();
    if (static_cast<int>(basis.size()) != r) throw InvalidInput("basis size does not match the algebra rank");
    const int n = static_cast<int>(path.size()) - 1;
    if (n < 4) throw InvalidInput("matrix path needs at least four intervals");
    const int k = static_cast<int>(path.front().rows());
    if ((path.front() - Mat::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-10)
        throw BoundaryError("matrix path must start at the identity");
    Mat B(k * k, r);
    for (int q = 0; q < r; ++q) B.col(q) = Eigen::Map<const Vec>(basis[q].data(), k * k);
    auto qr = B.colPivHouseholderQr();
    APath a{algebra, constant_path(ChartPoint{0, Vec(0)}, n), {}};
    for (int i = 0; i <= n; ++i) {
        const Stencil s = derivative_stencil(i, n);
        Mat dg = Mat::Zero(k, k);
        for (int q = 0; q < 5; ++q) dg += s.weights[q] * path[s.first + q];
        dg *= n;
        Mat X = dg * path[i].inverse();
        Vec v = Eigen::Map<const Vec>(X.data(), k * k);
        Vec c = qr.solve(v);
        if ((B * c - v).norm() > 1e-6 * std::max(1.0, v.norm()))
            throw InvalidInput("matrix path leaves the group spanned by the basis");
        a.fiber.push_back(c);
    }
    return a;
}

}  // namespace aquant
