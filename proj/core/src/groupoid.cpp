#include "aquant/groupoid.hpp"

#include "aquant/spheres.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace aquant {

namespace {

double wrap01(double t) {
    t = std::fmod(t, 1.0);
    return t < 0 ? t + 1.0 : t;
}

double circular(double a, double b) {
    double d = std::fmod(std::abs(a - b), 1.0);
    return std::min(d, 1.0 - d);
}

Mat vec_to_mat(const Vec& v, int n) { return Eigen::Map<const Mat>(v.data(), n, n); }
Vec mat_to_vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Vec gaussian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
}

// Fourth-order central difference of a matrix-valued function of x along mu.
template <class F>
Mat central_difference(F f, const Vec& x, int mu, double h) {
    Vec e = Vec::Zero(x.size());
    e(mu) = h;
    return (f(x - 2 * e) - 8 * f(x - e) + 8 * f(x + e) - f(x + 2 * e)) / (12 * h);
}

// Jets of a matrix-valued function by central differences.
FieldJet difference_jet(const std::function<Vec(const Vec&)>& f, const Vec& x, int order, double h) {
    Vec v = f(x);
    const int n = static_cast<int>(v.size()), d = static_cast<int>(x.size());
    FieldJet j = make_jet(n, d, order);
    j.value = v;
    if (order >= 1)
        for (int mu = 0; mu < d; ++mu) {
            Vec e = Vec::Zero(d);
            e(mu) = h;
            j.gradient.col(mu) = (f(x - 2 * e) - 8 * f(x - e) + 8 * f(x + e) - f(x + 2 * e)) / (12 * h);
        }
    if (order >= 2)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                Vec ea = Vec::Zero(d), eb = Vec::Zero(d);
                ea(a) = h;
                eb(b) = h;
                Vec s = (f(x + ea + eb) - f(x + ea - eb) - f(x - ea + eb) + f(x - ea - eb)) / (4 * h * h);
                for (int c = 0; c < n; ++c) j.hessian[c](a, b) = s(c);
            }
    return j;
}

}  // namespace

GroupoidPtr DeskGroupoid::pair(AtlasPtr base) {
    auto g = std::shared_ptr<DeskGroupoid>(new DeskGroupoid());
    g->kind_ = GroupoidKind::pair;
    g->name_ = "pair(" + base->name() + ")";
    g->algebroid_ = tangent_algebroid(base);
    g->base_ = std::move(base);
    return g;
}

GroupoidPtr DeskGroupoid::matrix_group(std::vector<Mat> basis, std::string name) {
    if (basis.empty()) throw InvalidInput("matrix group needs a non-empty Lie algebra basis");
    const int r = static_cast<int>(basis.size());
    const int n = static_cast<int>(basis.front().rows());
    Mat B(n * n, r);
    for (int k = 0; k < r; ++k) B.col(k) = mat_to_vec(basis[k]);
    auto qr = B.colPivHouseholderQr();
    if (qr.rank() != r) throw InvalidInput("Lie algebra basis is linearly dependent");
    std::vector<Mat> c(r, Mat::Zero(r, r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Vec v = mat_to_vec(basis[i] * basis[j] - basis[j] * basis[i]);
            Vec coords = qr.solve(v);
            if ((B * coords - v).norm() > 1e-9) throw InvalidInput("basis does not span a Lie algebra");
            for (int k = 0; k < r; ++k) c[k](i, j) = coords(k);
        }
    auto g = std::shared_ptr<DeskGroupoid>(new DeskGroupoid());
    g->kind_ = GroupoidKind::matrix_group;
    g->name_ = std::move(name);
    g->base_ = Atlas::point();
    g->algebroid_ = lie_algebra(c, g->name_);
    g->basis_ = std::move(basis);
    return g;
}

GroupoidPtr DeskGroupoid::so3() {
    std::vector<Mat> basis(3, Mat::Zero(3, 3));
    // Infinitesimal rotations about the coordinate axes: [L1, L2] = L3.
    basis[0](1, 2) = -1;
    basis[0](2, 1) = 1;
    basis[1](0, 2) = 1;
    basis[1](2, 0) = -1;
    basis[2](0, 1) = -1;
    basis[2](1, 0) = 1;
    return matrix_group(basis, "SO(3)");
}

GroupoidPtr DeskGroupoid::circle_bundle(AtlasPtr base) {
    auto g = std::shared_ptr<DeskGroupoid>(new DeskGroupoid());
    g->kind_ = GroupoidKind::circle_bundle;
    g->name_ = "circles(" + base->name() + ")";
    g->algebroid_ = abelian_bundle(base, 1);
    g->base_ = std::move(base);
    return g;
}

int DeskGroupoid::arrow_dimension() const {
    switch (kind_) {
        case GroupoidKind::pair: return 2 * base_->dimension();
        case GroupoidKind::matrix_group: return static_cast<int>(basis_.front().size());
        case GroupoidKind::circle_bundle: return base_->dimension() + 1;
    }
    return 0;
}

ChartPoint DeskGroupoid::source(const Arrow& g) const {
    const int d = base_->dimension();
    switch (kind_) {
        case GroupoidKind::pair: return ChartPoint{g.charts[1], g.coords.tail(d)};
        case GroupoidKind::matrix_group: return ChartPoint{0, Vec(0)};
        case GroupoidKind::circle_bundle: return ChartPoint{g.charts[0], g.coords.head(d)};
    }
    return {};
}

ChartPoint DeskGroupoid::target(const Arrow& g) const {
    const int d = base_->dimension();
    switch (kind_) {
        case GroupoidKind::pair: return ChartPoint{g.charts[0], g.coords.head(d)};
        default: return source(g);
    }
}

Arrow DeskGroupoid::unit(const ChartPoint& x) const {
    const int d = base_->dimension();
    Arrow a;
    switch (kind_) {
        case GroupoidKind::pair:
            a.coords.resize(2 * d);
            a.coords << x.x, x.x;
            a.charts = {x.chart, x.chart};
            break;
        case GroupoidKind::matrix_group: {
            const int n = static_cast<int>(basis_.front().rows());
            a.coords = mat_to_vec(Mat::Identity(n, n));
            break;
        }
        case GroupoidKind::circle_bundle:
            a.coords.resize(d + 1);
            a.coords << x.x, 0.0;
            a.charts = {x.chart, 0};
            break;
    }
    return a;
}

Arrow DeskGroupoid::inverse(const Arrow& g) const {
    const int d = base_->dimension();
    Arrow a = g;
    switch (kind_) {
        case GroupoidKind::pair:
            a.coords << g.coords.tail(d), g.coords.head(d);
            a.charts = {g.charts[1], g.charts[0]};
            break;
        case GroupoidKind::matrix_group: {
            const int n = static_cast<int>(basis_.front().rows());
            a.coords = mat_to_vec(vec_to_mat(g.coords, n).inverse());
            break;
        }
        case GroupoidKind::circle_bundle: a.coords(d) = wrap01(-g.coords(d)); break;
    }
    return a;
}

Arrow DeskGroupoid::multiply(const Arrow& g, const Arrow& h) const {
    if (base_->dimension() > 0 && base_->distance(source(g), target(h)) > 1e-8)
        throw DomainError("arrows are not composable");
    const int d = base_->dimension();
    Arrow a;
    switch (kind_) {
        case GroupoidKind::pair:
            a.coords.resize(2 * d);
            a.coords << g.coords.head(d), h.coords.tail(d);
            a.charts = {g.charts[0], h.charts[1]};
            break;
        case GroupoidKind::matrix_group: {
            const int n = static_cast<int>(basis_.front().rows());
            a.coords = mat_to_vec(vec_to_mat(g.coords, n) * vec_to_mat(h.coords, n));
            break;
        }
        case GroupoidKind::circle_bundle:
            a = g;
            a.coords(d) = wrap01(g.coords(d) + h.coords(d));
            break;
    }
    return a;
}

Vec DeskGroupoid::multiply_differential(const Arrow& g, const Arrow& h, const Vec& X, const Vec& Y) const {
    const int d = base_->dimension();
    switch (kind_) {
        case GroupoidKind::pair: {
            Vec v(2 * d);
            v << X.head(d), Y.tail(d);
            return v;
        }
        case GroupoidKind::matrix_group: {
            const int n = static_cast<int>(basis_.front().rows());
            return mat_to_vec(vec_to_mat(X, n) * vec_to_mat(h.coords, n) + vec_to_mat(g.coords, n) * vec_to_mat(Y, n));
        }
        case GroupoidKind::circle_bundle: {
            Vec v(d + 1);
            v << X.head(d), X(d) + Y(d);
            return v;
        }
    }
    return {};
}

double DeskGroupoid::arrow_distance(const Arrow& a, const Arrow& b) const {
    const int d = base_->dimension();
    switch (kind_) {
        case GroupoidKind::pair:
            return std::hypot(base_->distance(target(a), target(b)), base_->distance(source(a), source(b)));
        case GroupoidKind::matrix_group: return (a.coords - b.coords).norm();
        case GroupoidKind::circle_bundle:
            return std::hypot(base_->distance(source(a), source(b)), circular(a.coords(d), b.coords(d)));
    }
    return 0.0;
}

Mat DeskGroupoid::unit_frame(const ChartPoint&) const {
    const int d = base_->dimension();
    switch (kind_) {
        case GroupoidKind::pair: {
            Mat f = Mat::Zero(2 * d, d);
            f.topRows(d).setIdentity();
            return f;
        }
        case GroupoidKind::matrix_group: {
            Mat f(arrow_dimension(), static_cast<int>(basis_.size()));
            for (size_t k = 0; k < basis_.size(); ++k) f.col(static_cast<int>(k)) = mat_to_vec(basis_[k]);
            return f;
        }
        case GroupoidKind::circle_bundle: {
            Mat f = Mat::Zero(d + 1, 1);
            f(d, 0) = 1.0;
            return f;
        }
    }
    return {};
}

Mat DeskGroupoid::unit_differential(const ChartPoint&) const {
    const int d = base_->dimension();
    switch (kind_) {
        case GroupoidKind::pair: {
            Mat f(2 * d, d);
            f << Mat::Identity(d, d), Mat::Identity(d, d);
            return f;
        }
        case GroupoidKind::matrix_group: return Mat::Zero(arrow_dimension(), 0);
        case GroupoidKind::circle_bundle: {
            Mat f = Mat::Zero(d + 1, d);
            f.topRows(d).setIdentity();
            return f;
        }
    }
    return {};
}

ChartPoint DeskGroupoid::random_point(std::mt19937_64& rng) const { return aquant::random_point(*base_, rng); }

Arrow DeskGroupoid::random_arrow(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (kind_) {
        case GroupoidKind::pair: {
            ChartPoint x = random_point(rng), y = random_point(rng);
            Arrow a;
            a.coords.resize(2 * base_->dimension());
            a.coords << x.x, y.x;
            a.charts = {x.chart, y.chart};
            return a;
        }
        case GroupoidKind::matrix_group: {
            Vec c = gaussian(rng, static_cast<int>(basis_.size()));
            Mat X = Mat::Zero(basis_.front().rows(), basis_.front().cols());
            for (int k = 0; k < c.size(); ++k) X += c(k) * basis_[k];
            Arrow a;
            a.coords = mat_to_vec(X.exp());
            return a;
        }
        case GroupoidKind::circle_bundle: {
            ChartPoint x = random_point(rng);
            Arrow a;
            a.coords.resize(base_->dimension() + 1);
            a.coords << x.x, u(rng);
            a.charts = {x.chart, 0};
            return a;
        }
    }
    return {};
}

ComposableSample DeskGroupoid::random_composable(std::mt19937_64& rng, int tangents) const {
    ComposableSample s;
    const int d = base_->dimension();
    s.g = random_arrow(rng);
    switch (kind_) {
        case GroupoidKind::pair: {
            ChartPoint z = random_point(rng);
            s.h.coords.resize(2 * d);
            s.h.coords << s.g.coords.tail(d), z.x;
            s.h.charts = {s.g.charts[1], z.chart};
            for (int k = 0; k < tangents; ++k) {
                Vec u = gaussian(rng, d), v = gaussian(rng, d), w = gaussian(rng, d);
                Vec X(2 * d), Y(2 * d);
                X << u, v;
                Y << v, w;
                s.tangents.emplace_back(X, Y);
            }
            break;
        }
        case GroupoidKind::matrix_group: {
            s.h = random_arrow(rng);
            const int n = static_cast<int>(basis_.front().rows());
            for (int k = 0; k < tangents; ++k) {
                Mat xi = Mat::Zero(n, n), zeta = Mat::Zero(n, n);
                Vec a = gaussian(rng, static_cast<int>(basis_.size())), b = gaussian(rng, static_cast<int>(basis_.size()));
                for (size_t q = 0; q < basis_.size(); ++q) {
                    xi += a(static_cast<int>(q)) * basis_[q];
                    zeta += b(static_cast<int>(q)) * basis_[q];
                }
                s.tangents.emplace_back(mat_to_vec(xi * vec_to_mat(s.g.coords, n)),
                                        mat_to_vec(zeta * vec_to_mat(s.h.coords, n)));
            }
            break;
        }
        case GroupoidKind::circle_bundle: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            s.h = s.g;
            s.h.coords(d) = u(rng);
            for (int k = 0; k < tangents; ++k) {
                Vec base = gaussian(rng, d), ab = gaussian(rng, 2);
                Vec X(d + 1), Y(d + 1);
                X << base, ab(0);
                Y << base, ab(1);
                s.tangents.emplace_back(X, Y);
            }
            break;
        }
    }
    return s;
}

GroupoidForm pair_groupoid_form(const TwoFormField& omega) {
    const int d = omega.dimension();
    return GroupoidForm{2, [omega, d](const Arrow& a) {
                            Mat m = Mat::Zero(2 * d, 2 * d);
                            m.topLeftCorner(d, d) = omega.matrix(a.charts[0], a.coords.head(d));
                            m.bottomRightCorner(d, d) = -omega.matrix(a.charts[1], a.coords.tail(d));
                            return m;
                        }};
}

GroupoidForm wrong_sign_pair_form(const TwoFormField& omega) {
    const int d = omega.dimension();
    return GroupoidForm{2, [omega, d](const Arrow& a) {
                            Mat m = Mat::Zero(2 * d, 2 * d);
                            m.topLeftCorner(d, d) = omega.matrix(a.charts[0], a.coords.head(d));
                            m.bottomRightCorner(d, d) = omega.matrix(a.charts[1], a.coords.tail(d));
                            return m;
                        }};
}

GroupoidForm circle_angle_form(GroupoidPtr circles) {
    if (circles->kind() != GroupoidKind::circle_bundle) throw InvalidInput("angle form lives on a circle bundle");
    const int n = circles->arrow_dimension();
    return GroupoidForm{1, [n](const Arrow&) {
                            Mat m = Mat::Zero(n, 1);
                            m(n - 1, 0) = 1.0;
                            return m;
                        }};
}

GroupoidForm right_invariant_form(GroupoidPtr group, const Mat& c) {
    if (group->kind() != GroupoidKind::matrix_group) throw InvalidInput("right-invariant forms need a matrix group");
    const int r = static_cast<int>(group->basis().size());
    if (c.rows() != r || c.cols() != r) throw InvalidInput("form on the Lie algebra has the wrong size");
    const Mat frame = group->unit_frame(ChartPoint{});
    const Mat P = frame.completeOrthogonalDecomposition().pseudoInverse();
    const int n = static_cast<int>(group->basis().front().rows());
    return GroupoidForm{2, [P, c, n](const Arrow& a) {
                            Mat ginv = vec_to_mat(a.coords, n).inverse();
                            // vec(X g^{-1}) = (g^{-T} kron I) vec(X)
                            Mat K = Eigen::kroneckerProduct(Mat(ginv.transpose()), Mat(Mat::Identity(n, n)));
                            Mat L = P * K;
                            return Mat(L.transpose() * c * L);
                        }};
}

MultiplicativityReport multiplicativity_residual(const DeskGroupoid& g, const GroupoidForm& w, int samples,
                                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    MultiplicativityReport rep;
    rep.samples = samples;
    for (int s = 0; s < samples; ++s) {
        ComposableSample cs = g.random_composable(rng, 2);
        Arrow gh = g.multiply(cs.g, cs.h);
        Mat Wgh = w.coefficients(gh), Wg = w.coefficients(cs.g), Wh = w.coefficients(cs.h);
        if (w.degree == 2) {
            const auto& [X1, Y1] = cs.tangents[0];
            const auto& [X2, Y2] = cs.tangents[1];
            Vec m1 = g.multiply_differential(cs.g, cs.h, X1, Y1);
            Vec m2 = g.multiply_differential(cs.g, cs.h, X2, Y2);
            double lhs = m1.dot(Wgh * m2);
            double rhs = X1.dot(Wg * X2) + Y1.dot(Wh * Y2);
            rep.residual = std::max(rep.residual, std::abs(lhs - rhs));
        } else {
            for (const auto& [X, Y] : cs.tangents) {
                Vec m = g.multiply_differential(cs.g, cs.h, X, Y);
                double lhs = Wgh.col(0).dot(m);
                double rhs = Wg.col(0).dot(X) + Wh.col(0).dot(Y);
                rep.residual = std::max(rep.residual, std::abs(lhs - rhs));
            }
        }
    }
    return rep;
}

double groupoid_axiom_residual(const DeskGroupoid& g, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        ComposableSample a = g.random_composable(rng, 0);
        ComposableSample b = g.random_composable(rng, 0);
        // Re-root b so that its first arrow composes after a.h.
        Arrow k = b.g;
        if (g.kind() == GroupoidKind::pair) {
            const int d = g.base()->dimension();
            k.coords.head(d) = a.h.coords.tail(d);
            k.charts[0] = a.h.charts[1];
        } else if (g.kind() == GroupoidKind::circle_bundle) {
            const int d = g.base()->dimension();
            k.coords.head(d) = a.h.coords.head(d);
            k.charts[0] = a.h.charts[0];
        }
        Arrow left = g.multiply(g.multiply(a.g, a.h), k);
        Arrow right = g.multiply(a.g, g.multiply(a.h, k));
        worst = std::max(worst, g.arrow_distance(left, right));
        worst = std::max(worst, g.arrow_distance(g.multiply(g.unit(g.target(a.g)), a.g), a.g));
        worst = std::max(worst, g.arrow_distance(g.multiply(a.g, g.unit(g.source(a.g))), a.g));
        worst = std::max(worst, g.arrow_distance(g.multiply(a.g, g.inverse(a.g)), g.unit(g.target(a.g))));
        worst = std::max(worst, g.arrow_distance(g.multiply(g.inverse(a.g), a.g), g.unit(g.source(a.g))));
    }
    return worst;
}

Cochain induced_cocycle(const DeskGroupoid& g, const GroupoidForm& w) {
    if (w.degree != 2) throw InvalidInput("induced cocycle needs a 2-form");
    const auto A = g.algebroid();
    const int r = A->rank(), d = A->dimension();
    // Row-major flattening: component i * r + j holds c(e_i, e_j).
    auto flat = [G = g, w, r](int chart, const Vec& x) {
        ChartPoint p{chart, x};
        Mat f = G.unit_frame(p);
        Mat c = f.transpose() * w.coefficients(G.unit(p)) * f;
        Vec out(r * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) out(i * r + j) = c(i, j);
        return out;
    };
    TensorField f(r * r, d, 2, [flat](int chart, const Vec& x, int order) {
        return difference_jet([&](const Vec& y) { return flat(chart, y); }, x, order, 1e-3);
    });
    return Cochain(A, 2, f);
}

InfinitesimalData rho_star(const DeskGroupoid& g, const GroupoidForm& w, const std::vector<ChartPoint>& samples) {
    if (w.degree != 2) throw InvalidInput("rho_star needs a 2-form");
    const auto A = g.algebroid();
    const int r = A->rank(), d = A->dimension();
    auto R_at = [G = g, w](int chart, const Vec& x) {
        ChartPoint p{chart, x};
        return Mat(G.unit_frame(p).transpose() * w.coefficients(G.unit(p)) * G.unit_differential(p));
    };
    auto C_at = [&g, w](int chart, const Vec& x) {
        ChartPoint p{chart, x};
        Mat f = g.unit_frame(p);
        return Mat(f.transpose() * w.coefficients(g.unit(p)) * f);
    };
    InfinitesimalData out;
    constexpr double h = 1e-3;
    for (const auto& p : samples) {
        Mat R = R_at(p.chart, p.x);
        Mat rho = A->anchor(p);
        Mat P = R * rho;
        out.c1_residual = std::max(out.c1_residual, (P + P.transpose()).cwiseAbs().maxCoeff());
        out.consistency_residual = std::max(out.consistency_residual, (P - C_at(p.chart, p.x)).cwiseAbs().maxCoeff());
        if (d == 0) continue;
        auto c = A->structure(p.chart, p.x);
        FieldJet aj = A->anchor_field().evaluate(p.chart, p.x, 1);
        std::vector<Mat> dR(d), dP(d);
        for (int mu = 0; mu < d; ++mu) {
            dR[mu] = central_difference([&](const Vec& y) { return R_at(p.chart, y); }, p.x, mu, h);
            dP[mu] = central_difference([&](const Vec& y) { return Mat(R_at(p.chart, y) * A->anchor(p.chart, y)); },
                                        p.x, mu, h);
        }
        auto drho = [&](int nu, int i, int mu) { return aj.gradient(nu * r + i, mu); };
        // (L_{rho e_i} rho*(e_j))_mu
        auto lie = [&](int i, int j, int mu) {
            double s = 0.0;
            for (int nu = 0; nu < d; ++nu) s += rho(nu, i) * dR[nu](j, mu) + R(j, nu) * drho(nu, i, mu);
            return s;
        };
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int mu = 0; mu < d; ++mu) {
                    double lhs = 0.0;
                    for (int k = 0; k < r; ++k) lhs += c[k](i, j) * R(k, mu);
                    double rhs = lie(i, j, mu) - lie(j, i, mu) + dP[mu](i, j);
                    out.c2_residual = std::max(out.c2_residual, std::abs(lhs - rhs));
                }
    }
    out.rho_star = TensorField(r * d, d, 0, [R_at, r, d](int chart, const Vec& x, int order) {
        FieldJet j = make_jet(r * d, d, order);
        Mat R = R_at(chart, x);
        for (int i = 0; i < r; ++i)
            for (int mu = 0; mu < d; ++mu) j.value(i * d + mu) = R(i, mu);
        return j;
    });
    return out;
}

TensorField rho_star_from_cochain(const Cochain& c2) {
    const auto A = c2.algebroid();
    const int r = A->rank(), d = A->dimension();
    TensorField coc = c2.coefficients();
    return TensorField(r * d, d, 0, [A, coc, r, d](int chart, const Vec& x, int order) {
        Mat rho = A->anchor(chart, x);
        Vec cv = coc.value(chart, x);
        Mat C(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) C(i, j) = cv(i * r + j);
        Mat R = C * rho.completeOrthogonalDecomposition().pseudoInverse();
        FieldJet jet = make_jet(r * d, d, order);
        for (int i = 0; i < r; ++i)
            for (int mu = 0; mu < d; ++mu) jet.value(i * d + mu) = R(i, mu);
        return jet;
    });
}

double rho_star_pairing_residual(const TensorField& rs, const Cochain& c2, const std::vector<ChartPoint>& samples) {
    const auto A = c2.algebroid();
    const int r = A->rank(), d = A->dimension();
    double worst = 0.0;
    for (const auto& p : samples) {
        Vec v = rs.value(p.chart, p.x);
        Mat R(r, d);
        for (int i = 0; i < r; ++i)
            for (int mu = 0; mu < d; ++mu) R(i, mu) = v(i * d + mu);
        worst = std::max(worst, (R * A->anchor(p) - c2.matrix(p)).cwiseAbs().maxCoeff());
    }
    return worst;
}

double f_l(const Cochain& l, const APath& a) {
    if (l.degree() != 1) throw InvalidInput("f_l needs a 1-cochain");
    const auto w = simpson_weights(a.intervals());
    double s = 0.0;
    for (int i = 0; i <= a.intervals(); ++i) s += w[i] * l.values(a.base.points[i]).dot(a.fiber[i]);
    return s;
}

double sigma_tilde(const TensorField& rs, const APath& a, const PathVariation& v) {
    const int r = a.algebroid->rank(), d = a.algebroid->dimension();
    const auto w = simpson_weights(a.intervals());
    double s = 0.0;
    for (int i = 0; i <= a.intervals(); ++i) {
        const ChartPoint& p = a.base.points[i];
        Vec rv = rs.value(p.chart, p.x);
        for (int k = 0; k < r; ++k)
            for (int mu = 0; mu < d; ++mu) s += w[i] * a.fiber[i](k) * rv(k * d + mu) * v.base[i](mu);
    }
    return s;
}

double theta_eval(const Cochain& l, const TensorField& rs, const APath& a, const PathVariation& v, double h) {
    if (v.base.size() != a.base.points.size() || v.fiber.size() != a.fiber.size())
        throw InvalidInput("variation does not match the path samples");
    auto shifted = [&](double s) {
        APath b = a;
        for (size_t i = 0; i < b.fiber.size(); ++i) {
            b.base.points[i].x += s * v.base[i];
            b.fiber[i] += s * v.fiber[i];
        }
        return f_l(l, b);
    };
    const double f0 = f_l(l, a);
    const double d1 = (shifted(h) - f0) / h;
    const double d2 = (shifted(h / 2) - f0) / (h / 2);
    return (2 * d2 - d1) - sigma_tilde(rs, a, v);
}

double theta_eval(const Cochain& l, const Cochain& c2, const APath& a, const PathVariation& v, double h) {
    TensorField rs = rho_star_from_cochain(c2);
    std::vector<ChartPoint> probe{a.base.start(), a.base.points[a.intervals() / 2], a.base.end()};
    const double res = rho_star_pairing_residual(rs, c2, probe);
    if (res > 1e-8)
        throw Unsupported("cochain does not vanish on the anchor kernel; rho* is not determined by it");
    return theta_eval(l, rs, a, v, h);
}

}  // namespace aquant
