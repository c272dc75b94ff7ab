#include "aquant/algebroid.hpp"

#include "aquant/cochain.hpp"

#include <cmath>
#include <string>

namespace aquant {

std::string to_string(AlgebroidKind kind) {
    switch (kind) {
        case AlgebroidKind::tangent: return "tangent";
        case AlgebroidKind::lie_algebra: return "lie_algebra";
        case AlgebroidKind::a_omega: return "a_omega";
        case AlgebroidKind::abelian_bundle: return "abelian_bundle";
        case AlgebroidKind::central_extension: return "central_extension";
    }
    return "unknown";
}

Algebroid::Algebroid(AtlasPtr atlas, int rank, TensorField anchor, TensorField structure,
                     FrameTransition transition, AlgebroidKind kind, std::string name)
    : atlas_(std::move(atlas)),
      rank_(rank),
      anchor_(std::move(anchor)),
      structure_(std::move(structure)),
      transition_(std::move(transition)),
      kind_(kind),
      name_(std::move(name)) {
    const int d = atlas_->dimension();
    if (rank_ < 0) throw InvalidInput("negative algebroid rank");
    if (anchor_.components() != d * rank_ || anchor_.dimension() != d)
        throw InvalidInput("anchor field has the wrong shape");
    if (structure_.components() != rank_ * rank_ * rank_ || structure_.dimension() != d)
        throw InvalidInput("structure field has the wrong shape");
}

Mat Algebroid::anchor(int chart, const Vec& x) const {
    const int d = dimension();
    Vec v = anchor_.value(chart, x);
    Mat m(d, rank_);
    for (int mu = 0; mu < d; ++mu)
        for (int i = 0; i < rank_; ++i) m(mu, i) = v(mu * rank_ + i);
    return m;
}

std::vector<Mat> Algebroid::structure(int chart, const Vec& x) const {
    Vec v = structure_.value(chart, x);
    std::vector<Mat> c(rank_, Mat(rank_, rank_));
    for (int k = 0; k < rank_; ++k)
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) c[k](i, j) = v((k * rank_ + i) * rank_ + j);
    return c;
}

Vec Algebroid::structure_bracket(int chart, const Vec& x, const Vec& a, const Vec& b) const {
    auto c = structure(chart, x);
    Vec out(rank_);
    for (int k = 0; k < rank_; ++k) out(k) = a.dot(c[k] * b);
    return out;
}

Mat Algebroid::frame_transition(int from, int to, const Vec& x) const {
    if (from == to) return Mat::Identity(rank_, rank_);
    return transition_(from, to, x);
}

Vec Algebroid::transport_fiber(const ChartPoint& p, int to, const Vec& a) const {
    if (p.chart == to) return a;
    return frame_transition(p.chart, to, p.x) * a;
}

AlgebroidPtr tangent_algebroid(AtlasPtr atlas) {
    const int d = atlas->dimension();
    Vec anchor = Vec::Zero(d * d);
    for (int mu = 0; mu < d; ++mu) anchor(mu * d + mu) = 1.0;
    auto at = atlas;
    return std::make_shared<Algebroid>(
        atlas, d, TensorField::constant(anchor, d), TensorField::zero(d * d * d, d),
        [at](int from, int to, const Vec& x) { return at->transition_jacobian(from, to, x); },
        AlgebroidKind::tangent, "tangent(" + atlas->name() + ")");
}

AlgebroidPtr lie_algebra(const std::vector<Mat>& structure, std::string name) {
    const int r = static_cast<int>(structure.size());
    Vec c(r * r * r);
    for (int k = 0; k < r; ++k) {
        if (structure[k].rows() != r || structure[k].cols() != r)
            throw InvalidInput("structure constants must be r matrices of size r x r");
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) c((k * r + i) * r + j) = structure[k](i, j);
    }
    for (int k = 0; k < r; ++k)
        if ((structure[k] + structure[k].transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw InvalidInput("structure constants are not antisymmetric");
    return std::make_shared<Algebroid>(
        Atlas::point(), r, TensorField::zero(0, 0), TensorField::constant(c, 0),
        [r](int, int, const Vec&) { return Mat(Mat::Identity(r, r)); }, AlgebroidKind::lie_algebra, std::move(name));
}

AlgebroidPtr so3_algebra() {
    std::vector<Mat> c(3, Mat::Zero(3, 3));
    // [e1, e2] = e3 and cyclic permutations.
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        c[k](i, j) = 1.0;
        c[k](j, i) = -1.0;
    }
    return lie_algebra(c, "so(3)");
}

AlgebroidPtr abelian_bundle(AtlasPtr atlas, int rank) {
    const int d = atlas->dimension();
    return std::make_shared<Algebroid>(
        atlas, rank, TensorField::zero(d * rank, d), TensorField::zero(rank * rank * rank, d),
        [rank](int, int, const Vec&) { return Mat(Mat::Identity(rank, rank)); }, AlgebroidKind::abelian_bundle,
        "abelian_bundle(" + atlas->name() + ", " + std::to_string(rank) + ")");
}

double jacobi_residual(const Algebroid& a, const ChartPoint& p) {
    const int r = a.rank(), d = a.dimension();
    FieldJet cj = a.structure_field().evaluate(p.chart, p.x, d > 0 ? 1 : 0);
    Mat rho = a.anchor(p);
    auto C = [&](int k, int i, int j) { return cj.value((k * r + i) * r + j); };
    // rho(e_i) applied to c^m_jk
    auto drho = [&](int i, int m, int j, int k) {
        double s = 0.0;
        for (int mu = 0; mu < d; ++mu) s += rho(mu, i) * cj.gradient((m * r + j) * r + k, mu);
        return s;
    };
    auto term = [&](int i, int j, int k, int m) {
        double s = drho(i, m, j, k);
        for (int l = 0; l < r; ++l) s += C(l, j, k) * C(m, i, l);
        return s;
    };
    double worst = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                for (int m = 0; m < r; ++m) {
                    double s = term(i, j, k, m) + term(j, k, i, m) + term(k, i, j, m);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

double anchor_compatibility_residual(const Algebroid& a, const ChartPoint& p) {
    const int r = a.rank(), d = a.dimension();
    if (d == 0) return 0.0;
    FieldJet aj = a.anchor_field().evaluate(p.chart, p.x, 1);
    auto c = a.structure(p.chart, p.x);
    auto rho = [&](int mu, int i) { return aj.value(mu * r + i); };
    auto drho = [&](int mu, int i, int nu) { return aj.gradient(mu * r + i, nu); };
    double worst = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int mu = 0; mu < d; ++mu) {
                double lhs = 0.0;
                for (int k = 0; k < r; ++k) lhs += c[k](i, j) * rho(mu, k);
                double rhs = 0.0;
                for (int nu = 0; nu < d; ++nu) rhs += rho(nu, i) * drho(mu, j, nu) - rho(nu, j) * drho(mu, i, nu);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst;
}

IsotropyAlgebra isotropy_algebra(const Algebroid& a, const ChartPoint& p) {
    constexpr double kZero = 1e-10, kUnstable = 1e-6;
    const int r = a.rank(), d = a.dimension();
    IsotropyAlgebra out;
    if (d == 0 || r == 0) {
        out.basis = Mat::Identity(r, r);
        out.singular_values = Vec();
    } else {
        Mat rho = a.anchor(p);
        Eigen::JacobiSVD<Mat> svd(rho, Eigen::ComputeFullV);
        out.singular_values = svd.singularValues();
        int rank = 0;
        for (int k = 0; k < out.singular_values.size(); ++k) {
            const double s = out.singular_values(k);
            if (s > kZero && s < kUnstable)
                throw RankInstability("anchor singular value " + std::to_string(s) +
                                      " lies between the zero and rank thresholds");
            if (s >= kUnstable) ++rank;
        }
        out.basis = svd.matrixV().rightCols(r - rank);
    }
    const int m = out.dimension();
    auto c = a.structure(p.chart, p.x);
    out.structure.assign(m, Mat::Zero(m, m));
    for (int b = 0; b < m; ++b)
        for (int e = 0; e < m; ++e) {
            Vec v(r);
            for (int k = 0; k < r; ++k) v(k) = out.basis.col(b).dot(c[k] * out.basis.col(e));
            Vec coords = out.basis.transpose() * v;
            out.closure_residual = std::max(out.closure_residual, (v - out.basis * coords).norm());
            for (int q = 0; q < m; ++q) out.structure[q](b, e) = coords(q);
        }
    // Jacobi identity of the induced bracket.
    auto bracket = [&](const Vec& u, const Vec& v) {
        Vec w = Vec::Zero(m);
        for (int q = 0; q < m; ++q) w(q) = u.dot(out.structure[q] * v);
        return w;
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                Vec ei = Vec::Unit(m, i), ej = Vec::Unit(m, j), ek = Vec::Unit(m, k);
                Vec s = bracket(ei, bracket(ej, ek)) + bracket(ej, bracket(ek, ei)) + bracket(ek, bracket(ei, ej));
                out.jacobi_residual = std::max(out.jacobi_residual, s.cwiseAbs().maxCoeff());
            }
    return out;
}

AlgebroidPtr a_omega(const TwoFormField& omega) {
    auto tan = tangent_algebroid(omega.atlas());
    Cochain c = cochain_from_form(tan, omega);
    auto ext = central_extension(c, "a_omega(" + omega.atlas()->name() + ")");
    auto out = std::make_shared<Algebroid>(ext->atlas(), ext->rank(), ext->anchor_field(), ext->structure_field(),
                                           [ext](int f, int t, const Vec& x) { return ext->frame_transition(f, t, x); },
                                           AlgebroidKind::a_omega, ext->name());
    out->set_extension_cocycle(ext->extension_cocycle());
    return out;
}

}  // namespace aquant
