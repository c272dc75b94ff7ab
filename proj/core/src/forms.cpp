#include "aquant/forms.hpp"

#include <cmath>
#include <numbers>

namespace aquant {

TwoFormField::TwoFormField(AtlasPtr atlas, TensorField coefficients, bool declared_closed)
    : atlas_(std::move(atlas)), coeffs_(std::move(coefficients)), declared_closed_(declared_closed) {
    if (!atlas_) throw InvalidInput("two-form without an atlas");
    const int d = atlas_->dimension();
    if (coeffs_.components() != d * d || coeffs_.dimension() != d)
        throw InvalidInput("two-form coefficient field has the wrong shape");
}

Mat TwoFormField::matrix(int chart, const Vec& x) const {
    const int d = dimension();
    Vec v = coeffs_.value(chart, x);
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(v.data(), d, d);
}

double TwoFormField::eval(const ChartPoint& p, const Vec& v, const Vec& w) const {
    return v.dot(matrix(p) * w);
}

double TwoFormField::closedness_residual(const std::vector<ChartPoint>& samples, double h) const {
    const int d = dimension();
    if (d < 3) return 0.0;
    double worst = 0.0;
    for (const auto& p : samples) {
        // Central difference of every coefficient in every direction.
        std::vector<Mat> dw(d);
        for (int c = 0; c < d; ++c) {
            Vec e = Vec::Zero(d);
            e(c) = h;
            dw[c] = (matrix(p.chart, p.x + e) - matrix(p.chart, p.x - e)) / (2 * h);
        }
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                for (int c = b + 1; c < d; ++c) {
                    double r = dw[a](b, c) + dw[b](c, a) + dw[c](a, b);
                    worst = std::max(worst, std::abs(r));
                }
    }
    return worst;
}

TwoFormField TwoFormField::scaled(double factor) const {
    TensorField base = coeffs_;
    const int n = base.components();
    TensorField f(n, base.dimension(), base.max_order(), [base, factor](int chart, const Vec& x, int order) {
        FieldJet j = base.evaluate(chart, x, order);
        j.value *= factor;
        if (order >= 1) j.gradient *= factor;
        for (auto& h : j.hessian) h *= factor;
        return j;
    });
    return TwoFormField(atlas_, f, declared_closed_);
}

TwoFormField zero_form(AtlasPtr atlas) {
    const int d = atlas->dimension();
    return TwoFormField(atlas, TensorField::zero(d * d, d), true);
}

TwoFormField area_form(AtlasPtr sphere, double lambda) {
    if (sphere->kind() != ManifoldKind::sphere2) throw Unsupported("area_form needs the sphere2 atlas");
    TensorField f(4, 2, 2, [lambda](int chart, const Vec& x, int order) {
        const double s = (chart == 0 ? 1.0 : -1.0) * lambda / std::numbers::pi;
        const double q = 1.0 + x.squaredNorm();
        FieldJet j = make_jet(4, 2, order);
        const double v = s / (q * q);
        j.value << 0, v, -v, 0;
        if (order >= 1) {
            Vec g = -4.0 * s * x / (q * q * q);
            j.gradient.row(1) = g.transpose();
            j.gradient.row(2) = -g.transpose();
        }
        if (order >= 2) {
            Mat h = s * (-4.0 * Mat::Identity(2, 2) / (q * q * q) + 24.0 * x * x.transpose() / (q * q * q * q));
            j.hessian[1] = h;
            j.hessian[2] = -h;
        }
        return j;
    });
    return TwoFormField(sphere, f, true);
}

TwoFormField coordinate_form(AtlasPtr atlas, double scale, int i, int j) {
    if (atlas->chart_count() != 1) throw Unsupported("coordinate_form needs a single-chart atlas");
    const int d = atlas->dimension();
    if (i < 0 || j < 0 || i >= d || j >= d || i == j) throw InvalidInput("bad coordinate form indices");
    Vec v = Vec::Zero(d * d);
    v(i * d + j) = scale;
    v(j * d + i) = -scale;
    return TwoFormField(atlas, TensorField::constant(v, d), true);
}

TwoFormField product_form(AtlasPtr product, const TwoFormField& first, const TwoFormField& second) {
    if (product->kind() != ManifoldKind::product) throw Unsupported("product_form needs a product atlas");
    const int d = product->dimension();
    const int d1 = first.dimension();
    const int d2 = second.dimension();
    if (d1 + d2 != d) throw InvalidInput("factor forms do not match the product atlas");
    const int order = std::min(first.coefficients().max_order(), second.coefficients().max_order());
    TensorField f1 = first.coefficients(), f2 = second.coefficients();
    auto atlas = product;
    TensorField f(d * d, d, order, [=](int chart, const Vec& x, int ord) {
        auto [c1, c2] = atlas->split_chart(chart);
        FieldJet j1 = f1.evaluate(c1, x.head(d1), ord);
        FieldJet j2 = f2.evaluate(c2, x.tail(d2), ord);
        FieldJet j = make_jet(d * d, d, ord);
        for (int a = 0; a < d1; ++a)
            for (int b = 0; b < d1; ++b) {
                const int src = a * d1 + b, dst = a * d + b;
                j.value(dst) = j1.value(src);
                if (ord >= 1) j.gradient.row(dst).head(d1) = j1.gradient.row(src);
                if (ord >= 2) j.hessian[dst].topLeftCorner(d1, d1) = j1.hessian[src];
            }
        for (int a = 0; a < d2; ++a)
            for (int b = 0; b < d2; ++b) {
                const int src = a * d2 + b, dst = (d1 + a) * d + (d1 + b);
                j.value(dst) = j2.value(src);
                if (ord >= 1) j.gradient.row(dst).tail(d2) = j2.gradient.row(src);
                if (ord >= 2) j.hessian[dst].bottomRightCorner(d2, d2) = j2.hessian[src];
            }
        return j;
    });
    return TwoFormField(product, f, first.declared_closed() && second.declared_closed());
}

TwoFormField polynomial_form(AtlasPtr atlas, const std::vector<FormTerm>& terms, bool declared_closed) {
    if (atlas->chart_count() != 1) throw Unsupported("polynomial_form needs a single-chart atlas");
    const int d = atlas->dimension();
    std::vector<Polynomial> comps(d * d, Polynomial(d));
    for (const auto& t : terms) {
        if (t.i < 0 || t.j < 0 || t.i >= d || t.j >= d || t.i == t.j)
            throw InvalidInput("bad form term indices");
        if (t.coefficient.variables() != d) throw InvalidInput("form term polynomial has wrong arity");
        for (const auto& m : t.coefficient.terms()) {
            comps[t.i * d + t.j].add_term(m.coef, m.powers);
            comps[t.j * d + t.i].add_term(-m.coef, m.powers);
        }
    }
    return TwoFormField(atlas, TensorField::polynomial(comps, d), declared_closed);
}

}  // namespace aquant
