#include "aquant/cochain.hpp"

#include <cmath>
#include <string>

namespace aquant {

namespace {

int ipow(int b, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<int> tuple_of(int index, int length, int r) {
    std::vector<int> t(length);
    for (int a = length - 1; a >= 0; --a) {
        t[a] = index % r;
        index /= r;
    }
    return t;
}

std::vector<int> omit(const std::vector<int>& t, int a, int b = -1) {
    std::vector<int> out;
    for (int q = 0; q < static_cast<int>(t.size()); ++q)
        if (q != a && q != b) out.push_back(t[q]);
    return out;
}

}  // namespace

int tuple_index(const std::vector<int>& idx, int r) {
    int k = 0;
    for (int i : idx) k = k * r + i;
    return k;
}

Cochain::Cochain(AlgebroidPtr algebroid, int degree, TensorField coefficients)
    : algebroid_(std::move(algebroid)), degree_(degree), coeffs_(std::move(coefficients)) {
    if (!algebroid_) throw InvalidInput("cochain without an algebroid");
    if (degree_ < 0) throw InvalidInput("negative cochain degree");
    if (coeffs_.components() != ipow(algebroid_->rank(), degree_) || coeffs_.dimension() != algebroid_->dimension())
        throw InvalidInput("cochain coefficient field has the wrong shape");
}

double Cochain::component(const ChartPoint& p, const std::vector<int>& idx) const {
    return values(p)(tuple_index(idx, algebroid_->rank()));
}

double Cochain::eval(const ChartPoint& p, const std::vector<Vec>& args) const {
    if (static_cast<int>(args.size()) != degree_) throw InvalidInput("cochain evaluated on the wrong number of vectors");
    const int r = algebroid_->rank();
    Vec v = values(p);
    double s = 0.0;
    for (int k = 0; k < v.size(); ++k) {
        auto t = tuple_of(k, degree_, r);
        double w = v(k);
        for (int a = 0; a < degree_ && w != 0.0; ++a) w *= args[a](t[a]);
        s += w;
    }
    return s;
}

Mat Cochain::matrix(const ChartPoint& p) const {
    if (degree_ != 2) throw InvalidInput("matrix() needs a 2-cochain");
    const int r = algebroid_->rank();
    Vec v = values(p);
    Mat m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = v(i * r + j);
    return m;
}

Cochain d_A(const Cochain& l) {
    const auto A = l.algebroid();
    const int r = A->rank(), d = A->dimension(), p = l.degree();
    if (d > 0 && l.max_order() < 1)
        throw MissingDerivative("d_A needs first derivatives of the cochain coefficients");
    const int out_order = std::min({d > 0 ? l.max_order() - 1 : l.max_order(), A->structure_field().max_order(),
                                    A->anchor_field().max_order(), 1});
    const int n_out = ipow(r, p + 1);
    TensorField lf = l.coefficients();
    TensorField f(n_out, d, out_order, [A, lf, r, d, p, n_out](int chart, const Vec& x, int order) {
        const int lo = d > 0 ? order + 1 : order;
        FieldJet lj = lf.evaluate(chart, x, lo);
        FieldJet cj = A->structure_field().evaluate(chart, x, order);
        FieldJet aj = A->anchor_field().evaluate(chart, x, order);
        FieldJet out = make_jet(n_out, d, order);
        auto C = [&](int k, int i, int j) { return (k * r + i) * r + j; };
        for (int idx = 0; idx < n_out; ++idx) {
            auto t = tuple_of(idx, p + 1, r);
            double val = 0.0;
            Vec grad = Vec::Zero(d);
            // Bracket terms.
            for (int a = 0; a < p + 1; ++a)
                for (int b = a + 1; b < p + 1; ++b) {
                    const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
                    auto rest = omit(t, a, b);
                    for (int k = 0; k < r; ++k) {
                        std::vector<int> arg{k};
                        arg.insert(arg.end(), rest.begin(), rest.end());
                        const int li = tuple_index(arg, r);
                        const int ci = C(k, t[a], t[b]);
                        val += sign * cj.value(ci) * lj.value(li);
                        if (order >= 1)
                            grad += sign * (cj.gradient.row(ci).transpose() * lj.value(li) +
                                            cj.value(ci) * lj.gradient.row(li).transpose());
                    }
                }
            // Anchor terms.
            for (int a = 0; a < p + 1 && d > 0; ++a) {
                const double sign = (a % 2 == 0) ? 1.0 : -1.0;
                const int li = tuple_index(omit(t, a), r);
                for (int mu = 0; mu < d; ++mu) {
                    const int ai = mu * r + t[a];
                    val += sign * aj.value(ai) * lj.gradient(li, mu);
                    if (order >= 1)
                        grad += sign * (aj.gradient.row(ai).transpose() * lj.gradient(li, mu) +
                                        aj.value(ai) * lj.hessian[li].col(mu));
                }
            }
            out.value(idx) = -val;
            if (order >= 1) out.gradient.row(idx) = -grad.transpose();
        }
        return out;
    });
    return Cochain(A, p + 1, f);
}

CocycleReport is_cocycle(const Cochain& c2, const std::vector<ChartPoint>& samples, double tol) {
    Cochain dc = d_A(c2);
    CocycleReport rep;
    rep.tolerance = tol;
    for (const auto& s : samples) rep.residual = std::max(rep.residual, dc.values(s).cwiseAbs().maxCoeff());
    rep.verdict = rep.residual <= tol;
    return rep;
}

AlgebroidPtr central_extension(const Cochain& c2, std::string name) {
    if (c2.degree() != 2) throw InvalidInput("central extension needs a 2-cochain");
    const auto A = c2.algebroid();
    const int r = A->rank(), d = A->dimension(), R = r + 1;
    TensorField anchor = A->anchor_field(), structure = A->structure_field(), coc = c2.coefficients();
    const int order = std::min({anchor.max_order(), structure.max_order(), coc.max_order()});
    TensorField anchor_ext(d * R, d, anchor.max_order(), [anchor, r, R, d](int chart, const Vec& x, int ord) {
        FieldJet a = anchor.evaluate(chart, x, ord);
        FieldJet out = make_jet(d * R, d, ord);
        for (int mu = 0; mu < d; ++mu)
            for (int i = 0; i < r; ++i) {
                out.value(mu * R + i) = a.value(mu * r + i);
                if (ord >= 1) out.gradient.row(mu * R + i) = a.gradient.row(mu * r + i);
                if (ord >= 2) out.hessian[mu * R + i] = a.hessian[mu * r + i];
            }
        return out;
    });
    TensorField structure_ext(R * R * R, d, order, [structure, coc, r, R, d](int chart, const Vec& x, int ord) {
        FieldJet s = structure.evaluate(chart, x, ord);
        FieldJet c = coc.evaluate(chart, x, ord);
        FieldJet out = make_jet(R * R * R, d, ord);
        auto copy = [&](const FieldJet& src, int si, int di) {
            out.value(di) = src.value(si);
            if (ord >= 1) out.gradient.row(di) = src.gradient.row(si);
            if (ord >= 2) out.hessian[di] = src.hessian[si];
        };
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                for (int k = 0; k < r; ++k) copy(s, (k * r + i) * r + j, (k * R + i) * R + j);
                copy(c, i * r + j, (r * R + i) * R + j);
            }
        return out;
    });
    auto transition = [A, r, R](int from, int to, const Vec& x) {
        Mat m = Mat::Zero(R, R);
        m.topLeftCorner(r, r) = A->frame_transition(from, to, x);
        m(r, r) = 1.0;
        return m;
    };
    auto ext = std::make_shared<Algebroid>(A->atlas(), R, anchor_ext, structure_ext, transition,
                                           AlgebroidKind::central_extension, std::move(name));
    ext->set_extension_cocycle(std::make_shared<Cochain>(c2));
    return ext;
}

Cochain canonical_transgression(AlgebroidPtr extension) {
    if (!extension->extension_cocycle())
        throw Unsupported("canonical transgression needs a central extension");
    const int R = extension->rank();
    Vec v = Vec::Zero(R);
    v(R - 1) = 1.0;
    return Cochain(extension, 1, TensorField::constant(v, extension->dimension()));
}

Cochain pullback_to_extension(const Cochain& c2, AlgebroidPtr extension) {
    const int r = c2.algebroid()->rank(), R = extension->rank(), d = extension->dimension();
    if (R != r + 1 || c2.degree() != 2) throw InvalidInput("pullback needs a 2-cochain on the base algebroid");
    TensorField coc = c2.coefficients();
    TensorField f(R * R, d, coc.max_order(), [coc, r, R, d](int chart, const Vec& x, int ord) {
        FieldJet c = coc.evaluate(chart, x, ord);
        FieldJet out = make_jet(R * R, d, ord);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                out.value(i * R + j) = c.value(i * r + j);
                if (ord >= 1) out.gradient.row(i * R + j) = c.gradient.row(i * r + j);
                if (ord >= 2) out.hessian[i * R + j] = c.hessian[i * r + j];
            }
        return out;
    });
    return Cochain(extension, 2, f);
}

Cochain cochain_from_form(AlgebroidPtr tangent, const TwoFormField& omega) {
    if (tangent->kind() != AlgebroidKind::tangent) throw InvalidInput("form cochains live on the tangent algebroid");
    if (tangent->atlas() != omega.atlas() && tangent->atlas()->name() != omega.atlas()->name())
        throw InvalidInput("form and algebroid live on different manifolds");
    return Cochain(tangent, 2, omega.coefficients());
}

TwoFormField form_from_cochain(const Cochain& c2) {
    if (c2.algebroid()->kind() != AlgebroidKind::tangent || c2.degree() != 2)
        throw InvalidInput("only 2-cochains on a tangent algebroid are forms");
    return TwoFormField(c2.algebroid()->atlas(), c2.coefficients(), true);
}

}  // namespace aquant
