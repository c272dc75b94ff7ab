#include "aquant/field.hpp"

#include <cmath>
#include <string>

namespace aquant {

namespace {

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

// Product of x_k^{p_k} with the exponent of one or two variables lowered.
double monomial(const Vec& x, const std::vector<int>& p, int lower_a = -1, int lower_b = -1) {
    double r = 1.0;
    for (int k = 0; k < static_cast<int>(p.size()); ++k) {
        int e = p[k] - (k == lower_a ? 1 : 0) - (k == lower_b ? 1 : 0);
        if (e < 0) return 0.0;
        r *= ipow(x(k), e);
    }
    return r;
}

}  // namespace

Polynomial::Polynomial(int variables, std::vector<Term> terms) : variables_(variables) {
    for (auto& t : terms) add_term(t.coef, std::move(t.powers));
}

Polynomial Polynomial::constant(int variables, double c) {
    Polynomial p(variables);
    p.add_term(c, std::vector<int>(variables, 0));
    return p;
}

Polynomial Polynomial::coordinate(int variables, int index, double scale) {
    Polynomial p(variables);
    std::vector<int> powers(variables, 0);
    powers.at(index) = 1;
    p.add_term(scale, powers);
    return p;
}

void Polynomial::add_term(double coef, std::vector<int> powers) {
    if (static_cast<int>(powers.size()) != variables_)
        throw InvalidInput("monomial has " + std::to_string(powers.size()) +
                           " exponents, polynomial has " + std::to_string(variables_) +
                           " variables");
    for (int p : powers)
        if (p < 0) throw InvalidInput("negative exponent in monomial");
    terms_.push_back({coef, std::move(powers)});
}

double Polynomial::value(const Vec& x) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coef * monomial(x, t.powers);
    return s;
}

Vec Polynomial::gradient(const Vec& x) const {
    Vec g = Vec::Zero(variables_);
    for (const auto& t : terms_)
        for (int k = 0; k < variables_; ++k)
            if (t.powers[k] > 0) g(k) += t.coef * t.powers[k] * monomial(x, t.powers, k);
    return g;
}

Mat Polynomial::hessian(const Vec& x) const {
    Mat h = Mat::Zero(variables_, variables_);
    for (const auto& t : terms_)
        for (int a = 0; a < variables_; ++a)
            for (int b = 0; b < variables_; ++b) {
                double f = (a == b) ? t.powers[a] * (t.powers[a] - 1) : t.powers[a] * t.powers[b];
                if (f != 0) h(a, b) += t.coef * f * monomial(x, t.powers, a, b);
            }
    return h;
}

FieldJet make_jet(int components, int dimension, int order) {
    FieldJet j;
    j.value = Vec::Zero(components);
    if (order >= 1) j.gradient = Mat::Zero(components, dimension);
    if (order >= 2) j.hessian.assign(components, Mat::Zero(dimension, dimension));
    return j;
}

TensorField::TensorField(int components, int dimension, int max_order, Evaluator eval)
    : components_(components), dimension_(dimension), max_order_(max_order), eval_(std::move(eval)) {}

TensorField TensorField::constant(const Vec& value, int dimension) {
    const int n = static_cast<int>(value.size());
    return TensorField(n, dimension, 1000, [value, n, dimension](int, const Vec&, int order) {
        FieldJet j = make_jet(n, dimension, order);
        j.value = value;
        return j;
    });
}

TensorField TensorField::zero(int components, int dimension) {
    return constant(Vec::Zero(components), dimension);
}

TensorField TensorField::polynomial(const std::vector<Polynomial>& comps, int dimension) {
    for (const auto& p : comps)
        if (p.variables() != dimension) throw InvalidInput("polynomial arity does not match dimension");
    const int n = static_cast<int>(comps.size());
    return TensorField(n, dimension, 1000, [comps, n, dimension](int, const Vec& x, int order) {
        FieldJet j = make_jet(n, dimension, order);
        for (int c = 0; c < n; ++c) {
            j.value(c) = comps[c].value(x);
            if (order >= 1) j.gradient.row(c) = comps[c].gradient(x).transpose();
            if (order >= 2) j.hessian[c] = comps[c].hessian(x);
        }
        return j;
    });
}

FieldJet TensorField::evaluate(int chart, const Vec& x, int order) const {
    if (!eval_) throw InvalidInput("evaluating an empty field");
    if (order > max_order_)
        throw MissingDerivative("field carries derivatives up to order " + std::to_string(max_order_) +
                                ", order " + std::to_string(order) + " requested");
    if (x.size() != dimension_) throw InvalidInput("point has wrong dimension");
    return eval_(chart, x, order);
}

}  // namespace aquant
