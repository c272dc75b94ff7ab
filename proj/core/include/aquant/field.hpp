#pragma once

#include "aquant/types.hpp"

#include <functional>
#include <vector>

namespace aquant {

// Value and derivatives of a vector-valued field at one point.
// gradient(c, mu) = d_mu of component c; hessian[c](mu, nu) likewise.
struct FieldJet {
    Vec value;
    Mat gradient;
    std::vector<Mat> hessian;
};

// Polynomial in d variables, stored as a list of monomials.
class Polynomial {
public:
    struct Term {
        double coef = 0.0;
        std::vector<int> powers;
    };

    Polynomial() = default;
    explicit Polynomial(int variables) : variables_(variables) {}
    Polynomial(int variables, std::vector<Term> terms);

    static Polynomial constant(int variables, double c);
    static Polynomial coordinate(int variables, int index, double scale = 1.0);

    int variables() const { return variables_; }
    const std::vector<Term>& terms() const { return terms_; }
    void add_term(double coef, std::vector<int> powers);

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;

private:
    int variables_ = 0;
    std::vector<Term> terms_;
};

// Smooth field given chart by chart. The evaluator fills derivatives up
// to the requested order; asking for more than max_order throws
// MissingDerivative.
class TensorField {
public:
    using Evaluator = std::function<FieldJet(int chart, const Vec& x, int order)>;

    TensorField() = default;
    TensorField(int components, int dimension, int max_order, Evaluator eval);

    static TensorField constant(const Vec& value, int dimension);
    static TensorField zero(int components, int dimension);
    // One polynomial per component, identical in every chart.
    static TensorField polynomial(const std::vector<Polynomial>& components, int dimension);

    int components() const { return components_; }
    int dimension() const { return dimension_; }
    int max_order() const { return max_order_; }
    bool valid() const { return static_cast<bool>(eval_); }

    FieldJet evaluate(int chart, const Vec& x, int order = 0) const;
    Vec value(int chart, const Vec& x) const { return evaluate(chart, x, 0).value; }

private:
    int components_ = 0;
    int dimension_ = 0;
    int max_order_ = 0;
    Evaluator eval_;
};

// Empty jet with storage sized for the requested order.
FieldJet make_jet(int components, int dimension, int order);

}  // namespace aquant
