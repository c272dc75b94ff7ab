#pragma once

#include "aquant/atlas.hpp"
#include "aquant/field.hpp"

#include <tuple>
#include <vector>

namespace aquant {

// Two-form on a manifold, stored chart by chart as a d x d antisymmetric
// coefficient matrix flattened row-major (component i * d + j).
class TwoFormField {
public:
    TwoFormField() = default;
    TwoFormField(AtlasPtr atlas, TensorField coefficients, bool declared_closed = true);

    const AtlasPtr& atlas() const { return atlas_; }
    const TensorField& coefficients() const { return coeffs_; }
    bool declared_closed() const { return declared_closed_; }
    int dimension() const { return atlas_->dimension(); }

    Mat matrix(int chart, const Vec& x) const;
    Mat matrix(const ChartPoint& p) const { return matrix(p.chart, p.x); }
    double eval(const ChartPoint& p, const Vec& v, const Vec& w) const;

    // Largest |d omega| component over the samples, by central differences.
    double closedness_residual(const std::vector<ChartPoint>& samples, double h = 1e-5) const;

    TwoFormField scaled(double factor) const;

private:
    AtlasPtr atlas_;
    TensorField coeffs_;
    bool declared_closed_ = true;
};

TwoFormField zero_form(AtlasPtr atlas);

// lambda times the normalized area form on sphere2 (total area lambda).
TwoFormField area_form(AtlasPtr sphere, double lambda = 1.0);

// scale * dx^i ^ dx^j on a single-chart atlas (euclidean or torus2).
TwoFormField coordinate_form(AtlasPtr atlas, double scale = 1.0, int i = 0, int j = 1);

// Block-diagonal sum pr1^* omega1 + pr2^* omega2 on a product atlas.
TwoFormField product_form(AtlasPtr product, const TwoFormField& first, const TwoFormField& second);

// Sum of p_k(x) dx^{i_k} ^ dx^{j_k} on a single-chart atlas.
struct FormTerm {
    int i = 0;
    int j = 1;
    Polynomial coefficient;
};
TwoFormField polynomial_form(AtlasPtr atlas, const std::vector<FormTerm>& terms, bool declared_closed);

}  // namespace aquant
