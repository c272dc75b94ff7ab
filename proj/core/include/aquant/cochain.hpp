#pragma once

#include "aquant/algebroid.hpp"

#include <vector>

namespace aquant {

// Alternating p-cochain on an algebroid: a function of the base point
// with one coefficient per ordered index tuple (i_1..i_p), stored
// row-major in base r. Coefficients must be antisymmetric.
class Cochain {
public:
    Cochain(AlgebroidPtr algebroid, int degree, TensorField coefficients);

    const AlgebroidPtr& algebroid() const { return algebroid_; }
    int degree() const { return degree_; }
    const TensorField& coefficients() const { return coeffs_; }
    int max_order() const { return coeffs_.max_order(); }

    Vec values(const ChartPoint& p) const { return coeffs_.value(p.chart, p.x); }
    double component(const ChartPoint& p, const std::vector<int>& idx) const;
    // Multilinear evaluation on fiber vectors.
    double eval(const ChartPoint& p, const std::vector<Vec>& args) const;
    // r x r coefficient matrix of a 2-cochain.
    Mat matrix(const ChartPoint& p) const;

private:
    AlgebroidPtr algebroid_;
    int degree_;
    TensorField coeffs_;
};

using CochainPtr = std::shared_ptr<const Cochain>;

// Flat index of a tuple in base r.
int tuple_index(const std::vector<int>& idx, int r);

// Algebroid differential. Uses the convention
//   d l (a_0..a_p) = -[ sum_i (-1)^i rho(a_i) l(..a_i omitted..)
//                      + sum_{i<j} (-1)^{i+j} l([a_i, a_j], ..a_i, a_j omitted..) ]
// under which the canonical transgression of a central extension A_c
// satisfies d l_c = pi^* c. The result carries one derivative order less
// than the input; an input without first derivatives raises MissingDerivative.
Cochain d_A(const Cochain& l);

struct CocycleReport {
    double residual = 0;
    double tolerance = 0;
    bool verdict = false;
};
CocycleReport is_cocycle(const Cochain& c2, const std::vector<ChartPoint>& samples, double tol = 1e-8);

// A_c = A + R with bracket [(a,f),(b,g)] = ([a,b], rho(a)g - rho(b)f + c(a,b)).
AlgebroidPtr central_extension(const Cochain& c2, std::string name = "central_extension");
// l_c(alpha, lambda) = lambda on a central extension.
Cochain canonical_transgression(AlgebroidPtr extension);
// pi^* c on the extension: c on the A-part, zero on the R-part.
Cochain pullback_to_extension(const Cochain& c2, AlgebroidPtr extension);

// Two-form on the base seen as a 2-cochain on the tangent algebroid.
Cochain cochain_from_form(AlgebroidPtr tangent, const TwoFormField& omega);
TwoFormField form_from_cochain(const Cochain& c2);

}  // namespace aquant
