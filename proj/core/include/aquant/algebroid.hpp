#pragma once

#include "aquant/atlas.hpp"
#include "aquant/field.hpp"
#include "aquant/forms.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace aquant {

enum class AlgebroidKind { tangent, lie_algebra, a_omega, abelian_bundle, central_extension };

std::string to_string(AlgebroidKind kind);

class Cochain;

// Lie algebroid of rank r over a d-dimensional atlas, described in a
// local frame e_1..e_r per chart:
//   anchor      rho(e_i) = rho^mu_i d_mu,    component mu * r + i
//   bracket     [e_i, e_j] = c^k_ij e_k,     component (k * r + i) * r + j
// Fiber components change between charts by frame_transition(from, to, x).
class Algebroid {
public:
    using FrameTransition = std::function<Mat(int from, int to, const Vec& x)>;

    Algebroid(AtlasPtr atlas, int rank, TensorField anchor, TensorField structure, FrameTransition transition,
              AlgebroidKind kind, std::string name);

    const AtlasPtr& atlas() const { return atlas_; }
    int rank() const { return rank_; }
    int dimension() const { return atlas_->dimension(); }
    AlgebroidKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    const TensorField& anchor_field() const { return anchor_; }
    const TensorField& structure_field() const { return structure_; }

    Mat anchor(int chart, const Vec& x) const;
    Mat anchor(const ChartPoint& p) const { return anchor(p.chart, p.x); }
    // structure(...)[k](i, j) = c^k_ij
    std::vector<Mat> structure(int chart, const Vec& x) const;
    // Pointwise bracket term c^k_ij a^i b^j (no derivative terms).
    Vec structure_bracket(int chart, const Vec& x, const Vec& a, const Vec& b) const;
    Mat frame_transition(int from, int to, const Vec& x) const;
    // Fiber vector a at p re-expressed in chart `to`.
    Vec transport_fiber(const ChartPoint& p, int to, const Vec& a) const;

    // Set for central extensions: the cocycle and the extended algebroid.
    const std::shared_ptr<const Cochain>& extension_cocycle() const { return cocycle_; }
    void set_extension_cocycle(std::shared_ptr<const Cochain> c) { cocycle_ = std::move(c); }

private:
    AtlasPtr atlas_;
    int rank_;
    TensorField anchor_;
    TensorField structure_;
    FrameTransition transition_;
    AlgebroidKind kind_;
    std::string name_;
    std::shared_ptr<const Cochain> cocycle_;
};

using AlgebroidPtr = std::shared_ptr<const Algebroid>;

// Catalog.
AlgebroidPtr tangent_algebroid(AtlasPtr atlas);
// Lie algebra over a point from constants c^k_ij given as structure[k](i, j).
AlgebroidPtr lie_algebra(const std::vector<Mat>& structure, std::string name = "lie_algebra");
AlgebroidPtr so3_algebra();
AlgebroidPtr abelian_bundle(AtlasPtr atlas, int rank);
// TM + R with bracket [(X,f),(Y,g)] = ([X,Y], X(g) - Y(f) + omega(X,Y)).
AlgebroidPtr a_omega(const TwoFormField& omega);

// Cyclic Jacobi sum of frame sections, max over components and triples.
double jacobi_residual(const Algebroid& a, const ChartPoint& p);
// |rho([e_i, e_j]) - [rho e_i, rho e_j]|, max over components and pairs.
double anchor_compatibility_residual(const Algebroid& a, const ChartPoint& p);

// Kernel of the anchor at a point with its induced bracket.
struct IsotropyAlgebra {
    Mat basis;                    // r x m, orthonormal columns
    std::vector<Mat> structure;   // structure[a](b, c) in that basis
    double closure_residual = 0;  // component of brackets leaving the kernel
    double jacobi_residual = 0;
    Vec singular_values;
    int dimension() const { return static_cast<int>(basis.cols()); }
};
IsotropyAlgebra isotropy_algebra(const Algebroid& a, const ChartPoint& p);

}  // namespace aquant
