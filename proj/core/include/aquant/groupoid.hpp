#pragma once

#include "aquant/apath.hpp"
#include "aquant/cochain.hpp"
#include "aquant/forms.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace aquant {

enum class GroupoidKind { pair, matrix_group, circle_bundle };

// Arrow of a catalog groupoid in ambient coordinates:
//   pair          (x_target, x_source), charts {target chart, source chart}
//   matrix_group  column-major entries of g, charts {0, 0}
//   circle_bundle (x, theta) with theta in R/Z, charts {chart of x, 0}
struct Arrow {
    Vec coords;
    std::array<int, 2> charts{0, 0};
};

// Composable arrows g, h (source of g = target of h) with tangent pairs
// (X_k, Y_k) satisfying ds(X_k) = dt(Y_k).
struct ComposableSample {
    Arrow g, h;
    std::vector<std::pair<Vec, Vec>> tangents;
};

class DeskGroupoid;
using GroupoidPtr = std::shared_ptr<const DeskGroupoid>;

// Lie groupoid of the catalog with explicit structure maps.
class DeskGroupoid {
public:
    static GroupoidPtr pair(AtlasPtr base);
    // Matrix group generated by a basis of its Lie algebra.
    static GroupoidPtr matrix_group(std::vector<Mat> basis, std::string name);
    static GroupoidPtr so3();
    // Bundle of circles M x R/Z with fiberwise addition.
    static GroupoidPtr circle_bundle(AtlasPtr base);

    GroupoidKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const AtlasPtr& base() const { return base_; }
    const AlgebroidPtr& algebroid() const { return algebroid_; }
    const std::vector<Mat>& basis() const { return basis_; }
    int arrow_dimension() const;

    ChartPoint source(const Arrow& g) const;
    ChartPoint target(const Arrow& g) const;
    Arrow unit(const ChartPoint& x) const;
    Arrow inverse(const Arrow& g) const;
    // g h, defined when source(g) = target(h).
    Arrow multiply(const Arrow& g, const Arrow& h) const;
    Vec multiply_differential(const Arrow& g, const Arrow& h, const Vec& X, const Vec& Y) const;
    double arrow_distance(const Arrow& a, const Arrow& b) const;

    // Columns span A_x = ker ds at the unit, matching the algebroid frame.
    Mat unit_frame(const ChartPoint& x) const;
    // Differential of the unit map T_x M -> T_{1_x} G.
    Mat unit_differential(const ChartPoint& x) const;

    ChartPoint random_point(std::mt19937_64& rng) const;
    Arrow random_arrow(std::mt19937_64& rng) const;
    ComposableSample random_composable(std::mt19937_64& rng, int tangents = 2) const;

private:
    DeskGroupoid() = default;

    GroupoidKind kind_ = GroupoidKind::pair;
    std::string name_;
    AtlasPtr base_;
    AlgebroidPtr algebroid_;
    std::vector<Mat> basis_;
};

// Differential form on the arrow space in ambient coordinates. Degree 2
// forms return an n x n antisymmetric matrix, degree 1 forms an n x 1 column.
struct GroupoidForm {
    int degree = 2;
    std::function<Mat(const Arrow&)> coefficients;
};

// pr1^* omega - pr2^* omega on the pair groupoid (target minus source).
GroupoidForm pair_groupoid_form(const TwoFormField& omega);
// pr1^* omega + pr2^* omega: not multiplicative unless omega = 0.
GroupoidForm wrong_sign_pair_form(const TwoFormField& omega);
// d theta on the circle bundle.
GroupoidForm circle_angle_form(GroupoidPtr circles);
// omega_g(X, Y) = c(X g^{-1}, Y g^{-1}) on a matrix group, c given in basis coordinates.
GroupoidForm right_invariant_form(GroupoidPtr group, const Mat& c);

struct MultiplicativityReport {
    double residual = 0;
    int samples = 0;
};
// max |m^* w - pr1^* w - pr2^* w| over random composable pairs and tangents.
MultiplicativityReport multiplicativity_residual(const DeskGroupoid& g, const GroupoidForm& w, int samples,
                                                 std::uint64_t seed);

// Groupoid axioms on random samples: associativity, units and inverses.
double groupoid_axiom_residual(const DeskGroupoid& g, int samples, std::uint64_t seed);

// c(alpha, beta) = w(alpha, beta) at the unit, as a 2-cochain on the algebroid.
Cochain induced_cocycle(const DeskGroupoid& g, const GroupoidForm& w);

// Infinitesimal data of a multiplicative 2-form:
//   rho*_{i mu} = w(e_i, du(d_mu)) at the unit
//   c(e_i, e_j) = w(e_i, e_j) at the unit
// with residuals of the two compatibility conditions
//   <rho*(a), rho(b)> = -<rho*(b), rho(a)>
//   rho*([a, b]) = L_{rho a} rho*(b) - L_{rho b} rho*(a) + d <rho*(a), rho(b)>
// and of the consistency c(a, b) = <rho*(a), rho(b)>.
struct InfinitesimalData {
    TensorField rho_star;  // component i * d + mu
    double c1_residual = 0;
    double c2_residual = 0;
    double consistency_residual = 0;
};
InfinitesimalData rho_star(const DeskGroupoid& g, const GroupoidForm& w, const std::vector<ChartPoint>& samples);

// rho* of a 2-cochain on a transitive algebroid, through the anchor
// pseudo-inverse: <rho*(a), rho(b)> = c(a, b). Throws when c does not
// vanish on the kernel of the anchor.
TensorField rho_star_from_cochain(const Cochain& c2);
double rho_star_pairing_residual(const TensorField& rho_star, const Cochain& c2, const std::vector<ChartPoint>& samples);

// f_l(a) = int_0^1 l(a(t)) dt.
double f_l(const Cochain& l, const APath& a);
// sigma~(v) = int_0^1 <rho*(a(t)), v(t)> dt for a base displacement v.
double sigma_tilde(const TensorField& rho_star, const APath& a, const PathVariation& v);
// theta(v) = d f_l(v) - sigma~(v); d f_l by Richardson-extrapolated forward differences.
double theta_eval(const Cochain& l, const TensorField& rho_star, const APath& a, const PathVariation& v,
                  double h = 1e-5);
double theta_eval(const Cochain& l, const Cochain& c2, const APath& a, const PathVariation& v, double h = 1e-5);

}  // namespace aquant
