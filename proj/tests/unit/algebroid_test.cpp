// Algebroids, cochains and the differential.

#include "aquant/cochain.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace aquant;
using namespace aquant::fixtures;
using doctest::Approx;

namespace {

Vec constant_2form(const Mat& c) {
    Vec v(c.size());
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) v(i * c.cols() + j) = c(i, j);
    return v;
}

}  // namespace

TEST_CASE("d_A squares to zero") {
    std::mt19937_64 rng(11);
    auto s = Atlas::sphere2();
    auto pts = northern_points(20, 12);
    for (AlgebroidPtr a : {tangent_algebroid(s), a_omega(area_form(s, 1.0))}) {
        for (int q = 0; q < 5; ++q) {
            Cochain l(a, 1, random_polynomial_field(a->rank(), 2, 3, rng));
            Cochain dl = d_A(l);
            Cochain ddl = d_A(dl);
            double big = 0, small = 0;
            for (const auto& p : pts) {
                big = std::max(big, dl.values(p).cwiseAbs().maxCoeff());
                small = std::max(small, ddl.values(p).cwiseAbs().maxCoeff());
            }
            CHECK(big > 1e-3);
            CHECK(small < 1e-8);
        }
    }
}

TEST_CASE("d_A on the tangent algebroid is minus the de Rham differential") {
    auto r2 = Atlas::euclidean(2);
    Polynomial f(2);
    f.add_term(1.0, {2, 1});  // x^2 y
    Cochain l0(tangent_algebroid(r2), 0, TensorField::polynomial({f}, 2));
    Cochain dl = d_A(l0);
    Vec x(2);
    x << 0.5, -1.5;
    const ChartPoint p{0, x};
    CHECK(dl.values(p)(0) == Approx(-2 * 0.5 * -1.5));
    CHECK(dl.values(p)(1) == Approx(-0.25));
}

TEST_CASE("a cochain without derivatives cannot be differentiated") {
    auto r2 = Atlas::euclidean(2);
    TensorField f(2, 2, 0, [](int, const Vec&, int order) { return make_jet(2, 2, order); });
    Cochain l(tangent_algebroid(r2), 1, f);
    CHECK_THROWS_AS(d_A(d_A(l)), MissingDerivative);
}

TEST_CASE("catalog algebroids satisfy Jacobi and anchor compatibility") {
    auto s = Atlas::sphere2();
    for (const auto& p : northern_points(5, 13)) {
        CHECK(jacobi_residual(*tangent_algebroid(s), p) < 1e-10);
        CHECK(jacobi_residual(*a_omega(area_form(s, 1.0)), p) < 1e-8);
        CHECK(anchor_compatibility_residual(*a_omega(area_form(s, 1.0)), p) < 1e-8);
    }
    CHECK(jacobi_residual(*so3_algebra(), ChartPoint{0, Vec(0)}) < 1e-14);
}

TEST_CASE("so3 bracket is the cross product") {
    auto g = so3_algebra();
    Vec e1 = Vec::Unit(3, 0), e2 = Vec::Unit(3, 1);
    Vec b = g->structure_bracket(0, Vec(0), e1, e2);
    CHECK((b - Vec::Unit(3, 2)).norm() < 1e-14);
}

TEST_CASE("isotropy algebras") {
    auto s = Atlas::sphere2();
    const ChartPoint p = northern_points(1, 14).front();
    IsotropyAlgebra t = isotropy_algebra(*tangent_algebroid(s), p);
    CHECK(t.dimension() == 0);
    IsotropyAlgebra ao = isotropy_algebra(*a_omega(area_form(s, 1.0)), p);
    CHECK(ao.dimension() == 1);
    CHECK(ao.closure_residual < 1e-10);
    IsotropyAlgebra so = isotropy_algebra(*so3_algebra(), ChartPoint{0, Vec(0)});
    CHECK(so.dimension() == 3);
    CHECK(so.jacobi_residual < 1e-12);
}

TEST_CASE("central extension satisfies Jacobi exactly when c is a cocycle") {
    auto r3 = Atlas::euclidean(3);
    auto t3 = tangent_algebroid(r3);
    auto pts = random_points(*r3, 10, 15);
    Cochain closed = cochain_from_form(t3, polynomial_form(r3, {{0, 1, Polynomial::coordinate(3, 0)}}, true));
    Cochain open = cochain_from_form(t3, polynomial_form(r3, {{0, 1, Polynomial::coordinate(3, 2)}}, false));
    CHECK(is_cocycle(closed, pts).verdict);
    CHECK_FALSE(is_cocycle(open, pts).verdict);
    double jc = 0, jo = 0;
    for (const auto& p : pts) {
        jc = std::max(jc, jacobi_residual(*central_extension(closed), p));
        jo = std::max(jo, jacobi_residual(*central_extension(open), p));
    }
    CHECK(jc < 1e-10);
    CHECK(jo == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("constant 2-cochains on so3: every one is a cocycle") {
    Mat c = Mat::Zero(3, 3);
    c(0, 1) = 1.3;
    c(1, 0) = -1.3;
    c(1, 2) = -0.4;
    c(2, 1) = 0.4;
    Cochain cc(so3_algebra(), 2, TensorField::constant(constant_2form(c), 0));
    CHECK(is_cocycle(cc, {ChartPoint{0, Vec(0)}}).verdict);
}

TEST_CASE("canonical transgression") {
    auto s = Atlas::sphere2();
    Cochain c = cochain_from_form(tangent_algebroid(s), area_form(s, 1.0));
    AlgebroidPtr ext = central_extension(c);
    Cochain l = canonical_transgression(ext);
    Cochain dl = d_A(l);
    Cochain pc = pullback_to_extension(c, ext);
    for (const auto& p : northern_points(10, 16)) {
        CHECK(l.eval(p, {Vec::Unit(3, 2)}) == 1.0);
        CHECK(l.eval(p, {Vec::Unit(3, 0)}) == 0.0);
        CHECK((dl.values(p) - pc.values(p)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("form and cochain conversions round trip") {
    auto s = Atlas::sphere2();
    TwoFormField w = area_form(s, 2.0);
    TwoFormField back = form_from_cochain(cochain_from_form(tangent_algebroid(s), w));
    for (const auto& p : northern_points(5, 17)) CHECK((back.matrix(p) - w.matrix(p)).norm() < 1e-14);
}

TEST_CASE("tuple indexing") {
    CHECK(tuple_index({1, 2}, 3) == 5);
    CHECK(tuple_index({2, 0, 1}, 3) == 19);
}
