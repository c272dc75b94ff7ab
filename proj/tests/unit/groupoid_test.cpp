// Catalog groupoids, multiplicative forms and theta.

#include "aquant/groupoid.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace aquant;
using namespace aquant::fixtures;
using doctest::Approx;

TEST_CASE("catalog groupoids satisfy the groupoid axioms") {
    CHECK(groupoid_axiom_residual(*DeskGroupoid::pair(Atlas::sphere2()), 100, 41) < 1e-10);
    CHECK(groupoid_axiom_residual(*DeskGroupoid::pair(Atlas::euclidean(2)), 100, 42) < 1e-12);
    CHECK(groupoid_axiom_residual(*DeskGroupoid::so3(), 100, 43) < 1e-10);
    CHECK(groupoid_axiom_residual(*DeskGroupoid::circle_bundle(Atlas::euclidean(1)), 100, 44) < 1e-12);
}

TEST_CASE("so3 basis closes under the commutator") {
    auto G = DeskGroupoid::so3();
    const auto& L = G->basis();
    CHECK((L[0] * L[1] - L[1] * L[0] - L[2]).norm() < 1e-14);
    CHECK(G->algebroid()->rank() == 3);
}

TEST_CASE("pair groupoid forms") {
    auto s = Atlas::sphere2();
    auto pair = DeskGroupoid::pair(s);
    TwoFormField w = area_form(s, 1.0);
    CHECK(multiplicativity_residual(*pair, pair_groupoid_form(w), 200, 45).residual < 1e-10);
    CHECK(multiplicativity_residual(*pair, wrong_sign_pair_form(w), 200, 45).residual > 0.1);
    CHECK(multiplicativity_residual(*pair, wrong_sign_pair_form(zero_form(s)), 50, 46).residual == 0.0);
}

TEST_CASE("circle bundle and right-invariant forms are multiplicative") {
    auto circles = DeskGroupoid::circle_bundle(Atlas::euclidean(2));
    CHECK(multiplicativity_residual(*circles, circle_angle_form(circles), 200, 47).residual < 1e-12);
    auto G = DeskGroupoid::so3();
    Mat c = Mat::Zero(3, 3);
    c(0, 1) = 1;
    c(1, 0) = -1;
    CHECK(multiplicativity_residual(*G, right_invariant_form(G, c), 50, 48).residual > 1e-3);
}

TEST_CASE("induced cocycle of the pair form is the base form") {
    auto s = Atlas::sphere2();
    auto pair = DeskGroupoid::pair(s);
    TwoFormField w = area_form(s, 1.0);
    Cochain c = induced_cocycle(*pair, pair_groupoid_form(w));
    for (const auto& p : northern_points(5, 49)) CHECK((c.matrix(p) - w.matrix(p)).norm() < 1e-6);
}

TEST_CASE("rho-star of multiplicative forms satisfies its compatibility conditions") {
    auto s = Atlas::sphere2();
    auto pair = DeskGroupoid::pair(s);
    InfinitesimalData d = rho_star(*pair, pair_groupoid_form(area_form(s, 1.0)), northern_points(5, 50));
    CHECK(d.c1_residual < 1e-6);
    CHECK(d.c2_residual < 1e-5);
    CHECK(d.consistency_residual < 1e-6);

    Cochain c = cochain_from_form(tangent_algebroid(s), area_form(s, 1.0));
    TensorField rs = rho_star_from_cochain(c);
    CHECK(rho_star_pairing_residual(rs, c, northern_points(5, 51)) < 1e-12);
}

TEST_CASE("theta of the transgression") {
    auto s = Atlas::sphere2();
    AlgebroidPtr ext = a_omega(area_form(s, 1.0));
    Cochain l = canonical_transgression(ext);
    Cochain pc = pullback_to_extension(*ext->extension_cocycle(), ext);
    const int n = 200;
    BasePath base;
    std::vector<Vec> fiber;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        Vec x(2), v(3);
        x << -0.2 + 0.4 * t, 0.1 * std::sin(kPi * t);
        v << 0.4, 0.1 * kPi * std::cos(kPi * t), std::sin(kPi * t);
        base.points.push_back(ChartPoint{0, x});
        fiber.push_back(v);
    }
    APath a = make_apath(ext, base, fiber, 1e-4);
    PathVariation vert{std::vector<Vec>(n + 1, Vec::Zero(2)), std::vector<Vec>(n + 1, Vec::Unit(3, 2))};
    CHECK(theta_eval(l, pc, a, vert) == Approx(1.0).epsilon(1e-6));
    CHECK(f_l(l, a) == Approx(2 / kPi).epsilon(1e-8));

    std::mt19937_64 rng(52);
    VariationField eta([](double t) { return std::sin(kPi * t); }, [](double t) { return kPi * std::cos(kPi * t); },
                       random_polynomial_field(3, 2, 2, rng));
    PathVariation X = action_direction(a, eta);
    CHECK(std::abs(theta_eval(l, pc, a, X)) < 1e-3 * X.norm());
}
