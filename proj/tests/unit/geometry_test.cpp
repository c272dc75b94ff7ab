// Atlases, forms, grids and quadrature.

#include "aquant/quadrature.hpp"
#include "aquant/spheres.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace aquant;
using namespace aquant::fixtures;
using doctest::Approx;

namespace {

Vec v2(double a, double b) {
    Vec x(2);
    x << a, b;
    return x;
}

}  // namespace

TEST_CASE("sphere chart transitions invert the radius") {
    auto s = Atlas::sphere2();
    Vec w = s->transition(0, 1, v2(1, 0));
    CHECK(w(0) == Approx(1.0));
    CHECK(w(1) == Approx(0.0));
    w = s->transition(0, 1, v2(2, 0));
    CHECK(w(0) == Approx(0.5));
    CHECK(w(1) == Approx(0.0));
    Vec back = s->transition(1, 0, s->transition(0, 1, v2(0.3, -0.7)));
    CHECK((back - v2(0.3, -0.7)).norm() < 1e-14);
}

TEST_CASE("sphere transition Jacobian matches finite differences") {
    auto s = Atlas::sphere2();
    const Vec x = v2(0.4, 0.9);
    const Mat J = s->transition_jacobian(0, 1, x);
    const double h = 1e-6;
    for (int k = 0; k < 2; ++k) {
        Vec e = Vec::Unit(2, k) * h;
        Vec col = (s->transition(0, 1, x + e) - s->transition(0, 1, x - e)) / (2 * h);
        CHECK((col - J.col(k)).norm() < 1e-8);
    }
}

TEST_CASE("points outside the overlap are rejected") {
    auto s = Atlas::sphere2();
    CHECK_THROWS_AS(s->transition(0, 1, v2(0, 0)), DomainError);
    CHECK_FALSE(s->in_domain(0, v2(5, 0)));
}

TEST_CASE("embedding round trip and preferred chart") {
    auto s = Atlas::sphere2();
    Vec north(3), south(3);
    north << 0, 0, 1;
    south << 0, 0, -1;
    CHECK(s->normalize(s->from_embedding(north)).chart == 0);
    CHECK(s->normalize(s->from_embedding(south)).chart == 1);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        ChartPoint p = random_point(*s, rng);
        Vec y = s->embed(p);
        CHECK(y.norm() == Approx(1.0));
        CHECK(s->distance(s->from_embedding(y), p) < 1e-12);
    }
}

TEST_CASE("torus distance is periodic") {
    auto t = Atlas::torus2();
    CHECK(t->distance(ChartPoint{0, v2(0.1, 0.2)}, ChartPoint{0, v2(1.1, -0.8)}) < 1e-12);
}

TEST_CASE("product atlas splits and joins points") {
    auto s = Atlas::sphere2();
    auto p = Atlas::product(s, Atlas::euclidean(1));
    CHECK(p->dimension() == 3);
    CHECK(p->chart_count() == 2);
    Vec x(3);
    x << 0.1, 0.2, 5.0;
    ChartPoint q{1, x};
    auto [a, b] = p->split_point(q);
    CHECK(a.chart == 1);
    CHECK(b.x(0) == 5.0);
    ChartPoint back = p->join_point(a, b);
    CHECK(back.chart == 1);
    CHECK((back.x - x).norm() == 0.0);
}

TEST_CASE("normalized area form has density 1/pi at the chart centre") {
    auto s = Atlas::sphere2();
    TwoFormField w = area_form(s, 1.0);
    Mat m = w.matrix(0, v2(0, 0));
    CHECK(m(0, 1) == Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(m(1, 0) == Approx(-1.0 / kPi).epsilon(1e-14));
    CHECK(w.closedness_residual(northern_points(10, 1)) < 1e-8);
}

TEST_CASE("a non-closed polynomial form has a closedness residual") {
    auto r3 = Atlas::euclidean(3);
    TwoFormField w = polynomial_form(r3, {{0, 1, Polynomial::coordinate(3, 2)}}, false);
    CHECK(w.closedness_residual(random_points(*r3, 5, 2)) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("simpson weights and the square rule") {
    auto w = simpson_weights(10);
    double sum = 0;
    for (double x : w) sum += x;
    CHECK(sum == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(simpson_weights(7), InvalidInput);
    Mat vals(9, 11);
    for (int j = 0; j <= 8; ++j)
        for (int i = 0; i <= 10; ++i) vals(j, i) = std::pow(i / 10.0, 3) * std::pow(j / 8.0, 2);
    CHECK(integrate_square(vals) == Approx(1.0 / 12).epsilon(1e-14));
}

TEST_CASE("fourth-order stencil is exact on quartics") {
    const int n = 8;
    for (int i = 0; i <= n; ++i) {
        Stencil s = derivative_stencil(i, n);
        double d = 0;
        for (int k = 0; k < 5; ++k) d += n * s.weights[k] * std::pow(static_cast<double>(s.first + k) / n, 4);
        CHECK(d == Approx(4 * std::pow(static_cast<double>(i) / n, 3)).epsilon(1e-10));
    }
}

TEST_CASE("whole sphere integrates to one") {
    auto s = Atlas::sphere2();
    TwoFormField w = area_form(s, 1.0);
    SphereGrid g = lasso_grid(s, east(), north(), kPi, 1, 100, 100, GridMarker::based);
    CHECK(g.boundary_defect(*s) < 1e-12);
    CHECK(integrate_over_sphere(w, g).value == Approx(1.0).epsilon(1e-6));
    SphereGrid r = lasso_grid(s, east(), north(), kPi, -1, 100, 100, GridMarker::based);
    CHECK(integrate_over_sphere(w, r).value == Approx(-1.0).epsilon(1e-6));
    CHECK(integrate_over_sphere(w.scaled(3.0), g).value == Approx(3.0).epsilon(1e-6));
}

TEST_CASE("hemisphere sweep integrates to one half") {
    auto s = Atlas::sphere2();
    SphereGrid g = sample_map(*s, hemisphere_sweep_map(s), 100, 100, GridMarker::fixed_endpoints);
    CHECK(std::abs(integrate_over_homotopy(area_form(s, 1.0), g).value) == Approx(0.5).epsilon(1e-6));
}

TEST_CASE("equatorial cap filling integrates to one half") {
    auto s = Atlas::sphere2();
    SphereGrid up = upper_filling(s, {100, 100});
    CHECK(integrate_over_homotopy(area_form(s, 1.0), up).value == Approx(0.5).epsilon(1e-6));
}

TEST_CASE("random spheres have integer degree") {
    auto s = Atlas::sphere2();
    TwoFormField w = area_form(s, 1.0);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        SphereGrid g = sample_map(*s, random_sphere_map(s, seed), 120, 120, GridMarker::based);
        const double v = integrate_over_sphere(w, g).value;
        CHECK(std::abs(v - std::round(v)) < 1e-4);
    }
}

TEST_CASE("odd resolutions are rejected by the quadrature") {
    auto s = Atlas::sphere2();
    SphereGrid g = lasso_grid(s, east(), north(), kPi, 1, 9, 10, GridMarker::based);
    CHECK_THROWS_AS(integrate_over_sphere(area_form(s, 1.0), g), InvalidInput);
}

TEST_CASE("path helpers") {
    auto s = Atlas::sphere2();
    std::mt19937_64 rng(5);
    BasePath p = random_path(s, east(), rng, 40);
    BasePath r = reverse(p);
    CHECK(s->distance(r.start(), p.end()) == 0.0);
    BasePath q = resample(*s, p, 80);
    CHECK(q.intervals() == 80);
    CHECK(s->distance(sample_path(*s, p, 0.5), q.points[40]) < 1e-12);
    BasePath c = concatenate(*s, p, r, 60);
    CHECK(s->distance(c.start(), p.start()) < 1e-12);
    CHECK(s->distance(c.end(), p.start()) < 1e-12);
    CHECK(bump(0.0) == 0.0);
    CHECK(bump(1.0) == Approx(1.0));
    CHECK(bump_derivative(0.0) == 0.0);
}
