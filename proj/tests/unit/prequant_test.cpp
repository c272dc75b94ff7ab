// Prequantization verdicts and the path bundle.

#include "aquant/prequant.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace aquant;
using namespace aquant::fixtures;
using doctest::Approx;

namespace {

const Resolution kRes{120, 120};

PrequantReport verdict_for(double lambda) {
    auto s = Atlas::sphere2();
    auto pts = random_points(*s, 2, 61);
    std::vector<std::vector<SphereGrid>> gens;
    for (const auto& p : pts) gens.push_back(sample_generators(*s, default_generators(s, p), kRes));
    return prequantizable(s, area_form(s, lambda), pts, gens, Tolerances{});
}

}  // namespace

TEST_CASE("integrality law on the sphere") {
    PrequantReport one = verdict_for(1.0);
    CHECK(one.verdict == PrequantVerdict::prequantizable);
    CHECK(one.k == 1);
    PrequantReport three = verdict_for(3.0);
    CHECK(three.verdict == PrequantVerdict::prequantizable);
    CHECK(three.k == 3);
    CHECK(verdict_for(0.5).verdict == PrequantVerdict::not_prequantizable);
    CHECK(verdict_for(std::sqrt(2.0)).verdict == PrequantVerdict::not_prequantizable);
}

TEST_CASE("verdict from period samples") {
    PeriodSample near;
    near.group = reduce_period_group({1.0 + 5e-4});
    Tolerances tol;
    CHECK(prequantizable({near}, tol).verdict == PrequantVerdict::inconclusive);
    PeriodSample dense;
    dense.group = reduce_period_group({1.0, std::sqrt(2.0)});
    CHECK(prequantizable({dense}, tol).verdict == PrequantVerdict::not_prequantizable);
    PeriodSample trivial;
    trivial.group = reduce_period_group({});
    PrequantReport t = prequantizable({trivial}, tol);
    CHECK(t.verdict == PrequantVerdict::prequantizable);
    CHECK(t.k == 0);
}

TEST_CASE("path bundle refuses the torus and dense periods") {
    auto t = Atlas::torus2();
    CHECK_THROWS_AS(PathBundle::build(t, coordinate_form(t, 1.0), default_basepoint(*t), kRes), Refusal);
    auto s = Atlas::sphere2();
    auto prod = Atlas::product(s, s);
    TwoFormField w = product_form(prod, area_form(s, 1.0), area_form(s, std::sqrt(2.0)));
    CHECK_THROWS_AS(PathBundle::build(prod, w, default_basepoint(*prod), {60, 60}), Refusal);
}

TEST_CASE("equator holonomy and Chern numbers") {
    auto s = Atlas::sphere2();
    const ChartPoint x0 = default_basepoint(*s);
    SphereGrid up = upper_filling(s, kRes), low = lower_filling(s, kRes);
    PathBundle b = PathBundle::build(s, area_form(s, 1.0), x0, kRes);
    CHECK(b.structural_group().presentation().rfind("R/", 0) == 0);
    HolonomyResult h = b.holonomy(up.row(up.n_eps()), up);
    CHECK(h.raw == Approx(-0.5).epsilon(1e-6));
    CHECK(h.value == Approx(0.5).epsilon(1e-6));
    for (int lam = 1; lam <= 3; ++lam)
        CHECK(PathBundle::build(s, area_form(s, lam), x0, kRes).chern_number(up, low).number == lam);
    CHECK_THROWS_AS(b.chern_number(up, up), BoundaryError);
}

TEST_CASE("holonomy is additive under concatenation of loops") {
    auto s = Atlas::sphere2();
    PathBundle b = PathBundle::build(s, area_form(s, 1.0), default_basepoint(*s), kRes);
    std::mt19937_64 rng(62);
    for (int k = 0; k < 3; ++k) {
        Loop l1 = random_loop(s, east(), rng, kRes), l2 = random_loop(s, east(), rng, kRes);
        SphereGrid f = concatenate_fillings(*s, l1.filling, l2.filling);
        const double h = b.holonomy(f.row(f.n_eps()), f).value;
        const double sum = b.holonomy(l1.loop, l1.filling).value + b.holonomy(l2.loop, l2.filling).value;
        CHECK(b.structural_group().distance(h, sum) < 2e-4);
    }
}

TEST_CASE("the circle acts freely on bundle classes") {
    auto s = Atlas::sphere2();
    PathBundle b = PathBundle::build(s, area_form(s, 1.0), default_basepoint(*s), kRes);
    std::mt19937_64 rng(63);
    PathBundleElement e{random_path(s, east(), rng, kRes.n_t), 0.3};
    const double a = b.periods().generator;
    CHECK(b.equivalence_test(b.act(e, 2 * a), e).verdict);
    CHECK_FALSE(b.equivalence_test(b.act(e, 0.25), e).verdict);
    CHECK(b.equivalence_test(e, e).verdict);
    CHECK(b.equivalence_test(b.identity(), b.identity()).verdict);
}

TEST_CASE("homotopy through antipodal samples uses the fallback") {
    auto s = Atlas::sphere2();
    PathBundle b = PathBundle::build(s, area_form(s, 1.0), default_basepoint(*s), kRes);
    // Two half great circles from (1,0,0) to (-1,0,0) through (0,1,0) and (0,-1,0).
    auto half = [&](double sign) {
        return path_from_map(*s, kRes.n_t, [&, sign](double t) {
            Eigen::Vector3d v(std::cos(kPi * t), sign * std::sin(kPi * t), 0);
            return s->from_embedding(v);
        });
    };
    std::string strategy;
    SphereGrid h = b.homotopy(half(1), half(-1), &strategy);
    CHECK(h.n_eps() > 0);
    CHECK(strategy.find("perturbed") != std::string::npos);
}

TEST_CASE("quotient to the circle") {
    auto s = Atlas::sphere2();
    PathBundle b = PathBundle::build(s, area_form(s, 2.0), default_basepoint(*s), kRes);
    PathBundle q = b.quotient_to_circle();
    CHECK(q.periods().generator == 1.0);
    CHECK(q.quotient_index() == 2);
    SphereGrid up = upper_filling(s, kRes);
    const double pre = b.holonomy(up.row(up.n_eps()), up).value;
    const double post = q.holonomy(up.row(up.n_eps()), up).value;
    const double d = std::abs(std::fmod(pre, 1.0) - post);
    CHECK(std::min(d, 1.0 - d) < 1e-6);
    PathBundle half = PathBundle::build(s, area_form(s, 0.5), default_basepoint(*s), kRes);
    CHECK_THROWS_AS(half.quotient_to_circle(), Refusal);
}
