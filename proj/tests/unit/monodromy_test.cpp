// Period groups, monodromy and integrability.

#include "aquant/monodromy.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace aquant;
using namespace aquant::fixtures;
using doctest::Approx;

TEST_CASE("period reduction of commensurable generators") {
    PeriodGroup g = reduce_period_group({2.0, 3.0});
    CHECK(g.classification == PeriodClass::discrete);
    CHECK(g.generator == Approx(1.0).epsilon(1e-14));
    CHECK(g.end == ReductionEnd::single_survivor);
    g = reduce_period_group({0.6, 0.9, 1.5});
    CHECK(g.generator == Approx(0.3).epsilon(1e-12));
    CHECK(reduce_period_group({-4.0}).generator == 4.0);
}

TEST_CASE("period reduction of trivial inputs") {
    CHECK(reduce_period_group({}).classification == PeriodClass::trivial);
    PeriodGroup g = reduce_period_group({1e-12, -3e-11});
    CHECK(g.classification == PeriodClass::trivial);
    CHECK(g.end == ReductionEnd::no_generators);
}

TEST_CASE("period reduction of incommensurable generators") {
    PeriodGroup g = reduce_period_group({1.0, std::sqrt(2.0)});
    CHECK(g.classification == PeriodClass::indiscrete);
    CHECK(g.end == ReductionEnd::below_resolution);
    CHECK(g.iterations < g.cap);
    CHECK(g.contains(0.123, 0));
    // A tight cap stops the reduction before it resolves anything.
    PeriodGroup capped = reduce_period_group({1.0, std::sqrt(2.0)}, 1e-9, 5);
    CHECK(capped.classification == PeriodClass::indiscrete);
    CHECK(capped.end == ReductionEnd::cap);
    CHECK(capped.iterations == 5);
}

TEST_CASE("period reduction is invariant under order and sign") {
    std::vector<double> g{1.5, -4.5, 3.0, 0.75};
    const double a = reduce_period_group(g).generator;
    std::sort(g.begin(), g.end());
    do {
        CHECK(reduce_period_group(g).generator == Approx(a).epsilon(1e-12));
    } while (std::next_permutation(g.begin(), g.end()));
    CHECK(reduce_period_group({-1.5, 4.5, -3.0, -0.75}).generator == Approx(a).epsilon(1e-12));
}

TEST_CASE("structural group arithmetic") {
    StructuralGroup s{reduce_period_group({2.0})};
    CHECK(s.reduce(5.5) == Approx(1.5));
    CHECK(s.reduce(-0.5) == Approx(1.5));
    CHECK(s.distance(0.1, 4.1) < 1e-14);
    CHECK(s.presentation() == "R/2Z");
    CHECK(StructuralGroup{reduce_period_group({})}.presentation() == "R");
    CHECK(StructuralGroup{reduce_period_group({1.0, std::sqrt(2.0)})}.presentation() == "R/P (P dense)");
}

TEST_CASE("monodromy scalar matches the sphere integral") {
    auto s = Atlas::sphere2();
    TwoFormField w = area_form(s, 1.0);
    Cochain c = cochain_from_form(tangent_algebroid(s), w);
    for (std::uint64_t seed : {31u, 32u}) {
        SphereGrid g = sample_map(*s, random_sphere_map(s, seed), 120, 120, GridMarker::based);
        CHECK(monodromy_r(c, g).value == Approx(integrate_over_sphere(w, g).value).epsilon(1e-5));
    }
    SphereGrid full = lasso_grid(s, east(), north(), kPi, 1, 120, 120, GridMarker::based);
    CHECK(monodromy_r(c, full).value == Approx(1.0).epsilon(1e-5));
}

TEST_CASE("monodromy needs a based sphere on a tangent algebroid") {
    auto s = Atlas::sphere2();
    Cochain c = cochain_from_form(tangent_algebroid(s), area_form(s, 1.0));
    SphereGrid cap = upper_filling(s, {40, 40});
    CHECK_THROWS_AS(monodromy_r(c, cap), BoundaryError);
    Cochain ext = canonical_transgression(a_omega(area_form(s, 1.0)));
    Cochain c_ext = d_A(ext);
    SphereGrid full = lasso_grid(s, east(), north(), kPi, 1, 40, 40, GridMarker::based);
    CHECK_THROWS_AS(monodromy_r(c_ext, full), Unsupported);
}

TEST_CASE("period groups on the pair groupoid") {
    auto s = Atlas::sphere2();
    auto pair = DeskGroupoid::pair(s);
    const Resolution res{120, 120};
    for (double lambda : {1.0, 2.5}) {
        Cochain c = cochain_from_form(pair->algebroid(), area_form(s, lambda));
        const ChartPoint x = northern_points(1, 33).front();
        PeriodSample p = period_group_at(*pair, c, x, sample_generators(*s, default_generators(s, x), res), Tolerances{});
        CHECK(p.group.classification == PeriodClass::discrete);
        CHECK(p.group.generator == Approx(lambda).epsilon(1e-5));
    }
}

TEST_CASE("integrability verdicts") {
    const Resolution res{100, 100};
    auto s = Atlas::sphere2();
    auto prod = Atlas::product(s, s);
    auto gens = [&](AtlasPtr a, const std::vector<ChartPoint>& pts) {
        std::vector<std::vector<SphereGrid>> out;
        for (const auto& p : pts) out.push_back(sample_generators(*a, default_generators(a, p), res));
        return out;
    };
    {
        auto pair = DeskGroupoid::pair(s);
        auto pts = random_points(*s, 3, 34);
        IntegrabilityReport r = integrability_verdict(*pair, cochain_from_form(pair->algebroid(), area_form(s, 1.0)),
                                                      pts, gens(s, pts), Tolerances{});
        CHECK(r.verdict == Integrability::integrable);
    }
    {
        auto pair = DeskGroupoid::pair(prod);
        auto pts = random_points(*prod, 2, 35);
        TwoFormField w = product_form(prod, area_form(s, 1.0), area_form(s, std::sqrt(2.0)));
        IntegrabilityReport r =
            integrability_verdict(*pair, cochain_from_form(pair->algebroid(), w), pts, gens(prod, pts), Tolerances{});
        CHECK(r.verdict == Integrability::non_integrable);
        for (const auto& smp : r.samples) CHECK(smp.group.classification == PeriodClass::indiscrete);
    }
    {
        auto t = Atlas::torus2();
        auto pair = DeskGroupoid::pair(t);
        auto pts = random_points(*t, 3, 36);
        IntegrabilityReport r = integrability_verdict(*pair, cochain_from_form(pair->algebroid(), coordinate_form(t, 2.0)),
                                                      pts, gens(t, pts), Tolerances{});
        CHECK(r.verdict == Integrability::integrable);
        for (const auto& smp : r.samples) CHECK(smp.group.classification == PeriodClass::trivial);
    }
}
