// Acceptance suite: one pass/fail line per criterion, with its tolerance.

#include "aquant/groupoid.hpp"
#include "aquant/monodromy.hpp"
#include "aquant/prequant.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace aquant;
using namespace aquant::fixtures;

namespace {

struct Outcome {
    bool pass = false;
    std::string tolerance;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

std::string fixed(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << v;
    return os.str();
}

double circle_distance(double a, double b, double period) {
    double d = std::fmod(std::abs(a - b), period);
    return std::min(d, period - d);
}

// 1. Integrality law on the lambda sweep.
Outcome ac1() {
    const auto t0 = Clock::now();
    auto sphere = Atlas::sphere2();
    const Resolution res{200, 200};
    const Tolerances tol;
    auto points = random_points(*sphere, 3, 11);
    std::vector<std::vector<SphereGrid>> gens;
    for (const auto& p : points) gens.push_back(sample_generators(*sphere, default_generators(sphere, p), res));
    const double lambdas[] = {0.5, 1.0, std::sqrt(2.0), 2.0, 3.0};
    const bool expect[] = {false, true, false, true, true};
    const int expect_k[] = {0, 1, 0, 2, 3};
    bool ok = true;
    double worst = 0;
    std::string verdicts;
    for (int q = 0; q < 5; ++q) {
        PrequantReport rep = prequantizable(sphere, area_form(sphere, lambdas[q]), points, gens, tol);
        for (const auto& s : rep.samples) {
            if (s.group.classification != PeriodClass::discrete) ok = false;
            worst = std::max(worst, std::abs(s.group.generator - lambdas[q]));
        }
        const bool yes = rep.verdict == PrequantVerdict::prequantizable;
        if (yes != expect[q] || rep.verdict == PrequantVerdict::inconclusive) ok = false;
        if (yes && rep.k != expect_k[q]) ok = false;
        verdicts += (q ? ", " : "") + std::string(yes ? "yes(k=" + std::to_string(rep.k) + ")" : "no");
    }
    const double secs = seconds_since(t0);
    ok = ok && worst <= 1e-4 && secs < 30;
    return {ok, "period 1e-4, runtime < 30 s",
            "verdicts {" + verdicts + "}, max |period - lambda| = " + fmt(worst) + ", " + fixed(secs, 2) + " s at N=200"};
}

// 2. Non-integrability of sigma1 + sqrt2 sigma2 on the product of spheres.
Outcome ac2() {
    const auto t0 = Clock::now();
    auto sphere = Atlas::sphere2();
    auto prod = Atlas::product(sphere, sphere);
    const Resolution res{200, 200};
    const Tolerances tol;
    TwoFormField omega = product_form(prod, area_form(sphere, 1.0), area_form(sphere, std::sqrt(2.0)));
    auto pair = DeskGroupoid::pair(prod);
    Cochain c = cochain_from_form(pair->algebroid(), omega);
    auto points = random_points(*prod, 3, 23);
    std::vector<std::vector<SphereGrid>> gens;
    for (const auto& p : points) gens.push_back(sample_generators(*prod, default_generators(prod, p), res));
    IntegrabilityReport rep = integrability_verdict(*pair, c, points, gens, tol);
    bool all_indiscrete = true, all_cap = true;
    std::string ends;
    for (const auto& s : rep.samples) {
        all_indiscrete = all_indiscrete && s.group.classification == PeriodClass::indiscrete;
        all_cap = all_cap && s.group.end == ReductionEnd::cap;
        ends += (ends.empty() ? "" : ", ") + to_string(s.group.end) + "@" + std::to_string(s.group.iterations);
    }
    const double secs = seconds_since(t0);
    const bool ok = all_indiscrete && rep.verdict == Integrability::non_integrable && all_cap && secs < 60;
    return {ok, "cap 50, tol_gen 1e-9, runtime < 60 s",
            "indiscrete at all samples: " + std::string(all_indiscrete ? "yes" : "no") + ", verdict " +
                to_string(rep.verdict) + ", reduction ends {" + ends + "}, cap reached: " + (all_cap ? "yes" : "no") +
                ", " + fixed(secs, 2) + " s"};
}

// 3. Monodromy scalar against the direct sphere integral.
Outcome ac3() {
    auto sphere = Atlas::sphere2();
    auto tangent = tangent_algebroid(sphere);
    TwoFormField omega = area_form(sphere, 1.0);
    Cochain c = cochain_from_form(tangent, omega);
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
        SphereGrid g = sample_map(*sphere, random_sphere_map(sphere, 100 + k), 200, 200, GridMarker::based);
        const double r = monodromy_r(c, g).value;
        const double direct = integrate_over_sphere(omega, g).value;
        worst = std::max(worst, std::abs(r - direct));
    }
    return {worst <= 1e-4, "1e-4", "max |r - sphere integral| over 10 random spheres = " + fmt(worst)};
}

// 4. d_A d_A = 0 and Jacobi of A_c against the cocycle condition.
Outcome ac4() {
    std::mt19937_64 rng(4);
    auto sphere = Atlas::sphere2();
    auto points = northern_points(100, 41);
    struct Case {
        AlgebroidPtr a;
        std::vector<ChartPoint> pts;
    };
    std::vector<Case> cases{{tangent_algebroid(sphere), points},
                            {so3_algebra(), std::vector<ChartPoint>(100, ChartPoint{0, Vec(0)})},
                            {a_omega(area_form(sphere, 1.0)), points}};
    double dd = 0;
    for (const auto& cs : cases) {
        const int r = cs.a->rank(), d = cs.a->dimension();
        for (int q = 0; q < 50; ++q) {
            TensorField f = d > 0 ? random_polynomial_field(r, d, 3, rng)
                                  : TensorField::constant(Vec::Random(r), 0);
            Cochain l(cs.a, 1, f);
            Cochain l2 = d_A(d_A(l));
            for (const auto& p : cs.pts) dd = std::max(dd, l2.values(p).cwiseAbs().maxCoeff());
        }
    }

    // Jacobi identity of the central extension against the cocycle test.
    auto r3 = Atlas::euclidean(3);
    auto t3 = tangent_algebroid(r3);
    auto e3 = random_points(*r3, 30, 43);
    auto x = [](int i) { return Polynomial::coordinate(3, i); };
    struct Fixture {
        std::string name;
        Cochain c;
        std::vector<ChartPoint> pts;
    };
    Mat cs = Mat::Random(3, 3);
    cs = cs - cs.transpose().eval();
    Vec csv(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) csv(i * 3 + j) = cs(i, j);
    std::vector<Fixture> fixtures{
        {"area(S2)", cochain_from_form(tangent_algebroid(sphere), area_form(sphere, 1.0)), points},
        {"x dx^dy", cochain_from_form(t3, polynomial_form(r3, {{0, 1, x(0)}}, true)), e3},
        {"z dx^dy", cochain_from_form(t3, polynomial_form(r3, {{0, 1, x(2)}}, false)), e3},
        {"x dy^dz + y dz^dx", cochain_from_form(t3, polynomial_form(r3, {{1, 2, x(0)}, {2, 0, x(1)}}, false)), e3},
        {"so3 random", Cochain(so3_algebra(), 2, TensorField::constant(csv, 0)), {ChartPoint{0, Vec(0)}}},
    };
    bool agree = true;
    double witness = 0, cocycle_jacobi = 0;
    for (const auto& fx : fixtures) {
        AlgebroidPtr ext = central_extension(fx.c);
        double jac = 0;
        for (const auto& p : fx.pts) jac = std::max(jac, jacobi_residual(*ext, p));
        CocycleReport rep = is_cocycle(fx.c, fx.pts);
        const bool jacobi_holds = jac <= 1e-8;
        if (jacobi_holds != rep.verdict) agree = false;
        if (!rep.verdict) witness = std::max(witness, std::min(jac, rep.residual));
        else cocycle_jacobi = std::max(cocycle_jacobi, jac);
    }
    const bool ok = dd <= 1e-6 && agree && witness > 1e-3;
    return {ok, "d_A^2 1e-6, Jacobi 1e-8, witness > 1e-3",
            "max |d_A d_A l| = " + fmt(dd) + " (3 algebroids x 50 cochains x 100 points), Jacobi <=> cocycle on " +
                std::to_string(fixtures.size()) + " fixtures: " + (agree ? "agree" : "DISAGREE") +
                ", max Jacobi on cocycles " + fmt(cocycle_jacobi) + ", non-cocycle witness " + fmt(witness)};
}

// 5. Transgression identities of the canonical 1-cochain.
Outcome ac5() {
    auto sphere = Atlas::sphere2();
    auto r3 = Atlas::euclidean(3);
    Mat cs = Mat::Random(3, 3);
    cs = cs - cs.transpose().eval();
    Vec csv(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) csv(i * 3 + j) = cs(i, j);
    std::vector<std::pair<Cochain, std::vector<ChartPoint>>> cases{
        {cochain_from_form(tangent_algebroid(sphere), area_form(sphere, 1.0)), random_points(*sphere, 100, 51)},
        {cochain_from_form(tangent_algebroid(r3), polynomial_form(r3, {{0, 1, Polynomial::coordinate(3, 0)}}, true)),
         random_points(*r3, 100, 52)},
        {Cochain(so3_algebra(), 2, TensorField::constant(csv, 0)), std::vector<ChartPoint>(100, ChartPoint{0, Vec(0)})},
    };
    bool unit_exact = true;
    double worst = 0;
    for (const auto& [c, pts] : cases) {
        AlgebroidPtr ext = central_extension(c);
        Cochain l = canonical_transgression(ext);
        Cochain dl = d_A(l);
        Cochain pc = pullback_to_extension(c, ext);
        const int R = ext->rank();
        for (const auto& p : pts) {
            Vec i1 = Vec::Zero(R);
            i1(R - 1) = 1.0;
            if (l.eval(p, {i1}) != 1.0) unit_exact = false;
            worst = std::max(worst, (dl.values(p) - pc.values(p)).cwiseAbs().maxCoeff());
        }
    }
    return {unit_exact && worst <= 1e-8, "l_c(i(1)) exact, 1e-8",
            std::string("l_c(i(1)) == 1 exactly: ") + (unit_exact ? "yes" : "no") + ", max |d l_c - pi^* c| = " +
                fmt(worst) + " at 100 samples x 3 algebroids"};
}

// 6. Multiplicativity of pr1^* omega - pr2^* omega.
Outcome ac6() {
    auto sphere = Atlas::sphere2();
    auto pair = DeskGroupoid::pair(sphere);
    TwoFormField omega = area_form(sphere, 1.0);
    MultiplicativityReport good = multiplicativity_residual(*pair, pair_groupoid_form(omega), 1000, 61);
    MultiplicativityReport bad = multiplicativity_residual(*pair, wrong_sign_pair_form(omega), 1000, 61);
    const bool ok = good.residual <= 1e-10 && bad.residual > 0.1;
    return {ok, "1e-10, control > 0.1",
            "residual " + fmt(good.residual) + " on 1000 composable samples, wrong-sign control " + fmt(bad.residual)};
}

// 7. Reconstruction of theta from the transgression.
Outcome ac7() {
    auto sphere = Atlas::sphere2();
    TwoFormField omega = area_form(sphere, 1.0);
    AlgebroidPtr ext = a_omega(omega);
    Cochain l = canonical_transgression(ext);
    Cochain pc = pullback_to_extension(*ext->extension_cocycle(), ext);
    const int n = 400;
    // A_c-path in the northern chart: base curve, its velocity, and a scalar part.
    BasePath base;
    std::vector<Vec> fiber;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        Vec x(2), v(3);
        x << 0.2 + 0.3 * t, -0.1 + 0.2 * std::sin(kPi * t);
        v << 0.3, 0.2 * kPi * std::cos(kPi * t), 0.5 + std::cos(2 * kPi * t);
        base.points.push_back(ChartPoint{0, x});
        fiber.push_back(v);
    }
    APath a = make_apath(ext, base, fiber, 1e-4);

    // theta on the vertical direction.
    PathVariation vert{std::vector<Vec>(n + 1, Vec::Zero(2)), std::vector<Vec>(n + 1, Vec::Unit(3, 2))};
    const double theta_vert = theta_eval(l, pc, a, vert);

    // theta on action directions.
    std::mt19937_64 rng(71);
    double worst_rel = 0;
    for (int k = 0; k < 10; ++k) {
        VariationField eta([](double t) { return std::sin(kPi * t); }, [](double t) { return kPi * std::cos(kPi * t); },
                           random_polynomial_field(3, 2, 2, rng));
        PathVariation X = action_direction(a, eta);
        worst_rel = std::max(worst_rel, std::abs(theta_eval(l, pc, a, X)) / X.norm());
    }

    // Restriction to A at zero paths.
    double restrict = 0;
    for (const auto& p : northern_points(10, 72)) {
        Vec alpha = Vec::Random(3);
        APath z = zero_path(ext, p, n);
        PathVariation v;
        Vec rho_alpha = ext->anchor(p) * alpha;
        for (int i = 0; i <= n; ++i) {
            v.base.push_back(static_cast<double>(i) / n * rho_alpha);
            v.fiber.push_back(alpha);
        }
        restrict = std::max(restrict, std::abs(theta_eval(l, pc, z, v) - l.eval(p, {alpha})));
    }
    const bool ok = std::abs(theta_vert - 1.0) <= 1e-6 && worst_rel <= 1e-3 && restrict <= 1e-6;
    return {ok, "1e-6, 1e-3 relative, 1e-6",
            "|theta(d/dt) - 1| = " + fmt(std::abs(theta_vert - 1.0)) + ", max |theta(X_eta)|/|X_eta| = " +
                fmt(worst_rel) + " over 10 sections, max |theta|_A - l| = " + fmt(restrict)};
}

// 8. Bundle construction: holonomy, Chern numbers, freeness.
Outcome ac8() {
    auto sphere = Atlas::sphere2();
    const Resolution res;
    const ChartPoint x0 = default_basepoint(*sphere);
    PathBundle b1 = PathBundle::build(sphere, area_form(sphere, 1.0), x0, res);
    SphereGrid up = upper_filling(sphere, res), low = lower_filling(sphere, res);
    HolonomyResult h = b1.holonomy(up.row(up.n_eps()), up);
    const double hol_err = circle_distance(h.value, 0.5, 1.0);

    bool chern_ok = true;
    std::string cherns;
    for (int lam = 1; lam <= 3; ++lam) {
        PathBundle b = PathBundle::build(sphere, area_form(sphere, lam), x0, res);
        ChernResult c = b.chern_number(up, low);
        chern_ok = chern_ok && c.number == lam;
        cherns += (lam > 1 ? ", " : "") + std::to_string(c.number);
    }

    // act(e, s) ~ e exactly when s vanishes in R/Z.
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_int_distribution<int> m(-2, 2);
    int mismatches = 0;
    const double a = b1.periods().generator, tr = b1.tolerances().r;
    for (int k = 0; k < 100; ++k) {
        PathBundleElement e{random_path(sphere, east(), rng, res.n_t), u(rng)};
        double s = 0;
        switch (k % 4) {
            case 0: s = u(rng); break;
            case 1: s = m(rng) * a; break;
            case 2: s = 0; break;
            case 3: s = m(rng) * a + 10 * tr; break;
        }
        const bool equivalent = b1.equivalence_test(b1.act(e, s), e).verdict;
        const bool trivial_s = b1.structural_group().distance(s, 0) <= tr;
        if (equivalent != trivial_s) ++mismatches;
    }
    const bool ok = hol_err <= 1e-4 && chern_ok && mismatches == 0;
    return {ok, "holonomy 1e-4, Chern exact, 100 freeness trials",
            "equator holonomy " + fixed(h.value, 8) + " (|. - 0.5| = " + fmt(hol_err) + "), Chern numbers {" + cherns +
                "} for lambda {1, 2, 3}, freeness mismatches " + std::to_string(mismatches) + "/100"};
}

// 9. Quotient by the index-k subgroup for lambda = 2.
Outcome ac9() {
    auto sphere = Atlas::sphere2();
    const Resolution res;
    PathBundle b = PathBundle::build(sphere, area_form(sphere, 2.0), default_basepoint(*sphere), res);
    PathBundle q = b.quotient_to_circle();
    std::mt19937_64 rng(91);
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
        Loop l = random_loop(sphere, east(), rng, res);
        const double pre = b.holonomy(l.loop, l.filling).value;
        const double post = q.holonomy(l.loop, l.filling).value;
        worst = std::max(worst, circle_distance(std::fmod(pre, 1.0), post, 1.0));
    }
    const bool groups = std::abs(b.periods().generator - 2.0) <= 1e-4 && q.periods().generator == 1.0;
    return {groups && worst <= 1e-4, "1e-4",
            "structural groups " + b.structural_group().presentation() + " -> " + q.structural_group().presentation() +
                ", max |pre mod 1 - post| over 10 loops = " + fmt(worst)};
}

// 10. Empirical convergence order of every reported integral.
Outcome ac10() {
    auto sphere = Atlas::sphere2();
    TwoFormField omega = area_form(sphere, 1.0);
    Cochain c = cochain_from_form(tangent_algebroid(sphere), omega);
    auto lasso = lasso_map(sphere, east(), north(), kPi, 1);
    auto random = random_sphere_map(sphere, 7);
    auto equator = lasso_map(sphere, east(), north(), kPi / 2, 1);
    auto sweep = hemisphere_sweep_map(sphere);
    std::vector<std::pair<std::string, std::function<double(int)>>> fixtures{
        {"sphere", [&](int n) { return integrate_over_sphere(omega, sample_map(*sphere, lasso, n, n, GridMarker::based)).value; }},
        {"random sphere",
         [&](int n) { return integrate_over_sphere(omega, sample_map(*sphere, random, n, n, GridMarker::based)).value; }},
        {"cap filling",
         [&](int n) {
             return integrate_over_homotopy(omega, sample_map(*sphere, equator, n, n, GridMarker::fixed_endpoints)).value;
         }},
        {"hemisphere sweep",
         [&](int n) {
             return integrate_over_homotopy(omega, sample_map(*sphere, sweep, n, n, GridMarker::fixed_endpoints)).value;
         }},
        {"monodromy", [&](int n) { return monodromy_r(c, sample_map(*sphere, random, n, n, GridMarker::based)).value; }},
    };
    const int ns[] = {20, 40, 80, 160};
    constexpr double floor = 1e-11;  // changes below this are roundoff
    bool ok = true;
    std::string detail;
    for (const auto& [name, f] : fixtures) {
        double v[4];
        for (int k = 0; k < 4; ++k) v[k] = f(ns[k]);
        double worst_ratio = 0;
        for (int k = 1; k < 3; ++k) {
            const double prev = std::abs(v[k] - v[k - 1]), next = std::abs(v[k + 1] - v[k]);
            if (next <= floor) continue;
            const double ratio = next / prev;
            worst_ratio = std::max(worst_ratio, ratio);
            if (ratio > 1.0 / 8) ok = false;
        }
        detail += (detail.empty() ? "" : ", ") + name + " " + fixed(worst_ratio, 4);
    }
    return {ok, "change ratio <= 1/8 (N = 20, 40, 80, 160)", "worst ratio per fixture: " + detail};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"integrality law", ac1},         {"non-integrability detection", ac2}, {"monodromy oracle", ac3},
        {"cochain calculus", ac4},        {"transgression identities", ac5},    {"multiplicativity", ac6},
        {"theta reconstruction", ac7},    {"bundle construction", ac8},         {"quotient law", ac9},
        {"convergence discipline", ac10},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, "-", std::string("error: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("AC%-2d %s  %-28s [tol %s]  %s\n", index, o.pass ? "PASS" : "FAIL", name, o.tolerance.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
