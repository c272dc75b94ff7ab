#include "selftest.hpp"

#include "aquant/groupoid.hpp"
#include "aquant/monodromy.hpp"
#include "aquant/prequant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

namespace aquant::cli {

namespace {

constexpr double kPi = std::numbers::pi;

TensorField random_linear_field(int components, int d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    std::vector<Polynomial> comps;
    for (int k = 0; k < components; ++k) {
        Polynomial p = Polynomial::constant(d, c(rng));
        for (int i = 0; i < d; ++i) {
            p.add_term(c(rng), [&] {
                std::vector<int> pw(d, 0);
                pw[i] = 1;
                return pw;
            }());
            p.add_term(c(rng), [&] {
                std::vector<int> pw(d, 0);
                pw[i] = 2;
                return pw;
            }());
        }
        comps.push_back(p);
    }
    return TensorField::polynomial(comps, d);
}

SelfCheck check_dd(const Tolerances&, const Resolution&) {
    auto sphere = Atlas::sphere2();
    AlgebroidPtr a = a_omega(area_form(sphere, 1.0));
    std::mt19937_64 rng(1);
    auto pts = random_points(*sphere, 20, 2);
    double worst = 0;
    for (int q = 0; q < 10; ++q) {
        Cochain l(a, 1, random_linear_field(a->rank(), 2, rng));
        Cochain dd = d_A(d_A(l));
        for (const auto& p : pts) worst = std::max(worst, dd.values(p).cwiseAbs().maxCoeff());
    }
    return {"d_A^2", worst <= 1e-6, worst, 1e-6, "A_omega over sphere2, 10 cochains x 20 points"};
}

SelfCheck check_jacobi_cocycle(const Tolerances&, const Resolution&) {
    auto sphere = Atlas::sphere2();
    auto r3 = Atlas::euclidean(3);
    auto t3 = tangent_algebroid(r3);
    auto pts3 = random_points(*r3, 10, 3);
    auto pts2 = random_points(*sphere, 10, 4);
    struct Fx {
        Cochain c;
        std::vector<ChartPoint> pts;
    };
    std::vector<Fx> fx{
        {cochain_from_form(tangent_algebroid(sphere), area_form(sphere, 1.0)), pts2},
        {cochain_from_form(t3, polynomial_form(r3, {{0, 1, Polynomial::coordinate(3, 0)}}, true)), pts3},
        {cochain_from_form(t3, polynomial_form(r3, {{0, 1, Polynomial::coordinate(3, 2)}}, false)), pts3},
    };
    bool agree = true;
    double witness = 0;
    for (const auto& f : fx) {
        AlgebroidPtr ext = central_extension(f.c);
        double jac = 0;
        for (const auto& p : f.pts) jac = std::max(jac, jacobi_residual(*ext, p));
        CocycleReport rep = is_cocycle(f.c, f.pts);
        agree = agree && ((jac <= 1e-8) == rep.verdict);
        if (!rep.verdict) witness = std::max(witness, std::min(jac, rep.residual));
    }
    return {"jacobi_cocycle", agree && witness > 1e-3, witness, 1e-3,
            agree ? "Jacobi of A_c agrees with the cocycle test; value is the non-cocycle witness"
                  : "Jacobi of A_c disagrees with the cocycle test"};
}

SelfCheck check_multiplicativity(const Tolerances&, const Resolution&) {
    auto sphere = Atlas::sphere2();
    auto pair = DeskGroupoid::pair(sphere);
    TwoFormField w = area_form(sphere, 1.0);
    const double good = multiplicativity_residual(*pair, pair_groupoid_form(w), 200, 5).residual;
    const double bad = multiplicativity_residual(*pair, wrong_sign_pair_form(w), 200, 5).residual;
    return {"multiplicativity", good <= 1e-10 && bad > 0.1, good, 1e-10,
            "wrong-sign control residual " + std::to_string(bad)};
}

SelfCheck check_groupoid_axioms(const Tolerances&, const Resolution&) {
    const double worst = std::max({groupoid_axiom_residual(*DeskGroupoid::pair(Atlas::sphere2()), 50, 6),
                                   groupoid_axiom_residual(*DeskGroupoid::so3(), 50, 7),
                                   groupoid_axiom_residual(*DeskGroupoid::circle_bundle(Atlas::euclidean(2)), 50, 8)});
    return {"groupoid_axioms", worst <= 1e-10, worst, 1e-10, "pair(sphere2), SO(3), circle bundle"};
}

SelfCheck check_monodromy_oracle(const Tolerances& tol, const Resolution& res) {
    auto sphere = Atlas::sphere2();
    TwoFormField w = area_form(sphere, 1.0);
    Cochain c = cochain_from_form(tangent_algebroid(sphere), w);
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
        SphereGrid g = sample_map(*sphere, random_sphere_map(sphere, 200 + k), res.n_eps, res.n_t, GridMarker::based);
        worst = std::max(worst, std::abs(monodromy_r(c, g).value - integrate_over_sphere(w, g).value));
    }
    return {"monodromy_oracle", worst <= tol.r, worst, tol.r, "monodromy scalar against the sphere integral, 3 spheres"};
}

SelfCheck check_holonomy_additivity(const Tolerances& tol, const Resolution& res) {
    auto sphere = Atlas::sphere2();
    PathBundle b = PathBundle::build(sphere, area_form(sphere, 1.0), default_basepoint(*sphere), res, tol);
    const Eigen::Vector3d p(1, 0, 0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> reach(0.3, 2.5), ang(0, 2 * kPi);
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
        auto fill = [&] {
            const double a = ang(rng);
            Eigen::Vector3d u(0, std::cos(a), std::sin(a));
            return filling_grid(*sphere, lasso_map(sphere, p, u, reach(rng), 1), res);
        };
        SphereGrid f1 = fill(), f2 = fill();
        SphereGrid f12 = concatenate_fillings(*sphere, f1, f2);
        const double h1 = b.holonomy(f1.row(f1.n_eps()), f1).value;
        const double h2 = b.holonomy(f2.row(f2.n_eps()), f2).value;
        const double h12 = b.holonomy(f12.row(f12.n_eps()), f12).value;
        worst = std::max(worst, b.structural_group().distance(h12, h1 + h2));
    }
    return {"holonomy_additivity", worst <= 2 * tol.r, worst, 2 * tol.r, "3 concatenated loop pairs at (1, 0, 0)"};
}

SelfCheck check_period_reduction(const Tolerances& tol, const Resolution&) {
    PeriodGroup a = reduce_period_group({2.0, 3.0}, tol.gen, tol.euclid_cap);
    PeriodGroup b = reduce_period_group({1.0, std::sqrt(2.0)}, tol.gen, tol.euclid_cap);
    PeriodGroup c = reduce_period_group({}, tol.gen, tol.euclid_cap);
    const double err = a.classification == PeriodClass::discrete ? std::abs(a.generator - 1.0) : 1.0;
    const bool ok = err <= 1e-12 && b.classification == PeriodClass::indiscrete && c.classification == PeriodClass::trivial;
    return {"period_reduction", ok, err, 1e-12, "{2,3} -> " + a.describe() + ", {1,sqrt2} -> " + b.describe() + ", {} -> " + c.describe()};
}

using CheckFn = std::function<SelfCheck(const Tolerances&, const Resolution&)>;

const std::vector<std::pair<std::string, CheckFn>>& suite() {
    static const std::vector<std::pair<std::string, CheckFn>> s{
        {"d_A^2", check_dd},
        {"jacobi_cocycle", check_jacobi_cocycle},
        {"multiplicativity", check_multiplicativity},
        {"groupoid_axioms", check_groupoid_axioms},
        {"monodromy_oracle", check_monodromy_oracle},
        {"holonomy_additivity", check_holonomy_additivity},
        {"period_reduction", check_period_reduction},
    };
    return s;
}

}  // namespace

const std::vector<std::string>& selftest_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : suite()) n.push_back(name);
        return n;
    }();
    return names;
}

std::vector<SelfCheck> run_selftest(const std::vector<std::string>& names, const Tolerances& tol,
                                    const Resolution& res) {
    for (const auto& n : names)
        if (std::find(selftest_names().begin(), selftest_names().end(), n) == selftest_names().end())
            throw InvalidInput("unknown selftest check: " + n);
    std::vector<SelfCheck> out;
    for (const auto& [name, fn] : suite()) {
        if (std::find(names.begin(), names.end(), name) == names.end()) continue;
        try {
            out.push_back(fn(tol, res));
        } catch (const std::exception& e) {
            out.push_back({name, false, 0, 0, std::string("error: ") + e.what()});
        }
    }
    return out;
}

}  // namespace aquant::cli
