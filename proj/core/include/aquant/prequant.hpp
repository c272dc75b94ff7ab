#pragma once

#include "aquant/monodromy.hpp"

#include <string>
#include <vector>

namespace aquant {

enum class PrequantVerdict { prequantizable, not_prequantizable, inconclusive };
std::string to_string(PrequantVerdict v);

struct PrequantReport {
    PrequantVerdict verdict = PrequantVerdict::inconclusive;
    std::vector<PeriodSample> samples;
    int k = 0;                       // common integral generator, 0 for trivial periods
    double max_integer_defect = 0;   // largest distance of a generator from an integer
    double tol_integer = 1e-4;
    std::vector<std::string> notes;
};

// Verdict from period groups already computed at sample points. Generators
// within tol.integer of a positive integer are integral; a defect up to
// 10 tol.integer is reported as inconclusive.
PrequantReport prequantizable(const std::vector<PeriodSample>& samples, const Tolerances& tol);
// Classical case: closed 2-form on M through its pair groupoid.
PrequantReport prequantizable(AtlasPtr atlas, const TwoFormField& omega, const std::vector<ChartPoint>& points,
                              const std::vector<std::vector<SphereGrid>>& generators, const Tolerances& tol);

// Point of P_x0(M) x R: a path starting at the basepoint and a real number.
struct PathBundleElement {
    BasePath path;
    double r = 0;
};

struct BundleEquivalence {
    bool verdict = false;
    double r_difference = 0;  // r1 - r0
    double integral = 0;      // integral of omega(d/dt, d/deps) over the homotopy
    double defect = 0;        // distance of r1 - r0 - integral to the period group
    std::string strategy;
    std::vector<std::string> warnings;
};

struct HolonomyResult {
    double raw = 0;    // minus the integral of omega over the filling
    double value = 0;  // class of raw in the structural group
    std::vector<std::string> warnings;
};

struct ChernResult {
    double integral = 0;
    int number = 0;
};

// Default basepoint: (1, 0, 0) on sphere2, the origin of euclidean space,
// componentwise on products.
ChartPoint default_basepoint(const Atlas& atlas);

// Bundle of paths from x0 times R, modulo
//   (g0, r0) ~ (g1, r1)  iff  r1 - r0 - int_H omega lies in Per(omega)
// for a homotopy H from g0 to g1 with fixed endpoints, built by straight
// lines in euclidean factors and spherical interpolation on spheres.
class PathBundle {
public:
    // Periods from the default generator spheres at x0.
    static PathBundle build(AtlasPtr atlas, TwoFormField omega, ChartPoint x0, const Resolution& res = {},
                            const Tolerances& tol = {});
    static PathBundle build(AtlasPtr atlas, TwoFormField omega, ChartPoint x0, const std::vector<SphereGrid>& generators,
                            const Resolution& res, const Tolerances& tol);

    const AtlasPtr& atlas() const { return atlas_; }
    const TwoFormField& omega() const { return omega_; }
    const ChartPoint& basepoint() const { return x0_; }
    const PeriodGroup& periods() const { return structural_.periods; }
    const StructuralGroup& structural_group() const { return structural_; }
    const Resolution& resolution() const { return res_; }
    const Tolerances& tolerances() const { return tol_; }
    // Index k of the circle quotient, 0 before quotienting.
    int quotient_index() const { return quotient_index_; }

    PathBundleElement identity() const;
    BundleEquivalence equivalence_test(const PathBundleElement& e0, const PathBundleElement& e1) const;
    PathBundleElement act(const PathBundleElement& e, double s) const;
    // Horizontal lift along a path starting at the endpoint of e.
    PathBundleElement transport(const PathBundleElement& e, const BasePath& extension) const;
    // Holonomy of a loop at x0 given a filling: a homotopy with fixed
    // endpoints from the constant path to the loop.
    HolonomyResult holonomy(const BasePath& loop, const SphereGrid& filling) const;
    // Integral over the sphere glued from a filling of a loop and a filling
    // of the reversed loop. Throws ConsistencyError when it is not an integer.
    ChernResult chern_number(const SphereGrid& upper, const SphereGrid& lower) const;
    // Same representatives with structural group R/Z.
    PathBundle quotient_to_circle() const;

    // The homotopy used by equivalence_test.
    SphereGrid homotopy(const BasePath& g0, const BasePath& g1, std::string* strategy = nullptr) const;

private:
    PathBundle() = default;

    AtlasPtr atlas_;
    TwoFormField omega_;
    ChartPoint x0_;
    StructuralGroup structural_;
    Resolution res_;
    Tolerances tol_;
    int quotient_index_ = 0;
};

// Filling grid of a square map whose t = 0 and t = 1 edges sit at one point.
SphereGrid filling_grid(const Atlas& atlas, const SquareMap& g, const Resolution& res);
// Row-wise concatenation of two fillings: a filling of the concatenated loop.
SphereGrid concatenate_fillings(const Atlas& atlas, const SphereGrid& first, const SphereGrid& second);

}  // namespace aquant
