#pragma once

#include "aquant/apath.hpp"
#include "aquant/cochain.hpp"
#include "aquant/groupoid.hpp"
#include "aquant/quadrature.hpp"
#include "aquant/spheres.hpp"

#include <string>
#include <variant>
#include <vector>

namespace aquant {

enum class PeriodClass { trivial, discrete, indiscrete };
std::string to_string(PeriodClass c);

// How the Euclidean reduction stopped.
enum class ReductionEnd {
    no_generators,     // every generator was below the resolution
    single_survivor,   // exactly one generator remained
    cap,               // iteration cap reached with several survivors
    below_resolution,  // a survivor too small relative to the inputs to be resolved
};
std::string to_string(ReductionEnd e);

// Subgroup of R generated by a finite list of reals, classified numerically.
struct PeriodGroup {
    std::vector<double> generators;
    double tol_gen = 1e-9;
    int cap = 50;
    PeriodClass classification = PeriodClass::trivial;
    double generator = 0.0;  // a > 0 when discrete
    int iterations = 0;
    ReductionEnd end = ReductionEnd::no_generators;

    // Whether v lies within tol of the group. A dense group contains everything.
    bool contains(double v, double tol) const;
    // Distance from v to the nearest element of the group.
    double distance_to_group(double v) const;
    std::string describe() const;
};

// Drops generators with |g| <= tol_gen max(1, max |g|), then runs the
// pairwise real Euclidean reduction (g1, g2) -> (g2, g1 mod g2) until one
// generator remains or the cap is reached. A lone survivor a is accepted
// as discrete only if every input is at most 1/sqrt(tol_gen) times a;
// otherwise the remainders have sunk below resolution and the group is
// reported indiscrete.
PeriodGroup reduce_period_group(std::vector<double> generators, double tol_gen = 1e-9, int cap = 50);

// R / P presented by its period group.
struct StructuralGroup {
    PeriodGroup periods;

    // Representative in [0, a) for discrete groups; the value itself when trivial.
    double reduce(double s) const;
    // Distance between the classes of s1 and s2.
    double distance(double s1, double s2) const;
    std::string presentation() const;
};

// Pair (a, f) of an A-path and a scalar sample f_i at each t_i.
struct ACPath {
    APath a;
    std::vector<double> f;
    bool normal_form = false;
};
// (a, f) -> (a, r) with r the Simpson integral of f.
ACPath ac_normal_form(const ACPath& p);

struct ACEquivalence {
    bool verdict = false;
    double r_difference = 0;  // r1 - r0
    double integral = 0;      // double integral of c(a, b)
    double defect = 0;        // |r1 - r0 - integral|
    HomotopyReport homotopy;
};
// (a0, r0) ~ (a1, r1) through the A-homotopy family from a0 to a1 when
// r1 - r0 equals the double integral of c(a, b). Throws BoundaryError when
// the family is not an A-homotopy between the two paths.
ACEquivalence ac_equivalent(const Cochain& c2, const ACPath& p0, const ACPath& p1, const APathFamily& family,
                            const Connection& conn, const Tolerances& tol);

struct MonodromyResult {
    double value = 0;
    double endpoint_defect = 0;
    double error_estimate = 0;
};
// r = double integral of c(a, b) over a based sphere. The A-homotopy lift is
// the tangent path of each row, so the algebroid must be a tangent algebroid.
MonodromyResult monodromy_r(const Cochain& c2, const SphereGrid& sphere);
// Same integral over a given A-homotopy family, with b from solve_b.
MonodromyResult monodromy_r(const Cochain& c2, const APathFamily& family, const Connection& conn);

// omega_c^x on the source fiber over x. For the pair groupoid the fiber is
// identified with M through the target map and the form is c itself; for a
// matrix group it is the right-invariant extension of c.
using FiberForm = std::variant<TwoFormField, GroupoidForm>;
FiberForm right_translated_form(const DeskGroupoid& g, const Cochain& c2, const ChartPoint& x);

struct PeriodSample {
    ChartPoint point;
    std::vector<double> integrals;
    PeriodGroup group;
    std::vector<std::string> warnings;
};
// Integrates omega_c^x over each generator sphere of the source fiber and reduces.
PeriodSample period_group_at(const DeskGroupoid& g, const Cochain& c2, const ChartPoint& x,
                             const std::vector<SphereGrid>& generators, const Tolerances& tol);

// Generator spheres sampled at the given resolution.
std::vector<SphereGrid> sample_generators(const Atlas& atlas, const std::vector<SquareMap>& maps,
                                          const Resolution& res);

enum class Integrability { integrable, non_integrable, inconclusive };
std::string to_string(Integrability v);

struct IntegrabilityReport {
    Integrability verdict = Integrability::inconclusive;
    std::vector<PeriodSample> samples;
    double max_neighbor_jump = 0;
    double continuity_tol = 1e-3;
    std::vector<std::string> notes;
};
// Period groups at every sample point. Each sample is compared with its
// nearest other sample; a discrete generator must move by at most
// continuity_tol between neighbors.
IntegrabilityReport integrability_verdict(const DeskGroupoid& g, const Cochain& c2,
                                          const std::vector<ChartPoint>& points,
                                          const std::vector<std::vector<SphereGrid>>& generators,
                                          const Tolerances& tol, double continuity_tol = 1e-3);

}  // namespace aquant
