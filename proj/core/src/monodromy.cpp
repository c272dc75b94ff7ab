#include "aquant/monodromy.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace aquant {

std::string to_string(PeriodClass c) {
    switch (c) {
        case PeriodClass::trivial: return "trivial";
        case PeriodClass::discrete: return "discrete";
        case PeriodClass::indiscrete: return "indiscrete";
    }
    return "unknown";
}

std::string to_string(ReductionEnd e) {
    switch (e) {
        case ReductionEnd::no_generators: return "no_generators";
        case ReductionEnd::single_survivor: return "single_survivor";
        case ReductionEnd::cap: return "cap";
        case ReductionEnd::below_resolution: return "below_resolution";
    }
    return "unknown";
}

std::string to_string(Integrability v) {
    switch (v) {
        case Integrability::integrable: return "integrable";
        case Integrability::non_integrable: return "non_integrable";
        case Integrability::inconclusive: return "inconclusive";
    }
    return "unknown";
}

double PeriodGroup::distance_to_group(double v) const {
    switch (classification) {
        case PeriodClass::trivial: return std::abs(v);
        case PeriodClass::discrete: return std::abs(v - generator * std::round(v / generator));
        case PeriodClass::indiscrete: return 0.0;
    }
    return 0.0;
}

bool PeriodGroup::contains(double v, double tol) const { return distance_to_group(v) <= tol; }

std::string PeriodGroup::describe() const {
    std::ostringstream os;
    os.precision(12);
    switch (classification) {
        case PeriodClass::trivial: os << "trivial"; break;
        case PeriodClass::discrete: os << "discrete(" << generator << ")"; break;
        case PeriodClass::indiscrete: os << "indiscrete"; break;
    }
    return os.str();
}

PeriodGroup reduce_period_group(std::vector<double> generators, double tol_gen, int cap) {
    PeriodGroup pg;
    pg.generators = generators;
    pg.tol_gen = tol_gen;
    pg.cap = cap;
    double largest = 0.0;
    for (double g : generators) largest = std::max(largest, std::abs(g));
    const double thr = tol_gen * std::max(1.0, largest);
    std::vector<double> live;
    for (double g : generators)
        if (std::abs(g) > thr) live.push_back(std::abs(g));
    if (live.empty()) {
        pg.classification = PeriodClass::trivial;
        pg.end = ReductionEnd::no_generators;
        return pg;
    }
    std::sort(live.begin(), live.end(), std::greater<>());
    double a = live.front();
    for (size_t k = 1; k < live.size(); ++k) {
        double b = live[k];
        if (b > a) std::swap(a, b);
        while (b > thr) {
            if (pg.iterations >= cap) {
                pg.classification = PeriodClass::indiscrete;
                pg.end = ReductionEnd::cap;
                return pg;
            }
            double r = std::fmod(a, b);
            if (b - r <= thr) r = 0.0;
            a = b;
            b = r;
            ++pg.iterations;
        }
    }
    if (largest / a > 1.0 / std::sqrt(tol_gen)) {
        pg.classification = PeriodClass::indiscrete;
        pg.end = ReductionEnd::below_resolution;
        return pg;
    }
    pg.classification = PeriodClass::discrete;
    pg.generator = a;
    pg.end = ReductionEnd::single_survivor;
    return pg;
}

double StructuralGroup::reduce(double s) const {
    if (periods.classification != PeriodClass::discrete) return s;
    const double a = periods.generator;
    double v = s - a * std::floor(s / a);
    if (v >= a) v -= a;
    return v;
}

double StructuralGroup::distance(double s1, double s2) const { return periods.distance_to_group(s1 - s2); }

std::string StructuralGroup::presentation() const {
    std::ostringstream os;
    os.precision(12);
    switch (periods.classification) {
        case PeriodClass::trivial: os << "R"; break;
        case PeriodClass::discrete: os << "R/" << periods.generator << "Z"; break;
        case PeriodClass::indiscrete: os << "R/P (P dense)"; break;
    }
    return os.str();
}

ACPath ac_normal_form(const ACPath& p) {
    if (static_cast<int>(p.f.size()) != p.a.intervals() + 1)
        throw InvalidInput("scalar samples do not match the path samples");
    const auto w = simpson_weights(p.a.intervals());
    double r = 0.0;
    for (size_t i = 0; i < p.f.size(); ++i) r += w[i] * p.f[i];
    ACPath out{p.a, std::vector<double>(p.f.size(), r), true};
    return out;
}

namespace {

double double_integral(const Cochain& c2, const APathFamily& family, const BSolution& sol) {
    const int m = family.n_eps(), n = family.n_t();
    Mat vals(m + 1, n + 1);
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= n; ++i) {
            const APath& row = family.rows[j];
            vals(j, i) = c2.eval(row.base.points[i], {row.fiber[i], sol.b[j][i]});
        }
    return integrate_square(vals);
}

void require_same_path(const Atlas& atlas, const APath& a, const APath& b, const char* which) {
    if (a.intervals() != b.intervals())
        throw InvalidInput(std::string(which) + " row of the family has a different sample count");
    for (int i = 0; i <= a.intervals(); ++i) {
        const ChartPoint& p = a.base.points[i];
        const ChartPoint& q = b.base.points[i];
        if (atlas.distance(p, q) > 1e-8)
            throw BoundaryError(std::string(which) + " row of the family does not match the path");
        if (p.chart == q.chart && (a.fiber[i] - b.fiber[i]).norm() > 1e-8 * std::max(1.0, a.max_fiber()))
            throw BoundaryError(std::string(which) + " row of the family does not match the path");
    }
}

}  // namespace

ACEquivalence ac_equivalent(const Cochain& c2, const ACPath& p0, const ACPath& p1, const APathFamily& family,
                            const Connection& conn, const Tolerances& tol) {
    if (!p0.normal_form || !p1.normal_form) throw InvalidInput("A_c-paths must be in normal form");
    if (family.rows.size() < 2) throw InvalidInput("homotopy family needs at least two rows");
    const Atlas& atlas = *c2.algebroid()->atlas();
    require_same_path(atlas, family.rows.front(), p0.a, "first");
    require_same_path(atlas, family.rows.back(), p1.a, "last");
    ACEquivalence out;
    out.homotopy = is_homotopy(family, conn, tol);
    if (!out.homotopy.verdict) throw BoundaryError("family is not an A-homotopy");
    BSolution sol = solve_b(family, conn);
    out.integral = double_integral(c2, family, sol);
    out.r_difference = p1.f.front() - p0.f.front();
    out.defect = std::abs(out.r_difference - out.integral);
    out.verdict = out.defect <= tol.r;
    return out;
}

MonodromyResult monodromy_r(const Cochain& c2, const APathFamily& family, const Connection& conn) {
    BSolution sol = solve_b(family, conn);
    MonodromyResult r;
    r.value = double_integral(c2, family, sol);
    r.endpoint_defect = sol.endpoint_defect;
    r.error_estimate = sol.error_estimate;
    return r;
}

MonodromyResult monodromy_r(const Cochain& c2, const SphereGrid& sphere) {
    const auto A = c2.algebroid();
    if (A->kind() != AlgebroidKind::tangent)
        throw Unsupported("no A-homotopy lift available for algebroid kind " + to_string(A->kind()));
    if (sphere.marker() != GridMarker::based || sphere.boundary_defect(*A->atlas()) > 1e-8)
        throw BoundaryError("monodromy needs a sphere whose boundary maps to the basepoint");
    return monodromy_r(c2, tangent_family(A, sphere), Connection::flat(A));
}

FiberForm right_translated_form(const DeskGroupoid& g, const Cochain& c2, const ChartPoint&) {
    if (c2.degree() != 2) throw InvalidInput("right translation needs a 2-cochain");
    switch (g.kind()) {
        case GroupoidKind::pair:
            if (c2.algebroid()->kind() != AlgebroidKind::tangent || c2.algebroid()->atlas()->name() != g.base()->name())
                throw InvalidInput("cochain does not live on the algebroid of the pair groupoid");
            return form_from_cochain(c2);
        case GroupoidKind::matrix_group: {
            if (c2.algebroid()->rank() != static_cast<int>(g.basis().size()))
                throw InvalidInput("cochain does not live on the Lie algebra of the group");
            auto group = std::make_shared<const DeskGroupoid>(g);
            return right_invariant_form(group, c2.matrix(ChartPoint{0, Vec(0)}));
        }
        case GroupoidKind::circle_bundle: break;
    }
    throw Unsupported("right-translated forms are available for pair groupoids and matrix groups");
}

PeriodSample period_group_at(const DeskGroupoid& g, const Cochain& c2, const ChartPoint& x,
                             const std::vector<SphereGrid>& generators, const Tolerances& tol) {
    PeriodSample s;
    s.point = x;
    FiberForm form = right_translated_form(g, c2, x);
    if (!generators.empty()) {
        if (!std::holds_alternative<TwoFormField>(form))
            throw Unsupported("sphere generators in a matrix group are not supported; its pi_2 vanishes");
        const TwoFormField& omega = std::get<TwoFormField>(form);
        const Atlas& atlas = *omega.atlas();
        for (const auto& grid : generators) {
            if (atlas.distance(grid.at(0, 0), x) > 1e-8)
                throw BoundaryError("generator sphere is not based at the sample point");
            QuadratureResult q = integrate_over_sphere(omega, grid);
            s.integrals.push_back(q.value);
            s.warnings.insert(s.warnings.end(), q.warnings.begin(), q.warnings.end());
        }
    }
    s.group = reduce_period_group(s.integrals, tol.gen, tol.euclid_cap);
    return s;
}

std::vector<SphereGrid> sample_generators(const Atlas& atlas, const std::vector<SquareMap>& maps,
                                          const Resolution& res) {
    std::vector<SphereGrid> out;
    for (const auto& m : maps) out.push_back(sample_map(atlas, m, res.n_eps, res.n_t, GridMarker::based));
    return out;
}

IntegrabilityReport integrability_verdict(const DeskGroupoid& g, const Cochain& c2,
                                          const std::vector<ChartPoint>& points,
                                          const std::vector<std::vector<SphereGrid>>& generators,
                                          const Tolerances& tol, double continuity_tol) {
    if (points.size() != generators.size()) throw InvalidInput("one generator list is needed per sample point");
    IntegrabilityReport rep;
    rep.continuity_tol = continuity_tol;
    const int n = static_cast<int>(points.size());
    rep.samples.resize(n);
    detail::parallel_for(n, [&](int k) { rep.samples[k] = period_group_at(g, c2, points[k], generators[k], tol); });

    bool indiscrete = false, disagree = false, jump = false;
    for (int k = 0; k < n; ++k)
        if (rep.samples[k].group.classification == PeriodClass::indiscrete) indiscrete = true;
    const Atlas& atlas = *g.base();
    for (int k = 0; k < n; ++k) {
        int nearest = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int q = 0; q < n; ++q) {
            if (q == k) continue;
            const double dist = atlas.distance(points[k], points[q]);
            if (dist < best) {
                best = dist;
                nearest = q;
            }
        }
        if (nearest < 0) continue;
        const PeriodGroup& a = rep.samples[k].group;
        const PeriodGroup& b = rep.samples[nearest].group;
        if (a.classification != b.classification) {
            disagree = true;
        } else if (a.classification == PeriodClass::discrete) {
            const double d = std::abs(a.generator - b.generator);
            rep.max_neighbor_jump = std::max(rep.max_neighbor_jump, d);
            if (d > continuity_tol) jump = true;
        }
    }
    if (n < 2) rep.notes.push_back("single sample point: continuity of the period generator is not probed");
    if (indiscrete) {
        rep.verdict = Integrability::non_integrable;
        rep.notes.push_back("period group is indiscrete at some sample point");
    } else if (disagree) {
        rep.verdict = Integrability::inconclusive;
        rep.notes.push_back("period classifications disagree between neighboring samples");
    } else if (jump) {
        rep.verdict = Integrability::inconclusive;
        rep.notes.push_back("discrete period generator jumps between neighboring samples");
    } else {
        rep.verdict = Integrability::integrable;
    }
    return rep;
}

}  // namespace aquant
