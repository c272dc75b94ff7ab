#pragma once

#include "aquant/algebroid.hpp"
#include "aquant/grid.hpp"

#include <functional>
#include <vector>

namespace aquant {

// Linear connection on an algebroid given by Christoffel symbols in each
// chart frame: nabla_{d_mu} e_i = Gamma^k_{mu i} e_k, component (k * d + mu) * r + i.
class Connection {
public:
    Connection(AlgebroidPtr algebroid, TensorField christoffel);
    static Connection flat(AlgebroidPtr algebroid);

    const AlgebroidPtr& algebroid() const { return algebroid_; }
    // Gamma(v)(k, i) = Gamma^k_{mu i} v^mu
    Mat contract(int chart, const Vec& x, const Vec& v) const;

private:
    AlgebroidPtr algebroid_;
    TensorField christoffel_;
};

// Torsion of the connection evaluated on constant-coefficient extensions:
// T(a, b) = nabla_{rho a} b - nabla_{rho b} a - [a, b].
Vec a_torsion(const Connection& conn, const ChartPoint& p, const Vec& a, const Vec& b);

// Algebroid path: base samples with fiber values a_i in the frame of the
// chart of base sample i, satisfying d gamma / dt = rho(a).
struct APath {
    AlgebroidPtr algebroid;
    BasePath base;
    std::vector<Vec> fiber;

    int intervals() const { return base.intervals(); }
    double max_fiber() const;
    // max |gamma' - rho(a)| / max(1, max |a|), with fourth-order differences.
    double residual() const;
};

// Builds an A-path and rejects it when the residual exceeds tol.
APath make_apath(AlgebroidPtr algebroid, BasePath base, std::vector<Vec> fiber, double tol);
APath zero_path(AlgebroidPtr algebroid, const ChartPoint& p, int n);

struct APathSample {
    ChartPoint point;
    Vec fiber;
};
// Cubic interpolation of base and fiber at time s.
APathSample sample_apath(const APath& a, double s);

// Rows a_eps_j, j = 0..M, with common sample count and fixed base endpoints.
struct APathFamily {
    std::vector<APath> rows;

    int n_eps() const { return static_cast<int>(rows.size()) - 1; }
    int n_t() const { return rows.front().intervals(); }
    SphereGrid base_grid(GridMarker marker = GridMarker::fixed_endpoints) const;
};

// Solution of the b-equation d b/dt = d a/d eps + Gamma(d gamma/d eps) a
// - Gamma(rho a) b + T(a, b) with b(eps, 0) = 0, integrated by RK4 along each row.
struct BSolution {
    std::vector<std::vector<Vec>> b;  // b[j][i] in the frame of node (j, i)
    double endpoint_defect = 0;       // max_j |b(eps_j, 1)|
    double error_estimate = 0;        // step-doubling estimate at t = 1
};
BSolution solve_b(const APathFamily& family, const Connection& conn);

struct HomotopyReport {
    bool verdict = false;
    double endpoint_defect = 0;
    double threshold = 0;
    double row_residual = 0;
    double base_endpoint_drift = 0;
    double error_estimate = 0;
};
HomotopyReport is_homotopy(const APathFamily& family, const Connection& conn, const Tolerances& tol);

// Time-dependent section eta(t, x) = s(t) sigma(x) with s(0) = s(1) = 0.
class VariationField {
public:
    VariationField(std::function<double(double)> s, std::function<double(double)> ds, TensorField section);

    Vec value(double t, const ChartPoint& p) const;
    Vec dt(double t, const ChartPoint& p) const;
    Mat dx(double t, const ChartPoint& p) const;  // r x d

private:
    std::function<double(double)> s_, ds_;
    TensorField section_;
};

// Tangent vector to the space of paths: base displacement and fiber
// variation at each sample, both in the chart of the sample.
struct PathVariation {
    std::vector<Vec> base;
    std::vector<Vec> fiber;
    double norm() const;
};

// Infinitesimal generator of the eta-flow at a path.
PathVariation action_direction(const APath& a, const VariationField& eta);

// Flow of eta by parameter eps. Each sample follows
//   dx/deps = rho(x) eta(t, x)
//   da/deps = d_t eta + c(a, eta) + (d_x eta) rho(a)
// and the result is an A-path homotopic to the input.
APath xi_flow(const APath& a0, const VariationField& eta, double eps, int steps = 200);

// "first after second": traverses `second`, then `first`.
APath concatenate(const APath& first, const APath& second);
APath reverse(const APath& a);

// Rows a_eps(t) = d_t psi(eps, t) a(psi(eps, t)).
APathFamily reparametrized_family(const APath& a, const std::function<double(double, double)>& psi,
                                  const std::function<double(double, double)>& dpsi_dt, int n_eps);
// Family from a to a-after-zero-path; and from a-then-reverse to the zero path.
APathFamily unit_law_family(const APath& a, int n_eps);
APathFamily inverse_law_family(const APath& a, int n_eps);

// Tangent A-paths of the rows of a grid.
APathFamily tangent_family(AlgebroidPtr tangent, const SphereGrid& grid);

// Right-translated derivative of a pair-groupoid path (target_i, source)
// with constant source.
APath dR_lift_pair(AlgebroidPtr tangent, const BasePath& targets, const std::vector<ChartPoint>& sources,
                   double drift_tol = 1e-10);
// d g/dt g^{-1} of a matrix-group path starting at the identity, in the
// coordinates of a Lie algebra basis.
APath dR_lift_matrix(AlgebroidPtr algebra, const std::vector<Mat>& basis, const std::vector<Mat>& path);

}  // namespace aquant
