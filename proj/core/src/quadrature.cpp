#include "aquant/quadrature.hpp"

#include <cmath>
#include <string>

namespace aquant {

namespace {

QuadratureResult integrate_grid(const TwoFormField& omega, const SphereGrid& grid) {
    const Atlas& atlas = *omega.atlas();
    const int m = grid.n_eps(), n = grid.n_t();
    if (m % 2 || n % 2) throw InvalidInput("Simpson quadrature needs even resolutions");
    Mat vals(m + 1, n + 1);
    int degenerate = 0;
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= n; ++i) {
            const ChartPoint& p = grid.at(j, i);
            Vec dt = grid_dt(atlas, grid, j, i);
            Vec de = grid_deps(atlas, grid, j, i);
            const bool interior = j > 0 && j < m && i > 0 && i < n;
            if (interior && dt.norm() < 1e-14 && de.norm() < 1e-14) ++degenerate;
            vals(j, i) = omega.eval(p, dt, de);
        }
    QuadratureResult r;
    r.value = integrate_square(vals);
    if (degenerate > 0)
        r.warnings.push_back("degenerate grid: " + std::to_string(degenerate) +
                             " interior nodes with zero-length derivative stencils");
    return r;
}

}  // namespace

double integrate_square(const Mat& values) {
    const auto we = simpson_weights(static_cast<int>(values.rows()) - 1);
    const auto wt = simpson_weights(static_cast<int>(values.cols()) - 1);
    double s = 0.0;
    for (int j = 0; j < values.rows(); ++j) {
        double row = 0.0;
        for (int i = 0; i < values.cols(); ++i) row += wt[i] * values(j, i);
        s += we[j] * row;
    }
    return s;
}

QuadratureResult integrate_over_sphere(const TwoFormField& omega, const SphereGrid& grid, double boundary_tol) {
    const double defect = grid.boundary_defect(*omega.atlas());
    if (grid.marker() != GridMarker::based || defect > boundary_tol)
        throw BoundaryError("sphere grid boundary does not map to its basepoint (defect " +
                            std::to_string(defect) + ")");
    return integrate_grid(omega, grid);
}

QuadratureResult integrate_over_homotopy(const TwoFormField& omega, const SphereGrid& grid, double boundary_tol) {
    const double defect = grid.boundary_defect(*omega.atlas());
    if (grid.marker() == GridMarker::none || defect > boundary_tol)
        throw BoundaryError("homotopy grid does not fix its endpoints (defect " + std::to_string(defect) + ")");
    return integrate_grid(omega, grid);
}

}  // namespace aquant
