#pragma once

#include "aquant/forms.hpp"
#include "aquant/grid.hpp"

#include <string>
#include <vector>

namespace aquant {

struct QuadratureResult {
    double value = 0.0;
    std::vector<std::string> warnings;
};

// Integral of omega(d/dt g, d/deps g) over the unit square. Derivatives use
// fourth-order differences in the chart of each node; Simpson's rule in
// both directions, so both resolutions must be even.
QuadratureResult integrate_over_sphere(const TwoFormField& omega, const SphereGrid& grid,
                                       double boundary_tol = 1e-8);

// Same integrand over a homotopy whose t = 0 and t = 1 columns are fixed.
QuadratureResult integrate_over_homotopy(const TwoFormField& omega, const SphereGrid& grid,
                                         double boundary_tol = 1e-8);

// Simpson double integral of values(j, i) over the unit square.
double integrate_square(const Mat& values);

}  // namespace aquant
