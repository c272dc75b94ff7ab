#pragma once

#include "aquant/atlas.hpp"

#include <array>
#include <functional>
#include <vector>

namespace aquant {

// Path sampled at t_i = i / N, i = 0..N, each sample in its own chart.
struct BasePath {
    std::vector<ChartPoint> points;

    int intervals() const { return static_cast<int>(points.size()) - 1; }
    const ChartPoint& start() const { return points.front(); }
    const ChartPoint& end() const { return points.back(); }
};

enum class GridMarker {
    none,
    based,            // whole boundary of the square maps to one point
    fixed_endpoints,  // t = 0 and t = 1 columns are constant
};

// Map of the unit square, sampled at (eps_j, t_i) = (j / M, i / N).
// Row j is the path t -> g(eps_j, t).
class SphereGrid {
public:
    SphereGrid() = default;
    SphereGrid(int n_eps, int n_t, std::vector<ChartPoint> points, GridMarker marker);

    // Samples g on the grid; g returns points in any chart.
    static SphereGrid from_map(const Atlas& atlas, int n_eps, int n_t,
                               const std::function<ChartPoint(double eps, double t)>& g, GridMarker marker);
    // Stacks paths with a common sample count as rows.
    static SphereGrid from_rows(const std::vector<BasePath>& rows, GridMarker marker);

    int n_eps() const { return n_eps_; }
    int n_t() const { return n_t_; }
    GridMarker marker() const { return marker_; }
    const ChartPoint& at(int j, int i) const { return points_[j * (n_t_ + 1) + i]; }
    ChartPoint& at(int j, int i) { return points_[j * (n_t_ + 1) + i]; }
    BasePath row(int j) const;

    // Largest violation of the boundary marker, measured in the embedding.
    double boundary_defect(const Atlas& atlas) const;
    // Grid with eps reversed (row j becomes row M - j).
    SphereGrid reversed_eps() const;

private:
    int n_eps_ = 0;
    int n_t_ = 0;
    std::vector<ChartPoint> points_;
    GridMarker marker_ = GridMarker::none;
};

// Fourth-order finite-difference first derivative at sample i of n + 1
// equally spaced samples. Uses central weights inside, one-sided near the ends.
struct Stencil {
    int first = 0;
    std::array<double, 5> weights{};
};
Stencil derivative_stencil(int i, int n);

// Derivative of the path at sample i, in the chart of that sample.
Vec path_derivative(const Atlas& atlas, const BasePath& path, int i);
// d/dt and d/deps of the grid at (j, i), in the chart of that node.
Vec grid_dt(const Atlas& atlas, const SphereGrid& grid, int j, int i);
Vec grid_deps(const Atlas& atlas, const SphereGrid& grid, int j, int i);

// Weights of four-point Lagrange interpolation at the midpoint of interval
// [i, i + 1] out of n intervals, together with the first node used.
struct MidpointWeights {
    int first = 0;
    std::array<double, 4> weights{};
};
MidpointWeights midpoint_weights(int i, int n);

// Path value at an arbitrary time by cubic interpolation.
ChartPoint sample_path(const Atlas& atlas, const BasePath& path, double t);
BasePath resample(const Atlas& atlas, const BasePath& path, int n);
BasePath reverse(const BasePath& path);
// `first` followed by `second`, each traversed with a reparametrization
// whose derivative vanishes at the junction.
BasePath concatenate(const Atlas& atlas, const BasePath& first, const BasePath& second, int n_out);
BasePath constant_path(const ChartPoint& p, int n);
BasePath path_from_map(const Atlas& atlas, int n, const std::function<ChartPoint(double t)>& g);

// Smooth reparametrization of [0, 1] onto itself with vanishing derivative
// at both ends, and its derivative.
double bump(double s);
double bump_derivative(double s);

// Composite Simpson weights for n (even) intervals of width 1 / n.
std::vector<double> simpson_weights(int n);

}  // namespace aquant
