#pragma once

#include "aquant/grid.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace aquant {

// Smooth map of the unit square (eps, t) into a manifold.
using SquareMap = std::function<ChartPoint(double eps, double t)>;

// Random point: uniform on spheres and the torus, standard normal in euclidean space.
ChartPoint random_point(const Atlas& atlas, std::mt19937_64& rng);
std::vector<ChartPoint> random_points(const Atlas& atlas, int n, std::uint64_t seed);

SphereGrid sample_map(const Atlas& atlas, const SquareMap& g, int n_eps, int n_t, GridMarker marker);

// Rotation of v about the unit axis k by angle a (right-hand rule).
Eigen::Vector3d rotate(const Eigen::Vector3d& k, double a, const Eigen::Vector3d& v);

// Lasso on sphere2: the circle of angular radius reach * eps around the
// axis cos(reach eps) p + sin(reach eps) u, started and ended at p.
// reach = pi sweeps the whole sphere once (boundary of the square at p);
// smaller reaches fill the final circle starting from the constant path.
// orientation = +1 makes the normalized area integral positive.
SquareMap lasso_map(AtlasPtr sphere, const Eigen::Vector3d& p, const Eigen::Vector3d& u, double reach,
                    int orientation = 1);

// Sweep of the upper hemisphere by half great circles from (1,0,0) to
// (-1,0,0), starting at the front half of the equator and ending at the back half.
SquareMap hemisphere_sweep_map(AtlasPtr sphere);

// Randomly deformed sphere based at a random point, reproducible from seed.
// Degree is +1, -1 or 0 depending on the draw.
SquareMap random_sphere_map(AtlasPtr sphere, std::uint64_t seed);

// Map into a product that moves only the given factor.
SquareMap factor_map(AtlasPtr product, SquareMap g, int factor, const ChartPoint& other);

// Unit tangent at p used as default lasso direction.
Eigen::Vector3d default_direction(const Eigen::Vector3d& p);

// Generators of pi_2 at a basepoint: one lasso per sphere factor,
// none for euclidean spaces and the torus.
std::vector<SquareMap> default_generators(AtlasPtr atlas, const ChartPoint& basepoint);
using GeneratorFactory = std::function<std::vector<SquareMap>(const ChartPoint&)>;
GeneratorFactory default_generator_factory(AtlasPtr atlas);

}  // namespace aquant
