#pragma once

#include "aquant/prequant.hpp"
#include "aquant/spheres.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace aquant::fixtures {

inline constexpr double kPi = std::numbers::pi;

inline Eigen::Vector3d east() { return {1, 0, 0}; }
inline Eigen::Vector3d north() { return {0, 0, 1}; }

// Lasso square map sampled on a grid.
inline SphereGrid lasso_grid(AtlasPtr sphere, const Eigen::Vector3d& p, const Eigen::Vector3d& u, double reach,
                             int orientation, int n_eps, int n_t, GridMarker marker) {
    return sample_map(*sphere, lasso_map(sphere, p, u, reach, orientation), n_eps, n_t, marker);
}

// Filling of the equator from (1, 0, 0) through the northern cap.
inline SphereGrid upper_filling(AtlasPtr sphere, const Resolution& res) {
    return filling_grid(*sphere, lasso_map(sphere, east(), north(), kPi / 2, 1), res);
}
// Filling of the reversed equator through the southern cap.
inline SphereGrid lower_filling(AtlasPtr sphere, const Resolution& res) {
    return filling_grid(*sphere, lasso_map(sphere, east(), -north(), kPi / 2, 1), res);
}

// Random unit vector orthogonal to p.
inline Eigen::Vector3d random_tangent(const Eigen::Vector3d& p, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    v -= v.dot(p) * p;
    return v.normalized();
}

// Random lasso loop at p with its filling.
struct Loop {
    BasePath loop;
    SphereGrid filling;
};
inline Loop random_loop(AtlasPtr sphere, const Eigen::Vector3d& p, std::mt19937_64& rng, const Resolution& res) {
    std::uniform_real_distribution<double> reach(0.3, 2.8);
    std::bernoulli_distribution flip(0.5);
    SphereGrid f = filling_grid(*sphere, lasso_map(sphere, p, random_tangent(p, rng), reach(rng), flip(rng) ? 1 : -1), res);
    return Loop{f.row(f.n_eps()), f};
}

// Smooth random path on the sphere starting at p and staying away from -p.
inline BasePath random_path(AtlasPtr sphere, const Eigen::Vector3d& p, std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Vector3d q;
    do {
        q = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
    } while (q.dot(p) < -0.8);
    const Eigen::Vector3d w(g(rng), g(rng), g(rng));
    const double ang = std::acos(std::clamp(p.dot(q), -1.0, 1.0));
    return path_from_map(*sphere, n, [&](double t) {
        Eigen::Vector3d v = ang < 1e-12 ? p : Eigen::Vector3d((std::sin((1 - t) * ang) * p + std::sin(t * ang) * q) /
                                                              std::sin(ang));
        v += 0.3 * std::sin(kPi * t) * w;
        return sphere->from_embedding(v.normalized());
    });
}

// Random polynomial of total degree <= degree in d variables.
inline Polynomial random_polynomial(int d, int degree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    Polynomial poly(d);
    std::vector<int> powers(d, 0);
    // Enumerate exponent vectors with total degree <= degree.
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == d) {
            poly.add_term(c(rng), powers);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            powers[var] = e;
            rec(var + 1, left - e);
        }
        powers[var] = 0;
    };
    rec(0, degree);
    return poly;
}

inline TensorField random_polynomial_field(int components, int d, int degree, std::mt19937_64& rng) {
    std::vector<Polynomial> comps;
    for (int k = 0; k < components; ++k) comps.push_back(random_polynomial(d, degree, rng));
    return TensorField::polynomial(comps, d);
}

// Points of sphere2 with chart-0 coordinates inside |z| < 0.9.
inline std::vector<ChartPoint> northern_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> r(0.0, 0.9), a(0.0, 2 * kPi);
    std::vector<ChartPoint> out;
    for (int k = 0; k < n; ++k) {
        const double rad = r(rng), ang = a(rng);
        Vec x(2);
        x << rad * std::cos(ang), rad * std::sin(ang);
        out.push_back(ChartPoint{0, x});
    }
    return out;
}

}  // namespace aquant::fixtures
