#include "aquant/spheres.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace aquant {

using Eigen::Vector3d;

namespace {

constexpr double kPi = std::numbers::pi;

Vec gaussian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return v;
}

ChartPoint on_sphere(const Atlas& sphere, const Vector3d& y) { return sphere.from_embedding(Vec(y)); }

}  // namespace

ChartPoint random_point(const Atlas& atlas, std::mt19937_64& rng) {
    switch (atlas.kind()) {
        case ManifoldKind::sphere2: return atlas.from_embedding(gaussian(rng, 3).normalized());
        case ManifoldKind::torus2: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            Vec x(2);
            x << u(rng), u(rng);
            return ChartPoint{0, x};
        }
        case ManifoldKind::product: {
            ChartPoint a = random_point(*atlas.factor(0), rng);
            ChartPoint b = random_point(*atlas.factor(1), rng);
            return atlas.join_point(a, b);
        }
        case ManifoldKind::euclidean: return ChartPoint{0, gaussian(rng, atlas.dimension())};
    }
    return ChartPoint{0, Vec()};
}

std::vector<ChartPoint> random_points(const Atlas& atlas, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ChartPoint> out;
    for (int k = 0; k < n; ++k) out.push_back(random_point(atlas, rng));
    return out;
}

SphereGrid sample_map(const Atlas& atlas, const SquareMap& g, int n_eps, int n_t, GridMarker marker) {
    return SphereGrid::from_map(atlas, n_eps, n_t, g, marker);
}

Vector3d rotate(const Vector3d& k, double a, const Vector3d& v) {
    return v * std::cos(a) + k.cross(v) * std::sin(a) + k * k.dot(v) * (1.0 - std::cos(a));
}

Vector3d default_direction(const Vector3d& p) {
    Vector3d e = Vector3d::Zero();
    int idx = 0;
    p.cwiseAbs().minCoeff(&idx);
    e(idx) = 1.0;
    return (e - e.dot(p) * p).normalized();
}

SquareMap lasso_map(AtlasPtr sphere, const Vector3d& p_in, const Vector3d& u_in, double reach, int orientation) {
    if (sphere->kind() != ManifoldKind::sphere2) throw Unsupported("lasso_map needs the sphere2 atlas");
    const Vector3d p = p_in.normalized();
    const Vector3d u = (u_in - u_in.dot(p) * p).normalized();
    const double sign = orientation >= 0 ? -1.0 : 1.0;
    return [sphere, p, u, reach, sign](double eps, double t) {
        const double rho = reach * eps;
        const Vector3d axis = std::cos(rho) * p + std::sin(rho) * u;
        return on_sphere(*sphere, rotate(axis, sign * 2 * kPi * t, p));
    };
}

SquareMap hemisphere_sweep_map(AtlasPtr sphere) {
    if (sphere->kind() != ManifoldKind::sphere2) throw Unsupported("hemisphere sweep needs the sphere2 atlas");
    return [sphere](double eps, double t) {
        const Vector3d axis(0.0, -std::sin(kPi * eps), std::cos(kPi * eps));
        return on_sphere(*sphere, rotate(axis, kPi * t, Vector3d(1, 0, 0)));
    };
}

SquareMap random_sphere_map(AtlasPtr sphere, std::uint64_t seed) {
    if (sphere->kind() != ManifoldKind::sphere2) throw Unsupported("random spheres live on sphere2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vector3d p(gauss(rng), gauss(rng), gauss(rng));
    p.normalize();
    Vector3d u(gauss(rng), gauss(rng), gauss(rng));
    u = (u - u.dot(p) * p).normalized();
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m(a, b) += 0.25 * unif(rng);
    const int kind = static_cast<int>(rng() % 3);  // 0: +1, 1: -1, 2: degree zero
    const double reach = kind == 2 ? 0.6 * kPi + 0.3 * unif(rng) : kPi;
    const double d1 = 0.15 * unif(rng), d2 = 0.15 * unif(rng);
    const double sign = kind == 1 ? 1.0 : -1.0;
    return [sphere, p, u, m, kind, reach, d1, d2, sign](double eps, double t) {
        // Boundary-preserving reparametrization of the square.
        const double tt = t + d1 * std::sin(kPi * t) * std::sin(kPi * eps) / kPi;
        const double ee = eps + d2 * std::sin(kPi * eps) * std::sin(2 * kPi * t) / kPi;
        // Degree zero draws grow the circle and shrink it back to p.
        const double rho = kind == 2 ? reach * std::sin(kPi * ee) : reach * ee;
        const Vector3d axis = std::cos(rho) * p + std::sin(rho) * u;
        const Vector3d q = rotate(axis, sign * 2 * kPi * tt, p);
        return on_sphere(*sphere, (m * q).normalized());
    };
}

SquareMap factor_map(AtlasPtr product, SquareMap g, int factor, const ChartPoint& other) {
    if (product->kind() != ManifoldKind::product) throw Unsupported("factor_map needs a product atlas");
    return [product, g = std::move(g), factor, other](double eps, double t) {
        ChartPoint q = g(eps, t);
        return factor == 0 ? product->join_point(q, other) : product->join_point(other, q);
    };
}

std::vector<SquareMap> default_generators(AtlasPtr atlas, const ChartPoint& basepoint) {
    switch (atlas->kind()) {
        case ManifoldKind::sphere2: {
            Vector3d p = atlas->embed(basepoint);
            return {lasso_map(atlas, p, default_direction(p), kPi, 1)};
        }
        case ManifoldKind::product: {
            std::vector<SquareMap> out;
            auto [b1, b2] = atlas->split_point(basepoint);
            for (const auto& g : default_generators(atlas->factor(0), b1))
                out.push_back(factor_map(atlas, g, 0, b2));
            for (const auto& g : default_generators(atlas->factor(1), b2))
                out.push_back(factor_map(atlas, g, 1, b1));
            return out;
        }
        default: return {};
    }
}

GeneratorFactory default_generator_factory(AtlasPtr atlas) {
    return [atlas](const ChartPoint& p) { return default_generators(atlas, p); };
}

}  // namespace aquant
