#include "aquant/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aquant {

SphereGrid::SphereGrid(int n_eps, int n_t, std::vector<ChartPoint> points, GridMarker marker)
    : n_eps_(n_eps), n_t_(n_t), points_(std::move(points)), marker_(marker) {
    if (n_eps < 1 || n_t < 1) throw InvalidInput("grid needs at least one interval in each direction");
    if (static_cast<int>(points_.size()) != (n_eps + 1) * (n_t + 1))
        throw InvalidInput("grid point count does not match its resolution");
}

SphereGrid SphereGrid::from_map(const Atlas& atlas, int n_eps, int n_t,
                                const std::function<ChartPoint(double, double)>& g, GridMarker marker) {
    std::vector<ChartPoint> pts;
    pts.reserve(static_cast<size_t>(n_eps + 1) * (n_t + 1));
    for (int j = 0; j <= n_eps; ++j)
        for (int i = 0; i <= n_t; ++i)
            pts.push_back(atlas.normalize(g(static_cast<double>(j) / n_eps, static_cast<double>(i) / n_t)));
    return SphereGrid(n_eps, n_t, std::move(pts), marker);
}

SphereGrid SphereGrid::from_rows(const std::vector<BasePath>& rows, GridMarker marker) {
    if (rows.size() < 2) throw InvalidInput("grid needs at least two rows");
    const int n = rows.front().intervals();
    std::vector<ChartPoint> pts;
    for (const auto& r : rows) {
        if (r.intervals() != n) throw InvalidInput("grid rows have different sample counts");
        pts.insert(pts.end(), r.points.begin(), r.points.end());
    }
    return SphereGrid(static_cast<int>(rows.size()) - 1, n, std::move(pts), marker);
}

BasePath SphereGrid::row(int j) const {
    BasePath p;
    p.points.assign(points_.begin() + j * (n_t_ + 1), points_.begin() + (j + 1) * (n_t_ + 1));
    return p;
}

double SphereGrid::boundary_defect(const Atlas& atlas) const {
    double worst = 0.0;
    if (marker_ == GridMarker::none) return 0.0;
    const ChartPoint& corner = at(0, 0);
    for (int j = 0; j <= n_eps_; ++j) {
        worst = std::max(worst, atlas.distance(at(j, 0), at(0, 0)));
        worst = std::max(worst, atlas.distance(at(j, n_t_), at(0, n_t_)));
    }
    if (marker_ == GridMarker::based) {
        for (int i = 0; i <= n_t_; ++i) {
            worst = std::max(worst, atlas.distance(at(0, i), corner));
            worst = std::max(worst, atlas.distance(at(n_eps_, i), corner));
        }
    }
    return worst;
}

SphereGrid SphereGrid::reversed_eps() const {
    std::vector<ChartPoint> pts;
    pts.reserve(points_.size());
    for (int j = n_eps_; j >= 0; --j)
        for (int i = 0; i <= n_t_; ++i) pts.push_back(at(j, i));
    return SphereGrid(n_eps_, n_t_, std::move(pts), marker_);
}

Stencil derivative_stencil(int i, int n) {
    if (n < 4) throw InvalidInput("fourth-order differences need at least four intervals");
    constexpr double k = 1.0 / 12.0;
    if (i == 0) return {0, {-25 * k, 48 * k, -36 * k, 16 * k, -3 * k}};
    if (i == 1) return {0, {-3 * k, -10 * k, 18 * k, -6 * k, 1 * k}};
    if (i == n - 1) return {n - 4, {-1 * k, 6 * k, -18 * k, 10 * k, 3 * k}};
    if (i == n) return {n - 4, {3 * k, -16 * k, 36 * k, -48 * k, 25 * k}};
    return {i - 2, {1 * k, -8 * k, 0.0, 8 * k, -1 * k}};
}

namespace {

template <class Get>
Vec stencil_apply(const Atlas& atlas, int chart, int i, int n, Get get) {
    const Stencil s = derivative_stencil(i, n);
    Vec d = Vec::Zero(atlas.dimension());
    for (int m = 0; m < 5; ++m) {
        if (s.weights[m] == 0.0) continue;
        const ChartPoint& q = get(s.first + m);
        d += s.weights[m] * (q.chart == chart ? q.x : atlas.transition(q.chart, chart, q.x));
    }
    return d * n;
}

}  // namespace

Vec path_derivative(const Atlas& atlas, const BasePath& path, int i) {
    const int n = path.intervals();
    return stencil_apply(atlas, path.points[i].chart, i, n, [&](int k) -> const ChartPoint& { return path.points[k]; });
}

Vec grid_dt(const Atlas& atlas, const SphereGrid& grid, int j, int i) {
    return stencil_apply(atlas, grid.at(j, i).chart, i, grid.n_t(),
                         [&](int k) -> const ChartPoint& { return grid.at(j, k); });
}

Vec grid_deps(const Atlas& atlas, const SphereGrid& grid, int j, int i) {
    return stencil_apply(atlas, grid.at(j, i).chart, j, grid.n_eps(),
                         [&](int k) -> const ChartPoint& { return grid.at(k, i); });
}

MidpointWeights midpoint_weights(int i, int n) {
    if (n < 3) throw InvalidInput("cubic interpolation needs at least three intervals");
    if (i == 0) return {0, {5.0 / 16, 15.0 / 16, -5.0 / 16, 1.0 / 16}};
    if (i == n - 1) return {n - 3, {1.0 / 16, -5.0 / 16, 15.0 / 16, 5.0 / 16}};
    return {i - 1, {-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16}};
}

ChartPoint sample_path(const Atlas& atlas, const BasePath& path, double t) {
    const int n = path.intervals();
    if (n < 1) return path.points.front();
    t = std::clamp(t, 0.0, 1.0);
    const double u = t * n;
    if (n < 3) {
        // Too few samples for cubics: linear interpolation in the left chart.
        const int i = std::min(static_cast<int>(std::floor(u)), n - 1);
        const ChartPoint& a = path.points[i];
        Vec b = atlas.to_chart(path.points[i + 1], a.chart).x;
        const double s = u - i;
        return atlas.normalize(ChartPoint{a.chart, (1 - s) * a.x + s * b});
    }
    int i = std::min(static_cast<int>(std::floor(u)), n - 1);
    int first = std::clamp(i - 1, 0, n - 3);
    const int chart = path.points[std::clamp(static_cast<int>(std::lround(u)), 0, n)].chart;
    Vec x = Vec::Zero(atlas.dimension());
    for (int m = 0; m < 4; ++m) {
        double w = 1.0;
        for (int q = 0; q < 4; ++q)
            if (q != m) w *= (u - (first + q)) / static_cast<double>(m - q);
        const ChartPoint& p = path.points[first + m];
        x += w * (p.chart == chart ? p.x : atlas.transition(p.chart, chart, p.x));
    }
    return atlas.normalize(ChartPoint{chart, x});
}

BasePath resample(const Atlas& atlas, const BasePath& path, int n) {
    if (n == path.intervals()) return path;
    return path_from_map(atlas, n, [&](double t) { return sample_path(atlas, path, t); });
}

BasePath reverse(const BasePath& path) {
    BasePath r = path;
    std::reverse(r.points.begin(), r.points.end());
    return r;
}

double bump(double s) { return s - std::sin(2 * std::numbers::pi * s) / (2 * std::numbers::pi); }
double bump_derivative(double s) { return 1.0 - std::cos(2 * std::numbers::pi * s); }

BasePath concatenate(const Atlas& atlas, const BasePath& first, const BasePath& second, int n_out) {
    if (atlas.distance(first.end(), second.start()) > 1e-8)
        throw BoundaryError("concatenated paths do not meet");
    if (n_out % 2 != 0) throw InvalidInput("concatenation needs an even sample count");
    return path_from_map(atlas, n_out, [&](double t) {
        if (t <= 0.5) return sample_path(atlas, first, bump(2 * t));
        return sample_path(atlas, second, bump(2 * t - 1));
    });
}

BasePath constant_path(const ChartPoint& p, int n) {
    BasePath b;
    b.points.assign(n + 1, p);
    return b;
}

BasePath path_from_map(const Atlas& atlas, int n, const std::function<ChartPoint(double)>& g) {
    BasePath b;
    b.points.reserve(n + 1);
    for (int i = 0; i <= n; ++i) b.points.push_back(atlas.normalize(g(static_cast<double>(i) / n)));
    return b;
}

std::vector<double> simpson_weights(int n) {
    if (n < 2 || n % 2 != 0) throw InvalidInput("Simpson's rule needs an even number of intervals");
    std::vector<double> w(n + 1);
    const double h = 1.0 / n;
    for (int i = 0; i <= n; ++i) w[i] = h / 3.0 * ((i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
    return w;
}

}  // namespace aquant
