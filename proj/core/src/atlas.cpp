#include "aquant/atlas.hpp"

#include <cmath>

namespace aquant {

namespace {

constexpr double kSphereChartRadius = 4.0;

Vec sphere_transition(const Vec& x) {
    const double n2 = x.squaredNorm();
    return x / n2;
}

Mat sphere_transition_jacobian(const Vec& x) {
    const double n2 = x.squaredNorm();
    return (Mat::Identity(2, 2) * n2 - 2.0 * x * x.transpose()) / (n2 * n2);
}

double wrap_unit(double d) { return d - std::round(d); }

}  // namespace

AtlasPtr Atlas::euclidean(int dimension) {
    if (dimension < 0) throw InvalidInput("negative dimension");
    auto a = std::shared_ptr<Atlas>(new Atlas());
    a->kind_ = ManifoldKind::euclidean;
    a->dimension_ = dimension;
    a->charts_ = 1;
    return a;
}

AtlasPtr Atlas::sphere2() {
    auto a = std::shared_ptr<Atlas>(new Atlas());
    a->kind_ = ManifoldKind::sphere2;
    a->dimension_ = 2;
    a->charts_ = 2;
    return a;
}

AtlasPtr Atlas::torus2() {
    auto a = std::shared_ptr<Atlas>(new Atlas());
    a->kind_ = ManifoldKind::torus2;
    a->dimension_ = 2;
    a->charts_ = 1;
    return a;
}

AtlasPtr Atlas::product(AtlasPtr first, AtlasPtr second) {
    if (!first || !second) throw InvalidInput("product of null atlases");
    auto a = std::shared_ptr<Atlas>(new Atlas());
    a->kind_ = ManifoldKind::product;
    a->dimension_ = first->dimension() + second->dimension();
    a->charts_ = first->chart_count() * second->chart_count();
    a->first_ = std::move(first);
    a->second_ = std::move(second);
    return a;
}

std::string Atlas::name() const {
    switch (kind_) {
        case ManifoldKind::euclidean: return "euclidean(" + std::to_string(dimension_) + ")";
        case ManifoldKind::sphere2: return "sphere2";
        case ManifoldKind::torus2: return "torus2";
        case ManifoldKind::product: return first_->name() + " x " + second_->name();
    }
    return "unknown";
}

const AtlasPtr& Atlas::factor(int i) const {
    if (kind_ != ManifoldKind::product) throw Unsupported("factor() on a non-product atlas");
    if (i == 0) return first_;
    if (i == 1) return second_;
    throw InvalidInput("product factor index out of range");
}

std::pair<int, int> Atlas::split_chart(int chart) const {
    const int n2 = factor(1)->chart_count();
    return {chart / n2, chart % n2};
}

int Atlas::join_chart(int c1, int c2) const { return c1 * factor(1)->chart_count() + c2; }

std::pair<ChartPoint, ChartPoint> Atlas::split_point(const ChartPoint& p) const {
    auto [c1, c2] = split_chart(p.chart);
    const int d1 = first_->dimension();
    return {ChartPoint{c1, p.x.head(d1)}, ChartPoint{c2, p.x.tail(dimension_ - d1)}};
}

ChartPoint Atlas::join_point(const ChartPoint& p1, const ChartPoint& p2) const {
    Vec x(dimension_);
    x << p1.x, p2.x;
    return ChartPoint{join_chart(p1.chart, p2.chart), x};
}

bool Atlas::in_domain(int chart, const Vec& x) const {
    if (chart < 0 || chart >= charts_ || x.size() != dimension_) return false;
    if (!x.allFinite()) return false;
    switch (kind_) {
        case ManifoldKind::euclidean:
        case ManifoldKind::torus2: return true;
        case ManifoldKind::sphere2: return x.norm() < kSphereChartRadius;
        case ManifoldKind::product: {
            auto [c1, c2] = split_chart(chart);
            const int d1 = first_->dimension();
            return first_->in_domain(c1, x.head(d1)) && second_->in_domain(c2, x.tail(dimension_ - d1));
        }
    }
    return false;
}

Vec Atlas::transition(int from, int to, const Vec& x) const {
    if (!in_domain(from, x))
        throw DomainError("point outside the domain of chart " + std::to_string(from) + " on " + name());
    if (to < 0 || to >= charts_) throw DomainError("chart index out of range");
    if (from == to) return x;
    Vec y;
    switch (kind_) {
        case ManifoldKind::sphere2: y = sphere_transition(x); break;
        case ManifoldKind::product: {
            auto [f1, f2] = split_chart(from);
            auto [t1, t2] = split_chart(to);
            const int d1 = first_->dimension();
            y.resize(dimension_);
            y << first_->transition(f1, t1, x.head(d1)), second_->transition(f2, t2, x.tail(dimension_ - d1));
            break;
        }
        default: throw DomainError("single-chart atlas has no transitions");
    }
    if (!in_domain(to, y))
        throw DomainError("point outside the overlap of charts " + std::to_string(from) + " and " +
                          std::to_string(to) + " on " + name());
    return y;
}

Mat Atlas::transition_jacobian(int from, int to, const Vec& x) const {
    if (!in_domain(from, x))
        throw DomainError("point outside the domain of chart " + std::to_string(from) + " on " + name());
    if (from == to) return Mat::Identity(dimension_, dimension_);
    // Validates the overlap.
    transition(from, to, x);
    switch (kind_) {
        case ManifoldKind::sphere2: return sphere_transition_jacobian(x);
        case ManifoldKind::product: {
            auto [f1, f2] = split_chart(from);
            auto [t1, t2] = split_chart(to);
            const int d1 = first_->dimension();
            const int d2 = dimension_ - d1;
            Mat j = Mat::Zero(dimension_, dimension_);
            j.topLeftCorner(d1, d1) = first_->transition_jacobian(f1, t1, x.head(d1));
            j.bottomRightCorner(d2, d2) = second_->transition_jacobian(f2, t2, x.tail(d2));
            return j;
        }
        default: throw DomainError("single-chart atlas has no transitions");
    }
}

ChartPoint Atlas::to_chart(const ChartPoint& p, int chart) const {
    return ChartPoint{chart, transition(p.chart, chart, p.x)};
}

int Atlas::preferred_chart(const ChartPoint& p) const {
    switch (kind_) {
        case ManifoldKind::euclidean:
        case ManifoldKind::torus2: return 0;
        case ManifoldKind::sphere2: {
            // Northern closed hemisphere in chart 0, the rest in chart 1.
            const double n = p.x.norm();
            if (p.chart == 0) return n <= 1.0 ? 0 : 1;
            return n < 1.0 ? 1 : 0;
        }
        case ManifoldKind::product: {
            auto [p1, p2] = split_point(p);
            return join_chart(first_->preferred_chart(p1), second_->preferred_chart(p2));
        }
    }
    return 0;
}

int Atlas::embedding_dimension() const {
    switch (kind_) {
        case ManifoldKind::sphere2: return 3;
        case ManifoldKind::product: return first_->embedding_dimension() + second_->embedding_dimension();
        default: return dimension_;
    }
}

Vec Atlas::embed(const ChartPoint& p) const {
    switch (kind_) {
        case ManifoldKind::euclidean:
        case ManifoldKind::torus2: return p.x;
        case ManifoldKind::sphere2: {
            const double n2 = p.x.squaredNorm();
            const double s = (p.chart == 0) ? 1.0 : -1.0;
            Vec y(3);
            y << 2.0 * p.x(0) / (1.0 + n2), 2.0 * p.x(1) / (1.0 + n2), s * (1.0 - n2) / (1.0 + n2);
            return y;
        }
        case ManifoldKind::product: {
            auto [p1, p2] = split_point(p);
            Vec e1 = first_->embed(p1), e2 = second_->embed(p2);
            Vec y(e1.size() + e2.size());
            y << e1, e2;
            return y;
        }
    }
    return p.x;
}

ChartPoint Atlas::from_embedding(const Vec& y) const {
    if (y.size() != embedding_dimension()) throw InvalidInput("embedded point has wrong size");
    switch (kind_) {
        case ManifoldKind::euclidean:
        case ManifoldKind::torus2: return ChartPoint{0, y};
        case ManifoldKind::sphere2: {
            const double n = y.norm();
            if (n < 1e-12) throw DomainError("cannot project the origin to the sphere");
            Vec u = y / n;
            Vec x(2);
            if (u(2) >= 0) {
                x << u(0) / (1.0 + u(2)), u(1) / (1.0 + u(2));
                return ChartPoint{0, x};
            }
            x << u(0) / (1.0 - u(2)), u(1) / (1.0 - u(2));
            return ChartPoint{1, x};
        }
        case ManifoldKind::product: {
            const int e1 = first_->embedding_dimension();
            ChartPoint p1 = first_->from_embedding(y.head(e1));
            ChartPoint p2 = second_->from_embedding(y.tail(y.size() - e1));
            return join_point(p1, p2);
        }
    }
    return ChartPoint{0, y};
}

double Atlas::distance(const ChartPoint& a, const ChartPoint& b) const {
    if (kind_ == ManifoldKind::torus2) {
        Vec d = a.x - b.x;
        for (int i = 0; i < d.size(); ++i) d(i) = wrap_unit(d(i));
        return d.norm();
    }
    if (kind_ == ManifoldKind::product) {
        auto [a1, a2] = split_point(a);
        auto [b1, b2] = split_point(b);
        return std::hypot(first_->distance(a1, b1), second_->distance(a2, b2));
    }
    return (embed(a) - embed(b)).norm();
}

}  // namespace aquant
