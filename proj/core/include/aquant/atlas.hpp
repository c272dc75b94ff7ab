#pragma once

#include "aquant/types.hpp"

#include <memory>
#include <string>
#include <utility>

namespace aquant {

enum class ManifoldKind { euclidean, sphere2, torus2, product };

// A point given by its chart index and coordinates in that chart.
struct ChartPoint {
    int chart = 0;
    Vec x;
};

class Atlas;
using AtlasPtr = std::shared_ptr<const Atlas>;

// Finite atlas with explicit transition maps and Jacobians.
//
// sphere2 uses two stereographic charts:
//   chart 0: z = (X, Y) / (1 + Z), centered at the north pole, positively oriented
//   chart 1: w = (X, Y) / (1 - Z), centered at the south pole, negatively oriented
// with w = z / |z|^2 on the overlap. Each chart is restricted to |z| < 4.
//
// torus2 is a single chart in universal-cover coordinates, periodic with
// period 1 in both directions. euclidean(d) is a single unbounded chart.
// A product atlas indexes charts as c1 * n2 + c2 and concatenates coordinates.
class Atlas {
public:
    static AtlasPtr euclidean(int dimension);
    static AtlasPtr point() { return euclidean(0); }
    static AtlasPtr sphere2();
    static AtlasPtr torus2();
    static AtlasPtr product(AtlasPtr first, AtlasPtr second);

    ManifoldKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    int chart_count() const { return charts_; }
    std::string name() const;

    // Factor access for product atlases.
    const AtlasPtr& factor(int i) const;
    std::pair<int, int> split_chart(int chart) const;
    int join_chart(int c1, int c2) const;
    std::pair<ChartPoint, ChartPoint> split_point(const ChartPoint& p) const;
    ChartPoint join_point(const ChartPoint& p1, const ChartPoint& p2) const;

    bool in_domain(int chart, const Vec& x) const;

    // Coordinates of x (given in chart `from`) in chart `to`.
    // Throws DomainError when x is outside the overlap.
    Vec transition(int from, int to, const Vec& x) const;
    Mat transition_jacobian(int from, int to, const Vec& x) const;

    ChartPoint to_chart(const ChartPoint& p, int chart) const;
    // Chart in which the point sits comfortably inside the domain.
    int preferred_chart(const ChartPoint& p) const;
    ChartPoint normalize(const ChartPoint& p) const { return to_chart(p, preferred_chart(p)); }

    // Embedding used for comparisons and interpolation strategies:
    // sphere2 -> unit vectors in R^3, torus2 and euclidean -> coordinates.
    Vec embed(const ChartPoint& p) const;
    int embedding_dimension() const;
    ChartPoint from_embedding(const Vec& y) const;
    // Distance between two points, measured in the embedding (torus mod 1).
    double distance(const ChartPoint& a, const ChartPoint& b) const;

private:
    Atlas() = default;

    ManifoldKind kind_ = ManifoldKind::euclidean;
    int dimension_ = 0;
    int charts_ = 1;
    AtlasPtr first_, second_;
};

}  // namespace aquant
