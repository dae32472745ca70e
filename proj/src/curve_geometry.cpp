#include "curvseg/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "curvseg/errors.hpp"

namespace curvseg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Angle of edge vector p in [0, 2pi), branching on the sign of its y component.
double raw_angle(const Vec2& p, double r) {
    const double a = clamped_acos(p.x / r);
    return p.y >= 0.0 ? a : kTwoPi - a;
}

}  // namespace

PolygonalCurve::PolygonalCurve(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < kMinVertices) {
        throw InvalidCurve("polygonal curve needs at least " + std::to_string(kMinVertices) +
                           " vertices, got " + std::to_string(vertices_.size()));
    }
    for (const Vec2& v : vertices_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
            throw InvalidCurve("polygonal curve has a non-finite vertex");
        }
    }
}

PolygonalCurve PolygonalCurve::circle(Vec2 center, double radius, std::size_t n) {
    if (!(radius > 0.0)) {
        throw InvalidCurve("circle radius must be positive");
    }
    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        pts[i] = center + radius * Vec2{std::cos(theta), std::sin(theta)};
    }
    return PolygonalCurve(std::move(pts));
}

const Vec2& PolygonalCurve::wrapped(std::ptrdiff_t i) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
    return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
}

double EdgeGeometry::min_length() const {
    return lengths.empty() ? 0.0 : *std::min_element(lengths.begin(), lengths.end());
}

double unwrap_angle(double angle, double previous) {
    double best = angle;
    double best_dist = std::abs(angle - previous);
    for (double shift : {kTwoPi, -kTwoPi}) {
        const double candidate = angle + shift;
        const double dist = std::abs(candidate - previous);
        if (dist < best_dist) {
            best = candidate;
            best_dist = dist;
        }
    }
    return best;
}

EdgeGeometry compute_edge_geometry(const PolygonalCurve& curve) {
    const std::size_t n = curve.size();
    EdgeGeometry g;
    g.edge_vectors.resize(n);
    g.lengths.resize(n);
    g.curvatures.resize(n);
    g.angles.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = curve[i] - curve.wrapped(static_cast<std::ptrdiff_t>(i) - 1);
        const double r = norm(p);
        if (!(r > kEdgeLengthFloor)) {
            throw DegenerateEdge("edge " + std::to_string(i) + " has length " + std::to_string(r) +
                                 " (grid collapsed)");
        }
        g.edge_vectors[i] = p;
        g.lengths[i] = r;
        g.total_length += r;
    }

    // Curvature of edge i from the turning between its two neighbours.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const std::size_t next = (i + 1) % n;
        const Vec2& pp = g.edge_vectors[prev];
        const Vec2& pn = g.edge_vectors[next];
        // Same angle as arccos of the normalised dot product, without its
        // loss of accuracy for nearly parallel edges.
        const double turn = std::atan2(std::abs(cross(pp, pn)), dot(pp, pn));
        g.curvatures[i] = sign(cross(pp, pn)) * turn / (2.0 * g.lengths[i]);
    }

    const double first = raw_angle(g.edge_vectors[0], g.lengths[0]);
    g.angles[0] = first;
    for (std::size_t i = 1; i < n; ++i) {
        g.angles[i] = unwrap_angle(raw_angle(g.edge_vectors[i], g.lengths[i]), g.angles[i - 1]);
    }
    g.angle_after = unwrap_angle(first, g.angles[n - 1]);
    g.angle_before = g.angles[0] - (g.angle_after - g.angles[n - 1]);
    return g;
}

DualGeometry compute_dual_geometry(const PolygonalCurve& curve, const EdgeGeometry& edges) {
    const std::size_t n = curve.size();
    DualGeometry d;
    d.dual_vertices.resize(n);
    d.lengths.resize(n);
    d.curvatures.resize(n);
    d.angles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + 1) % n;
        d.dual_vertices[i] = (curve[i] + curve.wrapped(static_cast<std::ptrdiff_t>(i) - 1)) * 0.5;
        d.lengths[i] = 0.5 * (edges.lengths[i] + edges.lengths[next]);
        d.curvatures[i] = 0.5 * (edges.curvatures[i] + edges.curvatures[next]);
        // Angles are not periodic: the last dual angle uses the extension value.
        const double nu_next = next == 0 ? edges.angle_after : edges.angles[next];
        d.angles[i] = 0.5 * (edges.angles[i] + nu_next);
    }
    return d;
}

double curve_average(std::span<const double> values, const EdgeGeometry& edges) {
    double weighted = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        weighted += values[i] * edges.lengths[i];
    }
    return weighted / edges.total_length;
}

double total_turning(const EdgeGeometry& edges) { return edges.angle_after - edges.angles.front(); }

}  // namespace curvseg
