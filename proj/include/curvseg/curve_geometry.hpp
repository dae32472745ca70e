#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "curvseg/vec2.hpp"

namespace curvseg {

/// Edges no longer than this are treated as a collapsed grid.
inline constexpr double kEdgeLengthFloor = 1e-12;

/// Closed N-sided polygon. Vertex indices wrap modulo N; edge i joins
/// vertex i-1 to vertex i, so vertex i sits between edges i and i+1.
class PolygonalCurve {
public:
    static constexpr std::size_t kMinVertices = 4;

    explicit PolygonalCurve(std::vector<Vec2> vertices);

    /// Counterclockwise circle sampled at n equally spaced angles, starting at angle 0.
    static PolygonalCurve circle(Vec2 center, double radius, std::size_t n);

    std::size_t size() const noexcept { return vertices_.size(); }
    std::span<const Vec2> vertices() const noexcept { return vertices_; }
    const Vec2& operator[](std::size_t i) const noexcept { return vertices_[i]; }

    /// Periodic access, valid for any signed index.
    const Vec2& wrapped(std::ptrdiff_t i) const noexcept;

private:
    std::vector<Vec2> vertices_;
};

/// Per-edge quantities living on the finite volumes.
struct EdgeGeometry {
    std::vector<Vec2> edge_vectors;  // p_i = x_i - x_{i-1}
    std::vector<double> lengths;     // r_i
    std::vector<double> curvatures;  // k_i, positive on convex ccw curves
    std::vector<double> angles;      // unwrapped tangent angles nu_i
    double angle_before = 0.0;       // extension value preceding angles[0]
    double angle_after = 0.0;        // extension value following angles[N-1]
    double total_length = 0.0;

    std::size_t size() const noexcept { return lengths.size(); }
    double min_length() const;
};

/// Quantities on the dual volumes centred at the vertices. Entry i averages
/// edges i and i+1, except dual_vertices[i], which is the midpoint of edge i.
struct DualGeometry {
    std::vector<Vec2> dual_vertices;
    std::vector<double> lengths;
    std::vector<double> curvatures;
    std::vector<double> angles;
};

/// Throws DegenerateEdge when an edge is not longer than kEdgeLengthFloor.
EdgeGeometry compute_edge_geometry(const PolygonalCurve& curve);

DualGeometry compute_dual_geometry(const PolygonalCurve& curve, const EdgeGeometry& edges);

/// Length-weighted mean sum(F_l r_l) / L of a per-edge quantity.
double curve_average(std::span<const double> values, const EdgeGeometry& edges);

/// nu_{N+1} - nu_1; 2*pi for a simple counterclockwise curve.
double total_turning(const EdgeGeometry& edges);

/// Unwraps `angle` against `previous` by trying the +-2*pi shifts; the
/// unshifted value wins ties.
double unwrap_angle(double angle, double previous);

}  // namespace curvseg
