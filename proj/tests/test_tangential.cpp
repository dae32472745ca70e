#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "curvseg/errors.hpp"
#include "curvseg/tangential.hpp"
#include "oracles.hpp"

using namespace curvseg;

namespace {

constexpr double kPi = std::numbers::pi;

struct Prepared {
    PolygonalCurve curve;
    EdgeGeometry edges;
    DualGeometry duals;
};

Prepared prepare(std::vector<Vec2> pts) {
    PolygonalCurve c(std::move(pts));
    EdgeGeometry e = compute_edge_geometry(c);
    DualGeometry d = compute_dual_geometry(c, e);
    return {std::move(c), std::move(e), std::move(d)};
}

std::vector<Vec2> points(const PolygonalCurve& c) { return {c.vertices().begin(), c.vertices().end()}; }

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> sample_duals(const DualGeometry& d, const std::function<double(const Vec2&)>& force) {
    std::vector<double> out;
    for (const Vec2& p : d.dual_vertices) out.push_back(force(p));
    return out;
}

}  // namespace

TEST_CASE("phi reference values") {
    const RedistributionParams uniform{0.0, 0.0};
    for (double k : {-5.0, 0.0, 0.3, 12.0}) {
        CHECK(phi(k, uniform) == 1.0);
        CHECK(phi_prime(k, uniform) == 0.0);
    }
    const RedistributionParams adjusted{0.2, 0.0};
    CHECK(std::abs(phi(0.0, adjusted) - (0.8 + 0.2 * std::sqrt(0.8))) < 1e-15);
    CHECK(std::abs(phi(0.0, adjusted) - 0.9789) < 1e-4);
    CHECK(phi(3.0, adjusted) == phi(-3.0, adjusted));
    CHECK(phi_prime(3.0, adjusted) == -phi_prime(-3.0, adjusted));

    // phi' against a central difference.
    const double h = 1e-6;
    for (double k : {-2.0, 0.5, 7.0}) {
        const double fd = (phi(k + h, adjusted) - phi(k - h, adjusted)) / (2.0 * h);
        CHECK(std::abs(phi_prime(k, adjusted) - fd) < 1e-8);
    }
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW((RedistributionParams{0.0, 0.0}.validate()));
    CHECK_THROWS_AS((RedistributionParams{1.0, 0.0}.validate()), InvalidParameter);
    CHECK_THROWS_AS((RedistributionParams{-0.1, 0.0}.validate()), InvalidParameter);
    CHECK_THROWS_AS((RedistributionParams{0.2, -1.0}.validate()), InvalidParameter);
}

TEST_CASE("f collapses to k^2 without redistribution weight or force") {
    std::mt19937_64 rng(3);
    const Prepared p = prepare(oracle::perturbed_polygon(10, 0.2, 0.1, rng));
    const std::vector<double> zero(10, 0.0);
    const std::vector<double> f = compute_f(p.edges, p.duals, zero, zero, {0.0, 0.0});
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(std::abs(f[i] - p.edges.curvatures[i] * p.edges.curvatures[i]) < 1e-14);
    }
}

TEST_CASE("f on the regular hexagon") {
    const Prepared p = prepare(points(PolygonalCurve::circle({0, 0}, 1.0, 6)));
    const RedistributionParams params{0.2, 0.0};
    const std::vector<double> zero(6, 0.0);
    const std::vector<double> f = compute_f(p.edges, p.duals, zero, zero, params);
    const double k = kPi / 3.0;
    for (double v : f) CHECK(std::abs(v - phi(k, params) * k * k) < 1e-12);
}

TEST_CASE("f matches a direct re-evaluation from the vertices") {
    std::vector<Vec2> pts = points(PolygonalCurve::circle({0, 0}, 1.0, 8));
    pts[3] = pts[3] * 1.15 + Vec2{0.02, -0.05};
    const Prepared p = prepare(pts);

    auto zero_force = [](const Vec2&) { return 0.0; };
    auto wavy_force = [](const Vec2& x) { return 3.0 * std::sin(2.0 * x.x) + x.y * x.y - 1.0; };
    for (const auto& force : {std::function<double(const Vec2&)>(zero_force),
                              std::function<double(const Vec2&)>(wavy_force)}) {
        for (double eps : {0.1, 0.6}) {
            const RedistributionParams params{eps, 0.0};
            const std::vector<double> fd = sample_duals(p.duals, force);
            const std::vector<double> f = compute_f(p.edges, p.duals, fd, fd, params);
            const std::vector<double> ref = oracle::brute_force_f(pts, force, params);
            for (std::size_t i = 0; i < 8; ++i) {
                CHECK(std::abs(f[i] - ref[i]) <= 1e-10 * (1.0 + std::abs(ref[i])));
            }
        }
    }
}

TEST_CASE("regular polygons need no tangential motion") {
    for (std::size_t n : {6u, 17u, 64u}) {
        const Prepared p = prepare(points(PolygonalCurve::circle({0.3, -0.2}, 0.7, n)));
        const std::vector<double> zero(n, 0.0);
        for (double eps : {0.0, 0.2, 0.5}) {
            for (double omega : {0.0, 10.0, 50000.0}) {
                const RedistributionParams params{eps, omega};
                const std::vector<double> f = compute_f(p.edges, p.duals, zero, zero, params);
                const TangentialSolution sol = solve_alpha(p.edges, p.duals, f, params);
                CHECK(max_abs(sol.alpha) < 1e-9 * (1.0 + omega));
            }
        }
    }
}

TEST_CASE("alpha satisfies the recurrence and the weighted mean constraint") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 6 + trial % 30;
        const Prepared p = prepare(oracle::perturbed_polygon(n, 0.25, 0.2, rng));
        const RedistributionParams params{0.05 * (trial % 10), trial % 3 == 0 ? 0.0 : 100.0 * trial};
        auto force = [](const Vec2& x) { return 5.0 * x.x - 2.0 * x.y; };
        const std::vector<double> fd = sample_duals(p.duals, force);
        const std::vector<double> f = compute_f(p.edges, p.duals, fd, fd, params);
        const TangentialSolution sol = solve_alpha(p.edges, p.duals, f, params);

        const double psi_max = max_abs(sol.psi);
        for (std::size_t i = 1; i < n; ++i) {
            const double lhs = phi(p.duals.curvatures[i], params) * sol.alpha[i] -
                               phi(p.duals.curvatures[i - 1], params) * sol.alpha[i - 1];
            CHECK(std::abs(lhs - sol.psi[i]) <= 1e-10 * (1.0 + psi_max));
        }
        double weighted = 0.0;
        for (std::size_t i = 0; i < n; ++i) weighted += p.duals.lengths[i] * sol.alpha[i];
        CHECK(std::abs(weighted) <= 1e-10 * p.edges.total_length * (1.0 + max_abs(sol.alpha)));

        // psi sums to zero over the cycle, so the wrap-around row closes as well.
        double total = 0.0;
        for (double v : sol.psi) total += v;
        CHECK(std::abs(total) <= 1e-10 * (1.0 + psi_max) * static_cast<double>(n));
        const double wrap = phi(p.duals.curvatures[0], params) * sol.alpha[0] -
                            phi(p.duals.curvatures[n - 1], params) * sol.alpha[n - 1];
        CHECK(std::abs(wrap - sol.psi[0]) <= 1e-9 * (1.0 + psi_max));
    }
}

TEST_CASE("alpha agrees with the dense least-squares solve") {
    std::mt19937_64 rng(23);
    const Prepared p = prepare(oracle::perturbed_polygon(6, 0.3, 0.2, rng));
    const RedistributionParams params{0.2, 10.0};
    const std::vector<double> zero(6, 0.0);
    const std::vector<double> f = compute_f(p.edges, p.duals, zero, zero, params);
    const TangentialSolution sol = solve_alpha(p.edges, p.duals, f, params);
    const std::vector<double> ref = oracle::dense_alpha(p.edges, p.duals, f, params);
    const double scale = std::max(1.0, max_abs(ref));
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(sol.alpha[i] - ref[i]) <= 1e-9 * scale);
}

TEST_CASE("epsilon zero reduces to uniform redistribution") {
    std::mt19937_64 rng(29);
    const std::size_t n = 20;
    const Prepared p = prepare(oracle::perturbed_polygon(n, 0.3, 0.1, rng));
    const RedistributionParams params{0.0, 40.0};
    const std::vector<double> zero(n, 0.0);
    const std::vector<double> f = compute_f(p.edges, p.duals, zero, zero, params);
    const TangentialSolution sol = solve_alpha(p.edges, p.duals, f, params);

    // With phi = 1: psi_i = k_i^2 r_i - <k^2> r_i + omega (L/N - r_i), alpha_i = alpha_0 + sum psi.
    const auto& r = p.edges.lengths;
    const auto& k = p.edges.curvatures;
    const double big_l = p.edges.total_length;
    double mean_k2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean_k2 += k[i] * k[i] * r[i] / big_l;
    std::vector<double> alpha(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        alpha[i] = alpha[i - 1] + k[i] * k[i] * r[i] - mean_k2 * r[i] + 40.0 * (big_l / n - r[i]);
    }
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) shift += p.duals.lengths[i] * alpha[i];
    shift /= big_l;
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sol.alpha[i] - (alpha[i] - shift)) <= 1e-12 * (1.0 + max_abs(alpha)));
}

TEST_CASE("relative local length error") {
    const EdgeGeometry hex = compute_edge_geometry(PolygonalCurve::circle({0, 0}, 1.0, 6));
    CHECK(relative_local_length_error(hex, {0.2, 0.0}) < 1e-14);
    const PolygonalCurve rect({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}});
    const PolygonalCurve stretched({{0, 0}, {1, 0}, {3, 0}, {3, 1}, {1, 1}, {0, 1}});
    CHECK(relative_local_length_error(compute_edge_geometry(rect), {0.0, 0.0}) < 1e-14);
    const double e = relative_local_length_error(compute_edge_geometry(stretched), {0.0, 0.0});
    CHECK(std::abs(e - (6.0 * 2.0 / 8.0 - 1.0)) < 1e-12);
}
