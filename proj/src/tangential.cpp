#include "curvseg/tangential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvseg/errors.hpp"

namespace curvseg {

void RedistributionParams::validate() const {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw InvalidParameter("epsilon must lie in [0, 1), got " + std::to_string(epsilon));
    }
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw InvalidParameter("omega must be non-negative, got " + std::to_string(omega));
    }
}

double phi(double k, const RedistributionParams& params) {
    const double e = params.epsilon;
    return 1.0 - e + e * std::sqrt(1.0 - e + e * k * k);
}

double phi_prime(double k, const RedistributionParams& params) {
    const double e = params.epsilon;
    if (e == 0.0) return 0.0;
    return e * e * k / std::sqrt(1.0 - e + e * k * k);
}

std::vector<double> compute_f(const EdgeGeometry& edges, const DualGeometry& duals,
                              std::span<const double> force_on_edges,
                              std::span<const double> force_on_dual,
                              const RedistributionParams& params) {
    const std::size_t n = edges.size();
    const auto& k = edges.curvatures;
    const auto& r = edges.lengths;
    const auto& rd = duals.lengths;
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t prev = (i + n - 1) % n;
        const std::size_t next = (i + 1) % n;
        const double second_diff = (k[next] - k[i]) / rd[i] - (k[i] - k[prev]) / rd[prev] +
                                   (force_on_edges[next] - force_on_edges[i]) / rd[i] -
                                   (force_on_edges[i] - force_on_edges[prev]) / rd[prev];
        f[i] = phi(k[i], params) * k[i] * (k[i] + force_on_dual[i]) -
               phi_prime(k[i], params) / r[i] * second_diff;
    }
    return f;
}

TangentialSolution solve_alpha(const EdgeGeometry& edges, const DualGeometry& duals,
                               std::span<const double> f_values,
                               const RedistributionParams& params) {
    const std::size_t n = edges.size();
    const auto& r = edges.lengths;
    const auto& rd = duals.lengths;
    const double total = edges.total_length;

    std::vector<double> phi_edge(n);
    std::vector<double> phi_dual(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi_edge[i] = phi(edges.curvatures[i], params);
        phi_dual[i] = phi(duals.curvatures[i], params);
        if (!(phi_dual[i] > kPhiFloor)) {
            throw SingularPhi("phi(k*) = " + std::to_string(phi_dual[i]) + " at vertex " +
                              std::to_string(i) + "; epsilon too close to 1");
        }
    }
    const double mean_phi = curve_average(phi_edge, edges);
    const double mean_f = curve_average(f_values, edges);
    const double target = total / static_cast<double>(n) * mean_phi;

    TangentialSolution sol;
    sol.f_values.assign(f_values.begin(), f_values.end());
    sol.psi.resize(n);
    sol.psi_prefix.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        sol.psi[i] = f_values[i] * r[i] - phi_edge[i] / mean_phi * mean_f * r[i] +
                     params.omega * (target - phi_edge[i] * r[i]);
    }
    for (std::size_t i = 1; i < n; ++i) {
        sol.psi_prefix[i] = sol.psi_prefix[i - 1] + sol.psi[i];
    }

    double numer = 0.0;
    double denom = rd[0] / phi_dual[0];
    for (std::size_t i = 1; i < n; ++i) {
        numer += rd[i] * sol.psi_prefix[i] / phi_dual[i];
        denom += rd[i] / phi_dual[i];
    }
    const double head = -numer / denom;  // phi(k*_0) alpha_0

    sol.alpha.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.alpha[i] = (head + sol.psi_prefix[i]) / phi_dual[i];
    }
    return sol;
}

double relative_local_length_error(const EdgeGeometry& edges, const RedistributionParams& params) {
    const std::size_t n = edges.size();
    std::vector<double> phi_edge(n);
    for (std::size_t i = 0; i < n; ++i) phi_edge[i] = phi(edges.curvatures[i], params);
    const double scale = static_cast<double>(n) / (edges.total_length * curve_average(phi_edge, edges));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(edges.lengths[i] * phi_edge[i] * scale - 1.0));
    }
    return worst;
}

}  // namespace curvseg
