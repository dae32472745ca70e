#pragma once

#include <span>
#include <vector>

#include "curvseg/curve_geometry.hpp"

namespace curvseg {

/// Guard on divisions by phi(k*).
inline constexpr double kPhiFloor = 1e-14;

/// Controls the curvature-adjusted tangential redistribution.
/// epsilon = 0 gives asymptotically uniform spacing; larger epsilon
/// concentrates vertices where |k| is large. omega is the relaxation rate
/// towards the target spacing.
struct RedistributionParams {
    double epsilon = 0.0;
    double omega = 0.0;

    /// Throws InvalidParameter unless 0 <= epsilon < 1 and omega >= 0.
    void validate() const;

    friend bool operator==(const RedistributionParams&, const RedistributionParams&) = default;
};

/// Grid density weight 1 - eps + eps * sqrt(1 - eps + eps k^2).
double phi(double k, const RedistributionParams& params);
double phi_prime(double k, const RedistributionParams& params);

struct TangentialSolution {
    std::vector<double> alpha;        // per vertex
    std::vector<double> psi;          // per edge; psi[0] closes the cycle and is not summed
    std::vector<double> psi_prefix;   // psi_prefix[i] = psi[1] + ... + psi[i], psi_prefix[0] = 0
    std::vector<double> f_values;
};

/// Source term of the redistribution equation on each edge. `force_on_edges`
/// feeds the second-difference correction, `force_on_dual` the
/// phi(k) k (k + F) term.
std::vector<double> compute_f(const EdgeGeometry& edges, const DualGeometry& duals,
                              std::span<const double> force_on_edges,
                              std::span<const double> force_on_dual,
                              const RedistributionParams& params);

/// Tangential velocities from the prefix-sum recurrence, closed by the
/// zero weighted mean sum(r*_i alpha_i) = 0. Throws SingularPhi.
TangentialSolution solve_alpha(const EdgeGeometry& edges, const DualGeometry& duals,
                               std::span<const double> f_values,
                               const RedistributionParams& params);

/// Max over vertices of |N r_i phi(k_i) / (L <phi(k)>) - 1|; zero when the
/// grid has reached its redistribution target.
double relative_local_length_error(const EdgeGeometry& edges, const RedistributionParams& params);

}  // namespace curvseg
