#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "curvseg/errors.hpp"

namespace curvseg {

inline constexpr double kPivotFloor = 1e-300;

/// Solves the periodic tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]   (indices mod n)
/// by a Thomas sweep with a Sherman-Morrison rank-one correction for the two
/// corner entries lower[0] and upper[n-1]. T is double or any vector type
/// with + - and scalar *.
template <class T>
std::vector<T> solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                        std::span<const double> upper, std::span<const T> rhs) {
    const std::size_t n = diag.size();
    if (n < 3 || lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw InvalidParameter("cyclic tridiagonal system needs n >= 3 and matching sizes");
    }

    const double top_right = lower[0];
    const double bottom_left = upper[n - 1];
    const double gamma = diag[0] != 0.0 ? -diag[0] : 1.0;

    // T' = A - u v^T with u = (gamma, 0, ..., 0, bottom_left), v = (1, 0, ..., 0, top_right / gamma).
    std::vector<double> d(diag.begin(), diag.end());
    d[0] -= gamma;
    d[n - 1] -= bottom_left * top_right / gamma;

    std::vector<double> c(n);
    std::vector<T> y(n);
    std::vector<double> z(n);

    auto pivot_check = [](double p, std::size_t row) {
        if (!(std::abs(p) >= kPivotFloor)) {
            throw NumericalBreakdown("tridiagonal pivot " + std::to_string(p) + " at row " +
                                     std::to_string(row));
        }
    };

    pivot_check(d[0], 0);
    c[0] = upper[0] / d[0];
    y[0] = rhs[0] * (1.0 / d[0]);
    z[0] = gamma / d[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = d[i] - lower[i] * c[i - 1];
        pivot_check(m, i);
        const double inv = 1.0 / m;
        c[i] = upper[i] * inv;
        y[i] = (rhs[i] - y[i - 1] * lower[i]) * inv;
        const double u_i = i == n - 1 ? bottom_left : 0.0;
        z[i] = (u_i - lower[i] * z[i - 1]) * inv;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        y[i] = y[i] - y[i + 1] * c[i];
        z[i] -= c[i] * z[i + 1];
    }

    const double v_last = top_right / gamma;
    const double denom = 1.0 + z[0] + v_last * z[n - 1];
    pivot_check(denom, n);
    const T factor = (y[0] + y[n - 1] * v_last) * (1.0 / denom);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = y[i] - factor * z[i];
    }
    return y;
}

}  // namespace curvseg
