#include "curvseg/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "curvseg/errors.hpp"
#include "curvseg/tridiagonal.hpp"

namespace curvseg {

TimeStep adaptive_time_step(const EdgeGeometry& edges, std::span<const double> alpha, double lambda) {
    const double r_min = edges.min_length();
    double alpha_max = 0.0;
    for (double a : alpha) alpha_max = std::max(alpha_max, std::abs(a));
    const double eta = 4.0 / r_min * (1.0 / r_min + 0.5 * alpha_max);
    return {1.0 / (eta * (1.0 + lambda)), eta};
}

double StepCoefficients::dominance_margin() const {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < b.size(); ++i) {
        margin = std::min(margin, (1.0 + b[i] * tau) - (std::abs(a[i]) + std::abs(c[i])) * tau);
    }
    return margin;
}

PositionSystem assemble_position_system(const PolygonalCurve& curve, const EdgeGeometry& edges,
                                        const DualGeometry& duals, std::span<const double> alpha,
                                        std::span<const double> vertex_force, double tau) {
    const std::size_t n = curve.size();
    PositionSystem sys;
    auto& co = sys.coeffs;
    co.a.resize(n);
    co.b.resize(n);
    co.c.resize(n);
    co.tau = tau;
    sys.rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + 1) % n;
        // Vertex i sits between edge i (towards x_{i-1}) and edge i+1 (towards x_{i+1}).
        const double inv_dual = 1.0 / duals.lengths[i];
        co.a[i] = inv_dual * (1.0 / edges.lengths[i] - 0.5 * alpha[i]);
        co.c[i] = inv_dual * (1.0 / edges.lengths[next] + 0.5 * alpha[i]);
        co.b[i] = co.a[i] + co.c[i];

        const double nu = duals.angles[i];
        const Vec2 normal{-std::sin(nu), std::cos(nu)};
        sys.rhs[i] = curve[i] + vertex_force[i] * tau * normal;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double diag = 1.0 + co.b[i] * tau;
        const double off = (std::abs(co.a[i]) + std::abs(co.c[i])) * tau;
        if (!(diag > off)) {
            throw DominanceViolation("row " + std::to_string(i) + " not diagonally dominant (" +
                                     std::to_string(diag) + " <= " + std::to_string(off) + ")");
        }
    }
    return sys;
}

std::vector<Vec2> solve_position_system(const StepCoefficients& coeffs, std::span<const Vec2> rhs) {
    const std::size_t n = coeffs.b.size();
    std::vector<double> lower(n);
    std::vector<double> diag(n);
    std::vector<double> upper(n);
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = -coeffs.a[i] * coeffs.tau;
        diag[i] = 1.0 + coeffs.b[i] * coeffs.tau;
        upper[i] = -coeffs.c[i] * coeffs.tau;
    }
    return solve_cyclic_tridiagonal<Vec2>(lower, diag, upper, rhs);
}

void EvolutionParams::validate() const {
    redistribution.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidParameter("lambda must be positive, got " + std::to_string(lambda));
    }
}

double step_size(const TimeStep& adaptive, const EvolutionParams& params) {
    const double omega = params.redistribution.omega;
    if (params.limit_relaxation_step && omega > 0.0) {
        return std::min(adaptive.tau, 1.0 / (omega * (1.0 + params.lambda)));
    }
    return adaptive.tau;
}

StepDiagnostics step(EvolutionState& state, const ForceFunction& force, const EvolutionParams& params,
                     std::optional<double> max_tau) {
    const PolygonalCurve& curve = state.curve;
    const std::size_t n = curve.size();
    const EdgeGeometry edges = compute_edge_geometry(curve);
    const DualGeometry duals = compute_dual_geometry(curve, edges);

    std::vector<double> dual_force(n);
    std::vector<double> vertex_force(n);
    for (std::size_t i = 0; i < n; ++i) {
        dual_force[i] = force(duals.dual_vertices[i]);
        vertex_force[i] = force(curve[i]);
    }

    const std::vector<double> f =
        compute_f(edges, duals, dual_force, dual_force, params.redistribution);
    const TangentialSolution tangential = solve_alpha(edges, duals, f, params.redistribution);

    double tau = step_size(adaptive_time_step(edges, tangential.alpha, params.lambda), params);
    if (max_tau && *max_tau < tau) tau = *max_tau;

    const PositionSystem sys =
        assemble_position_system(curve, edges, duals, tangential.alpha, vertex_force, tau);
    std::vector<Vec2> next = solve_position_system(sys.coeffs, sys.rhs);

    StepDiagnostics diag;
    diag.tau = tau;
    diag.length = edges.total_length;
    diag.min_edge = edges.min_length();
    diag.dominance_margin = sys.coeffs.dominance_margin();
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag.alpha_max = std::max(diag.alpha_max, std::abs(tangential.alpha[i]));
        diag.max_speed = std::max(diag.max_speed, norm(next[i] - curve[i]) / tau);
        weighted += duals.lengths[i] * tangential.alpha[i];
    }
    diag.alpha_mean = std::abs(weighted);

    state.curve = PolygonalCurve(std::move(next));
    state.time += tau;
    state.last_tau = tau;
    ++state.step_index;
    diag.step = state.step_index;
    diag.time = state.time;
    return diag;
}

void StoppingCriterion::validate() const {
    if (!fixed_time && !stationary && !max_steps) {
        throw InvalidParameter("stopping criterion needs at least one of fixed_time, stationary, max_steps");
    }
    if (fixed_time && !(*fixed_time > 0.0)) {
        throw InvalidParameter("fixed_time must be positive");
    }
    if (stationary && (!(stationary->speed_tol > 0.0) || stationary->window < 1)) {
        throw InvalidParameter("stationary criterion needs speed_tol > 0 and window >= 1");
    }
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::kFixedTime: return "fixed_time";
        case StopReason::kStationary: return "stationary";
        case StopReason::kStepBudgetExceeded: return "step_budget_exceeded";
    }
    return "unknown";
}

RunResult run(PolygonalCurve initial, const ForceFunction& force, const EvolutionParams& params,
              const StoppingCriterion& stop, const StepObserver& observer) {
    params.validate();
    stop.validate();

    RunResult result{EvolutionState(std::move(initial)), {}, StopReason::kStepBudgetExceeded};
    EvolutionState& state = result.state;
    std::size_t quiet_steps = 0;
    for (;;) {
        if (stop.fixed_time && state.time >= *stop.fixed_time) {
            result.reason = StopReason::kFixedTime;
            break;
        }
        if (stop.stationary && quiet_steps >= stop.stationary->window) {
            result.reason = StopReason::kStationary;
            break;
        }
        if (stop.max_steps && state.step_index >= *stop.max_steps) {
            result.reason = StopReason::kStepBudgetExceeded;
            break;
        }

        std::optional<double> cap;
        if (stop.fixed_time) cap = *stop.fixed_time - state.time;
        const StepDiagnostics d = step(state, force, params, cap);
        if (stop.fixed_time && cap && d.tau == *cap) {
            state.time = *stop.fixed_time;  // absorb rounding of t + (t_end - t)
        }
        quiet_steps = stop.stationary && d.max_speed < stop.stationary->speed_tol ? quiet_steps + 1 : 0;
        result.log.push_back(d);
        result.log.back().time = state.time;
        if (observer) observer(state, result.log.back());
    }
    return result;
}

}  // namespace curvseg
