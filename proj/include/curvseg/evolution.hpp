#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "curvseg/curve_geometry.hpp"
#include "curvseg/force_field.hpp"
#include "curvseg/tangential.hpp"

namespace curvseg {

/// Diagonal-dominance safety factor of the adaptive time step.
inline constexpr double kDefaultLambda = 1.0;

struct TimeStep {
    double tau;
    double eta;
};

/// tau = 1 / (eta (1 + lambda)), eta = (4 / r_min) (1 / r_min + |alpha|_max / 2).
TimeStep adaptive_time_step(const EdgeGeometry& edges, std::span<const double> alpha, double lambda);

/// Row i of the position system reads
///   -a_i tau x_{i-1} + (1 + b_i tau) x_i - c_i tau x_{i+1} = rhs_i.
struct StepCoefficients {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    double tau = 0.0;

    /// Smallest (1 + b_i tau) - (|a_i| + |c_i|) tau over all rows.
    double dominance_margin() const;
};

struct PositionSystem {
    StepCoefficients coeffs;
    std::vector<Vec2> rhs;
};

/// Assembles the semi-implicit position system; `vertex_force[i]` is F at
/// vertex i. Throws DominanceViolation if any row is not strictly dominant.
PositionSystem assemble_position_system(const PolygonalCurve& curve, const EdgeGeometry& edges,
                                        const DualGeometry& duals, std::span<const double> alpha,
                                        std::span<const double> vertex_force, double tau);

/// Solves both coordinates of the assembled system against the same matrix.
std::vector<Vec2> solve_position_system(const StepCoefficients& coeffs, std::span<const Vec2> rhs);

struct StepDiagnostics {
    std::size_t step = 0;         // index of the step just taken (1-based)
    double time = 0.0;            // time after the step
    double tau = 0.0;
    double length = 0.0;          // L before the step
    double min_edge = 0.0;        // r_min before the step
    double alpha_max = 0.0;
    double max_speed = 0.0;       // max_i |x_i^{j+1} - x_i^j| / tau
    double alpha_mean = 0.0;      // |sum r*_i alpha_i|
    double dominance_margin = 0.0;
};

struct EvolutionState {
    PolygonalCurve curve;
    double time = 0.0;
    std::size_t step_index = 0;
    double last_tau = 0.0;

    explicit EvolutionState(PolygonalCurve c) : curve(std::move(c)) {}
};

struct EvolutionParams {
    RedistributionParams redistribution;
    double lambda = kDefaultLambda;
    /// Also cap tau at 1 / (omega (1 + lambda)). The omega relaxation enters
    /// the tangential velocity explicitly and oscillates once tau * omega > 2.
    bool limit_relaxation_step = true;

    void validate() const;
};

/// Step size actually taken: the adaptive tau, capped by the relaxation
/// limit when enabled.
double step_size(const TimeStep& adaptive, const EvolutionParams& params);

/// One step of the scheme: geometry, force sampling, tangential velocity,
/// step_size (further capped by max_tau), position solve.
StepDiagnostics step(EvolutionState& state, const ForceFunction& force, const EvolutionParams& params,
                     std::optional<double> max_tau = std::nullopt);

struct StationaryCriterion {
    double speed_tol = 0.5;
    std::size_t window = 10;
    friend bool operator==(const StationaryCriterion&, const StationaryCriterion&) = default;
};

/// Any combination; the first criterion satisfied ends the run.
struct StoppingCriterion {
    std::optional<double> fixed_time;
    std::optional<StationaryCriterion> stationary;
    std::optional<std::size_t> max_steps;

    void validate() const;
    friend bool operator==(const StoppingCriterion&, const StoppingCriterion&) = default;
};

enum class StopReason { kFixedTime, kStationary, kStepBudgetExceeded };

const char* to_string(StopReason reason);

struct RunResult {
    EvolutionState state;
    std::vector<StepDiagnostics> log;
    StopReason reason;
};

using StepObserver = std::function<void(const EvolutionState&, const StepDiagnostics&)>;

/// Iterates `step` until a stopping criterion fires. A fixed-time run shortens
/// its last step to land on t_end exactly.
RunResult run(PolygonalCurve initial, const ForceFunction& force, const EvolutionParams& params,
              const StoppingCriterion& stop, const StepObserver& observer = {});

}  // namespace curvseg
