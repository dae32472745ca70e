#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "curvseg/evolution.hpp"
#include "curvseg/force_field.hpp"
#include "curvseg/synthetic.hpp"

namespace curvseg {

/// PGM path (as written in the config) or an inline synthetic image.
using ImageSource = std::variant<std::string, SyntheticImage>;

enum class OutputKind { kSvg, kCsv, kJsonLog, kOverlayPgm };

struct OutputSpec {
    OutputKind kind;
    std::string path;
    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct InitialCircle {
    Vec2 center{0.0, 0.0};
    double radius = 1.5;
    friend bool operator==(const InitialCircle&, const InitialCircle&) = default;
};

StoppingCriterion default_stop();

struct RunConfig {
    ImageSource image;
    double f_min = ForceField::kDefaultMin;
    double f_max = ForceField::kDefaultMax;
    std::size_t n_vertices = 250;
    double epsilon = 0.2;
    double omega = 50000.0;
    double lambda = kDefaultLambda;
    bool limit_relaxation_step = true;
    ForceSampling force_sampling;
    InitialCircle initial;
    StoppingCriterion stop = default_stop();
    std::vector<OutputSpec> outputs;
    std::vector<double> snapshot_times;

    EvolutionParams evolution_params() const;
    PolygonalCurve initial_curve() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a JSON run configuration, filling defaults.
/// Throws SchemaError (wrong shape, unknown or missing field) or RangeError
/// (value out of range); both name the field path.
RunConfig parse_config(std::string_view text);

/// Canonical JSON with every field spelled out.
std::string serialize_config(const RunConfig& config);

const char* to_string(OutputKind kind);

}  // namespace curvseg
