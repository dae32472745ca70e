#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "curvseg/curve_geometry.hpp"
#include "curvseg/evolution.hpp"
#include "curvseg/force_field.hpp"

namespace curvseg {

/// "i,x,y" header then one row per vertex, 15 significant digits.
std::string export_csv(const PolygonalCurve& curve);

/// Parses export_csv output. Throws IoError on malformed input.
std::vector<Vec2> parse_csv(std::string_view text);

/// One closed path in a viewBox covering the domain, y flipped so the top of
/// the domain is at the top of the drawing.
std::string export_svg(const PolygonalCurve& curve, const Domain& domain = {});

/// Copy of `grid` with the curve edges drawn at intensity 128, one pixel wide.
IntensityGrid render_overlay(const PolygonalCurve& curve, const IntensityGrid& grid,
                             const Domain& domain = {});

/// Single-line JSON object for the step log.
std::string diagnostics_json(const StepDiagnostics& d);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace curvseg
