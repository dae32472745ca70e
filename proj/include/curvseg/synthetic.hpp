#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "curvseg/force_field.hpp"

namespace curvseg {

struct DiskShape {
    Vec2 center{0.0, 0.0};
    double radius = 0.8;
    friend bool operator==(const DiskShape&, const DiskShape&) = default;
};

/// Axis-aligned rectangle with optionally rounded corners.
struct RectangleShape {
    Vec2 center{0.0, 0.0};
    double half_width = 0.8;
    double half_height = 0.8;
    double corner_radius = 0.0;
    friend bool operator==(const RectangleShape&, const RectangleShape&) = default;
};

/// Annulus with a slot of width `gap_width` cut out on the +x side.
struct CShape {
    Vec2 center{0.0, 0.0};
    double outer_radius = 1.0;
    double inner_radius = 0.5;
    double gap_width = 0.4;
    friend bool operator==(const CShape&, const CShape&) = default;
};

using ShapeSpec = std::variant<DiskShape, RectangleShape, CShape>;

/// Gray blobs scattered over the background.
struct SaltNoise {
    double density = 0.02;     // expected fraction of background pixels hit
    int amplitude = 128;       // blob intensity, 1..255
    double blob_radius_px = 2.0;
    friend bool operator==(const SaltNoise&, const SaltNoise&) = default;
};

struct SyntheticImage {
    ShapeSpec shape = DiskShape{};
    int width = 600;
    int height = 600;
    std::optional<SaltNoise> noise;
    friend bool operator==(const SyntheticImage&, const SyntheticImage&) = default;
};

bool shape_contains(const ShapeSpec& shape, const Vec2& p);

/// White (255) shape on black (0) background; a pixel is inside when its
/// centre is. Throws InvalidShapeParams.
IntensityGrid synthesize_bitmap(const ShapeSpec& shape, int width, int height,
                                const Domain& domain = {});

/// Overlays noise on background (zero) pixels only; deterministic in `seed`.
void add_salt_noise(IntensityGrid& grid, const SaltNoise& noise, std::uint64_t seed);

IntensityGrid synthesize(const SyntheticImage& image, std::uint64_t seed = 0,
                         const Domain& domain = {});

}  // namespace curvseg
