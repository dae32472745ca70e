#include "curvseg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "curvseg/errors.hpp"

namespace curvseg {

namespace {

bool finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

void validate(const DiskShape& s) {
    if (!finite(s.center) || !(s.radius > 0.0)) {
        throw InvalidShapeParams("disk needs a finite center and positive radius");
    }
}

void validate(const RectangleShape& s) {
    if (!finite(s.center) || !(s.half_width > 0.0) || !(s.half_height > 0.0)) {
        throw InvalidShapeParams("rectangle needs a finite center and positive half extents");
    }
    if (!(s.corner_radius >= 0.0) || s.corner_radius > std::min(s.half_width, s.half_height)) {
        throw InvalidShapeParams("rectangle corner radius must lie in [0, min half extent]");
    }
}

void validate(const CShape& s) {
    if (!finite(s.center) || !(s.inner_radius >= 0.0) || !(s.outer_radius > s.inner_radius)) {
        throw InvalidShapeParams("c-shape needs 0 <= inner radius < outer radius");
    }
    if (!(s.gap_width >= 0.0) || s.gap_width >= 2.0 * s.outer_radius) {
        throw InvalidShapeParams("c-shape gap width must lie in [0, 2 * outer radius)");
    }
}

bool contains(const DiskShape& s, const Vec2& p) { return norm(p - s.center) <= s.radius; }

bool contains(const RectangleShape& s, const Vec2& p) {
    const double dx = std::abs(p.x - s.center.x);
    const double dy = std::abs(p.y - s.center.y);
    if (dx > s.half_width || dy > s.half_height) return false;
    const double cx = s.half_width - s.corner_radius;
    const double cy = s.half_height - s.corner_radius;
    if (dx > cx && dy > cy) {
        return std::hypot(dx - cx, dy - cy) <= s.corner_radius;
    }
    return true;
}

bool contains(const CShape& s, const Vec2& p) {
    const Vec2 d = p - s.center;
    const double r = norm(d);
    if (r < s.inner_radius || r > s.outer_radius) return false;
    return !(d.x > 0.0 && std::abs(d.y) < 0.5 * s.gap_width);
}

}  // namespace

bool shape_contains(const ShapeSpec& shape, const Vec2& p) {
    return std::visit([&p](const auto& s) { return contains(s, p); }, shape);
}

IntensityGrid synthesize_bitmap(const ShapeSpec& shape, int width, int height,
                                const Domain& domain) {
    if (width < 1 || height < 1) {
        throw InvalidShapeParams("bitmap dimensions must be positive");
    }
    std::visit([](const auto& s) { validate(s); }, shape);
    IntensityGrid grid(width, height);
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            if (shape_contains(shape, pixel_center(domain, width, height, {row, col}))) {
                grid.set(row, col, 255);
            }
        }
    }
    return grid;
}

void add_salt_noise(IntensityGrid& grid, const SaltNoise& noise, std::uint64_t seed) {
    if (!(noise.density >= 0.0 && noise.density <= 1.0)) {
        throw InvalidShapeParams("noise density must lie in [0, 1]");
    }
    if (noise.amplitude < 1 || noise.amplitude > 255) {
        throw InvalidShapeParams("noise amplitude must lie in [1, 255]");
    }
    if (!(noise.blob_radius_px >= 0.5)) {
        throw InvalidShapeParams("noise blob radius must be at least half a pixel");
    }
    const double blob_area = std::numbers::pi * noise.blob_radius_px * noise.blob_radius_px;
    const double pixels = static_cast<double>(grid.width()) * grid.height();
    const auto blobs = static_cast<long>(std::llround(noise.density * pixels / blob_area));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, grid.width());
    std::uniform_real_distribution<double> uy(0.0, grid.height());
    const auto value = static_cast<std::uint8_t>(noise.amplitude);
    const int reach = static_cast<int>(std::ceil(noise.blob_radius_px));

    for (long b = 0; b < blobs; ++b) {
        const double cx = ux(rng);
        const double cy = uy(rng);
        const int c0 = static_cast<int>(cx);
        const int r0 = static_cast<int>(cy);
        for (int row = std::max(0, r0 - reach); row <= std::min(grid.height() - 1, r0 + reach); ++row) {
            for (int col = std::max(0, c0 - reach); col <= std::min(grid.width() - 1, c0 + reach); ++col) {
                if (std::hypot(col + 0.5 - cx, row + 0.5 - cy) <= noise.blob_radius_px &&
                    grid.at(row, col) == 0) {
                    grid.set(row, col, value);
                }
            }
        }
    }
}

IntensityGrid synthesize(const SyntheticImage& image, std::uint64_t seed, const Domain& domain) {
    IntensityGrid grid = synthesize_bitmap(image.shape, image.width, image.height, domain);
    if (image.noise) {
        add_salt_noise(grid, *image.noise, seed);
    }
    return grid;
}

}  // namespace curvseg
