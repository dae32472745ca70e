#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "curvseg/vec2.hpp"

namespace curvseg {

/// Row-major 8-bit grayscale raster; row 0 is the top of the image.
class IntensityGrid {
public:
    IntensityGrid(int width, int height, std::uint8_t fill = 0);
    IntensityGrid(int width, int height, std::vector<std::uint8_t> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    std::uint8_t at(int row, int col) const { return samples_[index(row, col)]; }
    void set(int row, int col, std::uint8_t value) { samples_[index(row, col)] = value; }

    std::span<const std::uint8_t> samples() const noexcept { return samples_; }

    friend bool operator==(const IntensityGrid&, const IntensityGrid&) = default;

private:
    std::size_t index(int row, int col) const;

    int width_;
    int height_;
    std::vector<std::uint8_t> samples_;
};

/// Axis-aligned computational domain; the image is stretched over it.
struct Domain {
    Vec2 lo{-1.5, -1.5};
    Vec2 hi{1.5, 1.5};

    Vec2 clamp(const Vec2& p) const;
    bool contains(const Vec2& p) const;

    friend bool operator==(const Domain&, const Domain&) = default;
};

struct PixelIndex {
    int row;
    int col;
    friend bool operator==(const PixelIndex&, const PixelIndex&) = default;
};

/// Pixel containing p after clamping p into the domain.
PixelIndex pixel_of(const Domain& domain, int width, int height, const Vec2& p);

Vec2 pixel_center(const Domain& domain, int width, int height, PixelIndex px);

/// Scalar force sampled by the evolution; positive values push the curve inward.
using ForceFunction = std::function<double(const Vec2&)>;

enum class SamplingMode {
    kPixel,     // value of the containing pixel
    kBilinear,  // bilinear between pixel centres of the (optionally smoothed) force raster
};

/// How the evolution reads the force. The redistribution source term takes
/// second differences of F along the curve, which per-pixel steps turn into
/// noise of order (F_max - F_min) / r^2; the default smooths that away.
struct ForceSampling {
    SamplingMode mode = SamplingMode::kBilinear;
    double smoothing_px = 2.0;  // Gaussian sigma in pixels; 0 disables

    friend bool operator==(const ForceSampling&, const ForceSampling&) = default;
};

/// Affine intensity-to-force map: black (0) gives f_max, white (255) gives f_min.
class ForceField {
public:
    static constexpr double kDefaultMin = -100.0;
    static constexpr double kDefaultMax = 100.0;

    ForceField(IntensityGrid grid, double f_min = kDefaultMin, double f_max = kDefaultMax,
               Domain domain = {}, ForceSampling sampling = {});

    /// Piecewise constant per pixel, no interpolation.
    double at(const Vec2& x) const;

    /// Force as seen by the evolution, according to the sampling options.
    double sample(const Vec2& x) const;

    double from_intensity(std::uint8_t intensity) const;

    const IntensityGrid& grid() const noexcept { return grid_; }
    const Domain& domain() const noexcept { return domain_; }
    double f_min() const noexcept { return f_min_; }
    double f_max() const noexcept { return f_max_; }
    const ForceSampling& sampling() const noexcept { return sampling_; }

    /// Callable view over sample(); the field must outlive it.
    ForceFunction function() const;

private:
    double bilinear(const Vec2& x) const;

    IntensityGrid grid_;
    double f_min_;
    double f_max_;
    Domain domain_;
    ForceSampling sampling_;
    std::vector<double> raster_;  // per-pixel force, smoothed when requested
};

/// Separable Gaussian blur with clamp-to-edge borders; sigma in pixels.
std::vector<double> gaussian_smooth(std::span<const double> values, int width, int height,
                                    double sigma);

inline double force_at(const ForceField& field, const Vec2& x) { return field.at(x); }

/// Spatially constant force, used for exact-solution checks.
ForceFunction uniform_force(double value);

}  // namespace curvseg
