#include "curvseg/force_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvseg/errors.hpp"

namespace curvseg {

IntensityGrid::IntensityGrid(int width, int height, std::uint8_t fill)
    : IntensityGrid(width, height,
                    std::vector<std::uint8_t>(
                        width > 0 && height > 0
                            ? static_cast<std::size_t>(width) * static_cast<std::size_t>(height)
                            : 0,
                        fill)) {}

IntensityGrid::IntensityGrid(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width_ < 1 || height_ < 1) {
        throw InvalidParameter("image dimensions must be positive, got " + std::to_string(width_) +
                               "x" + std::to_string(height_));
    }
    if (samples_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
        throw InvalidParameter("sample count does not match image dimensions");
    }
}

std::size_t IntensityGrid::index(int row, int col) const {
    if (row < 0 || row >= height_ || col < 0 || col >= width_) {
        throw std::out_of_range("pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                                ") outside " + std::to_string(width_) + "x" +
                                std::to_string(height_) + " image");
    }
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
}

Vec2 Domain::clamp(const Vec2& p) const {
    return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y)};
}

bool Domain::contains(const Vec2& p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
}

PixelIndex pixel_of(const Domain& domain, int width, int height, const Vec2& p) {
    const Vec2 q = domain.clamp(p);
    const double u = (q.x - domain.lo.x) / (domain.hi.x - domain.lo.x);
    const double v = (domain.hi.y - q.y) / (domain.hi.y - domain.lo.y);
    const int col = std::clamp(static_cast<int>(std::floor(u * width)), 0, width - 1);
    const int row = std::clamp(static_cast<int>(std::floor(v * height)), 0, height - 1);
    return {row, col};
}

Vec2 pixel_center(const Domain& domain, int width, int height, PixelIndex px) {
    const double dx = (domain.hi.x - domain.lo.x) / width;
    const double dy = (domain.hi.y - domain.lo.y) / height;
    return {domain.lo.x + (px.col + 0.5) * dx, domain.hi.y - (px.row + 0.5) * dy};
}

std::vector<double> gaussian_smooth(std::span<const double> values, int width, int height,
                                    double sigma) {
    std::vector<double> out(values.begin(), values.end());
    if (!(sigma > 0.0)) return out;
    const int reach = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * reach + 1);
    double total = 0.0;
    for (int i = -reach; i <= reach; ++i) {
        kernel[i + reach] = std::exp(-0.5 * i * i / (sigma * sigma));
        total += kernel[i + reach];
    }
    for (double& k : kernel) k /= total;

    const auto w = static_cast<std::size_t>(width);
    std::vector<double> tmp(values.size());
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            double acc = 0.0;
            for (int i = -reach; i <= reach; ++i) {
                acc += kernel[i + reach] * values[row * w + std::clamp(col + i, 0, width - 1)];
            }
            tmp[row * w + col] = acc;
        }
    }
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            double acc = 0.0;
            for (int i = -reach; i <= reach; ++i) {
                acc += kernel[i + reach] * tmp[std::clamp(row + i, 0, height - 1) * w + col];
            }
            out[row * w + col] = acc;
        }
    }
    return out;
}

ForceField::ForceField(IntensityGrid grid, double f_min, double f_max, Domain domain,
                       ForceSampling sampling)
    : grid_(std::move(grid)), f_min_(f_min), f_max_(f_max), domain_(domain), sampling_(sampling) {
    if (!(f_min_ < 0.0) || !(f_max_ > 0.0)) {
        throw InvalidParameter("force range must satisfy f_min < 0 < f_max");
    }
    if (!(domain_.hi.x > domain_.lo.x) || !(domain_.hi.y > domain_.lo.y)) {
        throw InvalidParameter("domain must have positive extent");
    }
    if (!(sampling_.smoothing_px >= 0.0) || !std::isfinite(sampling_.smoothing_px)) {
        throw InvalidParameter("smoothing sigma must be non-negative");
    }
    if (sampling_.mode == SamplingMode::kBilinear) {
        std::vector<double> forces(grid_.samples().size());
        for (std::size_t i = 0; i < forces.size(); ++i) {
            forces[i] = from_intensity(grid_.samples()[i]);
        }
        raster_ = gaussian_smooth(forces, grid_.width(), grid_.height(), sampling_.smoothing_px);
    }
}

double ForceField::from_intensity(std::uint8_t intensity) const {
    if (intensity == 0) return f_max_;
    if (intensity == 255) return f_min_;
    return f_max_ - (f_max_ - f_min_) * (static_cast<double>(intensity) / 255.0);
}

double ForceField::at(const Vec2& x) const {
    const PixelIndex px = pixel_of(domain_, grid_.width(), grid_.height(), x);
    return from_intensity(grid_.at(px.row, px.col));
}

double ForceField::bilinear(const Vec2& x) const {
    const int w = grid_.width();
    const int h = grid_.height();
    const Vec2 q = domain_.clamp(x);
    // Continuous pixel coordinates with centres at integers.
    const double u = std::clamp((q.x - domain_.lo.x) / (domain_.hi.x - domain_.lo.x) * w - 0.5,
                                0.0, w - 1.0);
    const double v = std::clamp((domain_.hi.y - q.y) / (domain_.hi.y - domain_.lo.y) * h - 0.5,
                                0.0, h - 1.0);
    const int c0 = std::min(static_cast<int>(u), std::max(w - 2, 0));
    const int r0 = std::min(static_cast<int>(v), std::max(h - 2, 0));
    const int c1 = std::min(c0 + 1, w - 1);
    const int r1 = std::min(r0 + 1, h - 1);
    const double fu = u - c0;
    const double fv = v - r0;
    auto value = [&](int row, int col) {
        return raster_[static_cast<std::size_t>(row) * static_cast<std::size_t>(w) +
                       static_cast<std::size_t>(col)];
    };
    const double f = (1.0 - fv) * ((1.0 - fu) * value(r0, c0) + fu * value(r0, c1)) +
                     fv * ((1.0 - fu) * value(r1, c0) + fu * value(r1, c1));
    // Kernel normalisation can overshoot the range by an ulp.
    return std::clamp(f, f_min_, f_max_);
}

double ForceField::sample(const Vec2& x) const {
    return sampling_.mode == SamplingMode::kPixel ? at(x) : bilinear(x);
}

ForceFunction ForceField::function() const {
    return [this](const Vec2& x) { return sample(x); };
}

ForceFunction uniform_force(double value) {
    return [value](const Vec2&) { return value; };
}

}  // namespace curvseg
