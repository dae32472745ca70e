#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "curvseg/errors.hpp"
#include "curvseg/force_field.hpp"
#include "curvseg/pgm.hpp"
#include "curvseg/synthetic.hpp"

using namespace curvseg;

namespace {

std::string p5(int w, int h, const std::vector<std::uint8_t>& payload, int maxval = 255) {
    std::string s = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
                    std::to_string(maxval) + "\n";
    s.append(payload.begin(), payload.end());
    return s;
}

ForceField pixel_field(IntensityGrid grid, double f_min = -100.0, double f_max = 100.0) {
    return ForceField(std::move(grid), f_min, f_max, {}, {SamplingMode::kPixel, 0.0});
}

}  // namespace

TEST_CASE("ascii pgm decodes row-major with row 0 first") {
    const IntensityGrid g = load_pgm("P2\n2 2\n255\n0 255 255 0\n");
    REQUIRE(g.width() == 2);
    REQUIRE(g.height() == 2);
    CHECK(g.at(0, 0) == 0);
    CHECK(g.at(0, 1) == 255);
    CHECK(g.at(1, 0) == 255);
    CHECK(g.at(1, 1) == 0);
    CHECK(load_pgm(p5(2, 2, {0, 255, 255, 0})) == g);
}

TEST_CASE("pgm header comments are skipped") {
    const IntensityGrid g = load_pgm("P2\n# made by hand\n3 1 # width height\n255\n# data\n1 2 3\n");
    CHECK(g == IntensityGrid(3, 1, std::vector<std::uint8_t>{1, 2, 3}));
}

TEST_CASE("600x600 black binary image") {
    const IntensityGrid g = load_pgm(p5(600, 600, std::vector<std::uint8_t>(600 * 600, 0)));
    CHECK(g.width() == 600);
    CHECK(g.height() == 600);
    for (std::uint8_t v : g.samples()) REQUIRE(v == 0);
}

TEST_CASE("pgm errors") {
    CHECK_THROWS_AS(load_pgm("P3\n1 1\n255\n0\n"), MalformedHeader);
    CHECK_THROWS_AS(load_pgm("P2\n2\n"), MalformedHeader);
    CHECK_THROWS_AS(load_pgm("P2\n1 1\n65535\n0\n"), UnsupportedMaxval);
    CHECK_THROWS_AS(load_pgm("P2\n2 2\n255\n0 1 2\n"), TruncatedData);
    CHECK_THROWS_AS(load_pgm(p5(4, 4, {1, 2, 3})), TruncatedData);
}

TEST_CASE("smaller maxval rescales to 0..255") {
    const IntensityGrid g = load_pgm("P2\n3 1\n15\n0 15 7\n");
    CHECK(g.at(0, 0) == 0);
    CHECK(g.at(0, 1) == 255);
    CHECK(g.at(0, 2) == 119);
}

TEST_CASE("pgm round trip preserves the payload") {
    std::mt19937_64 rng(5);
    std::vector<std::uint8_t> data(37 * 23);
    for (auto& v : data) v = static_cast<std::uint8_t>(rng() & 0xff);
    const IntensityGrid g(37, 23, data);
    for (PgmFormat fmt : {PgmFormat::kAscii, PgmFormat::kBinary}) {
        CHECK(load_pgm(write_pgm(g, fmt)) == g);
    }
}

TEST_CASE("intensity grid bounds") {
    IntensityGrid g(3, 2);
    CHECK_THROWS_AS(g.at(2, 0), std::out_of_range);
    CHECK_THROWS_AS(g.set(0, 3, 1), std::out_of_range);
    CHECK_THROWS_AS(IntensityGrid(0, 4), InvalidParameter);
}

TEST_CASE("intensity to force mapping") {
    const ForceField field = pixel_field(IntensityGrid(1, 1));
    CHECK(field.from_intensity(0) == 100.0);
    CHECK(field.from_intensity(255) == -100.0);
    CHECK(field.from_intensity(51) == doctest::Approx(60.0).epsilon(1e-14));

    const ForceField odd = pixel_field(IntensityGrid(1, 1), -30.0, 35.0);
    CHECK(odd.from_intensity(0) == 35.0);
    CHECK(odd.from_intensity(255) == -30.0);
    for (int i = 1; i < 256; ++i) {
        CHECK(odd.from_intensity(static_cast<std::uint8_t>(i)) <
              odd.from_intensity(static_cast<std::uint8_t>(i - 1)));
    }
    CHECK_THROWS_AS(ForceField(IntensityGrid(1, 1), 1.0, 5.0), InvalidParameter);
}

TEST_CASE("pixel mapping puts row 0 at the top and clamps outside points") {
    const Domain d;
    CHECK(pixel_of(d, 600, 600, {-1.5, 1.5}) == PixelIndex{0, 0});
    CHECK(pixel_of(d, 600, 600, {1.5, -1.5}) == PixelIndex{599, 599});
    CHECK(pixel_of(d, 600, 600, {10.0, -10.0}) == PixelIndex{599, 599});
    CHECK(pixel_of(d, 600, 600, {0.0, 0.0}) == PixelIndex{300, 300});
    const Vec2 c = pixel_center(d, 600, 600, {0, 0});
    CHECK(c.x == doctest::Approx(-1.4975));
    CHECK(c.y == doctest::Approx(1.4975));
}

TEST_CASE("points in the same pixel see identical force") {
    IntensityGrid g(4, 4);
    g.set(1, 2, 200);
    const ForceField field = pixel_field(g);
    const Vec2 centre = pixel_center(field.domain(), 4, 4, {1, 2});
    const double f = field.at(centre);
    CHECK(f == field.from_intensity(200));
    CHECK(field.at(centre + Vec2{0.3, 0.3}) == f);
    CHECK(field.at(centre - Vec2{0.3, 0.3}) == f);
    CHECK(field.sample(centre + Vec2{0.1, -0.2}) == f);
}

TEST_CASE("bilinear sampling interpolates between pixel centres") {
    IntensityGrid g(2, 1);
    g.set(0, 1, 255);
    const ForceField field(g, -100.0, 100.0, {}, {SamplingMode::kBilinear, 0.0});
    const Vec2 left = pixel_center(field.domain(), 2, 1, {0, 0});
    const Vec2 right = pixel_center(field.domain(), 2, 1, {0, 1});
    CHECK(field.sample(left) == doctest::Approx(100.0));
    CHECK(field.sample(right) == doctest::Approx(-100.0));
    CHECK(field.sample((left + right) * 0.5) == doctest::Approx(0.0));
    CHECK(field.sample({-1.5, 0.0}) == doctest::Approx(100.0));
}

TEST_CASE("gaussian smoothing preserves constants and mass") {
    const std::vector<double> flat(30 * 20, 7.5);
    for (double v : gaussian_smooth(flat, 30, 20, 2.0)) CHECK(v == doctest::Approx(7.5));

    std::vector<double> spike(31 * 31, 0.0);
    spike[15 * 31 + 15] = 1.0;
    const std::vector<double> out = gaussian_smooth(spike, 31, 31, 1.5);
    double total = 0.0;
    for (double v : out) total += v;
    CHECK(total == doctest::Approx(1.0));
    CHECK(out[15 * 31 + 15] < 1.0);
    CHECK(out[15 * 31 + 14] == doctest::Approx(out[15 * 31 + 16]));
    CHECK(out[14 * 31 + 15] == doctest::Approx(out[15 * 31 + 14]));
}

TEST_CASE("smoothed force stays within the force range") {
    const IntensityGrid g = synthesize_bitmap(DiskShape{}, 120, 120);
    const ForceField field(g);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double f = field.sample({u(rng), u(rng)});
        CHECK(f >= -100.0);
        CHECK(f <= 100.0);
    }
}

TEST_CASE("synthetic disk") {
    const IntensityGrid g = synthesize_bitmap(DiskShape{{0.0, 0.0}, 0.8}, 600, 600);
    const Domain d;
    const PixelIndex centre = pixel_of(d, 600, 600, {0.0, 0.0});
    CHECK(g.at(centre.row, centre.col) == 255);
    const PixelIndex corner = pixel_of(d, 600, 600, {1.4, 1.4});
    CHECK(g.at(corner.row, corner.col) == 0);

    std::size_t inside = 0;
    for (std::uint8_t v : g.samples()) inside += v == 255;
    const double fraction = static_cast<double>(inside) / (600.0 * 600.0);
    CHECK(std::abs(fraction - std::numbers::pi * 0.64 / 9.0) <= 0.002);
}

TEST_CASE("synthetic shapes") {
    const RectangleShape rounded{{0.0, 0.0}, 0.8, 0.8, 0.2};
    CHECK(shape_contains(rounded, {0.75, 0.0}));
    CHECK(shape_contains(rounded, {0.7, 0.7}));
    CHECK_FALSE(shape_contains(rounded, {0.79, 0.79}));
    CHECK(shape_contains(RectangleShape{}, {0.79, 0.79}));

    const CShape c{};
    CHECK(shape_contains(c, {-0.75, 0.0}));
    CHECK_FALSE(shape_contains(c, {0.75, 0.0}));
    CHECK_FALSE(shape_contains(c, {0.0, 0.0}));
    CHECK(shape_contains(c, {0.0, 0.75}));
}

TEST_CASE("invalid shape parameters") {
    CHECK_THROWS_AS(synthesize_bitmap(DiskShape{{0, 0}, -1.0}, 10, 10), InvalidShapeParams);
    CHECK_THROWS_AS(synthesize_bitmap(RectangleShape{{0, 0}, 0.5, 0.5, 0.6}, 10, 10), InvalidShapeParams);
    CHECK_THROWS_AS(synthesize_bitmap(CShape{{0, 0}, 0.5, 0.6, 0.1}, 10, 10), InvalidShapeParams);
    CHECK_THROWS_AS(synthesize_bitmap(DiskShape{}, 0, 10), InvalidShapeParams);
    IntensityGrid g(10, 10);
    CHECK_THROWS_AS(add_salt_noise(g, SaltNoise{1.5, 128, 2.0}, 1), InvalidShapeParams);
    CHECK_THROWS_AS(add_salt_noise(g, SaltNoise{0.1, 300, 2.0}, 1), InvalidShapeParams);
}

TEST_CASE("salt noise is deterministic and only touches background") {
    SyntheticImage spec;
    spec.width = 200;
    spec.height = 200;
    spec.noise = SaltNoise{0.1, 128, 3.0};
    const IntensityGrid a = synthesize(spec, 9);
    const IntensityGrid b = synthesize(spec, 9);
    CHECK(a == b);
    CHECK_FALSE(a == synthesize(spec, 10));

    const IntensityGrid clean = synthesize_bitmap(spec.shape, 200, 200);
    std::size_t noisy = 0;
    std::size_t background = 0;
    for (std::size_t i = 0; i < clean.samples().size(); ++i) {
        if (clean.samples()[i] == 255) {
            CHECK(a.samples()[i] == 255);
        } else {
            ++background;
            if (a.samples()[i] != 0) {
                CHECK(a.samples()[i] == 128);
                ++noisy;
            }
        }
    }
    const double coverage = static_cast<double>(noisy) / static_cast<double>(background);
    CHECK(coverage > 0.05);
    CHECK(coverage < 0.12);
}
