#include "curvseg/export.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "curvseg/errors.hpp"

namespace curvseg {

namespace {

std::string format_number(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void draw_line(IntensityGrid& grid, PixelIndex a, PixelIndex b, std::uint8_t value) {
    int x0 = a.col;
    int y0 = a.row;
    const int dx = std::abs(b.col - x0);
    const int dy = -std::abs(b.row - y0);
    const int sx = x0 < b.col ? 1 : -1;
    const int sy = y0 < b.row ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        grid.set(y0, x0, value);
        if (x0 == b.col && y0 == b.row) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

}  // namespace

std::string export_csv(const PolygonalCurve& curve) {
    std::string out = "i,x,y\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out += std::to_string(i) + ',' + format_number(curve[i].x, 15) + ',' +
               format_number(curve[i].y, 15) + '\n';
    }
    return out;
}

std::vector<Vec2> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "i,x,y") {
        throw IoError("contour CSV must start with the header 'i,x,y'");
    }
    std::vector<Vec2> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t idx = 0;
        double x = 0.0;
        double y = 0.0;
        if (std::sscanf(line.c_str(), "%zu,%lf,%lf", &idx, &x, &y) != 3 || idx != pts.size()) {
            throw IoError("malformed contour CSV row: " + line);
        }
        pts.push_back({x, y});
    }
    return pts;
}

std::string export_svg(const PolygonalCurve& curve, const Domain& domain) {
    const double w = domain.hi.x - domain.lo.x;
    const double h = domain.hi.y - domain.lo.y;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(domain.lo.x, 10)
        << ' ' << format_number(-domain.hi.y, 10) << ' ' << format_number(w, 10) << ' '
        << format_number(h, 10) << "\" width=\"600\" height=\"" << format_number(600.0 * h / w, 10)
        << "\">\n"
        << "  <rect x=\"" << format_number(domain.lo.x, 10) << "\" y=\""
        << format_number(-domain.hi.y, 10) << "\" width=\"" << format_number(w, 10)
        << "\" height=\"" << format_number(h, 10) << "\" fill=\"white\"/>\n"
        << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << format_number(w / 600.0, 6)
        << "\" d=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << (i == 0 ? "M" : " L") << format_number(curve[i].x, 10) << ','
            << format_number(0.0 - curve[i].y, 10);
    }
    out << " Z\"/>\n</svg>\n";
    return out.str();
}

IntensityGrid render_overlay(const PolygonalCurve& curve, const IntensityGrid& grid,
                             const Domain& domain) {
    IntensityGrid out = grid;
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const PixelIndex a = pixel_of(domain, grid.width(), grid.height(),
                                      curve.wrapped(static_cast<std::ptrdiff_t>(i) - 1));
        const PixelIndex b = pixel_of(domain, grid.width(), grid.height(), curve[i]);
        draw_line(out, a, b, 128);
    }
    return out;
}

std::string diagnostics_json(const StepDiagnostics& d) {
    std::ostringstream out;
    out << "{\"step\":" << d.step << ",\"time\":" << format_number(d.time, 17)
        << ",\"tau\":" << format_number(d.tau, 17) << ",\"length\":" << format_number(d.length, 17)
        << ",\"r_min\":" << format_number(d.min_edge, 17)
        << ",\"alpha_max\":" << format_number(d.alpha_max, 17)
        << ",\"max_speed\":" << format_number(d.max_speed, 17)
        << ",\"alpha_mean\":" << format_number(d.alpha_mean, 17)
        << ",\"dominance_margin\":" << format_number(d.dominance_margin, 17) << '}';
    return out.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace curvseg
