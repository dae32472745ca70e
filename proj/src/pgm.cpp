#include "curvseg/pgm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "curvseg/errors.hpp"

namespace curvseg {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
        if (start == pos_) {
            throw MalformedHeader(std::string("expected ") + what + " in PGM header");
        }
        long value = 0;
        const auto [ptr, ec] = std::from_chars(bytes_.data() + start, bytes_.data() + pos_, value);
        if (ec != std::errc{}) {
            throw MalformedHeader(std::string(what) + " out of range in PGM header");
        }
        return value;
    }

    std::size_t& pos() { return pos_; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

IntensityGrid load_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw MalformedHeader("missing P2/P5 magic number");
    }
    const bool binary = bytes[1] == '5';
    HeaderReader hdr(bytes);
    hdr.pos() = 2;
    const long width = hdr.read_uint("width");
    const long height = hdr.read_uint("height");
    const long maxval = hdr.read_uint("maxval");
    if (width < 1 || height < 1 || width > (1L << 20) || height > (1L << 20)) {
        throw MalformedHeader("invalid image dimensions");
    }
    if (maxval < 1) {
        throw MalformedHeader("maxval must be positive");
    }
    if (maxval > 255) {
        throw UnsupportedMaxval("maxval " + std::to_string(maxval) + " exceeds 255");
    }

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> samples(count);
    auto rescale = [maxval](long v) {
        if (v > maxval) throw MalformedHeader("sample exceeds maxval");
        return static_cast<std::uint8_t>(maxval == 255 ? v : (v * 255 + maxval / 2) / maxval);
    };

    std::size_t& pos = hdr.pos();
    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
            throw MalformedHeader("missing whitespace after maxval");
        }
        ++pos;
        if (bytes.size() - pos < count) {
            throw TruncatedData("P5 raster has " + std::to_string(bytes.size() - pos) +
                                " bytes, expected " + std::to_string(count));
        }
        for (std::size_t i = 0; i < count; ++i) {
            samples[i] = rescale(static_cast<unsigned char>(bytes[pos + i]));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            hdr.skip_space_and_comments();
            if (pos >= bytes.size()) {
                throw TruncatedData("P2 raster ended after " + std::to_string(i) + " of " +
                                    std::to_string(count) + " samples");
            }
            samples[i] = rescale(hdr.read_uint("sample"));
        }
    }
    return IntensityGrid(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

IntensityGrid read_pgm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed for " + path.string());
    }
    return load_pgm(bytes);
}

std::string write_pgm(const IntensityGrid& grid, PgmFormat format) {
    std::ostringstream out;
    out << (format == PgmFormat::kBinary ? "P5" : "P2") << '\n'
        << grid.width() << ' ' << grid.height() << "\n255\n";
    const auto samples = grid.samples();
    if (format == PgmFormat::kBinary) {
        out.write(reinterpret_cast<const char*>(samples.data()),
                  static_cast<std::streamsize>(samples.size()));
    } else {
        const auto w = static_cast<std::size_t>(grid.width());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            out << static_cast<int>(samples[i]) << ((i + 1) % w == 0 ? '\n' : ' ');
        }
    }
    return out.str();
}

void write_pgm_file(const std::filesystem::path& path, const IntensityGrid& grid,
                    PgmFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    const std::string bytes = write_pgm(grid, format);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace curvseg
