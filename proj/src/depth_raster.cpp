#include "gazetrace/depth_raster.hpp"

#include <bit>
#include <cmath>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "gazetrace/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "raster I/O assumes a little-endian host");

namespace gazetrace {

double DepthRaster::valid_fraction() const {
    if (values.empty()) return 0.0;
    std::size_t valid = 0;
    for (float v : values) {
        if (!std::isnan(v)) ++valid;
    }
    return static_cast<double>(valid) / static_cast<double>(values.size());
}

DepthRaster read_depth_raster(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("raster: cannot open " + path.string());
    std::string header;
    if (!std::getline(in, header)) {
        throw DataError("raster: missing header in " + path.string());
    }
    int w = 0, h = 0;
    {
        std::string magic;
        std::size_t pos = header.find(' ');
        magic = header.substr(0, pos);
        if (magic != "DRASTER" || pos == std::string::npos) {
            throw DataError("raster: bad magic in " + path.string());
        }
        const char* p = header.c_str() + pos + 1;
        const char* end = header.c_str() + header.size();
        auto r1 = std::from_chars(p, end, w);
        if (r1.ec != std::errc() || r1.ptr >= end || *r1.ptr != ' ') {
            throw DataError("raster: bad header in " + path.string());
        }
        auto r2 = std::from_chars(r1.ptr + 1, end, h);
        if (r2.ec != std::errc() || r2.ptr != end) {
            throw DataError("raster: bad header in " + path.string());
        }
    }
    if (w <= 0 || h <= 0) throw DataError("raster: non-positive size in " + path.string());

    DepthRaster raster;
    raster.width = w;
    raster.height = h;
    raster.values.resize(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(raster.values.data()),
            static_cast<std::streamsize>(raster.values.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(raster.values.size() * sizeof(float))) {
        throw DataError("raster: truncated payload in " + path.string());
    }
    return raster;
}

void write_depth_raster(const std::filesystem::path& path, const DepthRaster& raster) {
    if (raster.width <= 0 || raster.height <= 0 ||
        raster.values.size() != static_cast<std::size_t>(raster.width) * raster.height) {
        throw DataError("raster: inconsistent dimensions on write");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("raster: cannot write " + path.string());
    out << "DRASTER " << raster.width << ' ' << raster.height << '\n';
    out.write(reinterpret_cast<const char*>(raster.values.data()),
              static_cast<std::streamsize>(raster.values.size() * sizeof(float)));
    if (!out) throw DataError("raster: write failed for " + path.string());
}

namespace {

float parse_depth_value(std::string_view s) {
    if (s == "nan") return std::numeric_limits<float>::quiet_NaN();
    float v = 0.0f;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        throw DataError("raster: bad inline value '" + std::string(s) + "'");
    }
    return v;
}

long parse_int(std::string_view s) {
    long v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        throw DataError("raster: bad inline integer '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

}  // namespace

DepthRaster expand_inline_raster(std::string_view marker) {
    if (!is_inline_depth_ref(marker)) {
        throw DataError("raster: not an inline marker");
    }
    std::string_view body = marker.substr(7);
    const std::size_t colon = body.find(':');
    if (colon == std::string_view::npos) {
        throw DataError("raster: inline marker missing size");
    }
    const std::string_view size = body.substr(0, colon);
    const std::size_t x = size.find('x');
    if (x == std::string_view::npos) throw DataError("raster: inline size must be WxH");
    const long w = parse_int(size.substr(0, x));
    const long h = parse_int(size.substr(x + 1));
    if (w <= 0 || h <= 0 || w * h > 64L * 1024 * 1024) {
        throw DataError("raster: inline size out of range");
    }

    DepthRaster raster;
    raster.width = static_cast<int>(w);
    raster.height = static_cast<int>(h);
    raster.values.assign(static_cast<std::size_t>(w) * h,
                         std::numeric_limits<float>::quiet_NaN());

    for (std::string_view entry : split(body.substr(colon + 1), ';')) {
        if (entry.empty()) continue;
        const std::size_t eq = entry.find('=');
        if (eq == std::string_view::npos) {
            throw DataError("raster: inline entry missing '='");
        }
        const std::string_view key = entry.substr(0, eq);
        const std::string_view val = entry.substr(eq + 1);
        if (key == "full") {
            const float v = parse_depth_value(val);
            std::fill(raster.values.begin(), raster.values.end(), v);
        } else if (key == "rect") {
            const auto fields = split(val, ',');
            if (fields.size() != 5) {
                throw DataError("raster: inline rect needs x0,y0,x1,y1,v");
            }
            const long x0 = std::max(0L, parse_int(fields[0]));
            const long y0 = std::max(0L, parse_int(fields[1]));
            const long x1 = std::min(w, parse_int(fields[2]));
            const long y1 = std::min(h, parse_int(fields[3]));
            const float v = parse_depth_value(fields[4]);
            for (long yy = y0; yy < y1; ++yy) {
                for (long xx = x0; xx < x1; ++xx) {
                    raster.values[static_cast<std::size_t>(yy) * w + xx] = v;
                }
            }
        } else {
            throw DataError("raster: unknown inline key '" + std::string(key) + "'");
        }
    }
    return raster;
}

DepthRaster load_depth_ref(std::string_view ref, const std::filesystem::path& base_dir) {
    if (is_inline_depth_ref(ref)) return expand_inline_raster(ref);
    const std::filesystem::path p(std::string(ref));
    return read_depth_raster(p.is_absolute() ? p : base_dir / p);
}

}  // namespace gazetrace
