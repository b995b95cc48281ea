#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

namespace gazetrace {

/// Per-pixel metric depth aligned with the camera frame. NaN marks invalid
/// pixels. Stored single precision; all downstream math is double.
struct DepthRaster {
    int width = 0;
    int height = 0;
    std::vector<float> values;  // row-major

    float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double valid_fraction() const;
};

/// Binary container: ASCII header "DRASTER <width> <height>\n" followed by
/// width*height little-endian IEEE-754 float32, row-major, meters.
DepthRaster read_depth_raster(const std::filesystem::path& path);
void write_depth_raster(const std::filesystem::path& path, const DepthRaster& raster);

/// Compact textual raster for synthetic data:
///   inline:<W>x<H>:full=<v>[;rect=<x0>,<y0>,<x1>,<y1>,<v>]...
/// Values are meters or `nan`; rects are half-open pixel ranges applied in
/// order (later entries win). Throws DataError on malformed markers.
DepthRaster expand_inline_raster(std::string_view marker);

inline bool is_inline_depth_ref(std::string_view ref) {
    return ref.rfind("inline:", 0) == 0;
}

/// Dispatches between inline markers and raster files (paths resolve
/// relative to base_dir).
DepthRaster load_depth_ref(std::string_view ref, const std::filesystem::path& base_dir);

}  // namespace gazetrace
