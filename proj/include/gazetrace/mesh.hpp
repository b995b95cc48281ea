#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "gazetrace/geometry.hpp"

namespace gazetrace {

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::string name;

    std::size_t triangle_count() const { return triangles.size(); }
    double surface_area() const;

    /// Index range, finite coordinates, no degenerate triangles
    /// (area > 1e-12 m^2). Throws ConfigError naming the mesh.
    void validate() const;
};

/// Axis-aligned box given by center and full extents (w, h, d), meters.
struct Box {
    Vec3 center = Vec3::Zero();
    Vec3 extents = Vec3::Zero();

    Vec3 min() const { return center - 0.5 * extents; }
    Vec3 max() const { return center + 0.5 * extents; }
    bool contains_xz(const Box& other) const {
        return min().x() <= other.min().x() && max().x() >= other.max().x() &&
               min().z() <= other.min().z() && max().z() >= other.max().z();
    }
};

/// 8 vertices, 12 triangles, outward winding.
TriangleMesh box_to_mesh(const Box& box, std::string name = {});

/// Planar rectangle (two triangles) centered at `center`, facing `normal`.
TriangleMesh make_quad(const Vec3& center, const Vec3& normal, double width,
                       double height, std::string name = {});

/// make_quad subdivided into an nx-by-ny grid (2*nx*ny triangles).
TriangleMesh make_subdivided_quad(const Vec3& center, const Vec3& normal, double width,
                                  double height, int nx, int ny, std::string name = {});

/// Wavefront OBJ subset: `v` and `f` records, polygons fan-triangulated,
/// 1-based and negative indices, `v/vt/vn` forms. Other records are ignored.
TriangleMesh load_obj(const std::filesystem::path& path, std::string name = {});

void save_obj(const std::filesystem::path& path, const TriangleMesh& mesh);

void transform_in_place(TriangleMesh& mesh, const RigidTransform& pose);

}  // namespace gazetrace
