#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "gazetrace/mesh.hpp"
#include "gazetrace/tracking.hpp"

namespace gazetrace {

/// Manually placed room geometry (display, walls, floor). The mesh is stored
/// with its pose already applied, i.e. in camera coordinates.
struct StaticOOI {
    std::string label;
    TriangleMesh mesh;
    RigidTransform pose;
};

/// Per-frame 3D placement of one participant: a face box sized from the
/// detection and a floor-anchored body box.
struct DynamicOOI {
    std::string participant_id;
    Box face_box;
    Box body_box;
    int64_t frame_index = 0;
};

struct SceneDescription {
    CameraIntrinsics intrinsics;
    double floor_y = 0.0;
    Vec3 body_dims = Vec3(0.5, 1.7, 0.3);  // (w, h, d) meters
    std::vector<StaticOOI> static_oois;
};

/// Loads the scene config JSON:
///   {"intrinsics": {fx,fy,cx,cy,width,height}, "floor_y": s,
///    "static": [{"label": L, "mesh": "path.obj",
///                "pose": {"rotation": [9 row-major], "translation": [3]}}],
///    "body_dims": [w,h,d]}
/// Mesh paths resolve relative to the config file. Throws ConfigError naming
/// the offending entry (missing file, malformed mesh, duplicate label,
/// non-orthonormal pose).
SceneDescription load_scene(const std::filesystem::path& path);

/// Face box center = back_project(bbox centroid, depth); face extents are the
/// pixel box scaled by depth/f, with the z extent set to the face width. The
/// body box keeps the configured width/depth (grown if needed to contain the
/// face footprint) and spans vertically from the face top down to floor_y.
/// A face at or below the floor sets *clamped_to_floor and falls back to the
/// configured body height.
DynamicOOI build_dynamic_ooi(const std::string& participant_id, const PixelBox& bbox,
                             int64_t frame_index, double depth,
                             const CameraIntrinsics& k, double floor_y,
                             const Vec3& body_dims, bool* clamped_to_floor = nullptr);

/// One frame's ray-castable world. The static portion is shared across all
/// frames of a session, never copied.
struct FrameScene {
    int64_t frame_index = 0;
    std::shared_ptr<const std::vector<StaticOOI>> static_oois;
    std::vector<DynamicOOI> dynamic;
    double floor_y = 0.0;
};

/// Throws std::invalid_argument on mixed frame indices or a duplicated
/// participant id.
FrameScene assemble_frame_scene(int64_t frame_index,
                                std::shared_ptr<const std::vector<StaticOOI>> statics,
                                std::vector<DynamicOOI> dynamics, double floor_y);

}  // namespace gazetrace
