#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazetrace/depth_raster.hpp"
#include "gazetrace/raycast.hpp"
#include "gazetrace/scene.hpp"

namespace gazetrace {

/// One instantaneous gaze sample attributed to an identified observer.
/// target is nullopt (serialized "NONE") when the ray misses everything.
/// duration_s is attributed afterwards from frame timestamp deltas.
struct GazeEvent {
    int64_t frame_index = 0;
    double timestamp_s = 0.0;
    double duration_s = 0.0;
    std::string observer;
    std::optional<std::string> target;
    std::optional<Vec3> hit_point;
    std::optional<double> t_min;
};

/// Robust scalar depth for a face: median of the valid pixels whose centers
/// fall inside the bbox shrunk to its central 50% (even counts average the
/// middle pair). Returns nullopt when fewer than 10% of the sampled pixels
/// are valid (or none are in range).
std::optional<double> sample_depth(const DepthRaster& raster, const PixelBox& bbox);

/// Gaze ray anchored at the face box center.
Ray make_gaze_ray(const DynamicOOI& observer, const GazeAngles& angles);

/// The equivalent placement transform: rotation taking the reference axis to
/// the gaze direction, translation to the face center. Applying it to the
/// canonical ray {0, (0,0,-1)} reproduces make_gaze_ray.
RigidTransform gaze_placement(const Vec3& face_center, const GazeAngles& angles);

/// Identity-resolved detection entering per-frame encoding.
struct ObserverInput {
    std::string participant_id;
    PixelBox bbox;
    std::optional<GazeAngles> gaze;
    int detection_index = 0;  // position within the frame, for diagnostics
};

struct FrameDrop {
    int64_t frame_index = 0;
    int detection_index = -1;  // -1 = frame-level
    std::string observer;      // may be empty when unknown
    std::string reason;
};

struct FrameWarning {
    int64_t frame_index = 0;
    std::string observer;
    std::string code;
};

struct FrameEncodeResult {
    std::vector<GazeEvent> events;
    std::vector<FrameDrop> drops;
    std::vector<FrameWarning> warnings;
};

/// Full per-frame encode: samples depth for every observer, places dynamic
/// boxes (observers without gaze still become ray targets), builds the frame
/// BVH on top of the shared static one, casts each gazing observer's ray with
/// its own face/body meshes excluded, and emits events in detection order.
/// `raster` may be null (every observer drops with missing_depth).
FrameEncodeResult encode_frame(int64_t frame_index, double timestamp_s,
                               std::span<const ObserverInput> observers,
                               const DepthRaster* raster, const SceneDescription& scene,
                               const std::shared_ptr<const Bvh>& static_bvh,
                               const std::vector<std::string>& static_labels);

}  // namespace gazetrace
