#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gazetrace/geometry.hpp"

namespace gazetrace {

/// Axis-aligned pixel box, x_min < x_max and y_min < y_max.
struct PixelBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    Vec2 centroid() const { return Vec2((x_min + x_max) * 0.5, (y_min + y_max) * 0.5); }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    bool valid() const { return x_min < x_max && y_min < y_max; }
};

/// One face detection in one frame. Embedding and gaze are optional because
/// upstream perception may drop either independently.
struct Detection {
    int64_t frame_index = 0;
    PixelBox bbox;
    std::optional<std::vector<float>> embedding;
    std::optional<GazeAngles> gaze;

    Vec2 centroid() const { return bbox.centroid(); }
};

enum class TrackletState { Active, Lost };

/// Frame-contiguous chain of detections believed to be one person.
struct Tracklet {
    int64_t id = 0;
    std::vector<Detection> detections;
    int64_t last_seen = -1;
    TrackletState state = TrackletState::Active;

    int64_t first_frame() const {
        return detections.empty() ? -1 : detections.front().frame_index;
    }
};

struct TrackingParams {
    double max_distance_px = 75.0;
    int64_t max_gap_frames = 15;
};

struct AssociationResult {
    /// (tracklet id, detection index) pairs matched this frame.
    std::vector<std::pair<int64_t, std::size_t>> matched;
    /// Tracklet ids spawned this frame, in detection input order.
    std::vector<int64_t> spawned;
    /// Tracklet ids that transitioned to Lost this frame.
    std::vector<int64_t> lost;
};

/// One association step. `tracklets` holds every tracklet of the session
/// (active and lost); only active ones participate. Active tracklets whose
/// gap exceeds max_gap_frames are marked lost first, then detections are
/// matched to the remaining active tracklets by an optimal assignment on
/// centroid distance (maximum matches first, then minimum total distance,
/// no pair above max_distance_px). Unmatched detections spawn new tracklets
/// with ids from `next_tracklet_id`.
///
/// Precondition: every detection carries the same frame_index, strictly
/// greater than each active tracklet's last_seen.
AssociationResult associate_frame(std::vector<Tracklet>& tracklets,
                                  const std::vector<Detection>& detections,
                                  const TrackingParams& params,
                                  int64_t& next_tracklet_id);

/// Marks every tracklet lost (session close-out).
void finalize_tracklets(std::vector<Tracklet>& tracklets);

/// Stateful per-session wrapper around associate_frame.
class Tracker {
public:
    explicit Tracker(TrackingParams params = {}) : params_(params) {}

    AssociationResult observe(const std::vector<Detection>& detections);
    void finalize() { finalize_tracklets(tracklets_); }

    const std::vector<Tracklet>& tracklets() const { return tracklets_; }
    const TrackingParams& params() const { return params_; }

private:
    TrackingParams params_;
    std::vector<Tracklet> tracklets_;
    int64_t next_id_ = 1;
};

}  // namespace gazetrace
