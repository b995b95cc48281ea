#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "gazetrace/pipeline.hpp"
#include "gazetrace/tracking.hpp"

namespace gazetrace {

/// One video frame's perception payload as ingested from JSON-Lines:
///   {"frame_index": i, "timestamp_s": t, "depth_ref": "path-or-inline",
///    "detections": [{"bbox": [x0,y0,x1,y1], "embedding": [...],
///                    "gaze": {"pitch": p, "yaw": y}}, ...]}
struct FrameRecord {
    int64_t frame_index = 0;
    double timestamp_s = 0.0;
    std::string depth_ref;
    std::vector<Detection> detections;
};

/// Streaming JSON-Lines reader. Enforces strictly increasing frame_index,
/// non-decreasing timestamps, and bbox invariants; when intrinsics are given,
/// boxes are clamped to the image and must stay non-degenerate. Every
/// DataError names the offending 1-based line.
class FrameReader {
public:
    explicit FrameReader(const std::filesystem::path& path,
                         const CameraIntrinsics* bounds = nullptr);

    std::optional<FrameRecord> next();
    int64_t line_number() const { return line_no_; }

private:
    std::ifstream in_;
    std::filesystem::path path_;
    const CameraIntrinsics* bounds_;
    int64_t line_no_ = 0;
    int64_t last_frame_ = -1;
    double last_timestamp_ = -std::numeric_limits<double>::infinity();
};

/// Reads the whole stream eagerly.
std::vector<FrameRecord> parse_frames(const std::filesystem::path& path,
                                      const CameraIntrinsics* bounds = nullptr);

/// One gaze_events.jsonl line (no trailing newline); fixed 6-decimal floats.
std::string gaze_event_json_line(const GazeEvent& event);

/// Reads a gaze_events.jsonl file back (timeline/network subcommands).
std::vector<GazeEvent> read_gaze_events(const std::filesystem::path& path);

void write_gaze_events(const std::filesystem::path& path,
                       std::span<const GazeEvent> events);

}  // namespace gazetrace
