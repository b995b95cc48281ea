#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gazetrace/reid.hpp"
#include "gazetrace/tracking.hpp"

namespace gazetrace {

struct TimelineParams {
    double interval_s = 5.0;
    double threshold_s = 2.0;
};

struct RunConfig {
    std::filesystem::path scene_path;
    std::filesystem::path gallery_path;
    std::filesystem::path frames_path;
    std::filesystem::path output_dir;
    TrackingParams tracking;
    std::optional<double> reid_threshold;  // overrides the gallery's threshold
    TimelineParams timeline;
    int workers = 0;  // 0 = hardware concurrency; GAZETRACE_WORKERS overrides
    std::size_t reid_first_k = 30;
    double nominal_fps = 30.0;  // duration fallback for the last frame

    /// Throws ConfigError for missing inputs / bad parameter ranges.
    void validate() const;
};

struct SessionSummary {
    std::size_t frames = 0;
    std::size_t detections = 0;
    std::size_t events = 0;
    std::size_t dropped_detections = 0;
    std::size_t identity_conflicts = 0;
    std::vector<std::string> participants;
};

/// Runs the full pipeline: ingest is sequential, tracking + re-identification
/// run over the whole stream, per-frame scene building and ray encoding fan
/// out to a worker pool, and events re-serialize in frame order before
/// analytics. Writes gaze_events.jsonl, timeline.csv, network.dot,
/// network.json, diagnostics.json and timings.json into output_dir; partial
/// outputs are removed if the session fails.
SessionSummary run_session(const RunConfig& config);

}  // namespace gazetrace
