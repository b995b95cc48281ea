#include "gazetrace/tracking.hpp"

#include <stdexcept>

#include "gazetrace/assignment.hpp"

namespace gazetrace {

AssociationResult associate_frame(std::vector<Tracklet>& tracklets,
                                  const std::vector<Detection>& detections,
                                  const TrackingParams& params,
                                  int64_t& next_tracklet_id) {
    AssociationResult result;
    if (detections.empty() && tracklets.empty()) return result;

    int64_t frame = -1;
    if (!detections.empty()) {
        frame = detections.front().frame_index;
        for (const auto& d : detections) {
            if (d.frame_index != frame) {
                throw std::invalid_argument("associate_frame: mixed frame indices");
            }
        }
    }

    // Expire overdue tracklets before matching. With an empty detection set
    // the caller still advances time, so the gap is measured against the
    // current frame when one is known.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < tracklets.size(); ++i) {
        Tracklet& t = tracklets[i];
        if (t.state != TrackletState::Active) continue;
        if (frame >= 0) {
            if (t.last_seen >= frame) {
                throw std::invalid_argument(
                    "associate_frame: frame not ahead of active tracklets");
            }
            if (frame - t.last_seen > params.max_gap_frames) {
                t.state = TrackletState::Lost;
                result.lost.push_back(t.id);
                continue;
            }
        }
        active.push_back(i);
    }
    if (detections.empty()) return result;

    std::vector<std::vector<double>> cost(active.size(),
                                          std::vector<double>(detections.size(), 0.0));
    for (std::size_t i = 0; i < active.size(); ++i) {
        const Vec2 last = tracklets[active[i]].detections.back().centroid();
        for (std::size_t j = 0; j < detections.size(); ++j) {
            cost[i][j] = (detections[j].centroid() - last).norm();
        }
    }

    const AssignmentResult assign = solve_capped_assignment(cost, params.max_distance_px);
    std::vector<char> det_matched(detections.size(), 0);
    for (std::size_t i = 0; i < active.size(); ++i) {
        const int j = assign.match_of_row.empty() ? -1 : assign.match_of_row[i];
        if (j < 0) continue;
        Tracklet& t = tracklets[active[i]];
        t.detections.push_back(detections[static_cast<std::size_t>(j)]);
        t.last_seen = frame;
        det_matched[static_cast<std::size_t>(j)] = 1;
        result.matched.emplace_back(t.id, static_cast<std::size_t>(j));
    }
    for (std::size_t j = 0; j < detections.size(); ++j) {
        if (det_matched[j]) continue;
        Tracklet t;
        t.id = next_tracklet_id++;
        t.detections.push_back(detections[j]);
        t.last_seen = frame;
        tracklets.push_back(std::move(t));
        result.spawned.push_back(tracklets.back().id);
    }
    return result;
}

void finalize_tracklets(std::vector<Tracklet>& tracklets) {
    for (auto& t : tracklets) t.state = TrackletState::Lost;
}

AssociationResult Tracker::observe(const std::vector<Detection>& detections) {
    return associate_frame(tracklets_, detections, params_, next_id_);
}

}  // namespace gazetrace
