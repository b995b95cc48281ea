#include "gazetrace/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace gazetrace {

std::optional<double> sample_depth(const DepthRaster& raster, const PixelBox& bbox) {
    // Shrink to the central 50% (a face bbox includes background pixels).
    const double cx = 0.5 * (bbox.x_min + bbox.x_max);
    const double cy = 0.5 * (bbox.y_min + bbox.y_max);
    const double hw = 0.25 * bbox.width();
    const double hh = 0.25 * bbox.height();
    const double x0 = cx - hw, x1 = cx + hw;
    const double y0 = cy - hh, y1 = cy + hh;

    // Pixel (i,j) covers [i,i+1)x[j,j+1); sample pixels whose centers lie in
    // the shrunk box.
    const int ix0 = std::max(0, static_cast<int>(std::ceil(x0 - 0.5)));
    const int ix1 = std::min(raster.width, static_cast<int>(std::ceil(x1 - 0.5)));
    const int iy0 = std::max(0, static_cast<int>(std::ceil(y0 - 0.5)));
    const int iy1 = std::min(raster.height, static_cast<int>(std::ceil(y1 - 0.5)));
    if (ix0 >= ix1 || iy0 >= iy1) return std::nullopt;

    std::vector<float> vals;
    vals.reserve(static_cast<std::size_t>(ix1 - ix0) * (iy1 - iy0));
    std::size_t sampled = 0;
    for (int y = iy0; y < iy1; ++y) {
        for (int x = ix0; x < ix1; ++x) {
            ++sampled;
            const float v = raster.at(x, y);
            if (!std::isnan(v) && v > 0.0f) vals.push_back(v);
        }
    }
    if (vals.empty() || static_cast<double>(vals.size()) < 0.1 * static_cast<double>(sampled)) {
        return std::nullopt;
    }
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    if (n % 2 == 1) return static_cast<double>(vals[n / 2]);
    return 0.5 * (static_cast<double>(vals[n / 2 - 1]) + static_cast<double>(vals[n / 2]));
}

Ray make_gaze_ray(const DynamicOOI& observer, const GazeAngles& angles) {
    return Ray{observer.face_box.center, angles_to_direction(angles)};
}

RigidTransform gaze_placement(const Vec3& face_center, const GazeAngles& angles) {
    return RigidTransform{direction_to_rotation(angles_to_direction(angles)), face_center};
}

FrameEncodeResult encode_frame(int64_t frame_index, double timestamp_s,
                               std::span<const ObserverInput> observers,
                               const DepthRaster* raster, const SceneDescription& scene,
                               const std::shared_ptr<const Bvh>& static_bvh,
                               const std::vector<std::string>& static_labels) {
    FrameEncodeResult result;

    struct Placed {
        const ObserverInput* input;
        int dynamic_index;
    };
    std::vector<Placed> placed;
    std::vector<DynamicOOI> dynamics;
    placed.reserve(observers.size());

    for (const auto& obs : observers) {
        if (!raster) {
            result.drops.push_back({frame_index, obs.detection_index, obs.participant_id,
                                    "missing_depth"});
            continue;
        }
        const auto depth = sample_depth(*raster, obs.bbox);
        if (!depth) {
            result.drops.push_back({frame_index, obs.detection_index, obs.participant_id,
                                    "insufficient_valid_depth"});
            continue;
        }
        bool clamped = false;
        dynamics.push_back(build_dynamic_ooi(obs.participant_id, obs.bbox, frame_index,
                                             *depth, scene.intrinsics, scene.floor_y,
                                             scene.body_dims, &clamped));
        if (clamped) {
            result.warnings.push_back({frame_index, obs.participant_id, "face_below_floor"});
        }
        placed.push_back({&obs, static_cast<int>(dynamics.size()) - 1});
    }

    // Static triangles live in the prebuilt BVH; the frame scene only carries
    // the dynamic boxes here.
    FrameScene frame_scene =
        assemble_frame_scene(frame_index, nullptr, std::move(dynamics), scene.floor_y);
    SceneBvh bvh = build_bvh(frame_scene, static_bvh, static_labels);

    const int32_t static_count = static_cast<int32_t>(static_labels.size());
    for (const auto& p : placed) {
        if (!p.input->gaze) {
            result.drops.push_back({frame_index, p.input->detection_index,
                                    p.input->participant_id, "missing_gaze"});
            continue;
        }
        const DynamicOOI& self = frame_scene.dynamic[static_cast<std::size_t>(p.dynamic_index)];
        const Ray ray = make_gaze_ray(self, *p.input->gaze);
        const int32_t face_id = static_count + 2 * p.dynamic_index;
        const int32_t exclude[2] = {face_id, face_id + 1};
        const auto hit = bvh.closest_hit(ray, exclude);

        GazeEvent event;
        event.frame_index = frame_index;
        event.timestamp_s = timestamp_s;
        event.observer = p.input->participant_id;
        if (hit) {
            event.target = hit->ooi_label;
            event.hit_point = hit->point;
            event.t_min = hit->t;
        }
        result.events.push_back(std::move(event));
    }
    return result;
}

}  // namespace gazetrace
