#include "gazetrace/scene.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "gazetrace/errors.hpp"

namespace gazetrace {

namespace {

RigidTransform pose_from_json(const nlohmann::json& j, const std::string& label) {
    RigidTransform pose;
    if (j.contains("rotation")) {
        const auto r = j.at("rotation").get<std::vector<double>>();
        if (r.size() != 9) {
            throw ConfigError("scene: pose rotation for '" + label + "' must have 9 entries");
        }
        for (int row = 0; row < 3; ++row) {
            for (int col = 0; col < 3; ++col) pose.rotation(row, col) = r[row * 3 + col];
        }
    }
    if (j.contains("translation")) {
        const auto t = j.at("translation").get<std::vector<double>>();
        if (t.size() != 3) {
            throw ConfigError("scene: pose translation for '" + label + "' must have 3 entries");
        }
        pose.translation = Vec3(t[0], t[1], t[2]);
    }
    if (!pose.is_valid_rotation()) {
        throw ConfigError("scene: pose rotation for '" + label + "' is not orthonormal");
    }
    return pose;
}

}  // namespace

SceneDescription load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scene: cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scene: malformed JSON in " + path.string() + ": " + e.what());
    }

    SceneDescription scene;
    try {
        const auto& k = doc.at("intrinsics");
        scene.intrinsics.fx = k.at("fx").get<double>();
        scene.intrinsics.fy = k.at("fy").get<double>();
        scene.intrinsics.cx = k.at("cx").get<double>();
        scene.intrinsics.cy = k.at("cy").get<double>();
        scene.intrinsics.width = k.at("width").get<int>();
        scene.intrinsics.height = k.at("height").get<int>();
        scene.floor_y = doc.at("floor_y").get<double>();
        if (doc.contains("body_dims")) {
            const auto d = doc.at("body_dims").get<std::vector<double>>();
            if (d.size() != 3 || d[0] <= 0 || d[1] <= 0 || d[2] <= 0) {
                throw ConfigError("scene: body_dims must be 3 positive numbers");
            }
            scene.body_dims = Vec3(d[0], d[1], d[2]);
        }
        scene.intrinsics.validate();

        std::set<std::string> labels;
        const auto base = path.parent_path();
        for (const auto& entry : doc.value("static", nlohmann::json::array())) {
            StaticOOI ooi;
            ooi.label = entry.at("label").get<std::string>();
            if (ooi.label.empty() || ooi.label == "NONE") {
                throw ConfigError("scene: invalid static label '" + ooi.label + "'");
            }
            if (!labels.insert(ooi.label).second) {
                throw ConfigError("scene: duplicate static label '" + ooi.label + "'");
            }
            const auto mesh_path = base / entry.at("mesh").get<std::string>();
            ooi.mesh = load_obj(mesh_path, ooi.label);
            if (entry.contains("pose")) {
                ooi.pose = pose_from_json(entry.at("pose"), ooi.label);
            }
            transform_in_place(ooi.mesh, ooi.pose);
            ooi.mesh.validate();
            scene.static_oois.push_back(std::move(ooi));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scene: schema error in " + path.string() + ": " + e.what());
    }
    return scene;
}

DynamicOOI build_dynamic_ooi(const std::string& participant_id, const PixelBox& bbox,
                             int64_t frame_index, double depth,
                             const CameraIntrinsics& k, double floor_y,
                             const Vec3& body_dims, bool* clamped_to_floor) {
    if (!(depth > 0.0)) throw GeometryError("build_dynamic_ooi: invalid depth");
    if (clamped_to_floor) *clamped_to_floor = false;

    DynamicOOI ooi;
    ooi.participant_id = participant_id;
    ooi.frame_index = frame_index;

    // Similar-triangles scaling: metric size = pixel size * z / f. The face
    // box's z extent matches its width (square x/z footprint).
    const double face_w = bbox.width() * depth / k.fx;
    const double face_h = bbox.height() * depth / k.fy;
    ooi.face_box.center = back_project(bbox.centroid(), depth, k);
    ooi.face_box.extents = Vec3(face_w, face_h, face_w);

    const double face_top = ooi.face_box.center.y() - 0.5 * face_h;
    double body_top = face_top;
    if (face_top >= floor_y) {
        // Face at or below the floor plane; fall back to the configured body
        // height so the box stays non-degenerate.
        if (clamped_to_floor) *clamped_to_floor = true;
        body_top = floor_y - body_dims.y();
    }
    const double body_w = std::max(body_dims.x(), face_w);
    const double body_d = std::max(body_dims.z(), face_w);
    ooi.body_box.center = Vec3(ooi.face_box.center.x(), 0.5 * (body_top + floor_y),
                               ooi.face_box.center.z());
    ooi.body_box.extents = Vec3(body_w, floor_y - body_top, body_d);
    return ooi;
}

FrameScene assemble_frame_scene(int64_t frame_index,
                                std::shared_ptr<const std::vector<StaticOOI>> statics,
                                std::vector<DynamicOOI> dynamics, double floor_y) {
    std::set<std::string> ids;
    for (const auto& d : dynamics) {
        if (d.frame_index != frame_index) {
            throw std::invalid_argument("assemble_frame_scene: mixed frame indices");
        }
        if (!ids.insert(d.participant_id).second) {
            throw std::invalid_argument("assemble_frame_scene: duplicate participant '" +
                                        d.participant_id + "'");
        }
    }
    FrameScene scene;
    scene.frame_index = frame_index;
    scene.static_oois = std::move(statics);
    scene.dynamic = std::move(dynamics);
    scene.floor_y = floor_y;
    return scene;
}

}  // namespace gazetrace
