#include "gazetrace/frames_io.hpp"

#include "json.hpp"

#include "gazetrace/errors.hpp"
#include "gazetrace/textio.hpp"

namespace gazetrace {

namespace {

[[noreturn]] void line_error(const std::filesystem::path& path, int64_t line,
                             const std::string& what) {
    throw DataError("frames: " + path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

FrameReader::FrameReader(const std::filesystem::path& path, const CameraIntrinsics* bounds)
    : in_(path), path_(path), bounds_(bounds) {
    if (!in_) throw ConfigError("frames: cannot open " + path.string());
}

std::optional<FrameRecord> FrameReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line.empty()) continue;

        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            line_error(path_, line_no_, std::string("malformed JSON: ") + e.what());
        }

        FrameRecord record;
        try {
            record.frame_index = doc.at("frame_index").get<int64_t>();
            record.timestamp_s = doc.at("timestamp_s").get<double>();
            record.depth_ref = doc.value("depth_ref", std::string());
            for (const auto& det : doc.value("detections", nlohmann::json::array())) {
                Detection d;
                d.frame_index = record.frame_index;
                const auto bbox = det.at("bbox").get<std::vector<double>>();
                if (bbox.size() != 4) {
                    line_error(path_, line_no_, "bbox must have 4 entries");
                }
                d.bbox = {bbox[0], bbox[1], bbox[2], bbox[3]};
                if (!d.bbox.valid()) {
                    line_error(path_, line_no_, "bbox not ordered (x_min < x_max, y_min < y_max)");
                }
                if (bounds_) {
                    d.bbox.x_min = std::max(d.bbox.x_min, 0.0);
                    d.bbox.y_min = std::max(d.bbox.y_min, 0.0);
                    d.bbox.x_max = std::min(d.bbox.x_max, static_cast<double>(bounds_->width));
                    d.bbox.y_max = std::min(d.bbox.y_max, static_cast<double>(bounds_->height));
                    if (!d.bbox.valid()) {
                        line_error(path_, line_no_, "bbox entirely outside image bounds");
                    }
                }
                if (det.contains("embedding")) {
                    d.embedding = det.at("embedding").get<std::vector<float>>();
                    if (d.embedding->empty()) {
                        line_error(path_, line_no_, "empty embedding");
                    }
                }
                if (det.contains("gaze")) {
                    GazeAngles g;
                    g.pitch = det.at("gaze").at("pitch").get<double>();
                    g.yaw = det.at("gaze").at("yaw").get<double>();
                    try {
                        g.validate();
                    } catch (const DataError&) {
                        line_error(path_, line_no_, "gaze angles out of range");
                    }
                    d.gaze = g;
                }
                record.detections.push_back(std::move(d));
            }
        } catch (const nlohmann::json::exception& e) {
            line_error(path_, line_no_, std::string("schema error: ") + e.what());
        }

        if (record.frame_index <= last_frame_) {
            line_error(path_, line_no_, "frame_index not strictly increasing");
        }
        if (record.timestamp_s < last_timestamp_) {
            line_error(path_, line_no_, "timestamp_s decreased");
        }
        last_frame_ = record.frame_index;
        last_timestamp_ = record.timestamp_s;
        return record;
    }
    return std::nullopt;
}

std::vector<FrameRecord> parse_frames(const std::filesystem::path& path,
                                      const CameraIntrinsics* bounds) {
    FrameReader reader(path, bounds);
    std::vector<FrameRecord> out;
    while (auto record = reader.next()) out.push_back(std::move(*record));
    return out;
}

std::string gaze_event_json_line(const GazeEvent& e) {
    std::string out = "{\"frame_index\":" + std::to_string(e.frame_index) +
                      ",\"timestamp_s\":" + format_fixed6(e.timestamp_s) +
                      ",\"duration_s\":" + format_fixed6(e.duration_s) + ",\"observer\":\"" +
                      escape_quoted(e.observer) + "\",\"target\":\"" +
                      escape_quoted(e.target ? *e.target : "NONE") + "\"";
    if (e.target && e.hit_point && e.t_min) {
        out += ",\"hit_point\":[" + format_fixed6(e.hit_point->x()) + ',' +
               format_fixed6(e.hit_point->y()) + ',' + format_fixed6(e.hit_point->z()) +
               "],\"t_min\":" + format_fixed6(*e.t_min);
    }
    out += "}";
    return out;
}

std::vector<GazeEvent> read_gaze_events(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("events: cannot open " + path.string());
    std::vector<GazeEvent> events;
    std::string line;
    int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const nlohmann::json doc = nlohmann::json::parse(line);
            GazeEvent e;
            e.frame_index = doc.at("frame_index").get<int64_t>();
            e.timestamp_s = doc.at("timestamp_s").get<double>();
            e.duration_s = doc.at("duration_s").get<double>();
            e.observer = doc.at("observer").get<std::string>();
            const std::string target = doc.at("target").get<std::string>();
            if (target != "NONE") {
                e.target = target;
                if (doc.contains("hit_point")) {
                    const auto p = doc.at("hit_point").get<std::vector<double>>();
                    if (p.size() == 3) e.hit_point = Vec3(p[0], p[1], p[2]);
                }
                if (doc.contains("t_min")) e.t_min = doc.at("t_min").get<double>();
            }
            events.push_back(std::move(e));
        } catch (const nlohmann::json::exception& ex) {
            throw DataError("events: " + path.string() + ":" + std::to_string(line_no) +
                            ": " + ex.what());
        }
    }
    return events;
}

void write_gaze_events(const std::filesystem::path& path,
                       std::span<const GazeEvent> events) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("events: cannot write " + path.string());
    for (const auto& e : events) out << gaze_event_json_line(e) << '\n';
}

}  // namespace gazetrace
