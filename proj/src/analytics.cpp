#include "gazetrace/analytics.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

#include "gazetrace/errors.hpp"
#include "gazetrace/textio.hpp"

namespace gazetrace {

std::vector<TimelineInterval> pool_timeline(std::span<const GazeEvent> events,
                                            const std::string& participant_id,
                                            double session_start, double session_end,
                                            double interval_s, double threshold_s) {
    std::vector<TimelineInterval> out;
    if (!(session_end > session_start) || !(interval_s > 0.0)) return out;

    const std::size_t n_intervals = static_cast<std::size_t>(
        std::ceil((session_end - session_start) / interval_s - 1e-12));
    std::vector<std::map<std::string, double>> buckets(n_intervals);
    for (const auto& e : events) {
        if (!e.target) continue;
        const double rel = (e.timestamp_s - session_start) / interval_s;
        if (rel < 0.0) continue;
        const std::size_t k = static_cast<std::size_t>(rel);
        if (k >= n_intervals) continue;
        buckets[k][*e.target] += e.duration_s;
    }

    out.reserve(n_intervals);
    for (std::size_t k = 0; k < n_intervals; ++k) {
        TimelineInterval cell;
        cell.participant_id = participant_id;
        cell.start_s = session_start + static_cast<double>(k) * interval_s;
        cell.length_s = interval_s;
        // Map iteration is label-sorted, so strict > keeps the
        // lexicographically smallest label on ties.
        double best = 0.0;
        for (const auto& [label, dur] : buckets[k]) {
            if (dur > best) {
                best = dur;
                cell.label = label;
            }
        }
        if (best < threshold_s) cell.label.reset();
        out.push_back(std::move(cell));
    }
    return out;
}

double AttentionNetwork::total_edge_weight() const {
    double sum = 0.0;
    for (const auto& [_, w] : edge_weight) sum += w;
    return sum;
}

double AttentionNetwork::total_node_weight() const {
    double sum = 0.0;
    for (const auto& [_, w] : node_weight) sum += w;
    return sum;
}

AttentionNetwork build_network(std::span<const GazeEvent> events) {
    AttentionNetwork net;
    for (const auto& e : events) {
        // Observers are nodes even if nothing ever fixates them.
        net.node_weight.emplace(e.observer, 0.0);
        if (!e.target) continue;
        net.edge_weight[{e.observer, *e.target}] += e.duration_s;
        net.node_weight[*e.target] += e.duration_s;
    }
    return net;
}

std::string export_network_dot(const AttentionNetwork& net) {
    std::string out = "digraph gaze {\n";
    for (const auto& [label, w] : net.node_weight) {
        out += "  \"" + escape_quoted(label) + "\" [weight=\"" + format_fixed6(w) + "\"];\n";
    }
    for (const auto& [edge, w] : net.edge_weight) {
        out += "  \"" + escape_quoted(edge.first) + "\" -> \"" + escape_quoted(edge.second) +
               "\" [weight=\"" + format_fixed6(w) + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string export_network_json(const AttentionNetwork& net) {
    std::string out = "{\"nodes\":[";
    bool first = true;
    for (const auto& [label, w] : net.node_weight) {
        if (!first) out += ',';
        first = false;
        out += "{\"label\":\"" + escape_quoted(label) + "\",\"weight_s\":" + format_fixed6(w) + "}";
    }
    out += "],\"edges\":[";
    first = true;
    for (const auto& [edge, w] : net.edge_weight) {
        if (!first) out += ',';
        first = false;
        out += "{\"observer\":\"" + escape_quoted(edge.first) + "\",\"target\":\"" +
               escape_quoted(edge.second) + "\",\"weight_s\":" + format_fixed6(w) + "}";
    }
    out += "]}\n";
    return out;
}

namespace {

// Pulls the next quoted string off `s`, unescaping \" and \\.
std::string take_quoted(std::string_view& s) {
    const std::size_t open = s.find('"');
    if (open == std::string_view::npos) throw DataError("dot: missing quote");
    std::string out;
    std::size_t i = open + 1;
    for (; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            out.push_back(s[++i]);
        } else if (s[i] == '"') {
            break;
        } else {
            out.push_back(s[i]);
        }
    }
    if (i >= s.size()) throw DataError("dot: unterminated quote");
    s.remove_prefix(i + 1);
    return out;
}

double take_weight(std::string_view& s) {
    const std::string_view key = "[weight=";
    const std::size_t pos = s.find(key);
    if (pos == std::string_view::npos) throw DataError("dot: missing weight attribute");
    s.remove_prefix(pos + key.size());
    const std::string text = take_quoted(s);
    double w = 0.0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), w);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
        throw DataError("dot: bad weight '" + text + "'");
    }
    return w;
}

}  // namespace

AttentionNetwork parse_network_dot(std::string_view text) {
    AttentionNetwork net;
    std::size_t line_start = 0;
    bool saw_header = false, saw_footer = false;
    while (line_start < text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;

        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "digraph gaze {") throw DataError("dot: bad header");
            saw_header = true;
            continue;
        }
        if (line == "}") {
            saw_footer = true;
            continue;
        }
        std::string_view rest = line;
        const std::string first = take_quoted(rest);
        const std::size_t arrow = rest.find("->");
        if (arrow != std::string_view::npos && arrow < rest.find('[')) {
            rest.remove_prefix(arrow + 2);
            const std::string second = take_quoted(rest);
            net.edge_weight[{first, second}] = take_weight(rest);
        } else {
            net.node_weight[first] = take_weight(rest);
        }
    }
    if (!saw_header || !saw_footer) throw DataError("dot: missing digraph braces");
    return net;
}

AttentionNetwork parse_network_json(std::string_view text) {
    AttentionNetwork net;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
        for (const auto& node : doc.at("nodes")) {
            net.node_weight[node.at("label").get<std::string>()] =
                node.at("weight_s").get<double>();
        }
        for (const auto& edge : doc.at("edges")) {
            net.edge_weight[{edge.at("observer").get<std::string>(),
                             edge.at("target").get<std::string>()}] =
                edge.at("weight_s").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("network json: ") + e.what());
    }
    return net;
}

std::string timeline_csv(std::span<const TimelineInterval> intervals) {
    std::string out = "participant_id,start_s,length_s,label\n";
    for (const auto& cell : intervals) {
        out += cell.participant_id + ',' + format_fixed6(cell.start_s) + ',' +
               format_fixed6(cell.length_s) + ',' + (cell.label ? *cell.label : "NONE") +
               '\n';
    }
    return out;
}

}  // namespace gazetrace
