#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gazetrace/pipeline.hpp"

namespace gazetrace {

/// One pooled timeline cell. label is nullopt ("NONE") when no OOI
/// accumulated enough fixation time in the interval.
struct TimelineInterval {
    std::string participant_id;
    double start_s = 0.0;
    double length_s = 5.0;
    std::optional<std::string> label;
};

/// Pools one participant's time-sorted events into contiguous fixed-length
/// intervals covering [session_start, session_end). Each event contributes
/// its duration to the interval containing its timestamp; an interval takes
/// the label with the largest summed duration if that sum reaches
/// threshold_s, otherwise NONE. Ties break lexicographically.
std::vector<TimelineInterval> pool_timeline(std::span<const GazeEvent> events,
                                            const std::string& participant_id,
                                            double session_start, double session_end,
                                            double interval_s = 5.0,
                                            double threshold_s = 2.0);

/// Directed observer->target fixation-duration aggregate. Node weight is the
/// sum of incoming edge weights; observers appear as nodes even when nothing
/// gazes back at them.
struct AttentionNetwork {
    std::map<std::string, double> node_weight;
    std::map<std::pair<std::string, std::string>, double> edge_weight;

    double total_edge_weight() const;
    double total_node_weight() const;
};

AttentionNetwork build_network(std::span<const GazeEvent> events);

/// DOT digraph with weight attributes, nodes and edges sorted
/// lexicographically. Byte-stable; parse_network_dot(export) round-trips.
std::string export_network_dot(const AttentionNetwork& net);
std::string export_network_json(const AttentionNetwork& net);

/// Parses the exact DOT subset emitted by export_network_dot. Throws
/// DataError on anything else.
AttentionNetwork parse_network_dot(std::string_view text);
AttentionNetwork parse_network_json(std::string_view text);

/// CSV with fixed column order participant_id,start_s,length_s,label
/// (header row, UTF-8, LF endings, 6-decimal floats).
std::string timeline_csv(std::span<const TimelineInterval> intervals);

}  // namespace gazetrace
