#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazetrace/tracking.hpp"

namespace gazetrace {

/// Anchor-embedding gallery, immutable after load. Participant ids are kept
/// in a sorted map so tie-breaks are lexicographic by construction.
struct Gallery {
    int dimension = 0;
    double threshold = 0.6;
    std::map<std::string, std::vector<std::vector<float>>> participants;

    /// Loads the JSON gallery file:
    ///   {"dimension": E, "threshold": t, "participants": {"<id>": [[...], ...]}}
    /// Anchors that are not unit norm (within 1e-6) are normalized with a
    /// warning on stderr.
    static Gallery load(const std::filesystem::path& path);

    /// Throws ConfigError on empty gallery, dimension mismatches, zero
    /// anchors, or a threshold outside [-1, 1].
    void validate() const;
};

/// a.b / (|a||b|). Throws GeometryError on zero vectors, std::invalid_argument
/// on dimension mismatch.
double cosine_similarity(std::span<const float> a, std::span<const float> b);

struct MatchResult {
    std::optional<std::string> identity;  // nullopt = UNIDENTIFIED
    double score = 0.0;                   // best cosine similarity seen
};

/// Top-1 scan over every anchor of every participant; identified only when
/// the global maximum reaches the gallery threshold. Ties across participants
/// resolve to the lexicographically smallest id.
MatchResult match_identity(std::span<const float> query, const Gallery& gallery);

enum class IdentityReason {
    Matched,
    NoEmbedding,      // none of the first K detections carried an embedding
    BelowThreshold,   // best anchor similarity under the gallery threshold
    ConflictDemoted,  // lost a simultaneous-identity conflict
};

const char* identity_reason_code(IdentityReason r);

struct ReIDTracklet {
    int64_t tracklet_id = 0;
    std::optional<std::string> identity;
    double match_score = 0.0;
    IdentityReason reason = IdentityReason::NoEmbedding;
};

/// Resolves a tracklet against the gallery using the earliest detection that
/// carries an embedding, looking at most `first_k` detections deep.
ReIDTracklet resolve_tracklet(const Tracklet& t, const Gallery& gallery,
                              std::size_t first_k = 30);

}  // namespace gazetrace
