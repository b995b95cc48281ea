#include "gazetrace/reid.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

#include "gazetrace/errors.hpp"

namespace gazetrace {

Gallery Gallery::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("gallery: cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("gallery: malformed JSON in " + path.string() + ": " + e.what());
    }

    Gallery g;
    try {
        g.dimension = doc.at("dimension").get<int>();
        g.threshold = doc.at("threshold").get<double>();
        std::size_t renormalized = 0;
        for (const auto& [id, anchors] : doc.at("participants").items()) {
            std::vector<std::vector<float>> list;
            for (const auto& anchor : anchors) {
                std::vector<float> e = anchor.get<std::vector<float>>();
                if (static_cast<int>(e.size()) != g.dimension) {
                    throw ConfigError("gallery: anchor dimension mismatch for participant " +
                                      id);
                }
                double norm_sq = 0.0;
                for (float x : e) norm_sq += static_cast<double>(x) * x;
                const double norm = std::sqrt(norm_sq);
                if (norm < 1e-12) {
                    throw ConfigError("gallery: zero anchor for participant " + id);
                }
                if (std::abs(norm - 1.0) > 1e-6) {
                    for (float& x : e) x = static_cast<float>(x / norm);
                    ++renormalized;
                }
                list.push_back(std::move(e));
            }
            g.participants.emplace(id, std::move(list));
        }
        if (renormalized > 0) {
            std::cerr << "gazetrace: warning: normalized " << renormalized
                      << " non-unit gallery anchors in " << path.string() << "\n";
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("gallery: schema error in " + path.string() + ": " + e.what());
    }
    g.validate();
    return g;
}

void Gallery::validate() const {
    if (participants.empty()) throw ConfigError("gallery: no participants");
    if (dimension <= 0) throw ConfigError("gallery: dimension must be positive");
    if (!(threshold >= -1.0 && threshold <= 1.0)) {
        throw ConfigError("gallery: threshold outside [-1, 1]");
    }
    for (const auto& [id, anchors] : participants) {
        if (id.empty() || id == "NONE") {
            throw ConfigError("gallery: invalid participant id '" + id + "'");
        }
        if (anchors.empty()) {
            throw ConfigError("gallery: participant " + id + " has no anchors");
        }
        for (const auto& e : anchors) {
            if (static_cast<int>(e.size()) != dimension) {
                throw ConfigError("gallery: anchor dimension mismatch for " + id);
            }
        }
    }
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("cosine_similarity: dimension mismatch");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na < 1e-24 || nb < 1e-24) {
        throw GeometryError("cosine_similarity: zero vector");
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

MatchResult match_identity(std::span<const float> query, const Gallery& gallery) {
    gallery.validate();
    if (static_cast<int>(query.size()) != gallery.dimension) {
        throw std::invalid_argument("match_identity: query dimension mismatch");
    }
    MatchResult best;
    best.score = -2.0;
    // Map iteration is id-sorted; strict > keeps the lexicographically
    // smallest participant on exact ties.
    for (const auto& [id, anchors] : gallery.participants) {
        for (const auto& anchor : anchors) {
            const double s = cosine_similarity(query, anchor);
            if (s > best.score) {
                best.score = s;
                best.identity = id;
            }
        }
    }
    if (best.score < gallery.threshold) best.identity.reset();
    if (best.score == -2.0) best.score = 0.0;
    return best;
}

const char* identity_reason_code(IdentityReason r) {
    switch (r) {
        case IdentityReason::Matched: return "matched";
        case IdentityReason::NoEmbedding: return "no_embedding";
        case IdentityReason::BelowThreshold: return "below_threshold";
        case IdentityReason::ConflictDemoted: return "conflict_demoted";
    }
    return "unknown";
}

ReIDTracklet resolve_tracklet(const Tracklet& t, const Gallery& gallery,
                              std::size_t first_k) {
    if (t.detections.empty()) {
        throw std::invalid_argument("resolve_tracklet: empty tracklet");
    }
    ReIDTracklet out;
    out.tracklet_id = t.id;
    const std::size_t scan = std::min(first_k, t.detections.size());
    for (std::size_t i = 0; i < scan; ++i) {
        const auto& e = t.detections[i].embedding;
        if (!e) continue;
        const MatchResult m = match_identity(*e, gallery);
        out.identity = m.identity;
        out.match_score = m.score;
        out.reason = m.identity ? IdentityReason::Matched : IdentityReason::BelowThreshold;
        return out;
    }
    out.reason = IdentityReason::NoEmbedding;
    return out;
}

}  // namespace gazetrace
