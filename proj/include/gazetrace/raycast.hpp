#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gazetrace/scene.hpp"

namespace gazetrace {

/// Minimum accepted ray parameter; guards against re-hitting the surface the
/// ray starts on (the observer's own face box), alongside explicit mesh
/// exclusion.
inline constexpr double kRayEpsilon = 1e-6;

/// Triangle ready for intersection: v0 plus edge vectors, tagged with the
/// owning mesh and its triangle index.
struct SceneTriangle {
    Vec3 v0, e1, e2;
    int32_t mesh_id = -1;
    int32_t triangle_index = -1;
};

/// Möller-Trumbore. Returns the ray parameter for the first intersection at
/// t >= min_t, or nullopt when the ray is parallel (|det| < 1e-12), the hit
/// is behind min_t, or barycentrics fall outside the inclusive [0,1] /
/// u+v <= 1 bounds (edges and vertices count as hits).
std::optional<double> intersect_ray_triangle(const Ray& ray, const Vec3& v0,
                                             const Vec3& v1, const Vec3& v2,
                                             double min_t = kRayEpsilon);

/// Closest-hit candidate while a query is in flight. Ties in t (within 1e-9)
/// break to the lower mesh_id, then lower triangle_index, so results are
/// reproducible and BVH/brute-force comparable.
struct RawHit {
    double t = std::numeric_limits<double>::infinity();
    int32_t mesh_id = -1;
    int32_t triangle_index = -1;

    bool valid() const { return mesh_id >= 0; }
};

/// Whether (t, mesh, tri) beats the current best under the deterministic
/// tie-break ordering.
bool hit_improves(double t, int32_t mesh_id, int32_t triangle_index, const RawHit& best);

/// Binary AABB tree over a triangle soup; median split on the longest axis,
/// leaves hold at most 4 triangles.
class Bvh {
public:
    Bvh() = default;
    static Bvh build(std::vector<SceneTriangle> triangles);

    /// Updates `best` with the nearest non-excluded intersection at
    /// t >= kRayEpsilon. `exclude` is a sorted list of mesh ids.
    void closest_hit(const Ray& ray, std::span<const int32_t> exclude,
                     RawHit& best) const;

    std::size_t triangle_count() const { return triangles_.size(); }
    bool empty() const { return triangles_.empty(); }
    std::span<const SceneTriangle> triangles() const { return triangles_; }

    /// Leaf sizes in tree order (partition checks in tests).
    std::vector<int> leaf_sizes() const;

private:
    struct Node {
        Vec3 lo, hi;
        int32_t left = -1;   // internal: child indices
        int32_t right = -1;
        int32_t first = 0;   // leaf: triangle range
        int32_t count = 0;
        bool is_leaf() const { return count > 0; }
    };

    int32_t build_node(int32_t first, int32_t count);

    std::vector<Node> nodes_;
    std::vector<SceneTriangle> triangles_;
};

struct Hit {
    double t = 0.0;
    Vec3 point = Vec3::Zero();
    std::string ooi_label;
    int32_t mesh_id = -1;
    int32_t triangle_index = -1;
};

/// Per-frame two-level query structure: the static BVH is built once per
/// session and shared; the dynamic BVH covers this frame's participant boxes.
/// Mesh ids: static OOIs take 0..S-1 in load order; participant k's face box
/// is S+2k and its body box S+2k+1.
struct SceneBvh {
    std::shared_ptr<const Bvh> statics;
    Bvh dynamics;
    std::vector<std::string> labels;  // mesh_id -> OOI label

    std::optional<Hit> closest_hit(const Ray& ray,
                                   std::span<const int32_t> exclude = {}) const;
};

/// Builds the static-level BVH and its label table from loaded scene
/// geometry.
std::shared_ptr<const Bvh> build_static_bvh(const std::vector<StaticOOI>& statics,
                                            std::vector<std::string>* labels);

/// Assembles the frame's SceneBvh, reusing `cached_static` (pass the result
/// of build_static_bvh; both may be empty for a scene with no statics).
SceneBvh build_bvh(const FrameScene& scene, std::shared_ptr<const Bvh> cached_static,
                   const std::vector<std::string>& static_labels);

/// Convenience for tests: full rebuild including the static level.
SceneBvh build_bvh(const FrameScene& scene);

/// Flattens a frame scene into tagged triangles (also the brute-force oracle
/// input in tests).
std::vector<SceneTriangle> collect_triangles(const FrameScene& scene,
                                             std::vector<std::string>* labels);

}  // namespace gazetrace
