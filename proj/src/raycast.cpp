#include "gazetrace/raycast.hpp"

#include <algorithm>
#include <cmath>

namespace gazetrace {

std::optional<double> intersect_ray_triangle(const Ray& ray, const Vec3& v0,
                                             const Vec3& v1, const Vec3& v2,
                                             double min_t) {
    const Vec3 e1 = v1 - v0;
    const Vec3 e2 = v2 - v0;
    const Vec3 pvec = ray.direction.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < 1e-12) return std::nullopt;
    const double inv_det = 1.0 / det;
    const Vec3 tvec = ray.origin - v0;
    const double u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Vec3 qvec = tvec.cross(e1);
    const double v = ray.direction.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    const double t = e2.dot(qvec) * inv_det;
    if (t < min_t) return std::nullopt;
    return t;
}

bool hit_improves(double t, int32_t mesh_id, int32_t triangle_index, const RawHit& best) {
    if (t < best.t - 1e-9) return true;
    if (t > best.t + 1e-9) return false;
    if (mesh_id != best.mesh_id) return mesh_id < best.mesh_id;
    return triangle_index < best.triangle_index;
}

namespace {

struct TriBounds {
    Vec3 lo, hi, centroid;
};

TriBounds bounds_of(const SceneTriangle& t) {
    const Vec3 v1 = t.v0 + t.e1;
    const Vec3 v2 = t.v0 + t.e2;
    TriBounds b;
    b.lo = t.v0.cwiseMin(v1).cwiseMin(v2);
    b.hi = t.v0.cwiseMax(v1).cwiseMax(v2);
    b.centroid = (b.lo + b.hi) * 0.5;
    return b;
}

inline bool slab_hit(const Vec3& lo, const Vec3& hi, const Vec3& origin,
                     const Vec3& inv_dir, double t_max) {
    double t0 = kRayEpsilon;
    double t1 = t_max;
    for (int a = 0; a < 3; ++a) {
        const double ta = (lo[a] - origin[a]) * inv_dir[a];
        const double tb = (hi[a] - origin[a]) * inv_dir[a];
        t0 = std::max(t0, std::min(ta, tb));
        t1 = std::min(t1, std::max(ta, tb));
    }
    return t0 <= t1;
}

}  // namespace

Bvh Bvh::build(std::vector<SceneTriangle> triangles) {
    Bvh bvh;
    bvh.triangles_ = std::move(triangles);
    if (bvh.triangles_.empty()) return bvh;
    bvh.nodes_.reserve(bvh.triangles_.size() * 2);
    bvh.build_node(0, static_cast<int32_t>(bvh.triangles_.size()));
    return bvh;
}

int32_t Bvh::build_node(int32_t first, int32_t count) {
    const int32_t index = static_cast<int32_t>(nodes_.size());
    nodes_.emplace_back();

    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (int32_t i = first; i < first + count; ++i) {
        const TriBounds b = bounds_of(triangles_[i]);
        lo = lo.cwiseMin(b.lo);
        hi = hi.cwiseMax(b.hi);
    }
    nodes_[index].lo = lo;
    nodes_[index].hi = hi;

    if (count <= 4) {
        nodes_[index].first = first;
        nodes_[index].count = count;
        return index;
    }

    const Vec3 span = hi - lo;
    int axis = 0;
    if (span.y() > span.x()) axis = 1;
    if (span.z() > span[axis]) axis = 2;

    const int32_t mid = first + count / 2;
    std::nth_element(triangles_.begin() + first, triangles_.begin() + mid,
                     triangles_.begin() + first + count,
                     [axis](const SceneTriangle& a, const SceneTriangle& b) {
                         return bounds_of(a).centroid[axis] < bounds_of(b).centroid[axis];
                     });

    const int32_t left = build_node(first, mid - first);
    const int32_t right = build_node(mid, first + count - mid);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

void Bvh::closest_hit(const Ray& ray, std::span<const int32_t> exclude,
                      RawHit& best) const {
    if (triangles_.empty()) return;

    const Vec3 inv_dir(1.0 / ray.direction.x(), 1.0 / ray.direction.y(),
                       1.0 / ray.direction.z());
    int32_t stack[64];
    int depth = 0;
    stack[depth++] = 0;
    while (depth > 0) {
        const Node& node = nodes_[stack[--depth]];
        // Pruning keeps a 1e-9 margin so tie candidates are still visited.
        if (!slab_hit(node.lo, node.hi, ray.origin, inv_dir, best.t + 1e-9)) continue;
        if (node.is_leaf()) {
            for (int32_t i = node.first; i < node.first + node.count; ++i) {
                const SceneTriangle& tri = triangles_[i];
                if (std::binary_search(exclude.begin(), exclude.end(), tri.mesh_id)) {
                    continue;
                }
                const auto t = intersect_ray_triangle(ray, tri.v0, tri.v0 + tri.e1,
                                                      tri.v0 + tri.e2);
                if (t && hit_improves(*t, tri.mesh_id, tri.triangle_index, best)) {
                    best.t = *t;
                    best.mesh_id = tri.mesh_id;
                    best.triangle_index = tri.triangle_index;
                }
            }
        } else {
            stack[depth++] = node.left;
            stack[depth++] = node.right;
        }
    }
}

std::vector<int> Bvh::leaf_sizes() const {
    std::vector<int> sizes;
    for (const auto& n : nodes_) {
        if (n.is_leaf()) sizes.push_back(n.count);
    }
    return sizes;
}

namespace {

void append_mesh(std::vector<SceneTriangle>& out, const TriangleMesh& mesh,
                 int32_t mesh_id) {
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto& t = mesh.triangles[i];
        SceneTriangle st;
        st.v0 = mesh.vertices[t[0]];
        st.e1 = mesh.vertices[t[1]] - st.v0;
        st.e2 = mesh.vertices[t[2]] - st.v0;
        st.mesh_id = mesh_id;
        st.triangle_index = static_cast<int32_t>(i);
        out.push_back(st);
    }
}

std::vector<SceneTriangle> dynamic_triangles(const FrameScene& scene,
                                             int32_t first_mesh_id,
                                             std::vector<std::string>* labels) {
    std::vector<SceneTriangle> out;
    out.reserve(scene.dynamic.size() * 24);
    int32_t id = first_mesh_id;
    for (const auto& d : scene.dynamic) {
        append_mesh(out, box_to_mesh(d.face_box), id);
        if (labels) labels->push_back(d.participant_id);
        ++id;
        append_mesh(out, box_to_mesh(d.body_box), id);
        if (labels) labels->push_back(d.participant_id);
        ++id;
    }
    return out;
}

}  // namespace

std::shared_ptr<const Bvh> build_static_bvh(const std::vector<StaticOOI>& statics,
                                            std::vector<std::string>* labels) {
    std::vector<SceneTriangle> tris;
    for (std::size_t i = 0; i < statics.size(); ++i) {
        append_mesh(tris, statics[i].mesh, static_cast<int32_t>(i));
        if (labels) labels->push_back(statics[i].label);
    }
    return std::make_shared<Bvh>(Bvh::build(std::move(tris)));
}

SceneBvh build_bvh(const FrameScene& scene, std::shared_ptr<const Bvh> cached_static,
                   const std::vector<std::string>& static_labels) {
    SceneBvh out;
    out.statics = std::move(cached_static);
    out.labels = static_labels;
    out.dynamics = Bvh::build(
        dynamic_triangles(scene, static_cast<int32_t>(static_labels.size()), &out.labels));
    return out;
}

SceneBvh build_bvh(const FrameScene& scene) {
    std::vector<std::string> labels;
    auto statics = scene.static_oois
                       ? build_static_bvh(*scene.static_oois, &labels)
                       : std::make_shared<const Bvh>();
    return build_bvh(scene, std::move(statics), labels);
}

std::vector<SceneTriangle> collect_triangles(const FrameScene& scene,
                                             std::vector<std::string>* labels) {
    std::vector<SceneTriangle> tris;
    int32_t next_id = 0;
    if (scene.static_oois) {
        for (const auto& s : *scene.static_oois) {
            append_mesh(tris, s.mesh, next_id++);
            if (labels) labels->push_back(s.label);
        }
    }
    auto dyn = dynamic_triangles(scene, next_id, labels);
    tris.insert(tris.end(), dyn.begin(), dyn.end());
    return tris;
}

std::optional<Hit> SceneBvh::closest_hit(const Ray& ray,
                                         std::span<const int32_t> exclude) const {
    RawHit best;
    if (statics) statics->closest_hit(ray, exclude, best);
    dynamics.closest_hit(ray, exclude, best);
    if (!best.valid()) return std::nullopt;
    Hit hit;
    hit.t = best.t;
    hit.point = ray.origin + best.t * ray.direction;
    hit.mesh_id = best.mesh_id;
    hit.triangle_index = best.triangle_index;
    hit.ooi_label = labels.at(static_cast<std::size_t>(best.mesh_id));
    return hit;
}

}  // namespace gazetrace
