#include "gazetrace/geometry.hpp"

#include <cmath>

#include "gazetrace/errors.hpp"

namespace gazetrace {

void CameraIntrinsics::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0)) {
        throw ConfigError("intrinsics: focal lengths must be positive");
    }
    if (width <= 0 || height <= 0) {
        throw ConfigError("intrinsics: image size must be positive");
    }
    if (!(cx >= 0.0 && cx < static_cast<double>(width)) ||
        !(cy >= 0.0 && cy < static_cast<double>(height))) {
        throw ConfigError("intrinsics: principal point outside image");
    }
}

void GazeAngles::validate() const {
    constexpr double half_pi = 1.5707963267948966;
    constexpr double pi = 3.141592653589793;
    if (!std::isfinite(pitch) || !std::isfinite(yaw) || std::abs(pitch) > half_pi ||
        std::abs(yaw) > pi) {
        throw DataError("gaze angles out of range");
    }
}

bool RigidTransform::is_valid_rotation(double tol) const {
    const Mat3 gram = rotation.transpose() * rotation;
    if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
    return std::abs(rotation.determinant() - 1.0) <= tol;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
    return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

Vec3 apply(const RigidTransform& m, const Vec3& v) {
    return m.rotation * v + m.translation;
}

Vec3 back_project(const Vec2& pixel, double depth, const CameraIntrinsics& k) {
    if (!(depth > 0.0)) {
        throw GeometryError("back_project: invalid depth (must be > 0)");
    }
    if (!k.contains(pixel.x(), pixel.y())) {
        throw GeometryError("back_project: pixel out of image bounds");
    }
    return Vec3(depth * (pixel.x() - k.cx) / k.fx, depth * (pixel.y() - k.cy) / k.fy,
                depth);
}

Vec2 project(const Vec3& v, const CameraIntrinsics& k) {
    if (!(v.z() > 0.0)) {
        throw GeometryError("project: point behind camera (z <= 0)");
    }
    return Vec2(k.fx * v.x() / v.z() + k.cx, k.fy * v.y() / v.z() + k.cy);
}

Vec3 angles_to_direction(const GazeAngles& g) {
    const double cp = std::cos(g.pitch);
    return Vec3(-std::sin(g.yaw) * cp, -std::sin(g.pitch), -cp * std::cos(g.yaw));
}

GazeAngles direction_to_angles(const Vec3& d) {
    GazeAngles g;
    g.pitch = -std::asin(std::clamp(d.y(), -1.0, 1.0));
    g.yaw = std::atan2(-d.x(), -d.z());
    return g;
}

Mat3 direction_to_rotation(const Vec3& d) {
    const Vec3 a = reference_gaze_axis();
    const double c = a.dot(d);
    const Vec3 axis = a.cross(d);
    const double s = axis.norm();
    if (s < 1e-12) {
        if (c > 0.0) return Mat3::Identity();
        // Antiparallel tie-break: 180 degrees about +y.
        return Eigen::AngleAxisd(M_PI, Vec3::UnitY()).toRotationMatrix();
    }
    return Eigen::AngleAxisd(std::atan2(s, c), axis / s).toRotationMatrix();
}

}  // namespace gazetrace
