#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace gazetrace {

// Camera frame convention used everywhere in the engine: +x right, +y down,
// +z into the scene, camera at the origin. Pixel coordinates share the same
// handedness (origin at the top-left corner of the image). All lengths are
// meters, all angles radians, all geometry double precision.

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pinhole camera model. fx/fy/cx/cy in pixels.
struct CameraIntrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;

    /// Throws ConfigError if fx,fy <= 0 or the principal point lies outside
    /// the image.
    void validate() const;

    /// Inclusive bounds check for a pixel coordinate.
    bool contains(double x, double y) const {
        return x >= 0.0 && x <= static_cast<double>(width) && y >= 0.0 &&
               y <= static_cast<double>(height);
    }
};

/// Gaze direction as pitch/yaw. (0,0) gazes along -z, toward the camera.
/// Positive pitch looks up (-y), positive yaw looks left (-x). This is the
/// one place the angle convention lives; flip it here if a gaze provider
/// disagrees.
struct GazeAngles {
    double pitch = 0.0;  // [-pi/2, pi/2]
    double yaw = 0.0;    // [-pi, pi]

    void validate() const;
};

/// Half-line with unit direction; t parameters are meters.
struct Ray {
    Vec3 origin = Vec3::Zero();
    Vec3 direction = -Vec3::UnitZ();
};

struct RigidTransform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    static RigidTransform identity() { return {}; }

    /// R orthonormal with det +1, within tol.
    bool is_valid_rotation(double tol = 1e-9) const;
};

RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
Vec3 apply(const RigidTransform& m, const Vec3& v);

/// Lifts a pixel at known metric depth into the camera frame:
/// z * [(x-cx)/fx, (y-cy)/fy, 1]. Throws GeometryError for depth <= 0 or a
/// pixel outside the image.
Vec3 back_project(const Vec2& pixel, double depth, const CameraIntrinsics& k);

/// Inverse of back_project. May return pixels outside the image; callers
/// decide clipping. Throws GeometryError for v.z <= 0.
Vec2 project(const Vec3& v, const CameraIntrinsics& k);

/// The canonical gaze axis rays are expressed against before placement.
inline Vec3 reference_gaze_axis() { return Vec3(0.0, 0.0, -1.0); }

/// Unit direction for a pitch/yaw pair:
/// (-sin(yaw)cos(pitch), -sin(pitch), -cos(pitch)cos(yaw)).
Vec3 angles_to_direction(const GazeAngles& g);

/// Exact inverse of angles_to_direction (pitch in [-pi/2,pi/2], yaw in
/// (-pi,pi]). Used by the synthetic generator.
GazeAngles direction_to_angles(const Vec3& d);

/// Minimal rotation taking reference_gaze_axis() onto unit d. The
/// antiparallel case d = (0,0,1) uses a fixed 180-degree rotation about +y.
Mat3 direction_to_rotation(const Vec3& d);

}  // namespace gazetrace
