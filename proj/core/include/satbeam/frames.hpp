// Rotation algebra for the n- (north-east-down), b- (UAV body), a- (azimuth
// rotary), f- (antenna plane) and t- (beam) frames.
//
// All elementary rotations are frame (passive) rotations: rot_z(a) maps the
// coordinates of a vector in the parent frame to the child frame obtained by
// turning the parent by +a about its z axis.
#pragma once

#include <Eigen/Core>

namespace satbeam {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;
using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

/// UAV attitude in the n-frame, radians.
struct Attitude {
    double yaw = 0.0;
    double pitch = 0.0;
    double roll = 0.0;
};

/// Gimbal (mechanical beam) angles relative to the b-frame, radians.
struct GimbalAngles {
    double azimuth = 0.0;
    double elevation = 0.0;
    double polarization = 0.0;
};

/// Beam attitude relative to the n-frame (o, e, v), radians.
struct PointingEuler {
    double azimuth = 0.0;
    double elevation = 0.0;
    double polarization = 0.0;
};

/// Unit quaternion, scalar first: (w, x, y, z) = (q1, q2, q3, q4).
/// Represents the body-to-navigation rotation, i.e. quat_to_dcm gives C_b^n.
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static Quaternion from_vector(const Vector4& v) { return {v(0), v(1), v(2), v(3)}; }
    Vector4 to_vector() const { return {w, x, y, z}; }
    double norm() const { return to_vector().norm(); }
    Quaternion normalized() const;
};

// Elementary frame rotations. Throw InvalidArgument for non-finite input.
Matrix3 rot_z(double angle);
Matrix3 rot_y(double angle);
Matrix3 rot_x(double angle);

/// C_b^t = rot_x(gamma) * rot_y(beta) * rot_z(alpha).
Matrix3 c_b_t(const GimbalAngles& gimbal);

/// Entrywise closed form of c_b_t; kept separately so the two can be
/// cross-checked.
Matrix3 c_b_t_closed_form(const GimbalAngles& gimbal);

/// C_n^b = rot_x(roll) * rot_y(pitch) * rot_z(yaw).
Matrix3 c_n_b(const Attitude& attitude);

/// C_n^t = rot_x(v) * rot_y(e) * rot_z(o).
Matrix3 c_n_t(const PointingEuler& euler);

/// Tolerance on |sin(middle angle)| beyond which extraction is refused.
inline constexpr double kSingularityMargin = 1e-9;

/// True when R^T R = I and det R = 1 within `tol`.
bool is_rotation(const Matrix3& r, double tol = 1e-9);

/// Inverse of c_b_t. Throws SingularityError when |C(0,2)| >= 1 - 1e-9 and
/// InvalidArgument when `c` is not a rotation matrix.
GimbalAngles extract_gimbal_angles(const Matrix3& c);

/// Measurement quaternion from Euler angles (3-2-1 sequence).
Quaternion euler_to_quat(const Attitude& attitude);

/// C_b^n from a unit quaternion. Requires |q| = 1 within 1e-6.
Matrix3 quat_to_dcm(const Quaternion& q);

/// Euler angles from C_b^n: yaw = atan2(C21, C11), pitch = -asin(C31),
/// roll = atan2(C32, C33). Throws SingularityError near |pitch| = 90 deg.
Attitude dcm_to_euler(const Matrix3& c_b_n);

}  // namespace satbeam
