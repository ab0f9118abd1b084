#include "satbeam/frames.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "satbeam/errors.hpp"

namespace satbeam {

namespace {

void require_finite(double angle, const char* what) {
    if (!std::isfinite(angle)) {
        throw InvalidArgument(std::string(what) + ": angle must be finite");
    }
}

}  // namespace

Quaternion Quaternion::normalized() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw NumericalError("cannot normalize a zero or non-finite quaternion");
    }
    return from_vector(to_vector() / n);
}

Matrix3 rot_z(double angle) {
    require_finite(angle, "rot_z");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Matrix3 r;
    r << c, s, 0.0,
        -s, c, 0.0,
        0.0, 0.0, 1.0;
    return r;
}

Matrix3 rot_y(double angle) {
    require_finite(angle, "rot_y");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Matrix3 r;
    r << c, 0.0, -s,
        0.0, 1.0, 0.0,
        s, 0.0, c;
    return r;
}

Matrix3 rot_x(double angle) {
    require_finite(angle, "rot_x");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Matrix3 r;
    r << 1.0, 0.0, 0.0,
        0.0, c, s,
        0.0, -s, c;
    return r;
}

Matrix3 c_b_t(const GimbalAngles& g) {
    return rot_x(g.polarization) * rot_y(g.elevation) * rot_z(g.azimuth);
}

Matrix3 c_b_t_closed_form(const GimbalAngles& g) {
    require_finite(g.azimuth, "c_b_t");
    require_finite(g.elevation, "c_b_t");
    require_finite(g.polarization, "c_b_t");
    const double ca = std::cos(g.azimuth), sa = std::sin(g.azimuth);
    const double cb = std::cos(g.elevation), sb = std::sin(g.elevation);
    const double cg = std::cos(g.polarization), sg = std::sin(g.polarization);
    Matrix3 r;
    r << ca * cb, sa * cb, -sb,
        ca * sb * sg - sa * cg, sa * sb * sg + ca * cg, cb * sg,
        sa * sg + ca * sb * cg, sa * sb * cg - ca * sg, cb * cg;
    return r;
}

Matrix3 c_n_b(const Attitude& a) {
    return rot_x(a.roll) * rot_y(a.pitch) * rot_z(a.yaw);
}

Matrix3 c_n_t(const PointingEuler& e) {
    return rot_x(e.polarization) * rot_y(e.elevation) * rot_z(e.azimuth);
}

bool is_rotation(const Matrix3& r, double tol) {
    if (!r.allFinite()) return false;
    const double ortho = (r.transpose() * r - Matrix3::Identity()).cwiseAbs().maxCoeff();
    return ortho <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

GimbalAngles extract_gimbal_angles(const Matrix3& c) {
    if (!is_rotation(c, 1e-6)) {
        throw InvalidArgument("extract_gimbal_angles: input is not a rotation matrix");
    }
    const double s13 = c(0, 2);
    if (std::abs(s13) >= 1.0 - kSingularityMargin) {
        throw SingularityError("extract_gimbal_angles: elevation at +/-90 deg");
    }
    return {std::atan2(c(0, 1), c(0, 0)), -std::asin(s13), std::atan2(c(1, 2), c(2, 2))};
}

Quaternion euler_to_quat(const Attitude& a) {
    const double cy = std::cos(0.5 * a.yaw), sy = std::sin(0.5 * a.yaw);
    const double cp = std::cos(0.5 * a.pitch), sp = std::sin(0.5 * a.pitch);
    const double cr = std::cos(0.5 * a.roll), sr = std::sin(0.5 * a.roll);
    return {cy * cp * cr + sy * sp * sr,
            cy * cp * sr - sy * sp * cr,
            cy * sp * cr + sy * cp * sr,
            sy * cp * cr - cy * sp * sr};
}

Matrix3 quat_to_dcm(const Quaternion& q) {
    if (std::abs(q.norm() - 1.0) > 1e-6) {
        throw InvalidArgument("quat_to_dcm: quaternion is not normalized");
    }
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    Matrix3 c;
    c << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
        2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
        2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y);
    return c;
}

Attitude dcm_to_euler(const Matrix3& c) {
    if (!is_rotation(c, 1e-6)) {
        throw InvalidArgument("dcm_to_euler: input is not a rotation matrix");
    }
    const double s31 = c(2, 0);
    if (std::abs(s31) >= 1.0 - kSingularityMargin) {
        throw SingularityError("dcm_to_euler: pitch at +/-90 deg");
    }
    return {std::atan2(c(1, 0), c(0, 0)), -std::asin(s31), std::atan2(c(2, 1), c(2, 2))};
}

}  // namespace satbeam
