#include <cmath>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"
#include "satbeam/frames.hpp"

using namespace satbeam;

namespace {

Matrix3 rows(std::initializer_list<double> v) {
    Matrix3 m;
    auto it = v.begin();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = *it++;
    return m;
}

double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

Attitude random_attitude(std::mt19937_64& g) {
    return {uniform(g, -kPi, kPi), uniform(g, -1.5, 1.5), uniform(g, -kPi, kPi)};
}

// Active body-to-navigation rotation built independently with Eigen.
Matrix3 eigen_c_b_n(const Attitude& a) {
    return (Eigen::AngleAxisd(a.yaw, Vector3::UnitZ()) * Eigen::AngleAxisd(a.pitch, Vector3::UnitY()) *
            Eigen::AngleAxisd(a.roll, Vector3::UnitX()))
        .toRotationMatrix();
}

}  // namespace

TEST(Rotations, ZeroAngleIsIdentity) {
    EXPECT_TRUE(rot_z(0.0).isIdentity(0.0));
    EXPECT_TRUE(rot_y(0.0).isIdentity(0.0));
    EXPECT_TRUE(rot_x(0.0).isIdentity(0.0));
}

TEST(Rotations, QuarterTurnsPermuteAxes) {
    EXPECT_LT((rot_z(kPi / 2) - rows({0, 1, 0, -1, 0, 0, 0, 0, 1})).norm(), 1e-15);
    EXPECT_LT((rot_y(kPi / 2) - rows({0, 0, -1, 0, 1, 0, 1, 0, 0})).norm(), 1e-15);
    EXPECT_LT((rot_x(kPi / 2) - rows({1, 0, 0, 0, 0, 1, 0, -1, 0})).norm(), 1e-15);
}

TEST(Rotations, InverseAndTranspose) {
    std::mt19937_64 g(7);
    for (int i = 0; i < 100; ++i) {
        const double a = uniform(g, -10, 10);
        EXPECT_LT((rot_z(a) * rot_z(-a) - Matrix3::Identity()).norm(), 1e-15);
        EXPECT_LT((rot_y(a).transpose() - rot_y(-a)).norm(), 1e-15);
        EXPECT_NEAR(rot_x(a).determinant(), 1.0, 1e-12);
    }
}

TEST(Rotations, OrthonormalForRandomAngles) {
    std::mt19937_64 g(11);
    for (int i = 0; i < 1000; ++i) {
        const double a = uniform(g, -100, 100);
        for (const Matrix3& r : {rot_z(a), rot_y(a), rot_x(a)}) {
            EXPECT_LT((r.transpose() * r - Matrix3::Identity()).norm(), 1e-12);
            EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
        }
    }
}

TEST(Rotations, NonFiniteInputRejected) {
    EXPECT_THROW(rot_z(std::nan("")), InvalidArgument);
    EXPECT_THROW(rot_y(INFINITY), InvalidArgument);
    EXPECT_THROW(rot_x(-INFINITY), InvalidArgument);
}

TEST(GimbalMatrix, Examples) {
    EXPECT_TRUE(c_b_t({0, 0, 0}).isIdentity(0.0));
    const double a = 0.7;
    EXPECT_LT((c_b_t({a, 0, 0}) - rot_z(a)).norm(), 1e-15);
    const GimbalAngles g{deg_to_rad(30), deg_to_rad(20), deg_to_rad(10)};
    EXPECT_NEAR(c_b_t(g)(0, 0), std::cos(deg_to_rad(30)) * std::cos(deg_to_rad(20)), 1e-15);
    EXPECT_NEAR(c_b_t(g)(0, 0), 0.81380, 5e-6);
}

TEST(GimbalMatrix, ClosedFormMatchesProduct) {
    std::mt19937_64 g(3);
    for (int i = 0; i < 10000; ++i) {
        const GimbalAngles a{uniform(g, -kPi, kPi), uniform(g, -kPi, kPi), uniform(g, -kPi, kPi)};
        EXPECT_LT((c_b_t(a) - c_b_t_closed_form(a)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(AttitudeMatrix, OrderAndOrthogonality) {
    EXPECT_TRUE(c_n_b({0, 0, 0}).isIdentity(0.0));
    EXPECT_LT((c_n_b({0.4, 0, 0}) - rot_z(0.4)).norm(), 1e-15);
    std::mt19937_64 g(5);
    for (int i = 0; i < 100; ++i) {
        const Attitude a = random_attitude(g);
        EXPECT_LT((c_n_b(a) * c_n_b(a).transpose() - Matrix3::Identity()).norm(), 1e-12);
        EXPECT_LT((c_n_b(a) - rot_x(a.roll) * rot_y(a.pitch) * rot_z(a.yaw)).norm(), 1e-15);
    }
}

TEST(BeamMatrix, Examples) {
    EXPECT_TRUE(c_n_t({0, 0, 0}).isIdentity(0.0));
    EXPECT_LT((c_n_t({kPi, 0, 0}) - rows({-1, 0, 0, 0, -1, 0, 0, 0, 1})).norm(), 1e-15);
    const Matrix3 c = c_n_t({deg_to_rad(186.11), deg_to_rad(50.1), deg_to_rad(-5.05)});
    EXPECT_LT((c.transpose() * c - Matrix3::Identity()).norm(), 1e-12);
}

TEST(GimbalExtraction, Examples) {
    const GimbalAngles z = extract_gimbal_angles(Matrix3::Identity());
    EXPECT_EQ(z.azimuth, 0.0);
    EXPECT_EQ(z.elevation, 0.0);
    EXPECT_EQ(z.polarization, 0.0);

    const GimbalAngles g{deg_to_rad(30), deg_to_rad(20), deg_to_rad(10)};
    const GimbalAngles r = extract_gimbal_angles(c_b_t(g));
    EXPECT_NEAR(r.azimuth, g.azimuth, 1e-12);
    EXPECT_NEAR(r.elevation, g.elevation, 1e-12);
    EXPECT_NEAR(r.polarization, g.polarization, 1e-12);
}

TEST(GimbalExtraction, SingularElevation) {
    EXPECT_THROW(extract_gimbal_angles(c_b_t({0.3, kPi / 2, 0.1})), SingularityError);
    EXPECT_THROW(extract_gimbal_angles(c_b_t({0.3, -kPi / 2, 0.1})), SingularityError);
}

TEST(GimbalExtraction, NonRotationRejected) {
    EXPECT_THROW(extract_gimbal_angles(2.0 * Matrix3::Identity()), InvalidArgument);
    Matrix3 reflection = Matrix3::Identity();
    reflection(2, 2) = -1;
    EXPECT_THROW(extract_gimbal_angles(reflection), InvalidArgument);
}

TEST(GimbalExtraction, RoundTripProperty) {
    std::mt19937_64 g(13);
    for (int i = 0; i < 10000; ++i) {
        const GimbalAngles a{uniform(g, -kPi, kPi), uniform(g, -1.55, 1.55), uniform(g, -kPi, kPi)};
        const GimbalAngles r = extract_gimbal_angles(c_b_t(a));
        EXPECT_NEAR(angle_diff(r.azimuth, a.azimuth), 0.0, 1e-10);
        EXPECT_NEAR(r.elevation, a.elevation, 1e-10);
        EXPECT_NEAR(angle_diff(r.polarization, a.polarization), 0.0, 1e-10);
        EXPECT_LT((c_b_t(r) - c_b_t(a)).norm(), 1e-10);
    }
}

TEST(Quaternion, Examples) {
    const Quaternion id = euler_to_quat({0, 0, 0});
    EXPECT_EQ(id.to_vector(), Vector4(1, 0, 0, 0));
    const Quaternion yaw90 = euler_to_quat({kPi / 2, 0, 0});
    EXPECT_NEAR(yaw90.w, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(yaw90.x, 0.0, 1e-15);
    EXPECT_NEAR(yaw90.y, 0.0, 1e-15);
    EXPECT_NEAR(yaw90.z, std::sqrt(0.5), 1e-15);
}

TEST(Quaternion, UnitNormAndMatchesEigen) {
    std::mt19937_64 g(17);
    for (int i = 0; i < 1000; ++i) {
        const Attitude a = random_attitude(g);
        const Quaternion q = euler_to_quat(a);
        EXPECT_NEAR(q.norm(), 1.0, 1e-12);
        const Eigen::Quaterniond ref(eigen_c_b_n(a));
        const double sign = (ref.w() * q.w + ref.x() * q.x + ref.y() * q.y + ref.z() * q.z) < 0 ? -1 : 1;
        EXPECT_NEAR(sign * q.w, ref.w(), 1e-12);
        EXPECT_NEAR(sign * q.x, ref.x(), 1e-12);
        EXPECT_NEAR(sign * q.y, ref.y(), 1e-12);
        EXPECT_NEAR(sign * q.z, ref.z(), 1e-12);
    }
}

TEST(QuaternionDcm, Examples) {
    EXPECT_TRUE(quat_to_dcm({1, 0, 0, 0}).isIdentity(0.0));
    const Quaternion q = euler_to_quat({0.3, -0.2, 1.1});
    const Quaternion neg{-q.w, -q.x, -q.y, -q.z};
    EXPECT_LT((quat_to_dcm(q) - quat_to_dcm(neg)).norm(), 1e-15);
    EXPECT_THROW(quat_to_dcm({1.1, 0, 0, 0}), InvalidArgument);
}

TEST(QuaternionDcm, ConsistentWithAttitudeMatrix) {
    std::mt19937_64 g(19);
    for (int i = 0; i < 1000; ++i) {
        const Attitude a = random_attitude(g);
        EXPECT_LT((quat_to_dcm(euler_to_quat(a)) - c_n_b(a).transpose()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((quat_to_dcm(euler_to_quat(a)) - eigen_c_b_n(a)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(DcmEuler, Examples) {
    const Attitude z = dcm_to_euler(Matrix3::Identity());
    EXPECT_EQ(z.yaw, 0.0);
    EXPECT_EQ(z.pitch, 0.0);
    EXPECT_EQ(z.roll, 0.0);

    const Attitude a{deg_to_rad(45), deg_to_rad(10), deg_to_rad(-20)};
    const Attitude r = dcm_to_euler(quat_to_dcm(euler_to_quat(a)));
    EXPECT_NEAR(r.yaw, a.yaw, 1e-12);
    EXPECT_NEAR(r.pitch, a.pitch, 1e-12);
    EXPECT_NEAR(r.roll, a.roll, 1e-12);
}

TEST(DcmEuler, PitchSingularity) {
    // C31 = 1 means pitch = -90 deg.
    EXPECT_THROW(dcm_to_euler(c_n_b({0.2, -kPi / 2, 0.1}).transpose()), SingularityError);
    EXPECT_THROW(dcm_to_euler(c_n_b({0.2, kPi / 2, 0.1}).transpose()), SingularityError);
}

TEST(DcmEuler, RoundTripProperty) {
    std::mt19937_64 g(23);
    for (int i = 0; i < 10000; ++i) {
        const Attitude a{uniform(g, -kPi, kPi), uniform(g, -1.55, 1.55), uniform(g, -kPi, kPi)};
        const Attitude r = dcm_to_euler(quat_to_dcm(euler_to_quat(a)));
        EXPECT_NEAR(angle_diff(r.yaw, a.yaw), 0.0, 1e-10);
        EXPECT_NEAR(r.pitch, a.pitch, 1e-10);
        EXPECT_NEAR(angle_diff(r.roll, a.roll), 0.0, 1e-10);
    }
}

TEST(Angles, WrapCanonicalRange) {
    EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
    EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
    EXPECT_NEAR(wrap_angle(3 * kPi), kPi, 1e-12);
    EXPECT_NEAR(wrap_angle(2 * kPi + 0.1), 0.1, 1e-12);
    EXPECT_NEAR(angle_diff(deg_to_rad(179), deg_to_rad(-179)), deg_to_rad(-2), 1e-12);
    EXPECT_NEAR(rad_to_deg(deg_to_rad(37.5)), 37.5, 1e-12);
}
