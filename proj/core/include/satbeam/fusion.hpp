// Linear Kalman filter on the attitude quaternion. The gyro drives the
// prediction, and a quaternion built from accelerometer pitch/roll and GPS yaw
// is the measurement (observation matrix = identity).
#pragma once

#include "satbeam/frames.hpp"
#include "satbeam/sensors.hpp"

namespace satbeam {

struct FusionConfig {
    double process_noise = 1e-6;       // Q_chi = process_noise * I
    double measurement_noise = 1e-4;   // Q_u = measurement_noise * I
    double initial_covariance = 1e-2;  // kappa(0) = initial_covariance * I
};

struct FilterState {
    Quaternion q;
    Matrix4 covariance = Matrix4::Identity() * 1e-2;
    Matrix4 process_noise = Matrix4::Identity() * 1e-6;
    Matrix4 measurement_noise = Matrix4::Identity() * 1e-4;

    /// Filter seeded with `q0` and the covariances from `config`.
    static FilterState initial(const Quaternion& q0, const FusionConfig& config);
};

struct Prediction {
    Vector4 q;
    Matrix4 covariance;
};

/// Gamma = I + (T_s / 2) * Omega(omega), first-order quaternion propagation.
Matrix4 transition_matrix(const BodyRates& rates, double sample_period);

Prediction predict(const FilterState& state, const BodyRates& rates, double sample_period);

/// Euler angles to a unit measurement quaternion, sign-flipped into the
/// hemisphere of `reference` when their inner product is negative.
Vector4 measurement_quat(double yaw, double pitch, double roll, const Vector4& reference);

/// Correction step. Throws NumericalError when kappa^- + Q_u is singular.
FilterState update(const FilterState& state, const Prediction& predicted, const Vector4& z);

struct FuseResult {
    FilterState state;
    Attitude attitude;
};

/// predict -> measurement_quat -> update -> attitude extraction.
FuseResult fuse_step(const FilterState& state, const BodyRates& measured_rates, double yaw_m,
                     double pitch_m, double roll_m, double sample_period);

}  // namespace satbeam
