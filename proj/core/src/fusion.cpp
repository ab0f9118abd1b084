#include "satbeam/fusion.hpp"

#include <cmath>

#include <Eigen/LU>

#include "satbeam/errors.hpp"

namespace satbeam {

FilterState FilterState::initial(const Quaternion& q0, const FusionConfig& config) {
    FilterState s;
    s.q = q0.normalized();
    s.covariance = Matrix4::Identity() * config.initial_covariance;
    s.process_noise = Matrix4::Identity() * config.process_noise;
    s.measurement_noise = Matrix4::Identity() * config.measurement_noise;
    return s;
}

Matrix4 transition_matrix(const BodyRates& w, double sample_period) {
    Matrix4 omega;
    omega << 0.0, -w.x, -w.y, -w.z,
        w.x, 0.0, w.z, -w.y,
        w.y, -w.z, 0.0, w.x,
        w.z, w.y, -w.x, 0.0;
    return Matrix4::Identity() + 0.5 * sample_period * omega;
}

Prediction predict(const FilterState& state, const BodyRates& rates, double sample_period) {
    const Matrix4 gamma = transition_matrix(rates, sample_period);
    return {gamma * state.q.to_vector(),
            gamma * state.covariance * gamma.transpose() + state.process_noise};
}

Vector4 measurement_quat(double yaw, double pitch, double roll, const Vector4& reference) {
    Vector4 z = euler_to_quat({yaw, pitch, roll}).to_vector();
    z.normalize();
    if (z.dot(reference) < 0.0) z = -z;
    return z;
}

FilterState update(const FilterState& state, const Prediction& pred, const Vector4& z) {
    const Matrix4 innovation_cov = pred.covariance + state.measurement_noise;
    Eigen::FullPivLU<Matrix4> lu(innovation_cov);
    if (!lu.isInvertible()) {
        throw NumericalError("fusion update: innovation covariance is singular");
    }
    const Matrix4 gain = pred.covariance * lu.inverse();
    const Vector4 corrected = pred.q + gain * (z - pred.q);
    const double n = corrected.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw NumericalError("fusion update: corrected quaternion is degenerate");
    }

    FilterState next = state;
    next.q = Quaternion::from_vector(corrected / n);
    Matrix4 cov = (Matrix4::Identity() - gain) * pred.covariance;
    next.covariance = 0.5 * (cov + cov.transpose());
    return next;
}

FuseResult fuse_step(const FilterState& state, const BodyRates& measured_rates, double yaw_m,
                     double pitch_m, double roll_m, double sample_period) {
    const Prediction pred = predict(state, measured_rates, sample_period);
    const Vector4 z = measurement_quat(yaw_m, pitch_m, roll_m, pred.q);
    FilterState next = update(state, pred, z);
    return {next, dcm_to_euler(quat_to_dcm(next.q))};
}

}  // namespace satbeam
