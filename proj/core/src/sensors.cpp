#include "satbeam/sensors.hpp"

#include <algorithm>
#include <cmath>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"

namespace satbeam {

namespace {

struct AxisSample {
    double angle;
    double rate;
};

AxisSample sample_axis(const AxisMotion& m, double t) {
    const double w = 2.0 * kPi * m.frequency;
    return {m.offset + m.amplitude * std::sin(w * t + m.phase),
            m.amplitude * w * std::cos(w * t + m.phase)};
}

}  // namespace

FlightState flight_profile(double t, const ProfileConfig& profile) {
    if (!(t >= 0.0)) throw InvalidArgument("flight_profile: time must be >= 0");
    const auto yaw = sample_axis(profile.yaw, t);
    const auto pitch = sample_axis(profile.pitch, t);
    const auto roll = sample_axis(profile.roll, t);

    FlightState s;
    s.time = t;
    s.attitude = {yaw.angle, pitch.angle, roll.angle};
    s.euler_rates = {roll.rate, pitch.rate, yaw.rate};
    s.body_rates = euler_rates_to_body_rates(s.attitude, s.euler_rates);
    return s;
}

BodyRates euler_rates_to_body_rates(const Attitude& a, const EulerRates& r) {
    if (std::abs(std::cos(a.pitch)) <= kSingularityMargin) {
        throw SingularityError("euler_rates_to_body_rates: pitch at +/-90 deg");
    }
    const Matrix3 t3 = rot_x(a.roll);
    const Vector3 w = Vector3(r.roll, 0.0, 0.0) + t3 * Vector3(0.0, r.pitch, 0.0) +
                      t3 * rot_y(a.pitch) * Vector3(0.0, 0.0, r.yaw);
    return BodyRates::from_vector(w);
}

EulerRates body_rates_to_euler_rates(const Attitude& a, const BodyRates& w) {
    const double cp = std::cos(a.pitch);
    if (std::abs(a.pitch) >= kPi / 2.0 - 1e-6 || std::abs(cp) < 1e-6) {
        throw SingularityError("body_rates_to_euler_rates: pitch too close to +/-90 deg");
    }
    const double sr = std::sin(a.roll), cr = std::cos(a.roll);
    const double tp = std::tan(a.pitch);
    return {w.x + sr * tp * w.y + cr * tp * w.z,
            cr * w.y - sr * w.z,
            sr / cp * w.y + cr / cp * w.z};
}

BodyRates gyro_measure(const BodyRates& truth, const SensorNoiseConfig& noise, Rng& rng) {
    auto axis = [&](double v) { return v + noise.gyro_bias + noise.gyro_white_sigma * rng.normal(); };
    // Evaluated in x, y, z order so the draw sequence is fixed.
    const double x = axis(truth.x);
    const double y = axis(truth.y);
    const double z = axis(truth.z);
    return {x, y, z};
}

Attitude gyro_integrate(const Attitude& prev, const EulerRates& rates, double sample_period) {
    return {prev.yaw + rates.yaw * sample_period,
            prev.pitch + rates.pitch * sample_period,
            prev.roll + rates.roll * sample_period};
}

AccelMeasurement accel_measure(const Attitude& a, const SensorNoiseConfig& noise, Rng& rng) {
    const double g = noise.gravity;
    const double sp = std::sin(a.pitch), cp = std::cos(a.pitch);
    const double sr = std::sin(a.roll), cr = std::cos(a.roll);
    const double fx = g * sp + noise.accel_white_sigma * rng.normal();
    const double fy = -g * sr * cp + noise.accel_white_sigma * rng.normal();
    const double fz = -g * cr * cp + noise.accel_white_sigma * rng.normal();
    return {fx, fy, fz};
}

PitchRoll accel_to_pitch_roll(const AccelMeasurement& f, double gravity) {
    if (!(gravity > 0.0)) throw InvalidArgument("accel_to_pitch_roll: gravity must be > 0");
    const double ratio = f.fx / gravity;
    PitchRoll out;
    out.saturated = std::abs(ratio) > 1.0;
    out.pitch = std::asin(std::clamp(ratio, -1.0, 1.0));
    out.roll = std::atan2(-f.fy, -f.fz);
    return out;
}

double gps_yaw_measure(const Attitude& a, const SensorNoiseConfig& noise, Rng& rng) {
    const Vector3 baseline_b(noise.gps_baseline_length, 0.0, 0.0);
    const Vector3 baseline_n = c_n_b(a).transpose() * baseline_b;
    return std::atan2(baseline_n(1), baseline_n(0)) + noise.gps_yaw_sigma * rng.normal();
}

}  // namespace satbeam
