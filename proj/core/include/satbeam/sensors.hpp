// Truth flight profile and the three low-cost attitude sensors: MEMS gyro
// triad, accelerometer triad and a dual-antenna GPS heading receiver.
#pragma once

#include "satbeam/angles.hpp"
#include "satbeam/frames.hpp"
#include "satbeam/rng.hpp"

namespace satbeam {

/// Angular velocity of the body in the b-frame, rad/s.
struct BodyRates {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vector3 to_vector() const { return {x, y, z}; }
    static BodyRates from_vector(const Vector3& v) { return {v(0), v(1), v(2)}; }
};

/// Time derivatives of the Euler angles, rad/s.
struct EulerRates {
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
};

/// Specific-force output of the accelerometer triad, m/s^2.
struct AccelMeasurement {
    double fx = 0.0;
    double fy = 0.0;
    double fz = 0.0;
};

struct SensorNoiseConfig {
    double gyro_white_sigma = 0.01;        // rad/s
    double gyro_bias = 0.002;              // rad/s, same on every axis
    double accel_white_sigma = 0.05;       // m/s^2
    double gps_yaw_sigma = deg_to_rad(0.3);     // rad
    double sample_period = 0.01;           // s
    double gravity = 9.81;                 // m/s^2
    double gps_baseline_length = 2.0;      // m

    /// Same configuration with every noise term zeroed.
    SensorNoiseConfig noiseless() const {
        SensorNoiseConfig c = *this;
        c.gyro_white_sigma = c.gyro_bias = c.accel_white_sigma = c.gps_yaw_sigma = 0.0;
        return c;
    }
};

/// One sinusoidal component: offset + amplitude * sin(2 pi f t + phase).
struct AxisMotion {
    double offset = 0.0;     // rad
    double amplitude = 0.0;  // rad
    double frequency = 0.0;  // Hz
    double phase = 0.0;      // rad
};

struct ProfileConfig {
    AxisMotion yaw{0.0, deg_to_rad(10.0), 0.05, 0.0};
    AxisMotion pitch{0.0, deg_to_rad(5.0), 0.1, 0.0};
    AxisMotion roll{0.0, deg_to_rad(10.0), 0.2, 0.0};
};

struct FlightState {
    double time = 0.0;
    Attitude attitude;
    EulerRates euler_rates;
    BodyRates body_rates;
};

/// Truth state at time `t` >= 0.
FlightState flight_profile(double t, const ProfileConfig& profile);

/// Body rates from Euler rates (kinematic relation for the 3-2-1 sequence).
/// Throws SingularityError at |pitch| = 90 deg.
BodyRates euler_rates_to_body_rates(const Attitude& attitude, const EulerRates& rates);

/// Inverse mapping; requires |pitch| < 90 deg - 1e-6.
EulerRates body_rates_to_euler_rates(const Attitude& attitude, const BodyRates& rates);

/// Gyro output: truth + constant bias + white Gaussian noise per axis.
BodyRates gyro_measure(const BodyRates& truth, const SensorNoiseConfig& noise, Rng& rng);

/// One rectangular integration step of the Euler angles.
Attitude gyro_integrate(const Attitude& previous, const EulerRates& rates, double sample_period);

/// Quasi-static accelerometer model; level flight reads (0, 0, -g).
AccelMeasurement accel_measure(const Attitude& attitude, const SensorNoiseConfig& noise, Rng& rng);

struct PitchRoll {
    double pitch = 0.0;
    double roll = 0.0;
    bool saturated = false;  // |f_x| exceeded g and was clamped
};

PitchRoll accel_to_pitch_roll(const AccelMeasurement& f, double gravity);

/// Yaw from the GPS antenna baseline expressed in the n-frame.
double gps_yaw_measure(const Attitude& attitude, const SensorNoiseConfig& noise, Rng& rng);

}  // namespace satbeam
