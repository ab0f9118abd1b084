// Coarse beam alignment: geodesic pointing solution (beam stabilization),
// body-rate compensation (dynamic isolation) and a rate-limited three-axis
// gimbal servo.
#pragma once

#include <utility>

#include "satbeam/angles.hpp"
#include "satbeam/frames.hpp"
#include "satbeam/sensors.hpp"

namespace satbeam {

struct GeoConfig {
    double uav_latitude = deg_to_rad(34.27);     // rad
    double uav_longitude = deg_to_rad(108.95);   // rad
    double satellite_longitude = deg_to_rad(105.5);  // rad
    double earth_radius = 6378e3;                // m
    double orbit_radius = 42164e3;               // m, geostationary
};

struct GimbalRates {
    double azimuth = 0.0;       // rad/s
    double elevation = 0.0;     // rad/s
    double polarization = 0.0;  // rad/s
};

struct ServoConfig {
    double gain = 20.0;                          // K_p, 1/s
    double rate_limit = deg_to_rad(60.0);        // rad/s
    double azimuth_center = kPi;                 // rad, middle of the azimuth travel
    double azimuth_stop = deg_to_rad(170.0);     // rad, +/- travel about the center;
                                                 // >= pi means unlimited
    double elevation_min = 0.0;                  // rad
    double elevation_max = deg_to_rad(85.0);     // rad
};

struct GimbalState {
    GimbalAngles angles{kPi, 0.0, 0.0};  // parked at the azimuth center
    bool saturated = false;  // some axis hit its rate limit or a stop on the last step
};

/// Beam Euler angles (o, e, v) toward the geostationary satellite.
/// Throws NoVisibilityError when the satellite is below the horizon.
PointingEuler pointing_euler(const GeoConfig& geo);

/// Gimbal angles that align the beam for the given UAV attitude:
/// C_b^t = C_n^t (C_n^b)^T, then angle extraction.
GimbalAngles stabilization_command(const Attitude& attitude, const PointingEuler& euler);

/// Monitor rates that cancel the beam-frame projection of the body rates.
/// Throws SingularityError when |elevation| >= 90 deg - 1e-6.
GimbalRates isolation_rates(const GimbalAngles& angles, const BodyRates& body_rates);

/// omega_ut = C_b^t omega_ub.
Vector3 coupled_beam_rate(const GimbalAngles& angles, const BodyRates& body_rates);

/// omega_mt: rotation rate of the t-frame produced by the three monitors.
Vector3 monitor_beam_rate(const GimbalAngles& angles, const GimbalRates& rates);

/// Advance every axis by clamp(feed-forward + K_p * (target - current)) * T_s,
/// then apply the mechanical stops. Differences are shortest-path except on a
/// limited azimuth, where they are measured about the center so the servo
/// never drives through the dead zone.
GimbalState gimbal_step(const GimbalState& state, const GimbalAngles& target,
                        const GimbalRates& isolation, double sample_period,
                        const ServoConfig& servo);

/// (delta azimuth, delta elevation) between the ideal command under the true
/// attitude and the actual gimbal angles, wrapped to (-pi, pi].
std::pair<double, double> pointing_error(const GimbalState& state, const Attitude& truth,
                                         const PointingEuler& euler);

}  // namespace satbeam
