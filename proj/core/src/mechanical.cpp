#include "satbeam/mechanical.hpp"

#include <algorithm>
#include <cmath>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"

namespace satbeam {

PointingEuler pointing_euler(const GeoConfig& geo) {
    if (!(std::abs(geo.uav_latitude) < kPi / 2.0)) {
        throw InvalidArgument("pointing_euler: |latitude| must be < 90 deg");
    }
    if (!(geo.earth_radius > 0.0) || !(geo.orbit_radius > geo.earth_radius)) {
        throw InvalidArgument("pointing_euler: need orbit_radius > earth_radius > 0");
    }
    const double dlon = geo.uav_longitude - geo.satellite_longitude;
    const double lat = geo.uav_latitude;
    const double ratio = geo.earth_radius / geo.orbit_radius;
    const double cos_central = std::cos(lat) * std::cos(dlon);
    if (!(cos_central > ratio)) {
        throw NoVisibilityError("pointing_euler: satellite below the horizon");
    }

    PointingEuler e;
    e.azimuth = kPi + std::atan2(std::tan(dlon), std::sin(lat));
    e.elevation = std::atan2(cos_central - ratio, std::sqrt(1.0 - cos_central * cos_central));
    e.polarization = std::atan2(std::sin(dlon), std::tan(lat));
    return e;
}

GimbalAngles stabilization_command(const Attitude& attitude, const PointingEuler& euler) {
    const Matrix3 cbt = c_n_t(euler) * c_n_b(attitude).transpose();
    return extract_gimbal_angles(cbt);
}

GimbalRates isolation_rates(const GimbalAngles& g, const BodyRates& w) {
    if (std::abs(g.elevation) >= kPi / 2.0 - 1e-6) {
        throw SingularityError("isolation_rates: elevation in the keyhole");
    }
    const double ca = std::cos(g.azimuth), sa = std::sin(g.azimuth);
    const double tb = std::tan(g.elevation);
    const double secb = 1.0 / std::cos(g.elevation);
    return {-ca * tb * w.x - sa * tb * w.y - w.z,
            sa * w.x - ca * w.y,
            (-ca * w.x - sa * w.y) * secb};
}

Vector3 coupled_beam_rate(const GimbalAngles& g, const BodyRates& w) {
    return c_b_t(g) * w.to_vector();
}

Vector3 monitor_beam_rate(const GimbalAngles& g, const GimbalRates& r) {
    const Matrix3 t3 = rot_x(g.polarization);
    return Vector3(r.polarization, 0.0, 0.0) + t3 * Vector3(0.0, r.elevation, 0.0) +
           t3 * rot_y(g.elevation) * Vector3(0.0, 0.0, r.azimuth);
}

GimbalState gimbal_step(const GimbalState& state, const GimbalAngles& target,
                        const GimbalRates& iso, double dt, const ServoConfig& servo) {
    bool saturated = false;
    auto advance = [&](double current, double error, double feed_forward) {
        const double wanted = feed_forward + servo.gain * error;
        const double applied = std::clamp(wanted, -servo.rate_limit, servo.rate_limit);
        if (applied != wanted) saturated = true;
        return current + applied * dt;
    };
    auto stop = [&](double v, double lo, double hi) {
        const double c = std::clamp(v, lo, hi);
        if (c != v) saturated = true;
        return c;
    };

    const GimbalAngles& now = state.angles;
    GimbalState next;
    if (servo.azimuth_stop >= kPi) {
        next.angles.azimuth = wrap_angle(
            advance(now.azimuth, angle_diff(target.azimuth, now.azimuth), iso.azimuth));
    } else {
        const double from_center = angle_diff(now.azimuth, servo.azimuth_center);
        const double error = angle_diff(target.azimuth, servo.azimuth_center) - from_center;
        const double moved = stop(advance(from_center, error, iso.azimuth), -servo.azimuth_stop,
                                  servo.azimuth_stop);
        next.angles.azimuth = wrap_angle(servo.azimuth_center + moved);
    }
    next.angles.elevation =
        stop(advance(now.elevation, angle_diff(target.elevation, now.elevation), iso.elevation),
             servo.elevation_min, servo.elevation_max);
    next.angles.polarization = wrap_angle(advance(
        now.polarization, angle_diff(target.polarization, now.polarization), iso.polarization));
    next.saturated = saturated;
    return next;
}

std::pair<double, double> pointing_error(const GimbalState& state, const Attitude& truth,
                                         const PointingEuler& euler) {
    const GimbalAngles ideal = stabilization_command(truth, euler);
    return {angle_diff(ideal.azimuth, state.angles.azimuth),
            angle_diff(ideal.elevation, state.angles.elevation)};
}

}  // namespace satbeam
