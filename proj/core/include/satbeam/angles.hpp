#pragma once

#include <cmath>
#include <numbers>

namespace satbeam {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

/// Canonical representative of `angle` in (-pi, pi].
inline double wrap_angle(double angle) noexcept {
    double r = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

/// Shortest signed angular difference `to - from`, in (-pi, pi].
inline double angle_diff(double to, double from) noexcept { return wrap_angle(to - from); }

}  // namespace satbeam
