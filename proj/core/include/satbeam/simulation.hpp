// Closed-loop run: truth profile -> sensors -> fusion -> stabilization and
// isolation -> gimbal servo -> channel, with the electrical stage refining the
// phase shifters at scheduled epochs.
#pragma once

#include <cstddef>
#include <vector>

#include "satbeam/scenario.hpp"

namespace satbeam {

enum class TracePhase { kTick, kElectrical };

/// One trace row. Angles are radians here; export converts to degrees.
struct TraceRecord {
    TracePhase phase = TracePhase::kTick;
    std::size_t tick = 0;
    double time = 0.0;
    Attitude truth;
    Attitude fused;
    GimbalAngles gimbal;
    double pointing_error_azimuth = 0.0;
    double pointing_error_elevation = 0.0;
    double nrsp = 0.0;
    bool servo_saturated = false;
    std::size_t electrical_run = 0;        // completed or current run, 1-based; 0 before the first
    std::size_t electrical_iteration = 0;  // 1-based on electrical rows, 0 on tick rows
    std::size_t oracle_queries = 0;        // cumulative over the whole simulation
    double power_plus = 0.0;
    double power_minus = 0.0;

    /// fused - truth, each component wrapped to (-pi, pi].
    Attitude attitude_error() const;
};

/// Direction of the satellite in array coordinates, as the (azimuth,
/// elevation) pair of the array response: sin(az) = |(u, v)|, el = atan2(v, u)
/// with u, v the LOS components along the array row and column axes.
struct ArrayDirection {
    double azimuth = 0.0;
    double elevation = 0.0;
};

ArrayDirection satellite_direction(const GimbalAngles& gimbal, const Attitude& attitude,
                                   const PointingEuler& euler);

/// Vectorized channel for the current geometry, LOS plus the optional weak ray.
ComplexVector scenario_channel(const ScenarioConfig& config, const ArrayDirection& direction);

struct SimulationOptions {
    /// When false the channel is not evaluated: nrsp columns are NaN and the
    /// electrical stage is skipped. Used by attitude-only experiments.
    bool evaluate_channel = true;
};

/// Runs the whole scenario with config.run.seed. Module errors are rethrown as
/// SimulationError carrying the tick index.
std::vector<TraceRecord> run_simulation(const ScenarioConfig& config,
                                        const SimulationOptions& options = {});

}  // namespace satbeam
