#include "satbeam/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"

namespace satbeam {

namespace {

OptimizerResult run_electrical(const ScenarioConfig& config, const RealVector& start,
                               const RealVector& structure, BeamPowerOracle& oracle,
                               Rng& perturbation_rng) {
    const ComplexVector& h = oracle.channel();
    const Monitor monitor = [&h](const RealVector& p) { return nrsp(p, h); };
    const auto& e = config.electrical;
    switch (e.method) {
        case OptimizerMethod::kAssp:
            return run_assp(start, structure, oracle, e.assp, perturbation_rng, monitor);
        case OptimizerMethod::kSpsa:
            return run_isotropic_spsa(start, oracle, e.assp, perturbation_rng, monitor);
        case OptimizerMethod::kSequential:
            return run_sequential_perturbation(start, oracle, e.sequential, monitor);
    }
    throw InvalidArgument("unknown optimizer method");
}

}  // namespace

Attitude TraceRecord::attitude_error() const {
    return {angle_diff(fused.yaw, truth.yaw), angle_diff(fused.pitch, truth.pitch),
            angle_diff(fused.roll, truth.roll)};
}

ArrayDirection satellite_direction(const GimbalAngles& gimbal, const Attitude& attitude,
                                   const PointingEuler& euler) {
    const Vector3 los_n = c_n_t(euler).transpose() * Vector3::UnitX();
    const Vector3 los_t = c_b_t(gimbal) * c_n_b(attitude) * los_n;
    const double u = los_t.y();
    const double v = los_t.z();
    const double s = std::min(1.0, std::hypot(u, v));
    return {std::asin(s), s > 0.0 ? std::atan2(v, u) : 0.0};
}

ComplexVector scenario_channel(const ScenarioConfig& config, const ArrayDirection& direction) {
    std::vector<PathComponent> paths{
        {direction.azimuth, direction.elevation, {config.signal.path_gain, 0.0}, 0.0}};
    if (config.signal.nlos_gain > 0.0) {
        paths.push_back({config.signal.nlos_azimuth, config.signal.nlos_elevation,
                         {config.signal.nlos_gain, 0.0}, config.signal.nlos_excess_path});
    }
    return vectorize(channel_matrix(config.array, paths, config.signal.wavelength));
}

std::vector<TraceRecord> run_simulation(const ScenarioConfig& config,
                                        const SimulationOptions& options) {
    config.validate();
    const double ts = config.sensors.sample_period;
    const auto ticks = static_cast<std::size_t>(std::llround(config.run.duration / ts));
    const auto first_tick = static_cast<std::size_t>(std::llround(config.electrical.first_run / ts));
    const auto period = config.electrical.interval > 0.0
                            ? static_cast<std::size_t>(std::llround(config.electrical.interval / ts))
                            : std::size_t{0};

    const PointingEuler euler = pointing_euler(config.geo);
    const RealVector structure = structure_matrix(config.array);
    const double noise_variance = noise_variance_from_snr(
        config.signal.model.snr_db, config.signal.path_gain * config.signal.path_gain,
        std::norm(config.signal.model.symbol));

    Rng sensor_rng = make_stream(config.run.seed, RngStream::kSensors);
    Rng channel_rng = make_stream(config.run.seed, RngStream::kChannel);
    Rng perturbation_rng = make_stream(config.run.seed, RngStream::kPerturbation);

    std::vector<TraceRecord> records;
    records.reserve(ticks + 1);
    BeamWeights weights = BeamWeights::zeros(config.array.size());
    GimbalState gimbal;
    std::optional<FilterState> filter;
    std::size_t electrical_runs = 0;
    std::size_t queries = 0;

    for (std::size_t i = 0; i < ticks; ++i) {
        try {
            const double t = static_cast<double>(i) * ts;
            const FlightState truth = flight_profile(t, config.profile);
            const BodyRates gyro = gyro_measure(truth.body_rates, config.sensors, sensor_rng);
            const AccelMeasurement accel = accel_measure(truth.attitude, config.sensors, sensor_rng);
            const PitchRoll pr = accel_to_pitch_roll(accel, config.sensors.gravity);
            const double yaw = gps_yaw_measure(truth.attitude, config.sensors, sensor_rng);

            Attitude fused;
            if (!filter) {
                fused = {yaw, pr.pitch, pr.roll};
                filter = FilterState::initial(euler_to_quat(fused), config.fusion);
            } else {
                const FuseResult r = fuse_step(*filter, gyro, yaw, pr.pitch, pr.roll, ts);
                filter = r.state;
                fused = r.attitude;
            }

            // The row describes the gimbal at time t; the servo then commands
            // the rates for the interval that follows.
            const GimbalAngles target = stabilization_command(fused, euler);
            const GimbalRates iso = isolation_rates(gimbal.angles, gyro);
            const auto [err_az, err_el] = pointing_error(gimbal, truth.attitude, euler);

            TraceRecord row;
            row.phase = TracePhase::kTick;
            row.tick = i;
            row.time = t;
            row.truth = truth.attitude;
            row.fused = fused;
            row.gimbal = gimbal.angles;
            row.pointing_error_azimuth = err_az;
            row.pointing_error_elevation = err_el;
            row.nrsp = std::numeric_limits<double>::quiet_NaN();
            row.servo_saturated = gimbal.saturated;
            row.electrical_run = electrical_runs;
            row.oracle_queries = queries;
            const bool scheduled =
                config.electrical.enabled && i >= first_tick &&
                (i == first_tick || (period > 0 && (i - first_tick) % period == 0));
            if (!options.evaluate_channel) {
                records.push_back(row);
                gimbal = gimbal_step(gimbal, target, iso, ts, config.servo);
                continue;
            }
            const ComplexVector h =
                scenario_channel(config, satellite_direction(gimbal.angles, truth.attitude, euler));
            row.nrsp = nrsp(weights, h);
            records.push_back(row);
            gimbal = gimbal_step(gimbal, target, iso, ts, config.servo);
            if (!scheduled) continue;

            ++electrical_runs;
            BeamPowerOracle oracle(h, config.signal.model.symbol, noise_variance,
                                   std::move(channel_rng));
            const OptimizerResult result =
                run_electrical(config, weights.phases, structure, oracle, perturbation_rng);
            channel_rng = std::move(oracle.rng());
            weights = result.weights;

            for (const auto& it : result.trace.records) {
                TraceRecord e = row;
                e.phase = TracePhase::kElectrical;
                e.electrical_run = electrical_runs;
                e.electrical_iteration = it.k + 1;
                e.oracle_queries = queries + it.queries;
                e.nrsp = it.nrsp;
                e.power_plus = it.power_plus;
                e.power_minus = it.power_minus;
                records.push_back(e);
            }
            queries += oracle.queries();
        } catch (const SimulationError&) {
            throw;
        } catch (const Error& e) {
            throw SimulationError(std::string(e.what()) + " (tick " + std::to_string(i) + ")", i);
        }
    }
    return records;
}

}  // namespace satbeam
