// Monte Carlo experiments behind the convergence, band and sweep reports.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "satbeam/electrical.hpp"
#include "satbeam/scenario.hpp"

namespace satbeam {

/// Electrical-only scenario: LOS channel offset from the array normal by the
/// same angle along both array axes, phase shifters starting at zero.
struct ConvergenceScenario {
    ArrayGeometry array;
    double offset = deg_to_rad(0.3);  // rad per axis
    double snr_db = 20.0;
    AsspParams assp;
    SequentialParams sequential;
    double threshold = 0.99;

    /// 128 x 64 array, 0.3 deg per axis, 20 dB, 100 iterations without early
    /// stopping, 20 sequential sweeps.
    static ConvergenceScenario standard();
};

struct ConvergenceRun {
    std::uint64_t seed = 0;
    double prior_nrsp = 0.0;
    double final_nrsp = 0.0;
    /// Iterations until nrsp >= threshold; +inf when never reached. For the
    /// sequential method, oracle queries / 2.
    double iterations = 0.0;
    std::size_t total_queries = 0;
    double error_u = 0.0;  // fitted minus true angle along the row axis, rad
    double error_v = 0.0;  // same along the column axis
    std::vector<double> nrsp_history;  // one entry per iteration record
};

ConvergenceRun run_convergence(const ConvergenceScenario& scenario, OptimizerMethod method,
                               std::uint64_t seed);

/// Seeds first_seed .. first_seed + count - 1, in order, spread over the
/// available hardware threads.
std::vector<ConvergenceRun> run_convergence_batch(const ConvergenceScenario& scenario,
                                                  OptimizerMethod method,
                                                  std::uint64_t first_seed, std::size_t count);

/// Median with +inf entries sorting last; NaN for an empty input.
double median(std::vector<double> values);

struct ConvergenceStats {
    std::size_t runs = 0;
    double median_iterations = 0.0;
    double converged_fraction = 0.0;
    double median_final_nrsp = 0.0;
    double mean_prior_nrsp = 0.0;
    double median_abs_error_u = 0.0;  // rad
    double median_abs_error_v = 0.0;  // rad
};

ConvergenceStats summarize(const std::vector<ConvergenceRun>& runs);

struct SweepRow {
    std::string param;
    double value = 0.0;
    OptimizerMethod method = OptimizerMethod::kAssp;
    ConvergenceStats stats;
};

/// Names accepted by run_sweep.
std::vector<std::string> sweep_parameters();

/// One row per (value, method), values in the given order and methods in
/// assp, spsa, sequential order. Throws InvalidArgument for an unknown
/// parameter or a value it cannot take.
std::vector<SweepRow> run_sweep(const ConvergenceScenario& base, const std::string& param,
                                const std::vector<double>& values, std::size_t seeds,
                                std::uint64_t first_seed = 1);

/// Attitude and pointing statistics of a mechanical-only closed-loop run.
struct MechanicalBand {
    double attitude_fraction = 0.0;  // ticks with every fused-attitude error <= band
    double pointing_fraction = 0.0;  // ticks with |d az| and |d el| <= band
    double max_attitude_error = 0.0; // rad
    double mean_nrsp = 0.0;          // NaN when the channel was not evaluated
};

MechanicalBand mechanical_band(const ScenarioConfig& config, double band, bool evaluate_channel);

/// Largest attitude error of pure gyro integration from the true initial
/// attitude over config.run.duration, using the configured gyro noise.
double gyro_only_max_error(const ScenarioConfig& config);

}  // namespace satbeam
