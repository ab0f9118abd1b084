#include "satbeam/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"
#include "satbeam/simulation.hpp"

namespace satbeam {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double first_crossing(const OptimizerTrace& trace, double threshold, bool count_queries) {
    for (const auto& r : trace.records) {
        if (r.nrsp >= threshold) {
            return count_queries ? static_cast<double>(r.queries) / 2.0
                                 : static_cast<double>(r.k + 1);
        }
    }
    return kInf;
}

void set_param(ConvergenceScenario& s, const std::string& param, double value) {
    auto count = [&](double v) {
        if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) {
            throw InvalidArgument(param + " must be a positive integer");
        }
        return static_cast<int>(v);
    };
    if (param == "snr_db") {
        if (!std::isfinite(value)) throw InvalidArgument("snr_db must be finite");
        s.snr_db = value;
    } else if (param == "offset_deg") {
        if (!(std::abs(value) < 30.0)) throw InvalidArgument("offset_deg must be within (-30, 30)");
        s.offset = deg_to_rad(value);
    } else if (param == "rows") {
        s.array.rows = count(value);
    } else if (param == "cols") {
        s.array.cols = count(value);
    } else if (param == "max_iters") {
        s.assp.max_iters = static_cast<std::size_t>(count(value));
    } else {
        throw InvalidArgument("unknown sweep parameter '" + param + "'");
    }
}

}  // namespace

ConvergenceScenario ConvergenceScenario::standard() {
    ConvergenceScenario s;
    s.assp.max_iters = 100;
    s.assp.stop_window = 0;
    s.sequential.max_sweeps = 20;
    s.sequential.stop_window = 0;
    return s;
}

ConvergenceRun run_convergence(const ConvergenceScenario& scenario, OptimizerMethod method,
                               std::uint64_t seed) {
    const double u = std::sin(scenario.offset);
    const double v = u;
    const double s = std::hypot(u, v);
    const PathComponent los{std::asin(s), std::atan2(v, u), {1.0, 0.0}, 0.0};
    const ComplexVector h = vectorize(channel_matrix(scenario.array, {los}, 1.0));
    const double noise_variance = noise_variance_from_snr(scenario.snr_db, 1.0, 1.0);

    BeamPowerOracle oracle(h, {1.0, 0.0}, noise_variance, make_stream(seed, RngStream::kChannel));
    Rng rng = make_stream(seed, RngStream::kPerturbation);
    const Monitor monitor = [&h](const RealVector& p) { return nrsp(p, h); };
    const RealVector start = RealVector::Zero(h.size());

    OptimizerResult result;
    switch (method) {
        case OptimizerMethod::kAssp:
            result = run_assp(start, structure_matrix(scenario.array), oracle, scenario.assp, rng,
                              monitor);
            break;
        case OptimizerMethod::kSpsa:
            result = run_isotropic_spsa(start, oracle, scenario.assp, rng, monitor);
            break;
        case OptimizerMethod::kSequential:
            result = run_sequential_perturbation(start, oracle, scenario.sequential, monitor);
            break;
    }

    ConvergenceRun run;
    run.seed = seed;
    run.prior_nrsp = nrsp(start, h);
    run.final_nrsp = nrsp(result.weights, h);
    run.iterations = run.prior_nrsp >= scenario.threshold
                         ? 0.0
                         : first_crossing(result.trace, scenario.threshold,
                                          method == OptimizerMethod::kSequential);
    run.total_queries = oracle.queries();
    const DoaFit fit = fit_doa(result.weights.phases, scenario.array);
    run.error_u = std::asin(std::clamp(fit.u, -1.0, 1.0)) - std::asin(u);
    run.error_v = std::asin(std::clamp(fit.v, -1.0, 1.0)) - std::asin(v);
    run.nrsp_history.reserve(result.trace.records.size());
    for (const auto& r : result.trace.records) run.nrsp_history.push_back(r.nrsp);
    return run;
}

std::vector<ConvergenceRun> run_convergence_batch(const ConvergenceScenario& scenario,
                                                  OptimizerMethod method,
                                                  std::uint64_t first_seed, std::size_t count) {
    std::vector<ConvergenceRun> runs(count);
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                runs[i] = run_convergence(scenario, method, first_seed + i);
            }
        }));
    }
    for (auto& job : jobs) job.get();
    return runs;
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    const double lo = values[mid - 1];
    const double hi = values[mid];
    return std::isinf(hi) ? hi : 0.5 * (lo + hi);
}

ConvergenceStats summarize(const std::vector<ConvergenceRun>& runs) {
    ConvergenceStats s;
    s.runs = runs.size();
    if (runs.empty()) return s;
    std::vector<double> iters, finals, err_u, err_v;
    double prior = 0.0;
    std::size_t converged = 0;
    for (const auto& r : runs) {
        iters.push_back(r.iterations);
        finals.push_back(r.final_nrsp);
        err_u.push_back(std::abs(r.error_u));
        err_v.push_back(std::abs(r.error_v));
        prior += r.prior_nrsp;
        if (std::isfinite(r.iterations)) ++converged;
    }
    s.median_iterations = median(iters);
    s.converged_fraction = static_cast<double>(converged) / static_cast<double>(runs.size());
    s.median_final_nrsp = median(finals);
    s.mean_prior_nrsp = prior / static_cast<double>(runs.size());
    s.median_abs_error_u = median(err_u);
    s.median_abs_error_v = median(err_v);
    return s;
}

std::vector<std::string> sweep_parameters() {
    return {"snr_db", "offset_deg", "rows", "cols", "max_iters"};
}

std::vector<SweepRow> run_sweep(const ConvergenceScenario& base, const std::string& param,
                                const std::vector<double>& values, std::size_t seeds,
                                std::uint64_t first_seed) {
    if (seeds == 0) throw InvalidArgument("sweep needs at least one seed");
    std::vector<ConvergenceScenario> scenarios;
    for (double v : values) {
        ConvergenceScenario s = base;
        set_param(s, param, v);
        scenarios.push_back(s);
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (auto method : {OptimizerMethod::kAssp, OptimizerMethod::kSpsa,
                            OptimizerMethod::kSequential}) {
            rows.push_back({param, values[i], method,
                            summarize(run_convergence_batch(scenarios[i], method, first_seed, seeds))});
        }
    }
    return rows;
}

MechanicalBand mechanical_band(const ScenarioConfig& config, double band, bool evaluate_channel) {
    ScenarioConfig c = config;
    c.electrical.enabled = false;
    const auto records = run_simulation(c, {evaluate_channel});
    MechanicalBand out;
    std::size_t attitude_ok = 0, pointing_ok = 0;
    double nrsp_sum = 0.0;
    for (const auto& r : records) {
        const Attitude e = r.attitude_error();
        const double worst = std::max({std::abs(e.yaw), std::abs(e.pitch), std::abs(e.roll)});
        out.max_attitude_error = std::max(out.max_attitude_error, worst);
        if (worst <= band) ++attitude_ok;
        if (std::abs(r.pointing_error_azimuth) <= band &&
            std::abs(r.pointing_error_elevation) <= band) {
            ++pointing_ok;
        }
        nrsp_sum += r.nrsp;
    }
    const auto n = static_cast<double>(records.size());
    out.attitude_fraction = static_cast<double>(attitude_ok) / n;
    out.pointing_fraction = static_cast<double>(pointing_ok) / n;
    out.mean_nrsp = nrsp_sum / n;
    return out;
}

double gyro_only_max_error(const ScenarioConfig& config) {
    const double ts = config.sensors.sample_period;
    const auto ticks = static_cast<std::size_t>(std::llround(config.run.duration / ts));
    Rng rng = make_stream(config.run.seed, RngStream::kSensors);
    Attitude estimate = flight_profile(0.0, config.profile).attitude;
    double worst = 0.0;
    for (std::size_t i = 1; i < ticks; ++i) {
        const FlightState prev = flight_profile(static_cast<double>(i - 1) * ts, config.profile);
        const BodyRates measured = gyro_measure(prev.body_rates, config.sensors, rng);
        estimate = gyro_integrate(estimate, body_rates_to_euler_rates(estimate, measured), ts);
        const Attitude truth = flight_profile(static_cast<double>(i) * ts, config.profile).attitude;
        worst = std::max({worst, std::abs(angle_diff(estimate.yaw, truth.yaw)),
                          std::abs(angle_diff(estimate.pitch, truth.pitch)),
                          std::abs(angle_diff(estimate.roll, truth.roll))});
    }
    return worst;
}

}  // namespace satbeam
