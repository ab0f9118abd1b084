#include "satbeam/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"
#include "satbeam/experiments.hpp"
#include "satbeam/mechanical.hpp"
#include "satbeam/scenario.hpp"
#include "satbeam/simulation.hpp"
#include "satbeam/trace_io.hpp"

namespace satbeam {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

constexpr const char* kOutDirVariable = "SATBEAM_OUT_DIR";

struct SimulateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct GeometryArgs {
    double lat = 0.0;
    double lon = 0.0;
    double sat_lon = 0.0;
    double yaw = 0.0;
    double pitch = 0.0;
    double roll = 0.0;
    double earth_radius = GeoConfig{}.earth_radius;
    double orbit_radius = GeoConfig{}.orbit_radius;
};

struct SweepArgs {
    std::string param;
    std::vector<double> values;
    std::size_t seeds = 100;
    std::uint64_t first_seed = 1;
    std::string config;
    std::string out;
};

std::filesystem::path output_dir(const SimulateArgs& args, const ScenarioConfig& config) {
    if (!args.out.empty()) return args.out;
    if (!config.run.output.empty()) return config.run.output;
    if (const char* env = std::getenv(kOutDirVariable); env != nullptr && *env != '\0') return env;
    return "satbeam-out";
}

int simulate(const SimulateArgs& args, std::ostream& out) {
    ScenarioConfig config = load_scenario(args.config);
    if (args.seed) config.run.seed = *args.seed;
    const auto dir = output_dir(args, config);
    std::filesystem::create_directories(dir);

    const auto records = run_simulation(config);
    export_csv(records, dir / "trace.csv");
    export_json(records, dir / "trace.json");

    std::size_t ticks = 0;
    double final_nrsp = 0.0;
    for (const auto& r : records) {
        if (r.phase == TracePhase::kTick) {
            ++ticks;
            final_nrsp = r.nrsp;
        }
    }
    const std::size_t runs = records.empty() ? 0 : records.back().electrical_run;
    fmt::print(out, "ticks {}\nelectrical_runs {}\nrows {}\nfinal_nrsp {:.6f}\ntrace {}\n", ticks,
               runs, records.size(), final_nrsp, (dir / "trace.csv").string());
    return kOk;
}

int geometry(const GeometryArgs& args, std::ostream& out) {
    GeoConfig geo;
    geo.uav_latitude = deg_to_rad(args.lat);
    geo.uav_longitude = deg_to_rad(args.lon);
    geo.satellite_longitude = deg_to_rad(args.sat_lon);
    geo.earth_radius = args.earth_radius;
    geo.orbit_radius = args.orbit_radius;

    const PointingEuler e = pointing_euler(geo);
    const Attitude attitude{deg_to_rad(args.yaw), deg_to_rad(args.pitch), deg_to_rad(args.roll)};
    const GimbalAngles g = stabilization_command(attitude, e);
    fmt::print(out,
               "o_deg {:.4f}\n"
               "o_minus_180_deg {:.4f}\n"
               "e_deg {:.4f}\n"
               "v_deg {:.4f}\n"
               "gimbal_azimuth_deg {:.4f}\n"
               "gimbal_elevation_deg {:.4f}\n"
               "gimbal_polarization_deg {:.4f}\n",
               rad_to_deg(e.azimuth), rad_to_deg(e.azimuth) - 180.0, rad_to_deg(e.elevation),
               rad_to_deg(e.polarization), rad_to_deg(g.azimuth), rad_to_deg(g.elevation),
               rad_to_deg(g.polarization));
    return kOk;
}

void write_sweep(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "param,value,method,runs,median_iterations,converged_fraction,median_final_nrsp,"
           "mean_prior_nrsp,median_abs_err_u_deg,median_abs_err_v_deg\n";
    for (const auto& r : rows) {
        const auto& s = r.stats;
        fmt::print(out, "{},{:.9g},{},{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", r.param,
                   r.value, to_string(r.method), s.runs, s.median_iterations,
                   s.converged_fraction, s.median_final_nrsp, s.mean_prior_nrsp,
                   rad_to_deg(s.median_abs_error_u), rad_to_deg(s.median_abs_error_v));
    }
}

int sweep(const SweepArgs& args, std::ostream& out) {
    ConvergenceScenario base = ConvergenceScenario::standard();
    if (!args.config.empty()) {
        const ScenarioConfig config = load_scenario(args.config);
        base.array = config.array;
        base.snr_db = config.signal.model.snr_db;
        base.assp = config.electrical.assp;
        base.sequential = config.electrical.sequential;
    }
    const auto rows = run_sweep(base, args.param, args.values, args.seeds, args.first_seed);
    if (args.out.empty()) {
        write_sweep(rows, out);
    } else {
        std::ostringstream text;
        write_sweep(rows, text);
        std::ofstream file(args.out, std::ios::binary);
        if (!file) throw Error("cannot write '" + args.out + "'");
        file << text.str();
        out << text.str();
    }
    return kOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Beam tracking simulator for a UAV-mounted planar array", "satbeam"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run a closed-loop scenario and write traces");
    sim_cmd->add_option("--config", sim.config, "Scenario file")->required()->check(CLI::ExistingFile);
    sim_cmd->add_option("--seed", sim.seed, "Master seed (overrides run.seed)");
    sim_cmd->add_option("--out", sim.out,
                        std::string("Output directory (default: run.output, then $") +
                            kOutDirVariable + ", then ./satbeam-out)");

    GeometryArgs geo;
    auto* geo_cmd = app.add_subcommand("geometry", "Print the pointing angles and gimbal solution");
    geo_cmd->add_option("--lat", geo.lat, "UAV latitude, deg")->required();
    geo_cmd->add_option("--lon", geo.lon, "UAV longitude, deg")->required();
    geo_cmd->add_option("--sat-lon", geo.sat_lon, "Satellite longitude, deg")->required();
    geo_cmd->add_option("--yaw", geo.yaw, "UAV yaw, deg");
    geo_cmd->add_option("--pitch", geo.pitch, "UAV pitch, deg");
    geo_cmd->add_option("--roll", geo.roll, "UAV roll, deg");
    geo_cmd->add_option("--earth-radius", geo.earth_radius, "m");
    geo_cmd->add_option("--orbit-radius", geo.orbit_radius, "m");

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Convergence statistics over a parameter grid");
    sweep_cmd->add_option("--param", sw.param, "Swept parameter")
        ->required()
        ->check(CLI::IsMember(sweep_parameters()));
    sweep_cmd->add_option("--values", sw.values, "Comma-separated values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--seeds", sw.seeds, "Seeds per point")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--first-seed", sw.first_seed, "First seed");
    sweep_cmd->add_option("--config", sw.config, "Scenario file for array and optimizer settings")
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", sw.out, "Also write the table to this file");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* failed = &app;
        for (const auto* sub : {sim_cmd, geo_cmd, sweep_cmd}) {
            if (sub->parsed()) failed = sub;
        }
        err << failed->help();
        return kUsage;
    }

    try {
        if (sim_cmd->parsed()) return simulate(sim, out);
        if (geo_cmd->parsed()) return geometry(geo, out);
        return sweep(sw, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace satbeam
