// Scenario description for the closed-loop simulator and its file format.
//
// A scenario file is a YAML mapping of sections to mappings of scalar keys:
//
//   array:
//     rows: 128
//   signal:
//     snr_db: 10
//
// Omitted sections and keys take their defaults; unknown sections or keys are
// rejected. Angles are in degrees and angular rates in deg/s at this boundary
// only; the loaded ScenarioConfig is in radians.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "satbeam/angles.hpp"
#include "satbeam/channel.hpp"
#include "satbeam/electrical.hpp"
#include "satbeam/fusion.hpp"
#include "satbeam/mechanical.hpp"
#include "satbeam/sensors.hpp"

namespace satbeam {

enum class OptimizerMethod { kAssp, kSpsa, kSequential };

std::string to_string(OptimizerMethod method);
/// Throws InvalidArgument for anything but "assp", "spsa" or "sequential".
OptimizerMethod parse_method(const std::string& name);

struct SignalConfig {
    SignalModel model;
    double path_gain = 1.0;        // |a| of the LOS ray
    double wavelength = 0.015;     // m (20 GHz)
    double nlos_gain = 0.0;        // optional weak second ray, <= 0.1
    double nlos_azimuth = deg_to_rad(5.0);     // rad, in the array frame
    double nlos_elevation = 0.0;   // rad
    double nlos_excess_path = 0.0075;  // m
};

struct ElectricalConfig {
    bool enabled = true;
    OptimizerMethod method = OptimizerMethod::kAssp;
    AsspParams assp;
    SequentialParams sequential;
    double first_run = 5.0;  // s
    double interval = 10.0;  // s; <= 0 runs once
};

struct RunConfig {
    double duration = 60.0;  // s
    std::uint64_t seed = 1;
    std::string output;      // empty: caller decides
};

struct ScenarioConfig {
    GeoConfig geo;
    ArrayGeometry array;
    ProfileConfig profile;
    SensorNoiseConfig sensors;
    FusionConfig fusion;
    ServoConfig servo;
    SignalConfig signal;
    ElectricalConfig electrical;
    RunConfig run;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Parses scenario text. `source` labels error messages.
ScenarioConfig parse_scenario(const std::string& text, const std::string& source = "<string>");

/// Reads and parses a scenario file. Throws ConfigError when the file is
/// missing, malformed or violates an invariant.
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace satbeam
