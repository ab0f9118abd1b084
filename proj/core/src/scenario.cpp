#include "satbeam/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"

namespace satbeam {

namespace {

using Setter = std::function<void(const YAML::Node&, const std::string&)>;
using Section = std::map<std::string, Setter>;

std::size_t line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field, const char* kind) {
    if (!node.IsScalar()) {
        throw ConfigError(fmt::format("{}: expected a {} scalar", field, kind), field, line_of(node));
    }
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(fmt::format("{}: '{}' is not a valid {}", field, node.Scalar(), kind),
                          field, line_of(node));
    }
}

Setter real(double& target) {
    return [&target](const YAML::Node& n, const std::string& f) {
        const double v = scalar<double>(n, f, "number");
        if (!std::isfinite(v)) throw ConfigError(f + ": must be finite", f, line_of(n));
        target = v;
    };
}

Setter degrees(double& target) {
    return [&target](const YAML::Node& n, const std::string& f) {
        double v = 0.0;
        real(v)(n, f);
        target = deg_to_rad(v);
    };
}

template <typename T>
Setter integer(T& target) {
    return [&target](const YAML::Node& n, const std::string& f) {
        const auto v = scalar<long long>(n, f, "integer");
        if (v < 0 && !std::is_signed_v<T>) {
            throw ConfigError(f + ": must be non-negative", f, line_of(n));
        }
        target = static_cast<T>(v);
    };
}

Setter boolean(bool& target) {
    return [&target](const YAML::Node& n, const std::string& f) {
        target = scalar<bool>(n, f, "boolean");
    };
}

Setter text(std::string& target) {
    return [&target](const YAML::Node& n, const std::string& f) {
        target = scalar<std::string>(n, f, "string");
    };
}

void add_axis(Section& s, const std::string& name, AxisMotion& axis) {
    s[name + "_offset"] = degrees(axis.offset);
    s[name + "_amplitude"] = degrees(axis.amplitude);
    s[name + "_frequency"] = real(axis.frequency);
    s[name + "_phase"] = degrees(axis.phase);
}

std::map<std::string, Section> schema(ScenarioConfig& c) {
    std::map<std::string, Section> s;
    s["geo"] = {{"latitude", degrees(c.geo.uav_latitude)},
                {"longitude", degrees(c.geo.uav_longitude)},
                {"satellite_longitude", degrees(c.geo.satellite_longitude)},
                {"earth_radius", real(c.geo.earth_radius)},
                {"orbit_radius", real(c.geo.orbit_radius)}};
    s["array"] = {{"rows", integer(c.array.rows)},
                  {"cols", integer(c.array.cols)},
                  {"spacing", real(c.array.spacing)}};
    add_axis(s["profile"], "yaw", c.profile.yaw);
    add_axis(s["profile"], "pitch", c.profile.pitch);
    add_axis(s["profile"], "roll", c.profile.roll);
    s["sensors"] = {{"gyro_white_sigma", degrees(c.sensors.gyro_white_sigma)},
                    {"gyro_bias", degrees(c.sensors.gyro_bias)},
                    {"accel_white_sigma", real(c.sensors.accel_white_sigma)},
                    {"gps_yaw_sigma", degrees(c.sensors.gps_yaw_sigma)},
                    {"sample_period", real(c.sensors.sample_period)},
                    {"gravity", real(c.sensors.gravity)},
                    {"gps_baseline_length", real(c.sensors.gps_baseline_length)}};
    s["fusion"] = {{"process_noise", real(c.fusion.process_noise)},
                   {"measurement_noise", real(c.fusion.measurement_noise)},
                   {"initial_covariance", real(c.fusion.initial_covariance)}};
    s["servo"] = {{"gain", real(c.servo.gain)},
                  {"rate_limit", degrees(c.servo.rate_limit)},
                  {"azimuth_center", degrees(c.servo.azimuth_center)},
                  {"azimuth_stop", degrees(c.servo.azimuth_stop)},
                  {"elevation_min", degrees(c.servo.elevation_min)},
                  {"elevation_max", degrees(c.servo.elevation_max)}};
    s["signal"] = {
        {"snr_db", real(c.signal.model.snr_db)},
        {"symbol_real", [&c](const YAML::Node& n, const std::string& f) {
             double v = 0.0;
             real(v)(n, f);
             c.signal.model.symbol.real(v);
         }},
        {"symbol_imag", [&c](const YAML::Node& n, const std::string& f) {
             double v = 0.0;
             real(v)(n, f);
             c.signal.model.symbol.imag(v);
         }},
        {"path_gain", real(c.signal.path_gain)},
        {"wavelength", real(c.signal.wavelength)},
        {"nlos_gain", real(c.signal.nlos_gain)},
        {"nlos_azimuth", degrees(c.signal.nlos_azimuth)},
        {"nlos_elevation", degrees(c.signal.nlos_elevation)},
        {"nlos_excess_path", real(c.signal.nlos_excess_path)}};
    s["electrical"] = {
        {"enabled", boolean(c.electrical.enabled)},
        {"method", [&c](const YAML::Node& n, const std::string& f) {
             const auto name = scalar<std::string>(n, f, "string");
             try {
                 c.electrical.method = parse_method(name);
             } catch (const InvalidArgument&) {
                 throw ConfigError(
                     fmt::format("{}: '{}' is not one of assp, spsa, sequential", f, name), f,
                     line_of(n));
             }
         }},
        {"a", real(c.electrical.assp.a)},
        {"b", real(c.electrical.assp.b)},
        {"c", real(c.electrical.assp.c)},
        {"zeta", real(c.electrical.assp.zeta)},
        {"omega", real(c.electrical.assp.omega)},
        {"step_exponent", real(c.electrical.assp.step_exponent)},
        {"max_iters", integer(c.electrical.assp.max_iters)},
        {"stop_epsilon", [&c](const YAML::Node& n, const std::string& f) {
             real(c.electrical.assp.stop_epsilon)(n, f);
             c.electrical.sequential.stop_epsilon = c.electrical.assp.stop_epsilon;
         }},
        {"stop_window", [&c](const YAML::Node& n, const std::string& f) {
             integer(c.electrical.assp.stop_window)(n, f);
             c.electrical.sequential.stop_window = c.electrical.assp.stop_window;
         }},
        {"sequential_step", degrees(c.electrical.sequential.step)},
        {"sequential_sweeps", integer(c.electrical.sequential.max_sweeps)},
        {"first_run", real(c.electrical.first_run)},
        {"interval", real(c.electrical.interval)}};
    s["run"] = {{"duration", real(c.run.duration)},
                {"seed", integer(c.run.seed)},
                {"output", text(c.run.output)}};
    return s;
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError(fmt::format("{}: {}", field, what), field, 0);
}

}  // namespace

std::string to_string(OptimizerMethod method) {
    switch (method) {
        case OptimizerMethod::kAssp: return "assp";
        case OptimizerMethod::kSpsa: return "spsa";
        case OptimizerMethod::kSequential: return "sequential";
    }
    return "unknown";
}

OptimizerMethod parse_method(const std::string& name) {
    if (name == "assp") return OptimizerMethod::kAssp;
    if (name == "spsa") return OptimizerMethod::kSpsa;
    if (name == "sequential") return OptimizerMethod::kSequential;
    throw InvalidArgument("unknown optimizer method '" + name + "'");
}

void ScenarioConfig::validate() const {
    require(std::abs(geo.uav_latitude) < kPi / 2.0, "geo.latitude", "must be within (-90, 90) deg");
    require(geo.earth_radius > 0.0, "geo.earth_radius", "must be > 0");
    require(geo.orbit_radius > geo.earth_radius, "geo.orbit_radius", "must exceed earth_radius");

    require(array.rows >= 1, "array.rows", "must be >= 1");
    require(array.cols >= 1, "array.cols", "must be >= 1");
    require(array.spacing > 0.0, "array.spacing", "must be > 0");

    for (const auto& [name, axis] : {std::pair{"yaw", &profile.yaw}, std::pair{"pitch", &profile.pitch},
                                     std::pair{"roll", &profile.roll}}) {
        require(axis->frequency >= 0.0, fmt::format("profile.{}_frequency", name), "must be >= 0");
    }
    require(std::abs(profile.pitch.offset) + std::abs(profile.pitch.amplitude) < kPi / 2.0,
            "profile.pitch_amplitude", "pitch must stay within (-90, 90) deg");

    require(sensors.gyro_white_sigma >= 0.0, "sensors.gyro_white_sigma", "must be >= 0");
    require(sensors.gyro_bias >= 0.0, "sensors.gyro_bias", "must be >= 0");
    require(sensors.accel_white_sigma >= 0.0, "sensors.accel_white_sigma", "must be >= 0");
    require(sensors.gps_yaw_sigma >= 0.0, "sensors.gps_yaw_sigma", "must be >= 0");
    require(sensors.sample_period > 0.0, "sensors.sample_period", "must be > 0");
    require(sensors.gravity > 0.0, "sensors.gravity", "must be > 0");
    require(sensors.gps_baseline_length > 0.0, "sensors.gps_baseline_length", "must be > 0");

    require(fusion.process_noise >= 0.0, "fusion.process_noise", "must be >= 0");
    require(fusion.measurement_noise > 0.0, "fusion.measurement_noise", "must be > 0");
    require(fusion.initial_covariance >= 0.0, "fusion.initial_covariance", "must be >= 0");

    require(servo.gain >= 0.0, "servo.gain", "must be >= 0");
    require(servo.rate_limit > 0.0, "servo.rate_limit", "must be > 0");
    require(servo.azimuth_stop > 0.0, "servo.azimuth_stop", "must be > 0");
    require(servo.elevation_min < servo.elevation_max, "servo.elevation_max",
            "must exceed elevation_min");
    require(servo.elevation_max < kPi / 2.0 && servo.elevation_min > -kPi / 2.0,
            "servo.elevation_max", "stops must stay within (-90, 90) deg");

    require(signal.path_gain > 0.0, "signal.path_gain", "must be > 0");
    require(std::abs(signal.model.symbol) > 0.0, "signal.symbol_real", "symbol must be nonzero");
    require(signal.wavelength > 0.0, "signal.wavelength", "must be > 0");
    require(signal.nlos_gain >= 0.0 && signal.nlos_gain <= 0.1, "signal.nlos_gain",
            "must be within [0, 0.1]");

    const auto& p = electrical.assp;
    require(p.a > 0.0, "electrical.a", "must be > 0");
    require(p.b >= 0.0, "electrical.b", "must be >= 0");
    require(p.c > 0.0, "electrical.c", "must be > 0");
    require(p.zeta > 0.0, "electrical.zeta", "must be > 0");
    require(p.omega > 0.0 && p.omega <= 1.0, "electrical.omega", "must be in (0, 1]");
    require(p.step_exponent > 0.0 && p.step_exponent <= 1.0, "electrical.step_exponent",
            "must be in (0, 1]");
    require(p.stop_epsilon >= 0.0, "electrical.stop_epsilon", "must be >= 0");
    require(electrical.sequential.step > 0.0, "electrical.sequential_step", "must be > 0");
    require(electrical.first_run >= 0.0, "electrical.first_run", "must be >= 0");

    require(run.duration > 0.0, "run.duration", "must be > 0");
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(fmt::format("{}:{}: parse error: {}", source, e.mark.line + 1, e.msg), "",
                          static_cast<std::size_t>(e.mark.line + 1));
    }

    ScenarioConfig config;
    if (root.IsNull()) {
        config.validate();
        return config;
    }
    if (!root.IsMap()) {
        throw ConfigError(source + ": top level must be a mapping of sections", "", line_of(root));
    }

    auto sections = schema(config);
    std::set<std::string> seen_sections;
    std::map<std::string, std::size_t> field_lines;
    for (const auto& entry : root) {
        const auto name = entry.first.as<std::string>();
        auto section = sections.find(name);
        if (section == sections.end()) {
            throw ConfigError(fmt::format("{}: unknown section '{}'", source, name), name,
                              line_of(entry.first));
        }
        if (!seen_sections.insert(name).second) {
            throw ConfigError(fmt::format("{}: duplicate section '{}'", source, name), name,
                              line_of(entry.first));
        }
        if (entry.second.IsNull()) continue;
        if (!entry.second.IsMap()) {
            throw ConfigError(fmt::format("{}: section '{}' must be a mapping", source, name), name,
                              line_of(entry.second));
        }
        std::set<std::string> seen_keys;
        for (const auto& kv : entry.second) {
            const auto key = kv.first.as<std::string>();
            const auto field = name + "." + key;
            auto setter = section->second.find(key);
            if (setter == section->second.end()) {
                throw ConfigError(fmt::format("{}: unknown key '{}'", source, field), field,
                                  line_of(kv.first));
            }
            if (!seen_keys.insert(key).second) {
                throw ConfigError(fmt::format("{}: duplicate key '{}'", source, field), field,
                                  line_of(kv.first));
            }
            setter->second(kv.second, field);
            field_lines[field] = line_of(kv.first);
        }
    }
    try {
        config.validate();
    } catch (const ConfigError& e) {
        const auto line = field_lines.find(e.field());
        if (line == field_lines.end()) throw;
        throw ConfigError(fmt::format("{}:{}: {}", source, line->second, e.what()), e.field(),
                          line->second);
    }
    return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open scenario file '" + path.string() + "'", "", 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

}  // namespace satbeam
