#include "satbeam/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "satbeam/angles.hpp"
#include "satbeam/errors.hpp"

namespace satbeam {

namespace {

std::string real(double v) { return fmt::format("{:.9g}", v); }
std::string deg(double rad) { return real(rad_to_deg(rad)); }

std::string_view phase_name(TracePhase p) {
    return p == TracePhase::kTick ? "tick" : "electrical";
}

std::vector<std::string> fields(const TraceRecord& r) {
    const Attitude err = r.attitude_error();
    return {std::string(phase_name(r.phase)),
            std::to_string(r.tick),
            real(r.time),
            deg(r.truth.yaw), deg(r.truth.pitch), deg(r.truth.roll),
            deg(r.fused.yaw), deg(r.fused.pitch), deg(r.fused.roll),
            deg(err.yaw), deg(err.pitch), deg(err.roll),
            deg(r.gimbal.azimuth), deg(r.gimbal.elevation), deg(r.gimbal.polarization),
            deg(r.pointing_error_azimuth), deg(r.pointing_error_elevation),
            real(r.nrsp),
            r.servo_saturated ? "1" : "0",
            std::to_string(r.electrical_run),
            std::to_string(r.electrical_iteration),
            std::to_string(r.oracle_queries),
            real(r.power_plus), real(r.power_minus)};
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_real(std::string_view s, std::size_t line) {
    // from_chars handles "nan"/"inf" and avoids locale dependence.
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(fmt::format("trace line {}: bad number '{}'", line, s));
    }
    return v;
}

std::size_t parse_count(std::string_view s, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(fmt::format("trace line {}: bad count '{}'", line, s));
    }
    return v;
}

std::string header() {
    std::string h;
    for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
        if (i > 0) h += ',';
        h += kTraceColumns[i];
    }
    return h;
}

}  // namespace

void write_csv(const std::vector<TraceRecord>& records, std::ostream& out) {
    out << kTraceFormatLine << '\n' << header() << '\n';
    for (const auto& r : records) {
        const auto f = fields(r);
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i > 0) out << ',';
            out << f[i];
        }
        out << '\n';
    }
}

void write_json(const std::vector<TraceRecord>& records, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["format"] = "satbeam-trace";
    doc["version"] = 1;
    doc["columns"] = kTraceColumns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        auto row = nlohmann::ordered_json::array();
        const auto f = fields(r);
        row.push_back(f[0]);
        for (std::size_t i = 1; i < f.size(); ++i) {
            row.push_back(parse_real(f[i], 0));
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump() << '\n';
}

void export_csv(const std::vector<TraceRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_csv(records, out);
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

void export_json(const std::vector<TraceRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_json(records, out);
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<TraceRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTraceFormatLine) {
        throw Error("trace: missing format line");
    }
    if (!std::getline(in, line) || line != header()) {
        throw Error("trace: unexpected header");
    }
    std::vector<TraceRecord> records;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != kTraceColumns.size()) {
            throw Error(fmt::format("trace line {}: expected {} fields, got {}", line_no,
                                    kTraceColumns.size(), f.size()));
        }
        TraceRecord r;
        if (f[0] == "tick") {
            r.phase = TracePhase::kTick;
        } else if (f[0] == "electrical") {
            r.phase = TracePhase::kElectrical;
        } else {
            throw Error(fmt::format("trace line {}: unknown phase '{}'", line_no, f[0]));
        }
        auto rad = [&](std::size_t i) { return deg_to_rad(parse_real(f[i], line_no)); };
        r.tick = parse_count(f[1], line_no);
        r.time = parse_real(f[2], line_no);
        r.truth = {rad(3), rad(4), rad(5)};
        r.fused = {rad(6), rad(7), rad(8)};
        r.gimbal = {rad(12), rad(13), rad(14)};
        r.pointing_error_azimuth = rad(15);
        r.pointing_error_elevation = rad(16);
        r.nrsp = parse_real(f[17], line_no);
        r.servo_saturated = parse_count(f[18], line_no) != 0;
        r.electrical_run = parse_count(f[19], line_no);
        r.electrical_iteration = parse_count(f[20], line_no);
        r.oracle_queries = parse_count(f[21], line_no);
        r.power_plus = parse_real(f[22], line_no);
        r.power_minus = parse_real(f[23], line_no);
        records.push_back(r);
    }
    return records;
}

}  // namespace satbeam
