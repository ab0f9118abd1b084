// CSV / JSON trace files. Both start with a format/version tag; columns come
// in a fixed order with angles in degrees and reals at 9 significant digits.
#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "satbeam/simulation.hpp"

namespace satbeam {

inline constexpr std::string_view kTraceFormatLine = "# satbeam-trace v1";

inline constexpr std::array<std::string_view, 24> kTraceColumns{
    "phase",          "tick",          "t",
    "truth_yaw",      "truth_pitch",   "truth_roll",
    "fused_yaw",      "fused_pitch",   "fused_roll",
    "err_yaw",        "err_pitch",     "err_roll",
    "gimbal_az",      "gimbal_el",     "gimbal_pol",
    "point_err_az",   "point_err_el",  "nrsp",
    "servo_saturated", "elec_run",     "elec_iter",
    "oracle_queries", "power_plus",    "power_minus"};

void write_csv(const std::vector<TraceRecord>& records, std::ostream& out);
void write_json(const std::vector<TraceRecord>& records, std::ostream& out);

/// Throws Error when the file cannot be written.
void export_csv(const std::vector<TraceRecord>& records, const std::filesystem::path& path);
void export_json(const std::vector<TraceRecord>& records, const std::filesystem::path& path);

/// Parses what write_csv produced. Throws Error on a malformed header or row.
std::vector<TraceRecord> read_csv(std::istream& in);

}  // namespace satbeam
