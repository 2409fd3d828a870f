#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ssg/sweep.hpp"

namespace ssg {

/// Writes sweep records as CSV with the header
///   roll_rad,pitch_rad,yaw_rad,d_source_m,d_target_m,metric,visible
/// one row per record in input order, numbers with 9 significant digits,
/// visible as 1/0. Identical records always produce identical bytes.
void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);

/// Same, to a file; throws std::runtime_error naming the path on I/O failure.
void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);

/// Reads a file written by emit_csv; throws std::runtime_error on malformed
/// input.
std::vector<SweepRecord> read_sweep_csv(const std::filesystem::path& path);

}  // namespace ssg
