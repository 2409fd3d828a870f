#include "ssg/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ssg {

namespace {

constexpr const char* kHeader = "roll_rad,pitch_rad,yaw_rad,d_source_m,d_target_m,metric,visible";

std::string format_row(const SweepRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d", r.roll, r.pitch, r.yaw,
                r.d_source, r.d_target, r.metric, r.visible ? 1 : 0);
  return buf;
}

double parse_field(const std::string& field, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw std::runtime_error("malformed CSV field '" + field + "' in " + path.string());
  return v;
}

}  // namespace

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << kHeader << '\n';
  for (const SweepRecord& r : records) out << format_row(r) << '\n';
}

void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  emit_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<SweepRecord> read_sweep_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error("missing or unexpected CSV header in " + path.string());

  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double values[6];
    for (double& v : values) {
      if (!std::getline(row, field, ','))
        throw std::runtime_error("short CSV row in " + path.string());
      v = parse_field(field, path);
    }
    if (!std::getline(row, field, ','))
      throw std::runtime_error("short CSV row in " + path.string());
    SweepRecord rec{values[0], values[1], values[2], values[3], values[4], values[5],
                    parse_field(field, path) != 0.0};
    records.push_back(rec);
  }
  return records;
}

}  // namespace ssg
