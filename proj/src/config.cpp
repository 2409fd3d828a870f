#include "ssg/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ssg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) fail(where + ": unknown key '" + item.key() + "'");
  }
}

double require_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) fail(where + ": missing required key '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key + ": expected a number");
  return v.get<double>();
}

int int_or(const json& obj, const std::string& where, const char* key, int fallback, int minimum) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key + ": expected an integer");
  const int out = v.get<int>();
  if (out < minimum)
    fail(where + "." + key + ": must be >= " + std::to_string(minimum));
  return out;
}

SonarIntrinsics parse_sensor(const json& obj, const std::string& where,
                             const SonarIntrinsics& defaults) {
  check_keys(obj, where,
             {"min_range_m", "max_range_m", "azimuth_aperture_deg", "elevation_aperture_deg"});
  SonarIntrinsics out;
  out.r_min = number_or(obj, where, "min_range_m", defaults.r_min);
  out.r_max = number_or(obj, where, "max_range_m", defaults.r_max);
  const double az = number_or(obj, where, "azimuth_aperture_deg", rad_to_deg(defaults.azimuth_aperture));
  const double el =
      number_or(obj, where, "elevation_aperture_deg", rad_to_deg(defaults.elevation_aperture));
  if (!(out.r_min >= 0.0)) fail(where + ".min_range_m: must be >= 0");
  if (!(out.r_min < out.r_max)) fail(where + ".max_range_m: must exceed min_range_m");
  if (!(az > 0.0 && az <= 360.0)) fail(where + ".azimuth_aperture_deg: must be in (0, 360]");
  if (!(el > 0.0 && el <= 180.0)) fail(where + ".elevation_aperture_deg: must be in (0, 180]");
  out.azimuth_aperture = deg_to_rad(az);
  out.elevation_aperture = deg_to_rad(el);
  return out;
}

Vec3 parse_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number())
    fail(where + ": expected an array of 3 numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

PoseSpec parse_pose(const json& obj) {
  check_keys(obj, "pose", {"rpy_deg", "translation_m", "solve"});
  PoseSpec pose;
  if (obj.contains("rpy_deg")) {
    const Vec3 rpy = parse_vec3(obj.at("rpy_deg"), "pose.rpy_deg");
    pose.roll_deg = rpy.x;
    pose.pitch_deg = rpy.y;
    pose.yaw_deg = rpy.z;
  }
  if (obj.contains("translation_m") && obj.contains("solve"))
    fail("pose: give either translation_m or solve, not both");
  if (obj.contains("translation_m"))
    pose.translation_m = parse_vec3(obj.at("translation_m"), "pose.translation_m");
  if (obj.contains("solve")) {
    const json& s = obj.at("solve");
    check_keys(s, "pose.solve", {"source_distance_m", "target_distance_m"});
    const double ds = require_number(s, "pose.solve", "source_distance_m");
    const double dt = require_number(s, "pose.solve", "target_distance_m");
    if (!(ds > 0.0)) fail("pose.solve.source_distance_m: must be > 0");
    if (!(dt > 0.0)) fail("pose.solve.target_distance_m: must be > 0");
    pose.solve_distances_m = std::make_pair(ds, dt);
  }
  return pose;
}

Direction parse_direction(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "fl_to_ss") return Direction::fl_to_ss;
    if (s == "ss_to_fl") return Direction::ss_to_fl;
  }
  fail("direction: expected \"fl_to_ss\" or \"ss_to_fl\"");
}

std::pair<int, int> locate(const std::string& text, size_t byte) {
  int line = 1, column = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << "parse error at line " << line << ", column " << column << ": " << e.what();
    fail(msg.str());
  }
  if (!doc.is_object()) fail("config: top-level document must be an object");

  check_keys(doc, "config",
             {"direction", "fl", "ss", "pose", "observation", "resolution", "sweep",
              "translation_convention", "output"});

  RunConfig cfg;
  if (doc.contains("fl")) cfg.fl = parse_sensor(doc.at("fl"), "fl", cfg.fl);
  if (doc.contains("ss")) cfg.ss = parse_sensor(doc.at("ss"), "ss", cfg.ss);
  if (doc.contains("direction")) cfg.direction = parse_direction(doc.at("direction"));
  if (doc.contains("pose")) cfg.pose = parse_pose(doc.at("pose"));

  if (doc.contains("observation")) {
    const json& obs = doc.at("observation");
    check_keys(obs, "observation", {"range_m", "azimuth_deg"});
    ObservationSpec spec;
    spec.range_m = require_number(obs, "observation", "range_m");
    if (!(spec.range_m >= 0.0)) fail("observation.range_m: must be >= 0");
    if (obs.contains("azimuth_deg"))
      spec.azimuth_deg = require_number(obs, "observation", "azimuth_deg");
    cfg.observation = spec;
  }

  if (doc.contains("resolution")) {
    const json& res = doc.at("resolution");
    check_keys(res, "resolution",
               {"arc_phi_samples", "surface_theta_samples", "surface_phi_samples",
                "area_range_cells", "area_azimuth_cells"});
    cfg.resolution.arc_phi = int_or(res, "resolution", "arc_phi_samples", 1024, 2);
    cfg.resolution.surface_theta = int_or(res, "resolution", "surface_theta_samples", 512, 2);
    cfg.resolution.surface_phi = int_or(res, "resolution", "surface_phi_samples", 64, 2);
    cfg.resolution.raster.range_cells = int_or(res, "resolution", "area_range_cells", 512, 1);
    cfg.resolution.raster.azimuth_cells = int_or(res, "resolution", "area_azimuth_cells", 512, 1);
  }

  if (doc.contains("sweep")) {
    const json& sw = doc.at("sweep");
    check_keys(sw, "sweep", {"angle_samples", "pair_angle_samples"});
    cfg.sweep_angle_samples = int_or(sw, "sweep", "angle_samples", 181, 2);
    cfg.sweep_pair_angle_samples = int_or(sw, "sweep", "pair_angle_samples", 91, 2);
  }

  if (doc.contains("translation_convention")) {
    const json& v = doc.at("translation_convention");
    const std::string s = v.is_string() ? v.get<std::string>() : std::string();
    if (s == "target_minus_rotated_source")
      cfg.convention = TranslationConvention::target_minus_rotated_source;
    else if (s == "source_minus_rotated_target")
      cfg.convention = TranslationConvention::source_minus_rotated_target;
    else
      fail("translation_convention: expected \"target_minus_rotated_source\" or "
           "\"source_minus_rotated_target\"");
  }

  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) fail("output: expected a string path");
    cfg.output = doc.at("output").get<std::string>();
  }

  if (cfg.direction && *cfg.direction == Direction::ss_to_fl && cfg.observation &&
      cfg.observation->azimuth_deg)
    fail("observation.azimuth_deg: a sidescan observation has no azimuth");

  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    fail(path.string() + ": " + e.what());
  }
}

RelativePose RunConfig::make_pose(Direction dir) const {
  RelativePose out;
  out.rotation = rotation_from_rpy(deg_to_rad(pose.roll_deg), deg_to_rad(pose.pitch_deg),
                                   deg_to_rad(pose.yaw_deg));
  if (pose.solve_distances_m) {
    const auto [ds, dt] = *pose.solve_distances_m;
    const SonarIntrinsics& src = dir == Direction::fl_to_ss ? fl : ss;
    const SonarIntrinsics& tgt = dir == Direction::fl_to_ss ? ss : fl;
    if (!(ds >= src.r_min && ds <= src.r_max))
      fail("pose.solve.source_distance_m: outside the source sensor's range limits");
    if (!(dt >= tgt.r_min && dt <= tgt.r_max))
      fail("pose.solve.target_distance_m: outside the target sensor's range limits");
    out.translation = solve_translation({ds, 0.0, 0.0}, {dt, 0.0, 0.0}, out.rotation, convention);
  } else if (pose.translation_m) {
    out.translation = *pose.translation_m;
  }
  return out;
}

FlObservation RunConfig::fl_observation() const {
  if (!observation) fail("observation: required for a projection run");
  return {observation->range_m, deg_to_rad(observation->azimuth_deg.value_or(0.0))};
}

SsObservation RunConfig::ss_observation() const {
  if (!observation) fail("observation: required for a projection run");
  if (observation->azimuth_deg) fail("observation.azimuth_deg: a sidescan observation has no azimuth");
  return {observation->range_m};
}

}  // namespace ssg
