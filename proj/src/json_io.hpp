#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "calibration.hpp"
#include "coverage.hpp"
#include "projector.hpp"
#include "simulator.hpp"

namespace brickwork::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Collects non-fatal reader diagnostics (unknown fields and similar).
struct ParseContext {
  std::vector<std::string> warnings;
};

// ---- generic JSON pieces -------------------------------------------------

json pose_to_json(const Pose& pose);
Pose pose_from_json(const json& j, const std::string& where, ParseContext& ctx);
json vec3_to_json(const Vec3& v);
Vec3 vec3_from_json(const json& j, const std::string& where);
json plane_to_json(const Plane& p);
Plane plane_from_json(const json& j, const std::string& where, ParseContext& ctx);

/// Validates field names of an object: unknown keys warn, keys carrying
/// a unit suffix (units are positional convention: m, rad, s) error.
void check_fields(const json& obj, const std::string& where,
                  std::initializer_list<const char*> known, ParseContext& ctx);

void require_schema_version(const json& obj, const std::string& where);

// ---- calibration ---------------------------------------------------------

/// Optional embedded ground truth for synthetic sessions.
struct SessionGroundTruth {
  ProjectorModel model;
  bool present = false;
};

json session_to_json(const CalibrationSession& session, const SessionGroundTruth* truth = nullptr);
CalibrationSession session_from_json(const json& j, ParseContext& ctx,
                                     SessionGroundTruth* truth = nullptr);
json calibration_result_to_json(const CalibrationResult& result);
std::string calibration_report_text(const CalibrationResult& result);

// ---- scenario ------------------------------------------------------------

struct Scenario {
  SimulationConfig sim;
  ProjectorModel projector;
  ProjectionPlanParams projection;
  std::string calibration_session_path;  // empty when absent
  std::string output_dir;                // empty when absent
};

json wall_to_json(const WallDesign& wall);
WallDesign wall_from_json(const json& j, ParseContext& ctx);
json scenario_to_json(const Scenario& scenario, const std::string& wall_design_ref);
/// Loads a scenario file; the wall design reference resolves relative
/// to the scenario file's directory.
Scenario load_scenario(const std::filesystem::path& path, ParseContext& ctx);
WallDesign load_wall(const std::filesystem::path& path, ParseContext& ctx);
CalibrationSession load_session(const std::filesystem::path& path, ParseContext& ctx,
                                SessionGroundTruth* truth = nullptr);

// ---- build state ---------------------------------------------------------

json build_state_to_json(const BuildState& state, const WallDesign& design);

// ---- point clouds --------------------------------------------------------

std::string cloud_to_xyz(const PointCloud& cloud);
PointCloud cloud_from_xyz(const std::string& text, ScanSource source);
json cloud_to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const json& j, ParseContext& ctx);

// ---- masks and regions ---------------------------------------------------

std::string mask_to_pgm(const Mask& mask);
Mask mask_from_pgm(const std::string& bytes, double scale_m_per_px = 0.001);
json mask_to_json(const Mask& mask);
Mask mask_from_json(const json& j, ParseContext& ctx);
json region_to_json(const RegionPolygon& region);
RegionPolygon region_from_json(const json& j, ParseContext& ctx);

/// Dispatches on extension: .pgm or .json.
Mask load_mask(const std::filesystem::path& path, ParseContext& ctx);
RegionPolygon load_region(const std::filesystem::path& path, ParseContext& ctx);

// ---- file helpers ----------------------------------------------------------

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);
json parse_json_text(const std::string& text, const std::string& where);

}  // namespace brickwork::io
