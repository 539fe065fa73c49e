#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "kinchain/chpca.hpp"
#include "kinchain/correspondence.hpp"
#include "kinchain/io.hpp"
#include "kinchain/segmentation.hpp"

namespace kinchain {

enum class Approach { A, B, both };

/// Everything a stage needs; serialized next to every output.
struct RunConfig {
  std::filesystem::path input;
  std::optional<MotionFormat> format;
  std::optional<double> frame_rate;
  std::optional<std::filesystem::path> skeleton_path;  // built-in skeleton when unset
  SegmentationConfig segmentation;
  std::optional<std::string> signal_point;  // defaults to the skeleton's striking wrist
  int signal_axis = 2;
  Approach approach = Approach::both;
  Scope scope = Scope::skeleton;
  TransformPlacement placement = TransformPlacement::joined;
  bool run_rrs = true;
  RrsOptions rrs;
  int n_perm = 2000;
  std::uint64_t perm_seed = 0;
  int top_k = 5;
  bool three_axis = false;
  std::filesystem::path output_dir = "out";
  int threads = 1;

  nlohmann::json to_json() const;
  /// FNV-1a 64 of the serialized config, hex.
  std::string hash() const;
};

/// Resolves a relative input path against $KINCHAIN_DATA_DIR when it does not
/// exist relative to the working directory.
std::filesystem::path resolve_input(const std::filesystem::path& input);

/// Each stage writes its files under config.output_dir and returns a short
/// JSON summary. Missing upstream artifacts throw DataError naming the stage.
nlohmann::json cmd_segment(const RunConfig& config);
nlohmann::json cmd_chpca(const RunConfig& config);
nlohmann::json cmd_crp(const RunConfig& config);
nlohmann::json cmd_report(const RunConfig& config);

/// Adds tool/version/config provenance to a stage output document.
nlohmann::json with_provenance(nlohmann::json doc, const RunConfig& config);

}  // namespace kinchain
