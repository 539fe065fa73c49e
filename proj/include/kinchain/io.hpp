#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinchain/core.hpp"

namespace kinchain {

/// Positional keypoint series: T frames of N points in meters.
struct MotionSequence {
  double frame_rate = 30.0;
  Labels labels;
  std::vector<Eigen::MatrixX3d> positions;  // one N x 3 block per frame

  Index frames() const noexcept { return static_cast<Index>(positions.size()); }
  Index points() const noexcept { return static_cast<Index>(labels.size()); }

  /// Throws LookupError when absent.
  Index index_of(std::string_view label) const;

  /// One coordinate (0 = x, 1 = y, 2 = z) of one point over all frames.
  Eigen::VectorXd coordinate(Index point, int axis) const;

  bool operator==(const MotionSequence& other) const;
};

/// Checks T >= 2, consistent frame shapes, unique labels, finite coordinates.
void validate(const MotionSequence& seq);

enum class MotionFormat { csv, json };

/// Picks the format from the file extension (.csv or .json).
MotionFormat motion_format_from_path(const std::filesystem::path& path);

/// `frame_rate` overrides (or supplies, for CSV without header) the rate in the file.
MotionSequence load_motion(const std::filesystem::path& path, MotionFormat format,
                           std::optional<double> frame_rate = std::nullopt);
void save_motion(const MotionSequence& seq, const std::filesystem::path& path, MotionFormat format);

MotionSequence parse_motion_json(std::string_view text, std::optional<double> frame_rate = std::nullopt);
MotionSequence parse_motion_csv(std::string_view text, std::optional<double> frame_rate = std::nullopt);
std::string format_motion_json(const MotionSequence& seq);
std::string format_motion_csv(const MotionSequence& seq);

/// Restricts `seq` to `names`, in the given order. Duplicate or unknown names throw.
MotionSequence select_points(const MotionSequence& seq, std::span<const std::string> names);

struct Skeleton {
  Labels joints;
  std::vector<std::pair<std::string, std::string>> bones;
  std::string striking_wrist = "right_wrist";
  std::string reference_joint = "pelvis";

  Index index_of(std::string_view joint) const;
  bool is_bone(std::string_view a, std::string_view b) const;
};

/// The built-in 20-joint body with a 19-bone tree rooted at the pelvis.
Skeleton default_skeleton();

void validate(const Skeleton& skeleton);
Skeleton parse_skeleton_json(std::string_view text);
std::string format_skeleton_json(const Skeleton& skeleton);
Skeleton load_skeleton(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace kinchain
