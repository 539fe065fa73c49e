#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kinchain/chpca.hpp"
#include "kinchain/io.hpp"

namespace kinchain {

/// Ranks mapped affinely onto [-1, 1]: most lagging -> -1, most leading -> +1.
/// Ties share the average rank; a single value maps to 0.
Eigen::VectorXd rank_normalize(const Eigen::Ref<const Eigen::VectorXd>& hodge);

struct ScoredPair {
  Index i = 0;
  Index j = 0;
  double score = 0.0;
};

struct CompositeSelection {
  std::vector<ScoredPair> pairs;  // descending score
  bool truncated = false;         // true when fewer than K pairs existed
};

/// s_ij = sqrt(A_i A_j) |sin((phi_i - phi_j) / 2)| over unordered pairs not in
/// `exclude`; ties broken by label order. Returns the top `k`.
CompositeSelection composite_scores(const ComplexMode& mode, const Labels& labels,
                                    const std::vector<std::pair<Index, Index>>& exclude, Index k);

struct NetworkNode {
  std::string label;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double rank_phase = 0.0;
  double hodge = 0.0;
  double amplitude = 0.0;
};

/// Directed edge from the leading node to the lagging one.
struct NetworkEdge {
  Index leader = 0;
  Index lagger = 0;
  double phase_gap = 0.0;  // |wrapped phi_leader - phi_lagger|
  double score = 0.0;      // composite score, extra edges only
};

struct PhaseNetwork {
  std::string phase;
  std::vector<NetworkNode> nodes;
  std::vector<NetworkEdge> bone_edges;
  std::vector<NetworkEdge> extra_edges;
  bool extra_truncated = false;
};

struct PhaseFieldVertex {
  Index index = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double hodge = 0.0;
  double amplitude = 0.0;
  double rank_phase = 0.0;
};

struct PhaseField {
  std::string phase;
  std::vector<PhaseFieldVertex> vertices;
};

/// Mean over windows of the pose at each window's first frame, N x 3.
Eigen::MatrixX3d canonical_pose(const MotionSequence& seq, const FrameSelection& windows);

/// Network over the skeleton joints. `mode_labels` names the mode's
/// variables; every skeleton joint must appear there and in `pose_labels`.
PhaseNetwork build_network(const ComplexMode& mode, const Labels& mode_labels, const Skeleton& skeleton,
                           const Eigen::MatrixX3d& pose, const Labels& pose_labels, Index k, std::string phase);

PhaseField build_phase_field(const ComplexMode& mode, const Eigen::MatrixX3d& pose, std::string phase);

}  // namespace kinchain
