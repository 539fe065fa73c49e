#include "kinchain/netexport.hpp"

#include <algorithm>
#include <cmath>

#include "kinchain/stats.hpp"

namespace kinchain {

Eigen::VectorXd rank_normalize(const Eigen::Ref<const Eigen::VectorXd>& hodge) {
  const Index n = hodge.size();
  if (n == 0) return {};
  if (n == 1) return Eigen::VectorXd::Zero(1);
  const Eigen::VectorXd ranks = average_ranks(hodge);
  return (ranks.array() - 1.0) * (2.0 / static_cast<double>(n - 1)) - 1.0;
}

CompositeSelection composite_scores(const ComplexMode& mode, const Labels& labels,
                                    const std::vector<std::pair<Index, Index>>& exclude, Index k) {
  if (k < 0) throw DataError("K must be nonnegative");
  const Index n = mode.size();
  if (static_cast<Index>(labels.size()) != n) throw ShapeError("label count does not match mode size");
  auto excluded = [&](Index i, Index j) {
    return std::any_of(exclude.begin(), exclude.end(), [&](const auto& e) {
      return (e.first == i && e.second == j) || (e.first == j && e.second == i);
    });
  };
  std::vector<ScoredPair> all;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      if (excluded(i, j)) continue;
      const double gap = wrap_angle(mode.hodge(i) - mode.hodge(j));
      all.push_back({i, j, std::sqrt(mode.amplitude(i) * mode.amplitude(j)) * std::abs(std::sin(gap / 2.0))});
    }
  auto pair_key = [&](const ScoredPair& p) {
    const auto& a = std::min(labels[p.i], labels[p.j]);
    const auto& b = std::max(labels[p.i], labels[p.j]);
    return std::make_pair(a, b);
  };
  std::stable_sort(all.begin(), all.end(), [&](const ScoredPair& a, const ScoredPair& b) {
    if (a.score != b.score) return a.score > b.score;
    return pair_key(a) < pair_key(b);
  });
  CompositeSelection sel;
  sel.truncated = k > static_cast<Index>(all.size());
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(k)));
  sel.pairs = std::move(all);
  return sel;
}

Eigen::MatrixX3d canonical_pose(const MotionSequence& seq, const FrameSelection& windows) {
  if (windows.empty()) throw DataError("canonical pose needs at least one window");
  Eigen::MatrixX3d pose = Eigen::MatrixX3d::Zero(seq.points(), 3);
  for (const auto& w : windows) {
    if (w.begin < 0 || w.begin >= seq.frames()) throw DataError("window start outside the motion");
    pose += seq.positions[w.begin];
  }
  return pose / static_cast<double>(windows.size());
}

namespace {

NetworkEdge directed_edge(const ComplexMode& mode, Index a, Index b, double score) {
  const double gap = wrap_angle(mode.hodge(a) - mode.hodge(b));
  NetworkEdge e;
  e.leader = gap >= 0.0 ? a : b;
  e.lagger = gap >= 0.0 ? b : a;
  e.phase_gap = std::abs(gap);
  e.score = score;
  return e;
}

}  // namespace

PhaseNetwork build_network(const ComplexMode& mode, const Labels& mode_labels, const Skeleton& skeleton,
                           const Eigen::MatrixX3d& pose, const Labels& pose_labels, Index k, std::string phase) {
  auto find = [](const Labels& labels, const std::string& name, const char* what) {
    const auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw LookupError(std::string("joint '") + name + "' missing from " + what);
    return static_cast<Index>(it - labels.begin());
  };
  if (static_cast<Index>(mode_labels.size()) != mode.size()) throw ShapeError("label count does not match mode size");
  if (static_cast<Index>(pose_labels.size()) != pose.rows()) throw ShapeError("pose label count does not match pose");

  // Restrict the mode to the skeleton joints, in skeleton order.
  const Index n = static_cast<Index>(skeleton.joints.size());
  Eigen::VectorXcd sub(n);
  for (Index j = 0; j < n; ++j) sub(j) = mode.vector(find(mode_labels, skeleton.joints[j], "mode"));
  const ComplexMode m = make_mode(mode.index, mode.eigenvalue, mode.contribution, sub);
  const Eigen::VectorXd ranks = rank_normalize(m.hodge);

  PhaseNetwork net;
  net.phase = std::move(phase);
  for (Index j = 0; j < n; ++j) {
    NetworkNode node;
    node.label = skeleton.joints[j];
    node.position = pose.row(find(pose_labels, node.label, "pose")).transpose();
    node.rank_phase = ranks(j);
    node.hodge = m.hodge(j);
    node.amplitude = m.amplitude(j);
    net.nodes.push_back(std::move(node));
  }
  std::vector<std::pair<Index, Index>> bones;
  for (const auto& [a, b] : skeleton.bones) {
    bones.emplace_back(skeleton.index_of(a), skeleton.index_of(b));
    net.bone_edges.push_back(directed_edge(m, bones.back().first, bones.back().second, 0.0));
  }
  const auto sel = composite_scores(m, skeleton.joints, bones, k);
  net.extra_truncated = sel.truncated;
  for (const auto& p : sel.pairs) net.extra_edges.push_back(directed_edge(m, p.i, p.j, p.score));
  return net;
}

PhaseField build_phase_field(const ComplexMode& mode, const Eigen::MatrixX3d& pose, std::string phase) {
  if (pose.rows() != mode.size())
    throw ShapeError("pose has " + std::to_string(pose.rows()) + " vertices, mode has " + std::to_string(mode.size()));
  const Eigen::VectorXd ranks = rank_normalize(mode.hodge);
  PhaseField field;
  field.phase = std::move(phase);
  for (Index i = 0; i < mode.size(); ++i)
    field.vertices.push_back({i, pose.row(i).transpose(), mode.hodge(i), mode.amplitude(i), ranks(i)});
  return field;
}

}  // namespace kinchain
