#include "kinchain/serialize.hpp"

#include <charconv>

namespace kinchain {

using nlohmann::json;

namespace {

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd json_vec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

std::string num(double v) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
}

}  // namespace

std::string to_string(TransformPlacement p) { return p == TransformPlacement::joined ? "joined" : "per_segment"; }

TransformPlacement placement_from_string(const std::string& s) {
  if (s == "joined") return TransformPlacement::joined;
  if (s == "per_segment") return TransformPlacement::per_segment;
  throw DataError("unknown transform placement '" + s + "'");
}

void to_json(json& j, const FrameRange& r) { j = json::array({r.begin, r.end}); }
void from_json(const json& j, FrameRange& r) {
  r.begin = j.at(0).get<Index>();
  r.end = j.at(1).get<Index>();
}

void to_json(json& j, const SegmentationResult& s) {
  json trials = json::array();
  for (const auto& t : s.trials)
    trials.push_back({{"backswing", {t.start, t.top}}, {"downswing", {t.top, t.impact}}});
  json rests = json::array();
  for (const auto& r : s.rests) rests.push_back({r.first, r.last});
  json candidates = json::array();
  for (const auto& c : s.candidates) candidates.push_back({{"frame", c.frame}, {"prominence", c.prominence}});
  j = {{"tops", s.tops},
       {"trials", std::move(trials)},
       {"rests", std::move(rests)},
       {"prominence_threshold", s.prominence_threshold},
       {"candidates", std::move(candidates)}};
}

void from_json(const json& j, SegmentationResult& s) {
  s.tops = j.at("tops").get<std::vector<Index>>();
  s.trials.clear();
  for (const auto& t : j.at("trials")) {
    const auto bs = t.at("backswing");
    const auto ds = t.at("downswing");
    s.trials.push_back({bs.at(0).get<Index>(), bs.at(1).get<Index>(), ds.at(1).get<Index>()});
  }
  s.rests.clear();
  for (const auto& r : j.at("rests")) s.rests.push_back({r.at(0).get<Index>(), r.at(1).get<Index>()});
  s.prominence_threshold = j.value("prominence_threshold", 0.0);
  s.candidates.clear();
  if (j.contains("candidates"))
    for (const auto& c : j.at("candidates"))
      s.candidates.push_back({c.at("frame").get<Index>(), c.at("prominence").get<double>()});
}

void to_json(json& j, const RrsReport& r) {
  j = {{"n_shuffles", r.n_shuffles},
       {"percentile", r.percentile},
       {"seed", r.seed},
       {"observed", vec_json(r.observed)},
       {"null_mean", vec_json(r.null_mean)},
       {"null_sd", vec_json(r.null_sd)},
       {"thresholds", vec_json(r.thresholds)},
       {"significant_modes", r.significant_modes}};
}

void from_json(const json& j, RrsReport& r) {
  r.n_shuffles = j.at("n_shuffles").get<int>();
  r.percentile = j.at("percentile").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.observed = json_vec(j.at("observed"));
  r.null_mean = json_vec(j.at("null_mean"));
  r.null_sd = json_vec(j.at("null_sd"));
  r.thresholds = json_vec(j.at("thresholds"));
  r.significant_modes = j.at("significant_modes").get<std::vector<int>>();
}

void to_json(json& j, const CorrelationReport& r) {
  j = {{"rho", r.rho}, {"p_asymptotic", r.p_asymptotic}, {"n", r.n}};
  if (r.p_permutation) {
    j["p_permutation"] = *r.p_permutation;
    j["n_perm"] = r.n_perm;
    j["seed"] = r.seed;
  }
}

void to_json(json& j, const PhaseComparisonReport& r) {
  j = {{"scope", to_string(r.scope)},
       {"phase", to_string(r.phase)},
       {"pair_values_a", vec_json(r.pair_values_a)},
       {"pair_values_b", vec_json(r.pair_values_b)},
       {"correlation", r.correlation}};
}

void to_json(json& j, const PhaseNetwork& n) {
  json nodes = json::array();
  for (const auto& node : n.nodes)
    nodes.push_back({{"label", node.label},
                     {"position", {node.position.x(), node.position.y(), node.position.z()}},
                     {"rank_phase", node.rank_phase},
                     {"hodge", node.hodge},
                     {"amplitude", node.amplitude}});
  auto edges = [&](const std::vector<NetworkEdge>& list, bool scored) {
    json out = json::array();
    for (const auto& e : list) {
      json rec = {{"from", n.nodes[e.leader].label}, {"to", n.nodes[e.lagger].label}, {"phase_gap", e.phase_gap}};
      if (scored) rec["score"] = e.score;
      out.push_back(std::move(rec));
    }
    return out;
  };
  j = {{"phase", n.phase},
       {"nodes", std::move(nodes)},
       {"bone_edges", edges(n.bone_edges, false)},
       {"extra_edges", edges(n.extra_edges, true)},
       {"extra_truncated", n.extra_truncated},
       {"edge_direction", "leader -> lagger"},
       {"caveat",
        "extra edges are ranked by a composite score for visualisation only; they are not tested for significance"}};
}

void to_json(json& j, const PhaseField& f) {
  json verts = json::array();
  for (const auto& v : f.vertices)
    verts.push_back({{"index", v.index},
                     {"position", {v.position.x(), v.position.y(), v.position.z()}},
                     {"hodge", v.hodge},
                     {"amplitude", v.amplitude},
                     {"rank_phase", v.rank_phase}});
  j = {{"phase", f.phase}, {"vertex_count", f.vertices.size()}, {"vertices", std::move(verts)}};
}

void to_json(json& j, const OscillatorSpec& s) {
  j = {{"n_points", s.n_points},       {"base_frequency", s.base_frequency}, {"phase_lags", s.phase_lags},
       {"amplitudes", s.amplitudes},   {"noise_sd", s.noise_sd},             {"mode2_fraction", s.mode2_fraction},
       {"seed", s.seed}};
}

void from_json(const json& j, OscillatorSpec& s) {
  s.n_points = j.at("n_points").get<Index>();
  s.base_frequency = j.value("base_frequency", 8.0);
  s.phase_lags = j.value("phase_lags", std::vector<double>{});
  s.amplitudes = j.value("amplitudes", std::vector<double>{});
  s.noise_sd = j.value("noise_sd", 0.0);
  s.mode2_fraction = j.value("mode2_fraction", 0.0);
  s.seed = j.value("seed", std::uint64_t{0});
}

json mode_to_json(const ComplexMode& mode, const Labels& labels) {
  json points = json::array();
  for (Index i = 0; i < mode.size(); ++i)
    points.push_back({{"label", labels[i]},
                      {"hodge", mode.hodge(i)},
                      {"amplitude", mode.amplitude(i)},
                      {"re", mode.vector(i).real()},
                      {"im", mode.vector(i).imag()}});
  return {{"index", mode.index},
          {"eigenvalue", mode.eigenvalue},
          {"contribution", mode.contribution},
          {"points", std::move(points)}};
}

ComplexMode mode_from_json(const json& j) {
  const auto& points = j.at("points");
  Eigen::VectorXcd v(static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    v(static_cast<Index>(i)) = {points[i].at("re").get<double>(), points[i].at("im").get<double>()};
  ComplexMode m = make_mode(j.at("index").get<int>(), j.at("eigenvalue").get<double>(),
                            j.at("contribution").get<double>(), v);
  // Keep the stored phases bit-exact (alignment pins the reference to 0).
  for (std::size_t i = 0; i < points.size(); ++i) {
    m.hodge(static_cast<Index>(i)) = points[i].at("hodge").get<double>();
    m.amplitude(static_cast<Index>(i)) = points[i].at("amplitude").get<double>();
  }
  return m;
}

json chpca_to_json(const ChpcaResult& result, int exported_modes) {
  std::vector<double> eig, contrib;
  for (const auto& m : result.modes) {
    eig.push_back(m.eigenvalue);
    contrib.push_back(m.contribution);
  }
  json modes = json::array();
  for (int k = 0; k < exported_modes && k < static_cast<int>(result.modes.size()); ++k)
    modes.push_back(mode_to_json(result.modes[k], result.labels));
  json j = {{"labels", result.labels},
            {"frames", result.frames},
            {"samples", result.samples},
            {"transform_placement", to_string(result.placement)},
            {"eigenvalues", eig},
            {"contributions", contrib},
            {"modes", std::move(modes)}};
  j["rrs"] = result.rrs ? json(*result.rrs) : json(nullptr);
  return j;
}

ChpcaResult chpca_from_json(const json& j) {
  ChpcaResult r;
  r.labels = j.at("labels").get<Labels>();
  r.frames = j.at("frames").get<FrameSelection>();
  r.samples = j.at("samples").get<Index>();
  r.placement = placement_from_string(j.value("transform_placement", std::string("joined")));
  for (const auto& m : j.at("modes")) r.modes.push_back(mode_from_json(m));
  // Unexported modes keep their spectrum entries with an empty vector.
  const auto eig = j.at("eigenvalues").get<std::vector<double>>();
  const auto contrib = j.at("contributions").get<std::vector<double>>();
  for (std::size_t k = r.modes.size(); k < eig.size() && k < contrib.size(); ++k)
    r.modes.push_back(make_mode(static_cast<int>(k + 1), eig[k], contrib[k], Eigen::VectorXcd()));
  if (!j.at("rrs").is_null()) r.rrs = j.at("rrs").get<RrsReport>();
  return r;
}

json ensemble_to_json(const TrialEnsemble& ens, const Labels& labels) {
  json points = json::array();
  for (Index i = 0; i < ens.mean_hodge.size(); ++i)
    points.push_back(
        {{"label", labels[i]}, {"mean_hodge", ens.mean_hodge(i)}, {"resultant_length", ens.resultant_length(i)}});
  std::vector<double> contributions;
  json trials = json::array();
  for (const auto& m : ens.modes) {
    contributions.push_back(m.contribution);
    trials.push_back(mode_to_json(m, labels));
  }
  return {{"aligned", ens.aligned},
          {"consistency", ens.consistency},
          {"mean_contribution", ens.mean_contribution},
          {"contribution_statistic", "mean"},
          {"mean_resultant_length", ens.resultant_length.mean()},
          {"trial_contributions", contributions},
          {"points", std::move(points)},
          {"trial_modes", std::move(trials)}};
}

std::string scree_csv(const RrsReport& rrs) {
  std::string out = "mode,observed,null_mean,null_sd,threshold\n";
  for (Index m = 0; m < rrs.observed.size(); ++m)
    out += std::to_string(m + 1) + ',' + num(rrs.observed(m)) + ',' + num(rrs.null_mean(m)) + ',' +
           num(rrs.null_sd(m)) + ',' + num(rrs.thresholds(m)) + '\n';
  return out;
}

}  // namespace kinchain
