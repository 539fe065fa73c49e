#include "kinchain/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "kinchain/crp.hpp"
#include "kinchain/kinematics.hpp"
#include "kinchain/netexport.hpp"
#include "kinchain/serialize.hpp"

namespace kinchain {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string approach_name(Approach a) { return a == Approach::A ? "A" : a == Approach::B ? "B" : "both"; }

struct Inputs {
  MotionSequence motion;  // restricted to the analysis scope
  MotionSequence full;
  Skeleton skeleton;
  SpeedSeries speed;
  Index reference = 0;
};

Skeleton load_config_skeleton(const RunConfig& config) {
  return config.skeleton_path ? load_skeleton(*config.skeleton_path) : default_skeleton();
}

MotionSequence load_config_motion(const RunConfig& config) {
  const fs::path path = resolve_input(config.input);
  const MotionFormat format = config.format ? *config.format : motion_format_from_path(path);
  return load_motion(path, format, config.frame_rate);
}

Inputs load_inputs(const RunConfig& config) {
  Inputs in;
  in.full = load_config_motion(config);
  in.skeleton = load_config_skeleton(config);
  in.motion = config.scope == Scope::skeleton ? select_points(in.full, in.skeleton.joints) : in.full;
  in.speed = speed_norm(velocity(in.motion));
  const auto it = std::find(in.motion.labels.begin(), in.motion.labels.end(), in.skeleton.reference_joint);
  in.reference = it == in.motion.labels.end() ? 0 : it - in.motion.labels.begin();
  return in;
}

fs::path out_path(const RunConfig& config, const std::string& name) { return config.output_dir / name; }

void write_json(const RunConfig& config, const std::string& name, json doc) {
  write_text_file(out_path(config, name), with_provenance(std::move(doc), config).dump(2) + "\n");
}

void write_csv(const RunConfig& config, const std::string& name, const std::string& body) {
  const std::string header = "# kinchain " KINCHAIN_VERSION " config " + config.hash() + "\n";
  write_text_file(out_path(config, name), header + body);
}

json read_stage(const RunConfig& config, const std::string& name, const std::string& stage) {
  const fs::path p = out_path(config, name);
  if (!fs::exists(p))
    throw DataError("missing upstream artifact '" + p.string() + "'; run the '" + stage + "' stage first");
  return json::parse(read_text_file(p));
}

SegmentationResult read_segmentation(const RunConfig& config) {
  return read_stage(config, "segmentation.json", "segment").at("segmentation").get<SegmentationResult>();
}

std::string chpca_file(const RunConfig& config, const char* approach, Phase phase) {
  return "chpca_" + to_string(config.scope) + "_" + approach + "_" + to_string(phase) + ".json";
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string pval(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

}  // namespace

json RunConfig::to_json() const {
  json j = {{"input", input.string()},
            {"frame_rate", frame_rate ? json(*frame_rate) : json(nullptr)},
            {"skeleton", skeleton_path ? json(skeleton_path->string()) : json("builtin")},
            {"segmentation",
             {{"height_floor_fraction", segmentation.height_floor_fraction},
              {"rest_gap_factor", segmentation.rest_gap_factor},
              {"loose_prominence_floor", segmentation.loose_prominence_floor},
              {"uniform_prominence_ratio", segmentation.uniform_prominence_ratio}}},
            {"signal_point", signal_point ? json(*signal_point) : json(nullptr)},
            {"signal_axis", signal_axis},
            {"approach", approach_name(approach)},
            {"scope", kinchain::to_string(scope)},
            {"transform_placement", kinchain::to_string(placement)},
            {"rrs",
             {{"enabled", run_rrs}, {"n", rrs.n_shuffles}, {"percentile", rrs.percentile}, {"seed", rrs.seed}}},
            {"permutation", {{"n", n_perm}, {"seed", perm_seed}}},
            {"top_k", top_k},
            {"three_axis", three_axis},
            {"output_dir", output_dir.string()}};
  if (format) j["format"] = *format == MotionFormat::csv ? "csv" : "json";
  return j;
}

std::string RunConfig::hash() const {
  const std::string text = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json with_provenance(json doc, const RunConfig& config) {
  doc["tool"] = {{"name", "kinchain"}, {"version", KINCHAIN_VERSION}};
  doc["config_hash"] = config.hash();
  doc["config"] = config.to_json();
  return doc;
}

fs::path resolve_input(const fs::path& input) {
  if (fs::exists(input) || input.is_absolute()) return input;
  if (const char* dir = std::getenv("KINCHAIN_DATA_DIR")) {
    const fs::path candidate = fs::path(dir) / input;
    if (fs::exists(candidate)) return candidate;
  }
  return input;
}

json cmd_segment(const RunConfig& config) {
  const MotionSequence motion = load_config_motion(config);
  const Skeleton skeleton = load_config_skeleton(config);
  const std::string point = config.signal_point.value_or(skeleton.striking_wrist);
  if (config.signal_axis < 0 || config.signal_axis > 2) throw DataError("signal axis must be 0, 1 or 2");
  const Index idx = motion.index_of(point);
  const Eigen::VectorXd z = motion.coordinate(idx, config.signal_axis);
  const SegmentationResult seg = segment_phases(z, config.segmentation);

  write_json(config, "segmentation.json", {{"signal", {{"point", point}, {"axis", config.signal_axis}}},
                                           {"segmentation", seg}});

  // Plot-ready diagnostics: one row per frame.
  std::vector<std::string> band(z.size(), "none");
  for (const auto& r : seg.rests)
    for (Index t = r.first; t <= r.last; ++t) band[t] = "rest";
  for (const auto& tr : seg.trials) {
    for (Index t = tr.start; t < tr.top; ++t) band[t] = "backswing";
    for (Index t = tr.top; t < tr.impact; ++t) band[t] = "downswing";
  }
  std::ostringstream csv;
  csv << "frame,signal,speed,band,is_top\n";
  for (Index t = 0; t < z.size(); ++t) {
    csv << t << ',' << z(t) << ',';
    if (t + 1 < motion.frames()) csv << (motion.positions[t + 1].row(idx) - motion.positions[t].row(idx)).norm();
    const bool top = std::find(seg.tops.begin(), seg.tops.end(), t) != seg.tops.end();
    csv << ',' << band[t] << ',' << (top ? 1 : 0) << '\n';
  }
  write_csv(config, "segment_diagnostics.csv", csv.str());

  json trials = json::array();
  for (const auto& t : seg.trials) trials.push_back({{"backswing", {t.start, t.top}}, {"downswing", {t.top, t.impact}}});
  return {{"trials", seg.trials.size()}, {"rests", seg.rests.size()}, {"ranges", std::move(trials)}};
}

json cmd_chpca(const RunConfig& config) {
  const SegmentationResult seg = read_segmentation(config);
  const Inputs in = load_inputs(config);
  json summary = json::object();
  for (Phase phase : {Phase::backswing, Phase::downswing}) {
    const FrameSelection frames = phase == Phase::backswing ? seg.backswings() : seg.downswings();
    const std::string tag = to_string(config.scope) + "_" + to_string(phase);
    if (config.approach != Approach::B) {
      ChpcaOptions opts;
      opts.placement = config.placement;
      opts.threads = config.threads;
      if (config.run_rrs) opts.rrs = config.rrs;
      const ChpcaResult res = run_chpca(in.speed, frames, {}, opts);
      json doc = chpca_to_json(res);
      doc["approach"] = "A";
      doc["phase"] = to_string(phase);
      doc["reference"] = in.motion.labels[in.reference];
      doc["aligned_mode1"] = mode_to_json(align_to_reference(res.mode1(), in.reference), res.labels);
      write_json(config, chpca_file(config, "A", phase), std::move(doc));
      if (res.rrs) write_csv(config, "scree_" + tag + ".csv", scree_csv(*res.rrs));
      summary["A"][to_string(phase)] = {{"mode1_contribution", res.mode1().contribution},
                                        {"significant_modes", res.rrs ? json(res.rrs->significant_modes) : json()}};
    }
    if (config.approach != Approach::A) {
      ChpcaOptions opts;
      opts.placement = config.placement;
      opts.threads = config.threads;
      std::vector<ComplexMode> modes;
      for (const auto& r : frames) modes.push_back(run_chpca(in.speed, {r}, {}, opts).mode1());
      const TrialEnsemble ens = ensemble_average(modes, in.reference);
      json doc = ensemble_to_json(ens, in.motion.labels);
      doc["approach"] = "B";
      doc["phase"] = to_string(phase);
      doc["reference"] = in.motion.labels[in.reference];
      doc["frames"] = frames;
      write_json(config, chpca_file(config, "B", phase), std::move(doc));
      summary["B"][to_string(phase)] = {{"mean_mode1_contribution", ens.mean_contribution},
                                        {"consistency", ens.consistency}};
    }
  }
  return summary;
}

json cmd_crp(const RunConfig& config) {
  RunConfig skel = config;
  skel.scope = Scope::skeleton;
  const Inputs in = load_inputs(skel);
  const FrameSelection full = {{0, in.speed.frames()}};
  const PairPhaseMatrix crp = crp_matrix(in.speed, full);
  ChpcaOptions opts;
  opts.placement = config.placement;
  opts.threads = config.threads;
  const ChpcaResult res = run_chpca(in.speed, full, {}, opts);
  const ComplexMode mode = align_to_reference(res.mode1(), in.reference);
  const auto rep = crp_chpca_agreement(crp, mode, res.labels, config.n_perm, config.perm_seed, Scope::skeleton,
                                       Phase::full, config.threads);
  std::ostringstream csv;
  write_pair_csv(csv, crp, mode_phase_matrix(mode, res.labels));
  write_csv(config, "crp_pairs.csv", csv.str());
  write_json(config, "crp_agreement.json",
             {{"frames", full}, {"pairs", rep.pair_values_a.size()}, {"report", rep},
              {"mode1_contribution", res.mode1().contribution}});
  return {{"rho", rep.correlation.rho},
          {"p_permutation", *rep.correlation.p_permutation},
          {"pairs", rep.pair_values_a.size()}};
}

json cmd_report(const RunConfig& config) {
  const SegmentationResult seg = read_segmentation(config);
  const Inputs in = load_inputs(config);
  const bool mesh = config.scope == Scope::mesh;
  const std::string table = mesh ? "table3" : "table2";
  json summary = {{"scope", to_string(config.scope)}, {"trials", seg.trials.size()}};
  std::ostringstream text;
  text << "kinchain " KINCHAIN_VERSION " summary (" << to_string(config.scope) << ", " << in.motion.points()
       << " points, " << seg.trials.size() << " trials)\n\n";

  std::map<Phase, ComplexMode> mode_a;
  std::map<Phase, FrameSelection> frames;
  std::map<Phase, json> ens_b;
  const bool have_b = fs::exists(out_path(config, chpca_file(config, "B", Phase::backswing)));
  for (Phase phase : {Phase::backswing, Phase::downswing}) {
    const json doc = read_stage(config, chpca_file(config, "A", phase), "chpca");
    mode_a[phase] = mode_from_json(doc.at("aligned_mode1"));
    frames[phase] = doc.at("frames").get<FrameSelection>();
    if (have_b) ens_b[phase] = read_stage(config, chpca_file(config, "B", phase), "chpca");
    summary[table]["A"][to_string(phase)]["mode1_contribution"] = doc.at("contributions").at(0);
    if (!doc.at("rrs").is_null())
      summary[table]["A"][to_string(phase)]["significant_modes"] = doc.at("rrs").at("significant_modes");
    if (have_b) {
      summary[table]["B"][to_string(phase)] = {{"mean_mode1_contribution", ens_b[phase].at("mean_contribution")},
                                               {"consistency", ens_b[phase].at("consistency")},
                                               {"mean_resultant_length", ens_b[phase].at("mean_resultant_length")}};
    }
  }
  const auto rev_a = phase_order_reversal(mode_a[Phase::backswing].hodge, mode_a[Phase::downswing].hodge);
  summary[table]["A"]["reversal"] = rev_a;
  text << (mesh ? "Phase-separated CHPCA (mesh)\n" : "Phase-separated CHPCA (skeleton)\n");
  text << "  Mode-1 contribution A  backswing " << num(mode_a[Phase::backswing].contribution) << "  downswing "
       << num(mode_a[Phase::downswing].contribution) << "\n";
  if (have_b) {
    auto hodge_of = [](const json& ens) {
      const auto& pts = ens.at("points");
      Eigen::VectorXd h(static_cast<Index>(pts.size()));
      for (std::size_t i = 0; i < pts.size(); ++i) h(static_cast<Index>(i)) = pts[i].at("mean_hodge").get<double>();
      return h;
    };
    const auto rev_b = phase_order_reversal(hodge_of(ens_b[Phase::backswing]), hodge_of(ens_b[Phase::downswing]));
    summary[table]["B"]["reversal"] = rev_b;
    text << "  Mode-1 contribution B  backswing " << num(ens_b[Phase::backswing].at("mean_contribution"))
         << "  downswing " << num(ens_b[Phase::downswing].at("mean_contribution")) << "  (mean over trials)\n";
    text << "  Inter-trial consistency backswing " << num(ens_b[Phase::backswing].at("consistency"))
         << "  downswing " << num(ens_b[Phase::downswing].at("consistency")) << "\n";
    text << "  Reversal rho B " << num(rev_b.rho) << " (p " << pval(rev_b.p_asymptotic) << ")\n";
  }
  text << "  Reversal rho A " << num(rev_a.rho) << " (p " << pval(rev_a.p_asymptotic) << ")\n\n";

  text << "Amplitude vs Var(s^2)\n";
  for (Phase phase : {Phase::backswing, Phase::downswing}) {
    const Eigen::VectorXd evar = energy_variance(in.speed, frames[phase]);
    const auto rep = amplitude_energy_correlation(mode_a[phase], evar);
    summary["table4"][to_string(config.scope)][to_string(phase)] = {{"correlation", rep}, {"frames", frames[phase]}};
    text << "  " << to_string(phase) << " rho " << num(rep.rho) << " (p " << pval(rep.p_asymptotic) << ")\n";
  }
  text << "\n";

  if (!mesh) {
    text << "Energy phase vs Mode-1 phase (pairs)\n";
    for (Phase phase : {Phase::backswing, Phase::downswing}) {
      const PairPhaseMatrix energy = energy_phase_matrix(in.speed, frames[phase]);
      const auto rep = compare_pair_matrices(energy, mode_phase_matrix(mode_a[phase], in.motion.labels), config.n_perm,
                                             config.perm_seed, config.scope, phase, config.threads);
      summary["table5"][to_string(phase)] = {{"correlation", rep.correlation}, {"frames", frames[phase]}};
      write_json(config, "energy_phase_" + to_string(phase) + ".json", {{"report", rep}, {"frames", frames[phase]}});
      text << "  " << to_string(phase) << " rho " << num(rep.correlation.rho) << " (perm p "
           << pval(*rep.correlation.p_permutation) << ")\n";
    }
    text << "\n";
    const fs::path crp_path = out_path(config, "crp_agreement.json");
    if (fs::exists(crp_path)) {
      const json crp = json::parse(read_text_file(crp_path));
      summary["crp_agreement"] = crp.at("report").at("correlation");
      text << "CRP vs CHPCA (full duration) rho " << num(crp.at("report").at("correlation").at("rho"))
           << " (perm p " << pval(crp.at("report").at("correlation").at("p_permutation")) << ")\n\n";
    }
    for (Phase phase : {Phase::backswing, Phase::downswing}) {
      const Eigen::MatrixX3d pose = canonical_pose(in.motion, frames[phase]);
      const PhaseNetwork net = build_network(mode_a[phase], in.motion.labels, in.skeleton, pose, in.motion.labels,
                                             config.top_k, to_string(phase));
      write_json(config, "network_" + to_string(phase) + ".json", {{"network", net}});
    }
  } else {
    for (Phase phase : {Phase::backswing, Phase::downswing}) {
      const Eigen::MatrixX3d pose = canonical_pose(in.motion, frames[phase]);
      const PhaseField field = build_phase_field(mode_a[phase], pose, to_string(phase));
      write_json(config, "phase_field_" + to_string(phase) + ".json", {{"field", field}});
      std::ostringstream csv;
      csv << "index,x,y,z,hodge,amplitude,rank_phase\n";
      for (const auto& v : field.vertices)
        csv << v.index << ',' << v.position.x() << ',' << v.position.y() << ',' << v.position.z() << ',' << v.hodge
            << ',' << v.amplitude << ',' << v.rank_phase << '\n';
      write_csv(config, "phase_field_" + to_string(phase) + ".csv", csv.str());
    }
  }

  if (config.three_axis) {
    const Skeleton& sk = in.skeleton;
    const MotionSequence joints = select_points(in.full, sk.joints);
    const VelocitySeries vel = velocity(joints);
    const SpeedSeries speed = speed_norm(vel);
    const Index ref = joints.index_of(sk.reference_joint);
    ChpcaOptions opts;
    opts.placement = config.placement;
    opts.threads = config.threads;
    std::map<Phase, ThreeAxisResult> axis;
    text << "Three-axis ablation\n";
    for (Phase phase : {Phase::backswing, Phase::downswing}) {
      axis[phase] = three_axis_chpca(vel, frames[phase], ref, 0, opts);
      const ComplexMode speed_mode = align_to_reference(run_chpca(speed, frames[phase], {}, opts).mode1(), ref);
      json block = {{"mode1_contribution", axis[phase].chpca.mode1().contribution},
                    {"speed_norm_mode1_contribution", speed_mode.contribution},
                    {"frames", frames[phase]}};
      const char* names[] = {"x", "y", "z"};
      for (int a = 0; a < 3; ++a)
        block[std::string("corr_") + names[a]] = spearman(speed_mode.hodge, axis[phase].axis_phase[a]);
      block["corr_joint_aggregated"] = spearman(speed_mode.hodge, axis[phase].joint_phase);
      summary["table6"][to_string(phase)] = block;
      text << "  " << to_string(phase) << " Mode-1 contribution (3N) " << num(axis[phase].chpca.mode1().contribution)
           << "\n";
    }
    const auto rev = phase_order_reversal(axis[Phase::backswing].joint_phase, axis[Phase::downswing].joint_phase);
    summary["table6"]["reversal_joint_aggregated"] = rev;
    text << "  reversal (joint-aggregated) rho " << num(rev.rho) << " (p " << pval(rev.p_asymptotic) << ")\n";
  }

  const std::string scope = to_string(config.scope);
  write_json(config, "summary_" + scope + ".json", {{"summary", summary}});
  write_text_file(out_path(config, "summary_" + scope + ".txt"), text.str());
  return summary;
}

}  // namespace kinchain
