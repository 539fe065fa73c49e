#include <iostream>

#include <CLI11.hpp>

#include "kinchain/pipeline.hpp"
#include "kinchain/serialize.hpp"
#include "kinchain/synth.hpp"

using namespace kinchain;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& format, std::string& skeleton) {
  cmd->add_option("input", cfg.input, "Motion file (.json or .csv)")->required();
  cmd->add_option("-o,--output-dir", cfg.output_dir, "Directory for stage outputs")->capture_default_str();
  cmd->add_option("--format", format, "Override input format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--frame-rate", cfg.frame_rate, "Frame rate when the file has none");
  cmd->add_option("--skeleton", skeleton, "Skeleton JSON (default: built-in 20-joint tree)");
  cmd->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_analysis(CLI::App* cmd, RunConfig& cfg, std::string& scope, std::string& placement) {
  cmd->add_option("--scope", scope, "skeleton or mesh")->check(CLI::IsMember({"skeleton", "mesh"}))
      ->capture_default_str();
  cmd->add_option("--transform", placement, "Hilbert placement: joined or per_segment")
      ->check(CLI::IsMember({"joined", "per_segment"}))
      ->capture_default_str();
  cmd->add_option("--n-perm", cfg.n_perm, "Permutations for pairwise tests")->capture_default_str();
  cmd->add_option("--perm-seed", cfg.perm_seed, "Permutation seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic-chain phase analysis of motion capture"};
  app.set_version_flag("--version", KINCHAIN_VERSION);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format, skeleton, scope = "skeleton", placement = "joined", approach = "both";

  auto* seg = app.add_subcommand("segment", "Detect strikes and split backswing/downswing");
  add_common(seg, cfg, format, skeleton);
  seg->add_option("--signal-point", cfg.signal_point, "Point whose height drives segmentation");
  seg->add_option("--signal-axis", cfg.signal_axis, "Height axis (0, 1, 2)")->capture_default_str();
  seg->add_option("--height-floor", cfg.segmentation.height_floor_fraction)->capture_default_str();
  seg->add_option("--rest-gap-factor", cfg.segmentation.rest_gap_factor)->capture_default_str();
  seg->add_option("--prominence-floor", cfg.segmentation.loose_prominence_floor)->capture_default_str();

  auto* ch = app.add_subcommand("chpca", "Phase-separated CHPCA (approaches A and B)");
  add_common(ch, cfg, format, skeleton);
  add_analysis(ch, cfg, scope, placement);
  ch->add_option("--approach", approach, "A, B or both")->check(CLI::IsMember({"A", "B", "both"}))
      ->capture_default_str();
  bool no_rrs = false;
  ch->add_flag("--no-rrs", no_rrs, "Skip the rotational random shuffling test");
  ch->add_option("--rrs-n", cfg.rrs.n_shuffles, "RRS shuffles")->capture_default_str();
  ch->add_option("--rrs-percentile", cfg.rrs.percentile, "RRS percentile")->capture_default_str();
  ch->add_option("--rrs-seed", cfg.rrs.seed, "RRS seed")->capture_default_str();

  auto* crp = app.add_subcommand("crp", "Full-duration CRP vs CHPCA agreement");
  add_common(crp, cfg, format, skeleton);
  add_analysis(crp, cfg, scope, placement);

  auto* rep = app.add_subcommand("report", "Summary tables, networks and phase fields");
  add_common(rep, cfg, format, skeleton);
  add_analysis(rep, cfg, scope, placement);
  rep->add_option("--top-k", cfg.top_k, "Non-bone edges per network")->capture_default_str();
  rep->add_flag("--three-axis", cfg.three_axis, "Include the 3N-dimensional ablation");

  auto* syn = app.add_subcommand("synth", "Write synthetic motion with known ground truth");
  std::filesystem::path synth_out, osc_spec;
  int n_strikes = 14, rest_after = 0;
  Index rest_len = 120, samples = 512;
  double jitter = 0.0, rate = 30.0;
  std::uint64_t seed = 0;
  syn->add_option("output", synth_out, "Output motion file (.json or .csv)")->required();
  syn->add_option("--oscillator", osc_spec, "Oscillator spec JSON instead of strikes");
  syn->add_option("--samples", samples, "Oscillator series length")->capture_default_str();
  syn->add_option("--strikes", n_strikes)->capture_default_str();
  syn->add_option("--rest-after", rest_after, "Insert a rest after this strike (0 = none)")->capture_default_str();
  syn->add_option("--rest-len", rest_len)->capture_default_str();
  syn->add_option("--jitter", jitter)->capture_default_str();
  syn->add_option("--seed", seed)->capture_default_str();
  syn->add_option("--frame-rate", rate)->capture_default_str();
  syn->add_option("--skeleton", skeleton, "Skeleton JSON (default: built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (!format.empty()) cfg.format = format == "csv" ? MotionFormat::csv : MotionFormat::json;
    if (!skeleton.empty()) cfg.skeleton_path = skeleton;
    cfg.scope = scope == "mesh" ? Scope::mesh : Scope::skeleton;
    cfg.placement = placement_from_string(placement);
    cfg.approach = approach == "A" ? Approach::A : approach == "B" ? Approach::B : Approach::both;
    cfg.run_rrs = !no_rrs;

    nlohmann::json out;
    if (*seg) out = cmd_segment(cfg);
    else if (*ch) out = cmd_chpca(cfg);
    else if (*crp) out = cmd_crp(cfg);
    else if (*rep) out = cmd_report(cfg);
    else {
      MotionSequence motion;
      if (!osc_spec.empty()) {
        const auto spec = nlohmann::json::parse(read_text_file(osc_spec)).get<OscillatorSpec>();
        SpeedSeries speed = gen_phase_lagged_speeds(spec, samples);
        speed.frame_rate = rate;
        motion = motion_from_speeds(speed);
      } else {
        const Skeleton sk = skeleton.empty() ? default_skeleton() : load_skeleton(skeleton);
        motion = strike_motion(gen_strike_sequence(n_strikes, rest_after, rest_len, jitter, seed), sk, seed, rate);
      }
      save_motion(motion, synth_out, motion_format_from_path(synth_out));
      out = {{"frames", motion.frames()}, {"points", motion.points()}, {"output", synth_out.string()}};
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const DegenerateError& e) {
    std::cerr << "kinchain: degenerate input: " << e.what() << '\n';
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "kinchain: malformed JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kinchain: " << e.what() << '\n';
    return 2;
  }
}
