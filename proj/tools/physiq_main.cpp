// Copyright 2026 The physiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <thread>

#include "physiq/bench.hpp"
#include "physiq/frameseq.hpp"
#include "physiq/judge.hpp"
#include "physiq/metrics.hpp"
#include "physiq/motionmask.hpp"
#include "physiq/synth.hpp"
#include "physiq/types.hpp"

namespace {

using namespace physiq;

std::optional<OutDims> parse_size(const std::string& size) {
  if (size.empty()) return std::nullopt;
  const auto x = size.find('x');
  if (x == std::string::npos) {
    throw CLI::ValidationError("--size expects WxH, e.g. 128x128");
  }
  OutDims dims;
  dims.width = std::stoi(size.substr(0, x));
  dims.height = std::stoi(size.substr(x + 1));
  return dims;
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

bench::EvalConfig make_config(const std::string& params_file, int jobs) {
  bench::EvalConfig cfg;
  if (!params_file.empty()) cfg = bench::load_eval_config(params_file);
  cfg.jobs = resolve_jobs(jobs);
  return cfg;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json mask_params_json(const MaskParams& p) {
  return {{"tau", p.tau},          {"alpha", p.alpha},
          {"window", p.window},    {"blur_radius", p.blur_radius},
          {"blur_sigma", p.blur_sigma}, {"morph_kernel", p.morph_kernel}};
}

// --- subcommands -------------------------------------------------------------

void cmd_ingest(const std::string& in, const std::string& out, double fps,
                const std::string& size) {
  const FrameSequence seq = load_sequence(in);
  const FrameSequence resampled = resample_fps(seq, fps, parse_size(size));
  save_sequence(resampled, out);
  std::cout << "wrote " << out << " (" << resampled.frame_count() << " frames @ "
            << resampled.fps << " fps)\n";
}

void cmd_mask(const std::string& in, const std::string& out, const MaskParams& params) {
  const FrameSequence seq = load_sequence(in);
  const MaskVideo mask = compute_mask_video(seq, params);
  save_mask_video(mask, seq.fps, out);
  std::cout << "wrote " << out << " (" << mask.frame_count() << " mask frames)\n";
}

void cmd_evaluate_single(const std::string& real, const std::string& generated,
                         const bench::EvalConfig& cfg, const std::string& scenario_id,
                         const std::string& perspective, const std::string& out) {
  const FrameSequence real_full = load_sequence(real);
  if (real_full.switch_index < 0) {
    throw std::runtime_error("real sequence metadata lacks switch_index");
  }
  SplitSpec spec;
  spec.switch_index = real_full.switch_index;
  auto [conditioning, test] = split_at_switch(real_full, spec);
  (void)conditioning;
  const FrameSequence gen = load_sequence(generated);
  const bench::MetricSet metrics = bench::evaluate_pair(test, gen, cfg);

  const std::string sid =
      !scenario_id.empty() ? scenario_id : real_full.scenario_id;
  const nlohmann::json params = mask_params_json(cfg.mask_params);
  nlohmann::json records = nlohmann::json::array();
  auto record = [&](const std::string& metric, const nlohmann::json& mode, double value) {
    nlohmann::json r;
    r["scenario_id"] = sid;
    r["perspective"] = perspective;
    r["metric"] = metric;
    r["mode"] = mode;
    r["value"] = value;
    r["mask_params"] = params;
    records.push_back(std::move(r));
  };
  record("spatial_iou", nullptr, metrics.spatial_iou);
  record("spatiotemporal_iou", st_mode_str(cfg.st_mode), metrics.spatiotemporal_iou);
  record("weighted_spatial_iou", nullptr, metrics.weighted_spatial_iou);
  record("mse", nullptr, metrics.mse);
  write_json(out, records);
  std::cout << "wrote " << out << "\n";
}

void cmd_evaluate_manifest(const std::string& manifest_file,
                           const std::string& generated_root, const std::string& model,
                           const std::string& baseline_file,
                           const bench::EvalConfig& cfg, const std::string& out,
                           const std::string& csv) {
  const bench::DatasetManifest manifest = bench::load_manifest(manifest_file);
  const bench::VarianceBaseline baseline = bench::load_baseline(baseline_file);
  const bench::EvalReport report =
      bench::evaluate_model(manifest, generated_root, model, baseline, cfg);
  bench::write_report(report, bench::ReportFormat::kJson, out);
  std::cout << "wrote " << out << " (physics_iq " << report.physics_iq << ")\n";
  if (!csv.empty()) {
    bench::write_report(report, bench::ReportFormat::kCsv, csv);
    std::cout << "wrote " << csv << "\n";
  }
}

int cmd_validate(const std::string& manifest_file, bool partial) {
  const bench::DatasetManifest manifest = bench::load_manifest(manifest_file);
  const bench::ValidationResult result = bench::validate_manifest(manifest, partial);
  if (result.ok) {
    std::cout << "OK: " << manifest.records.size() << " records\n";
    return 0;
  }
  for (const std::string& problem : result.problems) {
    std::cout << "PROBLEM: " << problem << "\n";
  }
  return 1;
}

void cmd_variance(const std::string& manifest_file, const bench::EvalConfig& cfg,
                  const std::string& out) {
  const bench::DatasetManifest manifest = bench::load_manifest(manifest_file);
  const bench::VarianceBaseline baseline = bench::compute_variance_baseline(manifest, cfg);
  bench::save_baseline(baseline, cfg, out);
  std::cout << "wrote " << out << " (" << baseline.per_pair.size() << " pairs)\n";
}

void cmd_report(const std::vector<std::string>& model_files,
                const std::string& baseline_file, const std::string& out,
                const std::string& csv) {
  std::vector<bench::EvalReport> reports;
  reports.reserve(model_files.size());
  for (const std::string& file : model_files) {
    reports.push_back(bench::load_report(file));
  }
  std::optional<bench::VarianceBaseline> baseline;
  if (!baseline_file.empty()) baseline = bench::load_baseline(baseline_file);
  const bench::MultiModelSummary summary =
      bench::summarize_models(reports, baseline ? &*baseline : nullptr);
  bench::save_summary(summary, bench::ReportFormat::kJson, out);
  std::cout << "wrote " << out << "\n";
  if (!csv.empty()) {
    bench::save_summary(summary, bench::ReportFormat::kCsv, csv);
    std::cout << "wrote " << csv << "\n";
  }
}

void cmd_synth(const std::string& kind, std::uint64_t seed, const std::string& out,
               int take, double noise, double fps, int size, double duration) {
  if (kind == "all") {
    synth::MiniBenchmarkOptions options;
    options.seed = seed;
    options.noise_amplitude = noise;
    options.fps = fps;
    options.size = size;
    options.duration_seconds = duration;
    const bench::DatasetManifest manifest = synth::generate_mini_benchmark(options, out);
    std::cout << "wrote " << out << "/dataset.json (" << manifest.records.size()
              << " records)\n";
    return;
  }
  synth::SynthSpec spec =
      synth::default_spec(synth::parse_kind(kind), fps, size, duration, seed, noise);
  FrameSequence seq = synth::render_scenario(spec, take);
  seq.scenario_id = kind;
  seq.switch_index = static_cast<int>(round_count(3.0 * fps)) - 1;
  save_sequence(seq, out);
  std::cout << "wrote " << out << " (" << seq.frame_count() << " frames)\n";
}

void cmd_judge(const std::string& manifest_file, const std::string& generated_root,
               const std::string& endpoint_url, const std::string& stub,
               std::uint64_t seed, const std::string& out, int max_in_flight,
               int timeout_seconds, const std::string& auth_env) {
  const bench::DatasetManifest manifest = bench::load_manifest(manifest_file);
  std::vector<judge::SequenceRef> real, generated;
  for (const bench::ScenarioRecord& rec : manifest.records) {
    if (rec.take != 1) continue;
    const std::string perspective = bench::perspective_str(rec.perspective);
    real.push_back({rec.scenario_id, perspective,
                    (manifest.root / rec.path).string()});
    generated.push_back(
        {rec.scenario_id, perspective,
         (std::filesystem::path(generated_root) / rec.scenario_id / perspective)
             .string()});
  }
  const std::vector<judge::PresentationPair> pairs =
      judge::build_pairs(real, generated, seed);

  std::unique_ptr<judge::JudgeEndpoint> endpoint;
  if (!stub.empty()) {
    endpoint = judge::make_stub(stub, seed);
  } else if (!endpoint_url.empty()) {
    judge::HttpJudgeConfig config;
    config.base_url = endpoint_url;
    config.auth_token_env = auth_env;
    config.timeout_seconds = timeout_seconds;
    endpoint = judge::make_http_judge(config);
  } else {
    throw CLI::ValidationError("judge needs --endpoint or --stub");
  }

  const std::vector<judge::Verdict> verdicts =
      judge::run_judge(pairs, *endpoint, max_in_flight);
  judge::save_verdicts(out, pairs, verdicts, endpoint->name(), seed);
  const judge::JudgeScore score = judge::mllm_score(verdicts);
  std::cout << "wrote " << out << " (accuracy " << score.accuracy_percent << "% over "
            << score.parseable << " parseable, " << score.unparseable
            << " unparseable)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"physiq: physical-plausibility evaluation for generated video"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ingest
  std::string in, out, size;
  double fps = 0.0;
  CLI::App* ingest = app.add_subcommand("ingest", "Resample a sequence to a model's native specs");
  ingest->add_option("in", in, "input sequence (frame dir or .piqf)")->required();
  ingest->add_option("out", out, "output sequence (frame dir or .piqf)")->required();
  ingest->add_option("--fps", fps, "target frame rate")->required();
  ingest->add_option("--size", size, "target resolution WxH");
  ingest->callback([&] { cmd_ingest(in, out, fps, size); });

  // mask
  MaskParams mask_params;
  CLI::App* mask = app.add_subcommand("mask", "Compute the binary motion-mask video");
  mask->add_option("in", in, "input frame dir")->required();
  mask->add_option("out", out, "output mask dir")->required();
  mask->add_option("--tau", mask_params.tau, "intensity threshold");
  mask->add_option("--alpha", mask_params.alpha, "background update rate");
  mask->add_option("--window", mask_params.window, "initial averaging window");
  mask->add_option("--blur-radius", mask_params.blur_radius, "Gaussian radius");
  mask->add_option("--blur-sigma", mask_params.blur_sigma, "Gaussian sigma");
  mask->add_option("--kernel", mask_params.morph_kernel, "morphology kernel side");
  mask->callback([&] { cmd_mask(in, out, mask_params); });

  // evaluate
  std::string real, generated, params_file, scenario_id, perspective = "center";
  std::string manifest_file, generated_root, model, baseline_file, csv;
  int jobs = 0;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score generated continuations");
  evaluate->add_option("--real", real, "real full-take sequence (single-pair mode)");
  evaluate->add_option("--generated", generated, "generated continuation (single-pair mode)");
  evaluate->add_option("--params", params_file, "evaluation config JSON");
  evaluate->add_option("--scenario-id", scenario_id, "scenario label override");
  evaluate->add_option("--perspective", perspective, "perspective label");
  evaluate->add_option("--manifest", manifest_file, "dataset manifest (batch mode)");
  evaluate->add_option("--generated-root", generated_root, "generated videos root (batch mode)");
  evaluate->add_option("--model", model, "model label (batch mode)");
  evaluate->add_option("--baseline", baseline_file, "variance baseline JSON (batch mode)");
  evaluate->add_option("--csv", csv, "also write the report as CSV (batch mode)");
  evaluate->add_option("--jobs", jobs, "parallel evaluations (0 = auto)");
  evaluate->add_option("--out", out, "output report path")->required();
  evaluate->callback([&] {
    const bench::EvalConfig cfg = make_config(params_file, jobs);
    if (!manifest_file.empty()) {
      if (generated_root.empty() || model.empty() || baseline_file.empty()) {
        throw CLI::ValidationError(
            "batch mode needs --manifest, --generated-root, --model and --baseline");
      }
      cmd_evaluate_manifest(manifest_file, generated_root, model, baseline_file, cfg,
                            out, csv);
    } else {
      if (real.empty() || generated.empty()) {
        throw CLI::ValidationError("single-pair mode needs --real and --generated");
      }
      cmd_evaluate_single(real, generated, cfg, scenario_id, perspective, out);
    }
  });

  // validate
  bool partial = false;
  CLI::App* validate = app.add_subcommand("validate", "Check a dataset manifest");
  validate->add_option("manifest", manifest_file, "dataset.json")->required();
  validate->add_flag("--partial", partial, "relax the 66x3x2 completeness rule");
  validate->callback([&] { exit_code = cmd_validate(manifest_file, partial); });

  // variance
  CLI::App* variance = app.add_subcommand("variance", "Compute the physical-variance baseline");
  variance->add_option("--manifest", manifest_file, "dataset.json")->required();
  variance->add_option("--params", params_file, "evaluation config JSON");
  variance->add_option("--jobs", jobs, "parallel evaluations (0 = auto)");
  variance->add_option("--out", out, "baseline output path")->required();
  variance->callback([&] {
    cmd_variance(manifest_file, make_config(params_file, jobs), out);
  });

  // report
  std::vector<std::string> model_files;
  CLI::App* report = app.add_subcommand("report", "Aggregate per-model reports");
  report->add_option("--models", model_files, "model report JSON files")->required();
  report->add_option("--baseline", baseline_file, "variance baseline JSON");
  report->add_option("--csv", csv, "also write the summary as CSV");
  report->add_option("--out", out, "summary output path")->required();
  report->callback([&] { cmd_report(model_files, baseline_file, out, csv); });

  // synth
  std::string kind = "all";
  std::uint64_t seed = 1;
  int take = 1, synth_size = 64;
  double noise = 0.5, synth_fps = 8.0, duration = 8.0;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Render synthetic scenarios");
  synth_cmd->add_option("--kind", kind,
                        "all | static | translating-square | falling-ball | pendulum | diffusing-blob");
  synth_cmd->add_option("--seed", seed, "noise seed");
  synth_cmd->add_option("--take", take, "take to render (single-kind mode)")
      ->check(CLI::Range(1, 2));
  synth_cmd->add_option("--noise", noise, "take-2 jitter amplitude in [0, 1]");
  synth_cmd->add_option("--fps", synth_fps, "frame rate");
  synth_cmd->add_option("--size", synth_size, "canvas side in pixels");
  synth_cmd->add_option("--duration", duration, "seconds");
  synth_cmd->add_option("--out", out, "output directory")->required();
  synth_cmd->callback(
      [&] { cmd_synth(kind, seed, out, take, noise, synth_fps, synth_size, duration); });

  // judge
  std::string endpoint_url, stub;
  int max_in_flight = 4, timeout_seconds = 60;
  std::string auth_env;
  CLI::App* judge_cmd = app.add_subcommand("judge", "Run the 2AFC visual-realism protocol");
  judge_cmd->add_option("--real", manifest_file, "dataset manifest")->required();
  judge_cmd->add_option("--generated", generated_root, "generated videos root")->required();
  judge_cmd->add_option("--endpoint", endpoint_url, "HTTP judge base URL");
  judge_cmd->add_option("--stub", stub,
                        "always-first | always-second | uniform-random | temporal-mse");
  judge_cmd->add_option("--seed", seed, "presentation-order seed");
  judge_cmd->add_option("--max-in-flight", max_in_flight, "concurrent requests");
  judge_cmd->add_option("--timeout", timeout_seconds, "endpoint timeout seconds");
  judge_cmd->add_option("--auth-env", auth_env, "env var holding the bearer token");
  judge_cmd->add_option("--out", out, "verdicts output path")->required();
  judge_cmd->callback([&] {
    cmd_judge(manifest_file, generated_root, endpoint_url, stub, seed, out,
              max_in_flight, timeout_seconds, auth_env);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
