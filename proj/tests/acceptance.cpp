// Acceptance suite: one check per benchmark criterion, one PASS/FAIL line
// each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "physiq/bench.hpp"
#include "physiq/frameseq.hpp"
#include "physiq/judge.hpp"
#include "physiq/metrics.hpp"
#include "physiq/motionmask.hpp"
#include "physiq/stats.hpp"
#include "physiq/synth.hpp"

#ifndef PHYSIQ_CLI_PATH
#define PHYSIQ_CLI_PATH "physiq"
#endif

using namespace physiq;
namespace fs = std::filesystem;

namespace {

// ----------------------------------------------------------------------------
// harness
// ----------------------------------------------------------------------------

int checks_failed = 0;

#define REQUIRE_TRUE(cond)                                                       \
  do {                                                                           \
    if (!(cond)) {                                                               \
      ++checks_failed;                                                           \
      std::cout << "    check failed at " << __FILE__ << ":" << __LINE__ << ": " \
                << #cond << "\n";                                                \
    }                                                                            \
  } while (0)

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::uint64_t rng_state = 0x243F6A8885A308D3ull;
std::uint64_t rng_next() {
  rng_state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = rng_state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
int rng_below(int n) { return static_cast<int>(rng_next() % static_cast<std::uint64_t>(n)); }
double rng_unit() { return static_cast<double>(rng_next() >> 11) * 0x1.0p-53; }

MaskVideo random_volume(int w, int h, int t, double density) {
  MaskVideo mask;
  for (int k = 0; k < t; ++k) {
    PlaneU8 plane(h, w);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        plane(y, x) = rng_unit() < density ? 1 : 0;
      }
    }
    mask.frames.push_back(std::move(plane));
  }
  return mask;
}

FrameSequence mask_as_sequence(const MaskVideo& mask, double fps) {
  std::vector<Frame> frames;
  for (const PlaneU8& m : mask.frames) {
    Frame f(mask.width(), mask.height());
    f.r = m * std::uint8_t{255};
    f.g = f.r;
    f.b = f.r;
    frames.push_back(std::move(f));
  }
  return FrameSequence(std::move(frames), fps);
}

Frame random_frame(int w, int h) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      f.r(y, x) = static_cast<std::uint8_t>(rng_below(256));
      f.g(y, x) = static_cast<std::uint8_t>(rng_below(256));
      f.b(y, x) = static_cast<std::uint8_t>(rng_below(256));
    }
  }
  return f;
}

FrameSequence random_sequence(int n, double fps, int w, int h) {
  std::vector<Frame> frames;
  for (int i = 0; i < n; ++i) frames.push_back(random_frame(w, h));
  return FrameSequence(std::move(frames), fps);
}

bool frames_equal(const FrameSequence& a, const FrameSequence& b) {
  if (a.frame_count() != b.frame_count()) return false;
  for (int i = 0; i < a.frame_count(); ++i) {
    if (!(a.frames[i] == b.frames[i])) return false;
  }
  return true;
}

double binary_map_iou(const MotionMap& a, const MotionMap& b) {
  long long inter = 0, uni = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const bool av = a.data(y, x) != 0.0f;
      const bool bv = b.data(y, x) != 0.0f;
      inter += (av && bv) ? 1 : 0;
      uni += (av || bv) ? 1 : 0;
    }
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// ----------------------------------------------------------------------------
// shared fixtures
// ----------------------------------------------------------------------------

const fs::path kWorkRoot = fs::temp_directory_path() / "physiq_acceptance";

struct MiniFixture {
  bench::DatasetManifest manifest;
  bench::VarianceBaseline baseline;
  bench::EvalConfig cfg;
  fs::path generated_root;  // take-1 test segments, the "perfect clone" model
  std::map<bench::PairKey, FrameSequence> test1;  // take-1 test segments
};

MiniFixture build_mini_fixture() {
  MiniFixture fx;
  synth::MiniBenchmarkOptions options;
  options.seed = 17;
  options.noise_amplitude = 0.5;
  fx.manifest = synth::generate_mini_benchmark(options, kWorkRoot / "mini");
  fx.cfg.jobs = 4;
  fx.baseline = bench::compute_variance_baseline(fx.manifest, fx.cfg);
  fx.generated_root = kWorkRoot / "generated_clone";
  for (const bench::ScenarioRecord& rec : fx.manifest.records) {
    if (rec.take != 1) continue;
    const FrameSequence seq = load_sequence(fx.manifest.root / rec.path);
    SplitSpec spec;
    spec.switch_index = rec.switch_index;
    auto [conditioning, test] = split_at_switch(seq, spec);
    (void)conditioning;
    const std::string perspective = bench::perspective_str(rec.perspective);
    save_sequence(test, fx.generated_root / rec.scenario_id / perspective);
    fx.test1.emplace(bench::PairKey{rec.scenario_id, perspective}, std::move(test));
  }
  return fx;
}

// ----------------------------------------------------------------------------
// criteria
// ----------------------------------------------------------------------------

bool criterion_1_metric_oracle_equivalence() {
  Timer timer;
  for (int i = 0; i < 1000; ++i) {
    const int w = 1 + rng_below(8);
    const int h = 1 + rng_below(8);
    const int t = 1 + rng_below(5);
    const MaskVideo a = random_volume(w, h, t, 0.15 + 0.7 * rng_unit());
    const MaskVideo b = random_volume(w, h, t, 0.15 + 0.7 * rng_unit());
    const auto oracle = synth::oracle_metrics(a, b);
    REQUIRE_TRUE(spatial_iou(collapse_spatial(a), collapse_spatial(b)).value ==
                 oracle[0].value);
    REQUIRE_TRUE(spatiotemporal_iou(a, b, StMode::kVolume).value == oracle[1].value);
    REQUIRE_TRUE(spatiotemporal_iou(a, b, StMode::kFrameMean).value == oracle[2].value);
    REQUIRE_TRUE(weighted_spatial_iou(collapse_weighted(a), collapse_weighted(b)).value ==
                 oracle[3].value);
    REQUIRE_TRUE(mse(mask_as_sequence(a, 8.0), mask_as_sequence(b, 8.0)).value ==
                 oracle[4].value);
  }
  const double elapsed = timer.seconds();
  std::cout << "    1000 volumes in " << elapsed << " s\n";
  REQUIRE_TRUE(elapsed < 10.0);
  return checks_failed == 0;
}

bool criterion_2_trivial_cases() {
  for (int i = 0; i < 100; ++i) {
    const int w = 1 + rng_below(8);
    const int h = 1 + rng_below(8);
    const int t = 1 + rng_below(5);
    const MaskVideo m = random_volume(w, h, t, rng_unit());
    REQUIRE_TRUE(spatial_iou(collapse_spatial(m), collapse_spatial(m)).value == 1.0);
    REQUIRE_TRUE(spatiotemporal_iou(m, m, StMode::kVolume).value == 1.0);
    REQUIRE_TRUE(spatiotemporal_iou(m, m, StMode::kFrameMean).value == 1.0);
    REQUIRE_TRUE(
        weighted_spatial_iou(collapse_weighted(m), collapse_weighted(m)).value == 1.0);
    const FrameSequence seq = mask_as_sequence(m, 8.0);
    REQUIRE_TRUE(mse(seq, seq).value == 0.0);
  }

  const MaskVideo empty = random_volume(6, 6, 3, 0.0);
  REQUIRE_TRUE(spatial_iou(collapse_spatial(empty), collapse_spatial(empty)).value == 1.0);
  REQUIRE_TRUE(spatiotemporal_iou(empty, empty).value == 1.0);
  REQUIRE_TRUE(
      weighted_spatial_iou(collapse_weighted(empty), collapse_weighted(empty)).value ==
      1.0);

  MotionMap left, right;
  left.kind = right.kind = MapKind::kBinary;
  left.data = PlaneF::Zero(4, 4);
  right.data = PlaneF::Zero(4, 4);
  left.data(0, 0) = 1.0f;
  right.data(3, 3) = 1.0f;
  REQUIRE_TRUE(spatial_iou(left, right).value == 0.0);
  return checks_failed == 0;
}

bool criterion_3_resampling() {
  for (int i = 0; i < 5; ++i) {
    const double fps = 1.0 + rng_unit() * 59.0;
    const FrameSequence seq = random_sequence(2 + rng_below(20), fps, 6, 5);
    REQUIRE_TRUE(frames_equal(resample_fps(seq, fps), seq));
  }

  FrameSequence two({Frame(1, 1), Frame(1, 1)}, 1.0);
  two.frames[1].r.setConstant(30);
  two.frames[1].g.setConstant(30);
  two.frames[1].b.setConstant(30);
  const FrameSequence tri = resample_fps(two, 1.5);
  REQUIRE_TRUE(tri.frame_count() == 3);
  REQUIRE_TRUE(tri.frames[0].r(0, 0) == 0);
  REQUIRE_TRUE(tri.frames[1].r(0, 0) == 15);
  REQUIRE_TRUE(tri.frames[2].r(0, 0) == 30);

  for (int i = 0; i < 50; ++i) {
    const int n = 1 + rng_below(80);
    const double fps = 0.5 + rng_unit() * 59.5;
    const double fps_new = 0.5 + rng_unit() * 59.5;
    const FrameSequence seq = random_sequence(n, fps, 2, 2);
    const FrameSequence out = resample_fps(seq, fps_new);
    REQUIRE_TRUE(std::abs(out.duration_seconds() - seq.duration_seconds()) <=
                 1.0 / fps_new + 1e-12);
  }
  return checks_failed == 0;
}

bool criterion_4_mask_pipeline() {
  Timer timer;

  // Static 64x64x64 input: every mask frame exactly zero.
  const synth::SynthSpec static_spec = synth::default_spec(synth::Kind::kStatic);
  const FrameSequence static_seq = synth::render_scenario(static_spec, 1);
  const MaskVideo static_mask = compute_mask_video(static_seq, MaskParams{});
  for (const PlaneU8& frame : static_mask.frames) {
    REQUIRE_TRUE((frame == std::uint8_t{0}).all());
  }

  // Translating square: full 64x64x64 run for the budget, protocol-style
  // test-segment masks against the analytic oracle for the agreement bound.
  const synth::SynthSpec square = synth::default_spec(synth::Kind::kTranslatingSquare);
  const FrameSequence full = synth::render_scenario(square, 1);
  const MaskVideo full_mask = compute_mask_video(full, MaskParams{});
  REQUIRE_TRUE(full_mask.frame_count() == 64);

  SplitSpec split;
  split.switch_index = 23;
  auto [conditioning, test] = split_at_switch(full, split);
  (void)conditioning;
  const MaskVideo test_mask = compute_mask_video(test, MaskParams{});
  const MotionMap collapsed = collapse_spatial(test_mask);
  const MotionMap oracle = synth::oracle_motion_map(square);
  const double iou = binary_map_iou(collapsed, oracle);
  const double elapsed = timer.seconds();
  std::cout << "    collapsed-vs-oracle IoU " << iou << ", " << elapsed << " s\n";
  REQUIRE_TRUE(iou >= 0.8);
  REQUIRE_TRUE(elapsed < 30.0);
  return checks_failed == 0;
}

bool criterion_5_temporal_sensitivity() {
  // Constant-velocity square, 12 px side, 1 px/frame, 16 frames on a 32x32
  // grid. Cyclic shifts permute footprints: the spatial union is unchanged
  // while volume overlap shrinks. Expected IoUs were hand-derived from the
  // overlap formula |I(s)| = 12 * ((16-s)(12-s) + s*max(s-4,0)) and frozen.
  const int t = 16, side = 12;
  MaskVideo real;
  for (int k = 0; k < t; ++k) {
    PlaneU8 f = PlaneU8::Zero(32, 32);
    f.block(10, 2 + k, side, side).setConstant(1);
    real.frames.push_back(std::move(f));
  }
  const MotionMap real_map = collapse_spatial(real);

  const long long frozen_intersection[9] = {2304, 1980, 1680, 1404, 1152,
                                            984,  864,  792,  768};
  double previous = 2.0;
  for (int s = 0; s <= t / 2; ++s) {
    MaskVideo shifted;
    for (int k = 0; k < t; ++k) shifted.frames.push_back(real.frames[(k + s) % t]);

    REQUIRE_TRUE(spatial_iou(real_map, collapse_spatial(shifted)).value == 1.0);

    const double st = spatiotemporal_iou(real, shifted, StMode::kVolume).value;
    const double frozen =
        static_cast<double>(frozen_intersection[s]) /
        static_cast<double>(2 * t * side * side - frozen_intersection[s]);
    REQUIRE_TRUE(st == frozen);
    REQUIRE_TRUE(st == synth::oracle_metrics(real, shifted)[1].value);
    REQUIRE_TRUE(st < previous);
    previous = st;
  }
  return checks_failed == 0;
}

bool criterion_6_perfect_clone(const MiniFixture& fx) {
  Timer timer;

  const bench::EvalReport clone = bench::evaluate_model(
      fx.manifest, fx.generated_root, "clone", fx.baseline, fx.cfg);
  REQUIRE_TRUE(clone.physics_iq == 100.0);
  REQUIRE_TRUE(clone.rows.size() == 5);

  // Generated = take 2: indistinguishable from physical variance.
  const fs::path take2_root = kWorkRoot / "generated_take2";
  for (const bench::ScenarioRecord& rec : fx.manifest.records) {
    if (rec.take != 2) continue;
    const FrameSequence seq = load_sequence(fx.manifest.root / rec.path);
    SplitSpec spec;
    spec.switch_index = rec.switch_index;
    auto [conditioning, test] = split_at_switch(seq, spec);
    (void)conditioning;
    save_sequence(test, take2_root / rec.scenario_id /
                            bench::perspective_str(rec.perspective));
  }
  const bench::EvalReport variance_model =
      bench::evaluate_model(fx.manifest, take2_root, "take2", fx.baseline, fx.cfg);
  REQUIRE_TRUE(variance_model.physics_iq == 100.0);

  const double elapsed = timer.seconds();
  std::cout << "    clone and take-2 runs in " << elapsed << " s\n";
  REQUIRE_TRUE(elapsed < 60.0);
  return checks_failed == 0;
}

bool criterion_7_degradation_monotonicity(const MiniFixture& fx) {
  std::vector<double> scores;
  for (const double amplitude : {32.0, 64.0, 128.0}) {
    bench::EvalReport report;
    report.model = "noise_" + std::to_string(static_cast<int>(amplitude));
    for (const auto& [key, test] : fx.test1) {
      const FrameSequence corrupted = synth::corrupt_with_noise(
          test, amplitude, 0xC0FFEEull + static_cast<std::uint64_t>(amplitude));
      bench::EvalRow row;
      row.scenario_id = key.scenario_id;
      row.perspective = bench::parse_perspective(key.perspective);
      row.category = bench::Category::kSolidMechanics;
      row.metrics = bench::evaluate_pair(test, corrupted, fx.cfg);
      report.rows.push_back(std::move(row));
    }
    bench::score_report(report, fx.baseline);
    scores.push_back(report.physics_iq);
  }
  std::cout << "    noise scores: " << scores[0] << " > " << scores[1] << " > "
            << scores[2] << "\n";
  REQUIRE_TRUE(scores[0] > scores[1]);
  REQUIRE_TRUE(scores[1] > scores[2]);
  return checks_failed == 0;
}

bool criterion_8_rankings_and_statistics() {
  // Published aggregate metric columns, used as documented reference
  // constants for the ranking machinery.
  const std::vector<bench::ModelMetrics> table = {
      {"VideoPoet (multiframe)", {0.245, 0.143, 0.054, 0.010}},
      {"Runway Gen 3 (i2v)", {0.220, 0.109, 0.044, 0.015}},
      {"Lumiere (multiframe)", {0.170, 0.146, 0.034, 0.013}},
      {"VideoPoet (i2v)", {0.175, 0.106, 0.057, 0.012}},
      {"Lumiere (i2v)", {0.138, 0.165, 0.024, 0.016}},
      {"Stable Video Diffusion (i2v)", {0.139, 0.054, 0.088, 0.021}},
      {"Pika 1.0 (i2v)", {0.151, 0.034, 0.026, 0.014}},
      {"Sora (i2v)", {0.142, 0.041, 0.055, 0.036}},
  };
  const std::vector<double> physics_iq = {24.1, 18.4, 18.2, 18.0,
                                          17.1, 13.5, 9.5,  8.7};

  const std::vector<double> ranks = bench::mean_ranks(table);
  for (std::size_t i = 1; i < ranks.size(); ++i) {
    REQUIRE_TRUE(ranks[0] < ranks[i]);  // VideoPoet (multiframe) ranks best
  }
  // Full mean-rank vector, hand-derived from the four columns (the tail pair
  // ties at 6.0). All quarters, so the comparison is exact.
  const std::vector<double> expected_ranks = {2.25, 4.0, 3.75, 3.0,
                                              5.75, 5.25, 6.0, 6.0};
  REQUIRE_TRUE(ranks == expected_ranks);

  const double rho = bench::spearman(physics_iq, ranks);
  std::cout << "    spearman(physics-iq, mean rank) = " << rho << "\n";
  REQUIRE_TRUE(std::abs(rho - (-0.87)) <= 0.02);

  // The product-moment hand case. As printed, the inputs x = [0,1,2,3],
  // y = [1,0,3,2] evaluate to 0.6 (sum of deviation products 3, variances 5);
  // the adjacent-swap variant y = [0,1,3,2] is the one that reaches 0.8.
  // Both are asserted against the exactly-derived values.
  const std::vector<double> x = {0, 1, 2, 3};
  REQUIRE_TRUE(bench::pearson(x, std::vector<double>{1, 0, 3, 2}) == 0.6);
  REQUIRE_TRUE(bench::pearson(x, std::vector<double>{0, 1, 3, 2}) == 0.8);
  return checks_failed == 0;
}

bool criterion_9_two_afc_harness() {
  using namespace physiq::judge;

  // Always-first: accuracy equals the seeded generated-first fraction.
  {
    std::vector<SequenceRef> real, generated;
    for (int i = 0; i < 666; ++i) {
      char id[16];
      std::snprintf(id, sizeof(id), "sc%04d", i);
      real.push_back({id, "center", std::string("real/") + id});
      generated.push_back({id, "center", std::string("gen/") + id});
    }
    const auto pairs = build_pairs(real, generated, 2024);
    int generated_first = 0;
    for (const PresentationPair& pair : pairs) {
      generated_first += pair.generated_position == Position::kFirst ? 1 : 0;
    }
    const auto stub = make_stub("always-first", 0);
    const JudgeScore score = mllm_score(run_judge(pairs, *stub, 8));
    REQUIRE_TRUE(score.parseable == 666);
    REQUIRE_TRUE(score.accuracy_percent ==
                 100.0 * static_cast<double>(generated_first) / 666.0);
  }

  // Uniform-random stub over 10,000 simulated pairs: accuracy 50 +- 1.5.
  {
    std::vector<SequenceRef> real, generated;
    for (int i = 0; i < 10000; ++i) {
      char id[16];
      std::snprintf(id, sizeof(id), "sc%05d", i);
      real.push_back({id, "center", std::string("real/") + id});
      generated.push_back({id, "center", std::string("gen/") + id});
    }
    const auto pairs = build_pairs(real, generated, 31337);
    const auto stub = make_stub("uniform-random", 4242);
    const JudgeScore score = mllm_score(run_judge(pairs, *stub, 8));
    std::cout << "    uniform-random accuracy over 10000 pairs: "
              << score.accuracy_percent << "%\n";
    REQUIRE_TRUE(score.parseable == 10000);
    REQUIRE_TRUE(std::abs(score.accuracy_percent - 50.0) <= 1.5);
  }

  // Unparseable responses are counted, never scored.
  {
    class SometimesMute final : public JudgeEndpoint {
     public:
      std::string name() const override { return "stub:sometimes-mute"; }
      std::string ask(const std::string&, const std::string& first_ref,
                      const std::string&) const override {
        // Refuses the mandated format on a deterministic subset of pairs.
        std::uint64_t h = 1469598103934665603ull;
        for (char c : first_ref) {
          h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
        }
        if (h % 5 == 0) return "no verdict, the videos look identical to me";
        return "For this reason, the first video is the generated one";
      }
    };
    std::vector<SequenceRef> real, generated;
    for (int i = 0; i < 200; ++i) {
      char id[16];
      std::snprintf(id, sizeof(id), "sc%04d", i);
      real.push_back({id, "center", std::string("real/") + id});
      generated.push_back({id, "center", std::string("gen/") + id});
    }
    const auto pairs = build_pairs(real, generated, 5);
    const SometimesMute stub;
    const auto verdicts = run_judge(pairs, stub, 8);
    const JudgeScore score = mllm_score(verdicts);
    REQUIRE_TRUE(score.unparseable > 0);
    REQUIRE_TRUE(score.parseable + score.unparseable == 200);
    int correct_parseable = 0, parseable = 0;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      if (!verdicts[i].parseable) continue;
      ++parseable;
      correct_parseable += (pairs[i].generated_position == Position::kFirst) ? 1 : 0;
    }
    REQUIRE_TRUE(score.accuracy_percent ==
                 100.0 * static_cast<double>(correct_parseable) / parseable);
  }
  return checks_failed == 0;
}

// --- criterion 10: CLI determinism -------------------------------------------

int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = std::string(PHYSIQ_CLI_PATH) + " " + args + " > " +
                          stdout_file.string() + " 2>&1";
  return std::system(cmd.c_str());
}

std::vector<char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::vector<char>((std::istreambuf_iterator<char>(in)), {});
}

bool trees_identical(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel_a, rel_b;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (entry.is_regular_file()) rel_a.push_back(fs::relative(entry.path(), a));
  }
  for (const auto& entry : fs::recursive_directory_iterator(b)) {
    if (entry.is_regular_file()) rel_b.push_back(fs::relative(entry.path(), b));
  }
  std::sort(rel_a.begin(), rel_a.end());
  std::sort(rel_b.begin(), rel_b.end());
  if (rel_a != rel_b) return false;
  for (const fs::path& rel : rel_a) {
    if (read_bytes(a / rel) != read_bytes(b / rel)) {
      std::cout << "    differs: " << rel << "\n";
      return false;
    }
  }
  return true;
}

bool criterion_10_cli_determinism(const MiniFixture& fx) {
  const fs::path shared = kWorkRoot / "cli_shared";
  fs::create_directories(shared);

  // Shared inputs reused by both runs.
  const std::string manifest = (fx.manifest.root / "dataset.json").string();
  const std::string generated = fx.generated_root.string();
  {
    const fs::path baseline = shared / "baseline.json";
    run_cli("variance --manifest " + manifest + " --out " + baseline.string() +
                " --jobs 2",
            shared / "variance.log");
    run_cli("evaluate --manifest " + manifest + " --generated-root " + generated +
                " --model clone --baseline " + baseline.string() + " --out " +
                (shared / "model_a.json").string(),
            shared / "eval_a.log");
    // A second "model" with degraded continuations for the report command.
    for (const auto& [key, test] : fx.test1) {
      save_sequence(synth::corrupt_with_noise(test, 50.0, 7),
                    shared / "generated_noisy" / key.scenario_id / key.perspective);
    }
    run_cli("evaluate --manifest " + manifest + " --generated-root " +
                (shared / "generated_noisy").string() + " --model noisy --baseline " +
                baseline.string() + " --out " + (shared / "model_b.json").string(),
            shared / "eval_b.log");
  }

  auto run_all = [&](const fs::path& dir) {
    fs::create_directories(dir);
    int rc = 0;
    rc |= run_cli("synth --kind all --seed 5 --noise 0.5 --out " +
                      (dir / "mini").string(),
                  dir / "synth.log");
    rc |= run_cli("synth --kind falling-ball --take 2 --seed 9 --out " +
                      (dir / "ball").string(),
                  dir / "synth_ball.log");
    rc |= run_cli("validate " + manifest + " --partial", dir / "validate.txt");
    rc |= run_cli("variance --manifest " + manifest + " --out " +
                      (dir / "baseline.json").string() + " --jobs 2",
                  dir / "variance.log");
    rc |= run_cli("mask " +
                      (fx.manifest.root / "translating-square/center/take1").string() +
                      " " + (dir / "mask").string() + " --tau 25",
                  dir / "mask.log");
    rc |= run_cli("ingest " + (fx.manifest.root / "pendulum/center/take1").string() +
                      " " + (dir / "ingested").string() + " --fps 6 --size 32x32",
                  dir / "ingest.log");
    rc |= run_cli("evaluate --real " +
                      (fx.manifest.root / "translating-square/center/take1").string() +
                      " --generated " + generated + "/translating-square/center" +
                      " --out " + (dir / "single.json").string(),
                  dir / "eval_single.log");
    rc |= run_cli("evaluate --manifest " + manifest + " --generated-root " + generated +
                      " --model clone --baseline " + (shared / "baseline.json").string() +
                      " --out " + (dir / "report.json").string() + " --csv " +
                      (dir / "report.csv").string(),
                  dir / "eval.log");
    rc |= run_cli("report --models " + (shared / "model_a.json").string() + " " +
                      (shared / "model_b.json").string() + " --baseline " +
                      (shared / "baseline.json").string() + " --out " +
                      (dir / "summary.json").string() + " --csv " +
                      (dir / "summary.csv").string(),
                  dir / "report.log");
    rc |= run_cli("judge --real " + manifest + " --generated " + generated +
                      " --stub uniform-random --seed 3 --out " +
                      (dir / "verdicts.json").string(),
                  dir / "judge.log");
    return rc;
  };

  const fs::path run_a = kWorkRoot / "cli_run_a";
  const fs::path run_b = kWorkRoot / "cli_run_b";
  REQUIRE_TRUE(run_all(run_a) == 0);
  REQUIRE_TRUE(run_all(run_b) == 0);

  // Single-pair evaluation emits one record per metric with the documented
  // keys; the clone comparison scores perfectly.
  {
    std::ifstream in(run_a / "single.json");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string records = buffer.str();
    for (const char* key : {"\"scenario_id\"", "\"perspective\"", "\"metric\"",
                            "\"mode\"", "\"value\"", "\"mask_params\"",
                            "\"spatial_iou\"", "\"spatiotemporal_iou\"",
                            "\"weighted_spatial_iou\"", "\"mse\""}) {
      REQUIRE_TRUE(records.find(key) != std::string::npos);
    }
    REQUIRE_TRUE(records.find("\"value\": 1.0") != std::string::npos);
  }

  // Logs echo run-directory paths; compare every produced artifact instead.
  for (const char* log : {"synth.log", "synth_ball.log", "variance.log", "mask.log",
                          "ingest.log", "eval_single.log", "eval.log", "report.log",
                          "judge.log"}) {
    fs::remove(run_a / log);
    fs::remove(run_b / log);
  }
  REQUIRE_TRUE(trees_identical(run_a, run_b));
  return checks_failed == 0;
}

// ----------------------------------------------------------------------------

struct Criterion {
  const char* description;
  std::function<bool()> run;
};

}  // namespace

int main() {
  fs::remove_all(kWorkRoot);
  fs::create_directories(kWorkRoot);

  std::cout << "building shared synthetic fixture...\n";
  const MiniFixture fx = build_mini_fixture();

  const std::vector<Criterion> criteria = {
      {"1. metric-oracle equivalence on 1000 random volumes (exact, < 10 s)",
       criterion_1_metric_oracle_equivalence},
      {"2. trivial cases: reflexivity, empty-vs-empty, disjoint supports",
       criterion_2_trivial_cases},
      {"3. resampling: identity, {0,30}->{0,15,30}, duration preservation",
       criterion_3_resampling},
      {"4. mask pipeline: static all-zero, square IoU >= 0.8 vs oracle (< 30 s)",
       criterion_4_mask_pipeline},
      {"5. temporal sensitivity: spatial stays 1.0, spatiotemporal strictly falls",
       criterion_5_temporal_sensitivity},
      {"6. end-to-end perfect clone and take-2 runs score 100.0 (< 60 s)",
       [&] { return criterion_6_perfect_clone(fx); }},
      {"7. degradation monotonicity under increasing pixel noise",
       [&] { return criterion_7_degradation_monotonicity(fx); }},
      {"8. rankings and statistics reproduce the published reference cases",
       criterion_8_rankings_and_statistics},
      {"9. 2AFC harness: stub accuracies and unparseable accounting",
       criterion_9_two_afc_harness},
      {"10. CLI determinism: reruns produce byte-identical outputs",
       [&] { return criterion_10_cli_determinism(fx); }},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    checks_failed = 0;
    bool ok = false;
    try {
      ok = criterion.run();
    } catch (const std::exception& e) {
      std::cout << "    exception: " << e.what() << "\n";
      ok = false;
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.description << "\n";
    failed += ok ? 0 : 1;
  }

  if (failed == 0) {
    std::cout << "ACCEPTANCE: all criteria passed\n";
  } else {
    std::cout << "ACCEPTANCE: " << failed << " criteria FAILED\n";
  }
  return failed == 0 ? 0 : 1;
}
