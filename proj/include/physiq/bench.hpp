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

#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "physiq/metrics.hpp"
#include "physiq/motionmask.hpp"
#include "physiq/types.hpp"

namespace physiq::bench {

// ---------------------------------------------------------------------------
// Dataset layout
// ---------------------------------------------------------------------------

enum class Category {
  kSolidMechanics,
  kFluidDynamics,
  kOptics,
  kThermodynamics,
  kMagnetism,
};

constexpr std::array<Category, 5> kAllCategories = {
    Category::kSolidMechanics, Category::kFluidDynamics, Category::kOptics,
    Category::kThermodynamics, Category::kMagnetism};

std::string category_str(Category c);
Category parse_category(const std::string& s);  // throws on unknown labels

enum class Perspective { kLeft, kCenter, kRight };

std::string perspective_str(Perspective p);
Perspective parse_perspective(const std::string& s);

/// One benchmark recording: a scenario seen from one perspective, one take.
struct ScenarioRecord {
  std::string scenario_id;
  Category category = Category::kSolidMechanics;
  Perspective perspective = Perspective::kCenter;
  int take = 1;
  int switch_index = -1;
  std::string path;  // frame-sequence location relative to the manifest root
};

struct DatasetManifest {
  std::string name;
  std::filesystem::path root;  // directory holding dataset.json
  std::vector<ScenarioRecord> records;
};

DatasetManifest load_manifest(const std::filesystem::path& manifest_file);
void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& manifest_file);

/// Full datasets must provide 66 scenarios x 3 perspectives x 2 takes;
/// `partial` relaxes the census but still demands paired takes with matching
/// switch indices and a consistent category per scenario.
struct ValidationResult {
  bool ok = true;
  std::vector<std::string> problems;
};
ValidationResult validate_manifest(const DatasetManifest& manifest, bool partial);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// The four physical-understanding metrics for one comparison.
struct MetricSet {
  double spatial_iou = 0.0;
  double spatiotemporal_iou = 0.0;
  double weighted_spatial_iou = 0.0;
  double mse = 0.0;
};

struct EvalConfig {
  MaskParams mask_params;
  StMode st_mode = StMode::kVolume;
  double compare_seconds = 5.0;
  int jobs = 1;  // concurrent (scenario, perspective) evaluations
};

/// Computes all four metrics between a real test segment and a generated
/// continuation. Both sequences are masked with identical parameters after
/// alignment to the generated sequence's frame rate and resolution.
MetricSet evaluate_pair(const FrameSequence& real_test,
                        const FrameSequence& generated, const EvalConfig& cfg);

struct PairKey {
  std::string scenario_id;
  std::string perspective;
  auto operator<=>(const PairKey&) const = default;
};

/// Physical-variance baseline: per-(scenario, perspective) metrics between
/// take 1 and take 2, plus the dataset-aggregate mean.
struct VarianceBaseline {
  std::map<PairKey, MetricSet> per_pair;
  MetricSet aggregate;
};

VarianceBaseline compute_variance_baseline(const DatasetManifest& manifest,
                                           const EvalConfig& cfg);
void save_baseline(const VarianceBaseline& baseline, const EvalConfig& cfg,
                   const std::filesystem::path& path);
VarianceBaseline load_baseline(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Scoring and reports
// ---------------------------------------------------------------------------

inline constexpr double kBaselineEpsilon = 1e-6;

struct EvalRow {
  std::string scenario_id;
  Category category = Category::kSolidMechanics;
  Perspective perspective = Perspective::kCenter;
  bool missing_generated = false;  // scored as 0 and flagged, never skipped
  MetricSet metrics;               // meaningless when missing_generated
  MetricSet normalized;
  double normalized_mean = 0.0;
  std::string baseline_source;  // "pair" or "aggregate"
};

struct EvalReport {
  std::string model;
  MaskParams mask_params;
  StMode st_mode = StMode::kVolume;
  std::vector<EvalRow> rows;
  MetricSet aggregate;             // mean raw metrics over rows with data
  MetricSet normalized_aggregate;  // mean normalized scores over all rows
  double physics_iq = 0.0;         // 100 * mean over rows of normalized_mean
};

/// Per-metric normalized score: min(v / max(base, eps), 1) for the IoU family
/// and min(max(base, eps) / max(v, eps), 1) for MSE.
MetricSet normalize_against(const MetricSet& model, const MetricSet& base);

/// Fills normalized fields, aggregates and the Physics-IQ score of a report
/// whose rows carry raw metrics. Baselines resolve per (scenario,
/// perspective) with dataset-aggregate fallback. Throws on an empty report.
void score_report(EvalReport& report, const VarianceBaseline& baseline);

/// Evaluates one model over every (scenario, perspective) of the manifest.
/// Take 1 provides the ground-truth test segment; generated continuations are
/// looked up under `generated_root/<scenario_id>/<perspective>`. Missing
/// generated sequences are flagged and scored as zero.
EvalReport evaluate_model(const DatasetManifest& manifest,
                          const std::filesystem::path& generated_root,
                          const std::string& model_name,
                          const VarianceBaseline& baseline, const EvalConfig& cfg);

struct CategoryStats {
  int count = 0;       // rows in the category (missing ones included)
  int data_count = 0;  // rows with raw metrics
  MetricSet metric_means;
  double normalized_mean = 0.0;
};

/// Per-category means; categories without scenarios are simply absent from
/// the map rather than reported as zero.
std::map<Category, CategoryStats> category_breakdown(const EvalReport& report);

enum class ReportFormat { kJson, kCsv };

/// Deterministic serialization; identical reports give identical bytes.
void write_report(const EvalReport& report, ReportFormat format,
                  const std::filesystem::path& path);
EvalReport load_report(const std::filesystem::path& path);

/// Flat view of a report CSV row, for round-trip checks and external tools.
struct CsvRow {
  std::string model;
  std::string scenario_id;
  std::string category;
  std::string perspective;
  MetricSet metrics;
  double normalized_mean = 0.0;
  double physics_iq = 0.0;
};
std::vector<CsvRow> parse_report_csv(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Multi-model aggregation
// ---------------------------------------------------------------------------

struct ModelMetrics {
  std::string model;
  MetricSet metrics;
};

/// Direction-aware mean rank across the four metrics (1 = best, ties share
/// the average rank). Result aligns with the input order. Needs >= 2 models.
std::vector<double> mean_ranks(const std::vector<ModelMetrics>& models);

struct ModelSummary {
  std::string model;
  MetricSet aggregate;
  double physics_iq = 0.0;
  double mean_rank = 0.0;
};

struct MultiModelSummary {
  std::optional<MetricSet> variance_aggregate;
  std::vector<ModelSummary> models;
  std::optional<double> spearman_iq_vs_rank;  // set when >= 3 models
};

/// Combines per-model reports into a ranking table. All reports must cover
/// the same (scenario, perspective) set.
MultiModelSummary summarize_models(const std::vector<EvalReport>& reports,
                                   const VarianceBaseline* baseline);
void save_summary(const MultiModelSummary& summary, ReportFormat format,
                  const std::filesystem::path& path);

/// Evaluation-config file: mask parameters plus the spatiotemporal mode and
/// comparison window. Every key is optional and falls back to the defaults.
EvalConfig load_eval_config(const std::filesystem::path& path);

}  // namespace physiq::bench
