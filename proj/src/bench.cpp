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

#include "physiq/bench.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "physiq/frameseq.hpp"
#include "physiq/stats.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace physiq::bench {

namespace {

constexpr int kFullScenarioCount = 66;

// Shortest round-trip decimal form; keeps CSV output deterministic and
// locale-independent.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("invalid number in CSV: '" + s + "'");
  }
  return v;
}

nlohmann::json mask_params_to_json(const MaskParams& p) {
  nlohmann::json j;
  j["tau"] = p.tau;
  j["alpha"] = p.alpha;
  j["window"] = p.window;
  j["blur_radius"] = p.blur_radius;
  j["blur_sigma"] = p.blur_sigma;
  j["morph_kernel"] = p.morph_kernel;
  return j;
}

MaskParams mask_params_from_json(const nlohmann::json& j) {
  MaskParams p;
  if (j.contains("tau")) p.tau = j.at("tau").get<float>();
  if (j.contains("alpha")) p.alpha = j.at("alpha").get<float>();
  if (j.contains("window")) p.window = j.at("window").get<int>();
  if (j.contains("blur_radius")) p.blur_radius = j.at("blur_radius").get<int>();
  if (j.contains("blur_sigma")) p.blur_sigma = j.at("blur_sigma").get<float>();
  if (j.contains("morph_kernel")) p.morph_kernel = j.at("morph_kernel").get<int>();
  p.validate();
  return p;
}

nlohmann::json metric_set_to_json(const MetricSet& m) {
  nlohmann::json j;
  j["spatial_iou"] = m.spatial_iou;
  j["spatiotemporal_iou"] = m.spatiotemporal_iou;
  j["weighted_spatial_iou"] = m.weighted_spatial_iou;
  j["mse"] = m.mse;
  return j;
}

MetricSet metric_set_from_json(const nlohmann::json& j) {
  MetricSet m;
  m.spatial_iou = j.at("spatial_iou").get<double>();
  m.spatiotemporal_iou = j.at("spatiotemporal_iou").get<double>();
  m.weighted_spatial_iou = j.at("weighted_spatial_iou").get<double>();
  m.mse = j.at("mse").get<double>();
  return m;
}

MetricSet add(const MetricSet& a, const MetricSet& b) {
  return {a.spatial_iou + b.spatial_iou,
          a.spatiotemporal_iou + b.spatiotemporal_iou,
          a.weighted_spatial_iou + b.weighted_spatial_iou, a.mse + b.mse};
}

MetricSet scale(const MetricSet& a, double f) {
  return {a.spatial_iou * f, a.spatiotemporal_iou * f, a.weighted_spatial_iou * f,
          a.mse * f};
}

struct TakePair {
  const ScenarioRecord* take1 = nullptr;
  const ScenarioRecord* take2 = nullptr;
};

std::map<PairKey, TakePair> group_takes(const DatasetManifest& manifest) {
  std::map<PairKey, TakePair> groups;
  for (const ScenarioRecord& rec : manifest.records) {
    PairKey key{rec.scenario_id, perspective_str(rec.perspective)};
    TakePair& pair = groups[key];
    if (rec.take == 1) {
      pair.take1 = &rec;
    } else if (rec.take == 2) {
      pair.take2 = &rec;
    } else {
      throw std::runtime_error("take must be 1 or 2 for scenario " + rec.scenario_id);
    }
  }
  return groups;
}

FrameSequence load_test_segment(const DatasetManifest& manifest,
                                const ScenarioRecord& rec) {
  FrameSequence seq = load_sequence(manifest.root / rec.path);
  SplitSpec spec;
  spec.switch_index = rec.switch_index;
  auto [conditioning, test] = split_at_switch(seq, spec);
  (void)conditioning;
  return test;
}

}  // namespace

std::string category_str(Category c) {
  switch (c) {
    case Category::kSolidMechanics: return "solid mechanics";
    case Category::kFluidDynamics: return "fluid dynamics";
    case Category::kOptics: return "optics";
    case Category::kThermodynamics: return "thermodynamics";
    case Category::kMagnetism: return "magnetism";
  }
  throw std::logic_error("category_str: bad enum");
}

Category parse_category(const std::string& s) {
  for (Category c : kAllCategories) {
    if (category_str(c) == s) return c;
  }
  throw std::runtime_error("unknown category label: '" + s + "'");
}

std::string perspective_str(Perspective p) {
  switch (p) {
    case Perspective::kLeft: return "left";
    case Perspective::kCenter: return "center";
    case Perspective::kRight: return "right";
  }
  throw std::logic_error("perspective_str: bad enum");
}

Perspective parse_perspective(const std::string& s) {
  if (s == "left") return Perspective::kLeft;
  if (s == "center") return Perspective::kCenter;
  if (s == "right") return Perspective::kRight;
  throw std::runtime_error("unknown perspective: '" + s + "'");
}

DatasetManifest load_manifest(const std::filesystem::path& manifest_file) {
  nlohmann::json j = detail::read_json_file(manifest_file);
  DatasetManifest manifest;
  manifest.root = manifest_file.parent_path();
  if (j.contains("name")) manifest.name = j.at("name").get<std::string>();
  for (const nlohmann::json& rj : j.at("scenarios")) {
    ScenarioRecord rec;
    rec.scenario_id = rj.at("scenario_id").get<std::string>();
    rec.category = parse_category(rj.at("category").get<std::string>());
    rec.perspective = parse_perspective(rj.at("perspective").get<std::string>());
    rec.take = rj.at("take").get<int>();
    rec.switch_index = rj.at("switch_index").get<int>();
    rec.path = rj.at("path").get<std::string>();
    manifest.records.push_back(std::move(rec));
  }
  return manifest;
}

void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& manifest_file) {
  nlohmann::json j;
  j["name"] = manifest.name;
  nlohmann::json scenarios = nlohmann::json::array();
  for (const ScenarioRecord& rec : manifest.records) {
    nlohmann::json rj;
    rj["scenario_id"] = rec.scenario_id;
    rj["category"] = category_str(rec.category);
    rj["perspective"] = perspective_str(rec.perspective);
    rj["take"] = rec.take;
    rj["switch_index"] = rec.switch_index;
    rj["path"] = rec.path;
    scenarios.push_back(std::move(rj));
  }
  j["scenarios"] = std::move(scenarios);
  detail::write_json_file(manifest_file, j);
}

ValidationResult validate_manifest(const DatasetManifest& manifest, bool partial) {
  ValidationResult result;
  auto flag = [&result](std::string msg) {
    result.ok = false;
    result.problems.push_back(std::move(msg));
  };

  std::map<std::string, Category> scenario_category;
  std::map<std::string, std::set<std::string>> perspectives_of;
  std::set<std::pair<std::string, std::string>> seen;
  std::map<PairKey, std::map<int, int>> take_switch;

  for (const ScenarioRecord& rec : manifest.records) {
    if (rec.take != 1 && rec.take != 2) {
      flag("scenario " + rec.scenario_id + ": take must be 1 or 2");
      continue;
    }
    auto [it, inserted] = scenario_category.emplace(rec.scenario_id, rec.category);
    if (!inserted && it->second != rec.category) {
      flag("scenario " + rec.scenario_id + ": inconsistent category labels");
    }
    const std::string pstr = perspective_str(rec.perspective);
    perspectives_of[rec.scenario_id].insert(pstr);
    if (!seen.emplace(rec.scenario_id + "/" + pstr, std::to_string(rec.take)).second) {
      flag("scenario " + rec.scenario_id + "/" + pstr + ": duplicate take " +
           std::to_string(rec.take));
    }
    take_switch[PairKey{rec.scenario_id, pstr}][rec.take] = rec.switch_index;
  }

  for (const auto& [key, takes] : take_switch) {
    if (!takes.contains(1) || !takes.contains(2)) {
      flag("scenario " + key.scenario_id + "/" + key.perspective +
           ": missing take " + (takes.contains(1) ? "2" : "1"));
    } else if (takes.at(1) != takes.at(2)) {
      flag("scenario " + key.scenario_id + "/" + key.perspective +
           ": switch_index differs between takes");
    }
  }

  if (!partial) {
    if (static_cast<int>(scenario_category.size()) != kFullScenarioCount) {
      flag("expected " + std::to_string(kFullScenarioCount) + " scenarios, found " +
           std::to_string(scenario_category.size()));
    }
    for (const auto& [id, perspectives] : perspectives_of) {
      if (perspectives.size() != 3) {
        flag("scenario " + id + ": expected 3 perspectives, found " +
             std::to_string(perspectives.size()));
      }
    }
  }
  return result;
}

MetricSet evaluate_pair(const FrameSequence& real_test,
                        const FrameSequence& generated, const EvalConfig& cfg) {
  AlignedPair aligned = align_for_comparison(real_test, generated, cfg.compare_seconds);

  const MaskVideo mask_real = compute_mask_video(aligned.real, cfg.mask_params);
  const MaskVideo mask_gen = compute_mask_video(aligned.generated, cfg.mask_params);

  MetricSet out;
  out.spatial_iou =
      spatial_iou(collapse_spatial(mask_real), collapse_spatial(mask_gen)).value;
  out.spatiotemporal_iou = spatiotemporal_iou(mask_real, mask_gen, cfg.st_mode).value;
  out.weighted_spatial_iou =
      weighted_spatial_iou(collapse_weighted(mask_real), collapse_weighted(mask_gen))
          .value;
  out.mse = mse(aligned.real, aligned.generated).value;
  return out;
}

VarianceBaseline compute_variance_baseline(const DatasetManifest& manifest,
                                           const EvalConfig& cfg) {
  const std::map<PairKey, TakePair> groups = group_takes(manifest);
  std::vector<std::pair<PairKey, TakePair>> work(groups.begin(), groups.end());
  for (const auto& [key, pair] : work) {
    if (pair.take1 == nullptr || pair.take2 == nullptr) {
      throw std::runtime_error("missing take for scenario " + key.scenario_id + "/" +
                               key.perspective);
    }
    if (pair.take1->switch_index != pair.take2->switch_index) {
      throw std::runtime_error("mismatched switch_index between takes of " +
                               key.scenario_id + "/" + key.perspective);
    }
  }

  std::vector<MetricSet> results(work.size());
  detail::parallel_for_index(
      static_cast<int>(work.size()), cfg.jobs, [&](int i) {
        const auto& [key, pair] = work[i];
        const FrameSequence test1 = load_test_segment(manifest, *pair.take1);
        const FrameSequence test2 = load_test_segment(manifest, *pair.take2);
        results[i] = evaluate_pair(test1, test2, cfg);
      });

  VarianceBaseline baseline;
  MetricSet sum;
  for (std::size_t i = 0; i < work.size(); ++i) {
    baseline.per_pair.emplace(work[i].first, results[i]);
    sum = add(sum, results[i]);
  }
  if (work.empty()) {
    throw std::runtime_error("compute_variance_baseline: empty dataset");
  }
  baseline.aggregate = scale(sum, 1.0 / static_cast<double>(work.size()));
  return baseline;
}

void save_baseline(const VarianceBaseline& baseline, const EvalConfig& cfg,
                   const std::filesystem::path& path) {
  nlohmann::json j;
  j["mask_params"] = mask_params_to_json(cfg.mask_params);
  j["st_mode"] = st_mode_str(cfg.st_mode);
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [key, metrics] : baseline.per_pair) {
    nlohmann::json pj = metric_set_to_json(metrics);
    pj["scenario_id"] = key.scenario_id;
    pj["perspective"] = key.perspective;
    pairs.push_back(std::move(pj));
  }
  j["per_pair"] = std::move(pairs);
  j["aggregate"] = metric_set_to_json(baseline.aggregate);
  detail::write_json_file(path, j);
}

VarianceBaseline load_baseline(const std::filesystem::path& path) {
  nlohmann::json j = detail::read_json_file(path);
  VarianceBaseline baseline;
  for (const nlohmann::json& pj : j.at("per_pair")) {
    PairKey key{pj.at("scenario_id").get<std::string>(),
                pj.at("perspective").get<std::string>()};
    baseline.per_pair.emplace(std::move(key), metric_set_from_json(pj));
  }
  baseline.aggregate = metric_set_from_json(j.at("aggregate"));
  return baseline;
}

MetricSet normalize_against(const MetricSet& model, const MetricSet& base) {
  auto iou_score = [](double v, double b) {
    return std::min(v / std::max(b, kBaselineEpsilon), 1.0);
  };
  MetricSet n;
  n.spatial_iou = iou_score(model.spatial_iou, base.spatial_iou);
  n.spatiotemporal_iou = iou_score(model.spatiotemporal_iou, base.spatiotemporal_iou);
  n.weighted_spatial_iou =
      iou_score(model.weighted_spatial_iou, base.weighted_spatial_iou);
  n.mse = std::min(std::max(base.mse, kBaselineEpsilon) /
                       std::max(model.mse, kBaselineEpsilon),
                   1.0);
  return n;
}

void score_report(EvalReport& report, const VarianceBaseline& baseline) {
  if (report.rows.empty()) {
    throw std::runtime_error("score_report: empty report");
  }
  MetricSet raw_sum, norm_sum;
  int data_rows = 0;
  double score_sum = 0.0;
  for (EvalRow& row : report.rows) {
    if (row.missing_generated) {
      row.normalized = MetricSet{};
      row.normalized_mean = 0.0;
      row.baseline_source = "";
      continue;
    }
    const PairKey key{row.scenario_id, perspective_str(row.perspective)};
    const auto it = baseline.per_pair.find(key);
    const MetricSet& base =
        (it != baseline.per_pair.end()) ? it->second : baseline.aggregate;
    row.baseline_source = (it != baseline.per_pair.end()) ? "pair" : "aggregate";
    row.normalized = normalize_against(row.metrics, base);
    row.normalized_mean =
        (row.normalized.spatial_iou + row.normalized.spatiotemporal_iou +
         row.normalized.weighted_spatial_iou + row.normalized.mse) /
        4.0;
    raw_sum = add(raw_sum, row.metrics);
    ++data_rows;
  }
  for (const EvalRow& row : report.rows) {
    norm_sum = add(norm_sum, row.normalized);
    score_sum += row.normalized_mean;
  }
  report.aggregate =
      data_rows > 0 ? scale(raw_sum, 1.0 / static_cast<double>(data_rows)) : MetricSet{};
  report.normalized_aggregate =
      scale(norm_sum, 1.0 / static_cast<double>(report.rows.size()));
  report.physics_iq = 100.0 * score_sum / static_cast<double>(report.rows.size());
}

EvalReport evaluate_model(const DatasetManifest& manifest,
                          const std::filesystem::path& generated_root,
                          const std::string& model_name,
                          const VarianceBaseline& baseline, const EvalConfig& cfg) {
  const std::map<PairKey, TakePair> groups = group_takes(manifest);
  std::vector<std::pair<PairKey, const ScenarioRecord*>> work;
  for (const auto& [key, pair] : groups) {
    if (pair.take1 == nullptr) {
      throw std::runtime_error("missing take 1 for scenario " + key.scenario_id + "/" +
                               key.perspective);
    }
    work.emplace_back(key, pair.take1);
  }

  EvalReport report;
  report.model = model_name;
  report.mask_params = cfg.mask_params;
  report.st_mode = cfg.st_mode;
  report.rows.resize(work.size());

  detail::parallel_for_index(static_cast<int>(work.size()), cfg.jobs, [&](int i) {
    const auto& [key, rec] = work[i];
    EvalRow& row = report.rows[i];
    row.scenario_id = key.scenario_id;
    row.category = rec->category;
    row.perspective = rec->perspective;
    const std::filesystem::path gen_path =
        generated_root / key.scenario_id / key.perspective;
    if (!std::filesystem::exists(gen_path)) {
      row.missing_generated = true;
      return;
    }
    const FrameSequence generated = load_sequence(gen_path);
    const FrameSequence real_test = load_test_segment(manifest, *rec);
    row.metrics = evaluate_pair(real_test, generated, cfg);
  });

  score_report(report, baseline);
  return report;
}

std::map<Category, CategoryStats> category_breakdown(const EvalReport& report) {
  std::map<Category, CategoryStats> breakdown;
  std::map<Category, MetricSet> sums;
  for (const EvalRow& row : report.rows) {
    CategoryStats& stats = breakdown[row.category];
    ++stats.count;
    stats.normalized_mean += row.normalized_mean;
    if (!row.missing_generated) {
      ++stats.data_count;
      sums[row.category] = add(sums[row.category], row.metrics);
    }
  }
  for (auto& [category, stats] : breakdown) {
    stats.normalized_mean /= static_cast<double>(stats.count);
    if (stats.data_count > 0) {
      stats.metric_means =
          scale(sums[category], 1.0 / static_cast<double>(stats.data_count));
    }
  }
  return breakdown;
}

void write_report(const EvalReport& report, ReportFormat format,
                  const std::filesystem::path& path) {
  if (format == ReportFormat::kJson) {
    nlohmann::json j;
    j["model"] = report.model;
    j["mask_params"] = mask_params_to_json(report.mask_params);
    j["st_mode"] = st_mode_str(report.st_mode);
    nlohmann::json rows = nlohmann::json::array();
    for (const EvalRow& row : report.rows) {
      nlohmann::json rj;
      rj["scenario_id"] = row.scenario_id;
      rj["category"] = category_str(row.category);
      rj["perspective"] = perspective_str(row.perspective);
      rj["missing_generated"] = row.missing_generated;
      if (!row.missing_generated) {
        rj["metrics"] = metric_set_to_json(row.metrics);
        rj["baseline_source"] = row.baseline_source;
      }
      rj["normalized"] = metric_set_to_json(row.normalized);
      rj["normalized_mean"] = row.normalized_mean;
      rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    j["aggregate"] = metric_set_to_json(report.aggregate);
    j["normalized_aggregate"] = metric_set_to_json(report.normalized_aggregate);
    j["physics_iq"] = report.physics_iq;

    nlohmann::json cb;
    nlohmann::json absent = nlohmann::json::array();
    const auto breakdown = category_breakdown(report);
    for (Category c : kAllCategories) {
      const auto it = breakdown.find(c);
      if (it == breakdown.end()) {
        absent.push_back(category_str(c));
        continue;
      }
      nlohmann::json sj;
      sj["count"] = it->second.count;
      sj["data_count"] = it->second.data_count;
      sj["metric_means"] = metric_set_to_json(it->second.metric_means);
      sj["normalized_mean"] = it->second.normalized_mean;
      cb[category_str(c)] = std::move(sj);
    }
    j["category_breakdown"] = std::move(cb);
    j["absent_categories"] = std::move(absent);
    detail::write_json_file(path, j);
    return;
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "model,scenario_id,category,perspective,spatial_iou,spatiotemporal_iou,"
         "weighted_spatial_iou,mse,normalized_mean,physics_iq\n";
  for (const EvalRow& row : report.rows) {
    out << report.model << ',' << row.scenario_id << ',' << category_str(row.category)
        << ',' << perspective_str(row.perspective) << ','
        << format_double(row.metrics.spatial_iou) << ','
        << format_double(row.metrics.spatiotemporal_iou) << ','
        << format_double(row.metrics.weighted_spatial_iou) << ','
        << format_double(row.metrics.mse) << ',' << format_double(row.normalized_mean)
        << ',' << format_double(report.physics_iq) << '\n';
  }
  if (!out) throw std::runtime_error("I/O failure writing " + path.string());
}

EvalReport load_report(const std::filesystem::path& path) {
  nlohmann::json j = detail::read_json_file(path);
  EvalReport report;
  report.model = j.at("model").get<std::string>();
  report.mask_params = mask_params_from_json(j.at("mask_params"));
  report.st_mode = parse_st_mode(j.at("st_mode").get<std::string>());
  for (const nlohmann::json& rj : j.at("rows")) {
    EvalRow row;
    row.scenario_id = rj.at("scenario_id").get<std::string>();
    row.category = parse_category(rj.at("category").get<std::string>());
    row.perspective = parse_perspective(rj.at("perspective").get<std::string>());
    row.missing_generated = rj.at("missing_generated").get<bool>();
    if (!row.missing_generated) {
      row.metrics = metric_set_from_json(rj.at("metrics"));
      row.baseline_source = rj.at("baseline_source").get<std::string>();
    }
    row.normalized = metric_set_from_json(rj.at("normalized"));
    row.normalized_mean = rj.at("normalized_mean").get<double>();
    report.rows.push_back(std::move(row));
  }
  report.aggregate = metric_set_from_json(j.at("aggregate"));
  report.normalized_aggregate = metric_set_from_json(j.at("normalized_aggregate"));
  report.physics_iq = j.at("physics_iq").get<double>();
  return report;
}

std::vector<CsvRow> parse_report_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path.string());
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      throw std::runtime_error("bad CSV row in " + path.string() + ": " + line);
    }
    CsvRow row;
    row.model = fields[0];
    row.scenario_id = fields[1];
    row.category = fields[2];
    row.perspective = fields[3];
    row.metrics.spatial_iou = parse_double(fields[4]);
    row.metrics.spatiotemporal_iou = parse_double(fields[5]);
    row.metrics.weighted_spatial_iou = parse_double(fields[6]);
    row.metrics.mse = parse_double(fields[7]);
    row.normalized_mean = parse_double(fields[8]);
    row.physics_iq = parse_double(fields[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> mean_ranks(const std::vector<ModelMetrics>& models) {
  if (models.size() < 2) {
    throw std::invalid_argument("mean_ranks: at least 2 models required");
  }
  const std::size_t n = models.size();
  std::vector<double> spatial(n), st(n), weighted(n), mse_v(n);
  for (std::size_t i = 0; i < n; ++i) {
    spatial[i] = models[i].metrics.spatial_iou;
    st[i] = models[i].metrics.spatiotemporal_iou;
    weighted[i] = models[i].metrics.weighted_spatial_iou;
    mse_v[i] = models[i].metrics.mse;
  }
  const auto r1 = average_ranks(spatial, /*higher_is_better=*/true);
  const auto r2 = average_ranks(st, /*higher_is_better=*/true);
  const auto r3 = average_ranks(weighted, /*higher_is_better=*/true);
  const auto r4 = average_ranks(mse_v, /*higher_is_better=*/false);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (r1[i] + r2[i] + r3[i] + r4[i]) / 4.0;
  }
  return out;
}

MultiModelSummary summarize_models(const std::vector<EvalReport>& reports,
                                   const VarianceBaseline* baseline) {
  if (reports.empty()) {
    throw std::invalid_argument("summarize_models: no reports");
  }
  std::set<PairKey> reference;
  for (const EvalRow& row : reports.front().rows) {
    reference.insert({row.scenario_id, perspective_str(row.perspective)});
  }
  for (const EvalReport& report : reports) {
    std::set<PairKey> keys;
    for (const EvalRow& row : report.rows) {
      keys.insert({row.scenario_id, perspective_str(row.perspective)});
    }
    if (keys != reference) {
      throw std::runtime_error("inconsistent scenario coverage across models (" +
                               report.model + ")");
    }
  }

  MultiModelSummary summary;
  if (baseline != nullptr) summary.variance_aggregate = baseline->aggregate;

  std::vector<ModelMetrics> metrics;
  metrics.reserve(reports.size());
  for (const EvalReport& report : reports) {
    metrics.push_back({report.model, report.aggregate});
  }
  std::vector<double> ranks;
  if (reports.size() >= 2) {
    ranks = mean_ranks(metrics);
  } else {
    ranks.assign(reports.size(), 1.0);
  }

  std::vector<double> scores;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    summary.models.push_back(
        {reports[i].model, reports[i].aggregate, reports[i].physics_iq, ranks[i]});
    scores.push_back(reports[i].physics_iq);
  }
  if (reports.size() >= 3) {
    summary.spearman_iq_vs_rank = spearman(scores, ranks);
  }
  return summary;
}

void save_summary(const MultiModelSummary& summary, ReportFormat format,
                  const std::filesystem::path& path) {
  if (format == ReportFormat::kJson) {
    nlohmann::json j;
    if (summary.variance_aggregate) {
      j["physical_variance"] = metric_set_to_json(*summary.variance_aggregate);
    }
    nlohmann::json models = nlohmann::json::array();
    for (const ModelSummary& m : summary.models) {
      nlohmann::json mj = metric_set_to_json(m.aggregate);
      mj["model"] = m.model;
      mj["physics_iq"] = m.physics_iq;
      mj["mean_rank"] = m.mean_rank;
      models.push_back(std::move(mj));
    }
    j["models"] = std::move(models);
    if (summary.spearman_iq_vs_rank) {
      j["spearman_physics_iq_vs_mean_rank"] = *summary.spearman_iq_vs_rank;
    }
    detail::write_json_file(path, j);
    return;
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "model,spatial_iou,spatiotemporal_iou,weighted_spatial_iou,mse,"
         "physics_iq,mean_rank\n";
  if (summary.variance_aggregate) {
    const MetricSet& v = *summary.variance_aggregate;
    out << "Physical Variance," << format_double(v.spatial_iou) << ','
        << format_double(v.spatiotemporal_iou) << ','
        << format_double(v.weighted_spatial_iou) << ',' << format_double(v.mse)
        << ",100," << '\n';
  }
  for (const ModelSummary& m : summary.models) {
    out << m.model << ',' << format_double(m.aggregate.spatial_iou) << ','
        << format_double(m.aggregate.spatiotemporal_iou) << ','
        << format_double(m.aggregate.weighted_spatial_iou) << ','
        << format_double(m.aggregate.mse) << ',' << format_double(m.physics_iq) << ','
        << format_double(m.mean_rank) << '\n';
  }
  if (!out) throw std::runtime_error("I/O failure writing " + path.string());
}

EvalConfig load_eval_config(const std::filesystem::path& path) {
  nlohmann::json j = detail::read_json_file(path);
  EvalConfig cfg;
  if (j.contains("mask_params")) {
    cfg.mask_params = mask_params_from_json(j.at("mask_params"));
  } else {
    cfg.mask_params = mask_params_from_json(j);  // flat layout also accepted
  }
  if (j.contains("st_mode")) cfg.st_mode = parse_st_mode(j.at("st_mode").get<std::string>());
  if (j.contains("compare_seconds")) {
    cfg.compare_seconds = j.at("compare_seconds").get<double>();
  }
  if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
  return cfg;
}

}  // namespace physiq::bench
