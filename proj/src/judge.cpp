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

#include "physiq/judge.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

#include "physiq/frameseq.hpp"
#include "physiq/metrics.hpp"
#include "json_util.hpp"
#include "parallel.hpp"

namespace physiq::judge {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t hash_string(std::string_view s) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

constexpr std::string_view kFirstStatement = "the first video is the generated one";
constexpr std::string_view kSecondStatement = "the second video is the generated one";

std::string terminal_statement(Position p) {
  return std::string("For this reason, ") +
         std::string(p == Position::kFirst ? kFirstStatement : kSecondStatement) + ".";
}

class AlwaysStub final : public JudgeEndpoint {
 public:
  explicit AlwaysStub(Position position) : position_(position) {}
  std::string name() const override {
    return position_ == Position::kFirst ? "stub:always-first" : "stub:always-second";
  }
  std::string ask(const std::string&, const std::string&,
                  const std::string&) const override {
    return "I cannot tell the videos apart, so I always pick the same slot. " +
           terminal_statement(position_);
  }

 private:
  Position position_;
};

class UniformRandomStub final : public JudgeEndpoint {
 public:
  explicit UniformRandomStub(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "stub:uniform-random"; }
  std::string ask(const std::string&, const std::string& first_ref,
                  const std::string& second_ref) const override {
    // Stateless per-pair coin: depends on the seed and the pair's references
    // only, so concurrent scheduling cannot change any answer.
    std::uint64_t state = seed_ ^ hash_string(first_ref) ^ (hash_string(second_ref) << 1);
    const Position pick =
        (splitmix64(state) & 1ull) ? Position::kFirst : Position::kSecond;
    return "Flipping a coin. " + terminal_statement(pick);
  }

 private:
  std::uint64_t seed_;
};

double temporal_roughness(const FrameSequence& seq) {
  // Mean squared difference between consecutive frames, [0, 1] intensity
  // scale. Independent noise raises this far above smooth real motion.
  if (seq.frame_count() < 2) return 0.0;
  double sum = 0.0;
  long long count = 0;
  for (int t = 0; t + 1 < seq.frame_count(); ++t) {
    const Frame& a = seq.frames[t];
    const Frame& b = seq.frames[t + 1];
    for (int c = 0; c < Frame::kChannels; ++c) {
      const PlaneF diff =
          (a.channel(c).cast<float>() - b.channel(c).cast<float>()) / 255.0f;
      sum += static_cast<double>((diff * diff).sum());
      count += diff.size();
    }
  }
  return sum / static_cast<double>(count);
}

class TemporalMseStub final : public JudgeEndpoint {
 public:
  std::string name() const override { return "stub:temporal-mse"; }
  std::string ask(const std::string&, const std::string& first_ref,
                  const std::string& second_ref) const override {
    const double first_score = temporal_roughness(load_sequence(first_ref));
    const double second_score = temporal_roughness(load_sequence(second_ref));
    const Position pick =
        first_score > second_score ? Position::kFirst : Position::kSecond;
    return "The video with rougher frame-to-frame changes looks synthetic. " +
           terminal_statement(pick);
  }
};

}  // namespace

std::string position_str(Position p) {
  return p == Position::kFirst ? "first" : "second";
}

std::vector<PresentationPair> build_pairs(const std::vector<SequenceRef>& real,
                                          const std::vector<SequenceRef>& generated,
                                          std::uint64_t seed) {
  auto key_of = [](const SequenceRef& ref) {
    return ref.scenario_id + "/" + ref.perspective;
  };
  std::map<std::string, const SequenceRef*> real_by_key, gen_by_key;
  for (const SequenceRef& ref : real) real_by_key[key_of(ref)] = &ref;
  for (const SequenceRef& ref : generated) gen_by_key[key_of(ref)] = &ref;

  std::vector<std::string> gaps;
  for (const auto& [key, ref] : real_by_key) {
    if (!gen_by_key.contains(key)) gaps.push_back("generated missing " + key);
  }
  for (const auto& [key, ref] : gen_by_key) {
    if (!real_by_key.contains(key)) gaps.push_back("real missing " + key);
  }
  if (!gaps.empty()) {
    std::string msg = "build_pairs: scenario mismatch:";
    for (const std::string& gap : gaps) msg += "\n  " + gap;
    throw std::runtime_error(msg);
  }

  std::vector<PresentationPair> pairs;
  pairs.reserve(real_by_key.size());
  std::uint64_t state = seed;
  for (const auto& [key, real_ref] : real_by_key) {
    const SequenceRef* gen_ref = gen_by_key.at(key);
    PresentationPair pair;
    pair.scenario_id = real_ref->scenario_id;
    pair.perspective = real_ref->perspective;
    pair.order_seed = splitmix64(state);
    pair.generated_position =
        (pair.order_seed & 1ull) ? Position::kFirst : Position::kSecond;
    if (pair.generated_position == Position::kFirst) {
      pair.first_ref = gen_ref->path;
      pair.second_ref = real_ref->path;
    } else {
      pair.first_ref = real_ref->path;
      pair.second_ref = gen_ref->path;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::optional<Position> parse_verdict_response(std::string_view response) {
  const std::string lower = to_lower(response);
  const std::size_t first_pos = lower.rfind(kFirstStatement);
  const std::size_t second_pos = lower.rfind(kSecondStatement);
  if (first_pos == std::string::npos && second_pos == std::string::npos) {
    return std::nullopt;
  }
  if (first_pos == std::string::npos) return Position::kSecond;
  if (second_pos == std::string::npos) return Position::kFirst;
  return first_pos > second_pos ? Position::kFirst : Position::kSecond;
}

Verdict query_judge(const PresentationPair& pair, const JudgeEndpoint& endpoint,
                    const RetryPolicy& retry) {
  Verdict verdict;
  std::string response;
  bool delivered = false;
  int backoff_ms = retry.base_backoff_ms;
  for (int attempt = 1; attempt <= std::max(1, retry.attempts); ++attempt) {
    try {
      response = endpoint.ask(std::string(kTwoAfcPrompt), pair.first_ref,
                              pair.second_ref);
      delivered = true;
      break;
    } catch (const TransportError& e) {
      verdict.failure = e.what();
      if (attempt < retry.attempts && backoff_ms > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms *= 2;
      }
    }
  }
  if (!delivered) {
    verdict.parseable = false;
    verdict.failure = "transport failed after " + std::to_string(retry.attempts) +
                      " attempts: " + verdict.failure;
    return verdict;
  }

  verdict.raw_response = response;
  verdict.chosen = parse_verdict_response(response);
  if (!verdict.chosen) {
    verdict.parseable = false;
    verdict.failure = "response lacks the terminal statement";
    return verdict;
  }
  verdict.parseable = true;
  verdict.correct = *verdict.chosen == pair.generated_position;
  return verdict;
}

std::vector<Verdict> run_judge(const std::vector<PresentationPair>& pairs,
                               const JudgeEndpoint& endpoint, int max_in_flight,
                               const RetryPolicy& retry) {
  std::vector<Verdict> verdicts(pairs.size());
  detail::parallel_for_index(static_cast<int>(pairs.size()), max_in_flight,
                             [&](int i) { verdicts[i] = query_judge(pairs[i], endpoint, retry); });
  return verdicts;
}

JudgeScore mllm_score(const std::vector<Verdict>& verdicts) {
  JudgeScore score;
  int correct = 0;
  for (const Verdict& v : verdicts) {
    if (v.parseable) {
      ++score.parseable;
      correct += v.correct ? 1 : 0;
    } else {
      ++score.unparseable;
    }
  }
  if (score.parseable == 0) {
    throw std::runtime_error("mllm_score: no parseable verdicts");
  }
  score.accuracy_percent =
      100.0 * static_cast<double>(correct) / static_cast<double>(score.parseable);
  return score;
}

std::unique_ptr<JudgeEndpoint> make_always_stub(Position position) {
  return std::make_unique<AlwaysStub>(position);
}

std::unique_ptr<JudgeEndpoint> make_uniform_random_stub(std::uint64_t seed) {
  return std::make_unique<UniformRandomStub>(seed);
}

std::unique_ptr<JudgeEndpoint> make_temporal_mse_stub() {
  return std::make_unique<TemporalMseStub>();
}
// make_http_judge lives in judge_http.cpp to keep httplib away from Eigen.

std::unique_ptr<JudgeEndpoint> make_stub(const std::string& name, std::uint64_t seed) {
  if (name == "always-first") return make_always_stub(Position::kFirst);
  if (name == "always-second") return make_always_stub(Position::kSecond);
  if (name == "uniform-random") return make_uniform_random_stub(seed);
  if (name == "temporal-mse") return make_temporal_mse_stub();
  throw std::runtime_error("unknown stub: '" + name + "'");
}

void save_verdicts(const std::filesystem::path& path,
                   const std::vector<PresentationPair>& pairs,
                   const std::vector<Verdict>& verdicts, const std::string& judge_name,
                   std::uint64_t seed) {
  if (pairs.size() != verdicts.size()) {
    throw std::invalid_argument("save_verdicts: pair/verdict count mismatch");
  }
  nlohmann::json j;
  j["judge"] = judge_name;
  j["seed"] = seed;
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PresentationPair& pair = pairs[i];
    const Verdict& v = verdicts[i];
    nlohmann::json pj;
    pj["scenario_id"] = pair.scenario_id;
    pj["perspective"] = pair.perspective;
    pj["generated_position"] = position_str(pair.generated_position);
    pj["parseable"] = v.parseable;
    if (v.chosen) pj["chosen_position"] = position_str(*v.chosen);
    if (v.parseable) pj["correct"] = v.correct;
    if (!v.failure.empty()) pj["failure"] = v.failure;
    pj["raw_response"] = v.raw_response;
    list.push_back(std::move(pj));
  }
  j["verdicts"] = std::move(list);
  const JudgeScore score = mllm_score(verdicts);
  j["accuracy_percent"] = score.accuracy_percent;
  j["parseable"] = score.parseable;
  j["unparseable"] = score.unparseable;
  detail::write_json_file(path, j);
}

}  // namespace physiq::judge
