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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace physiq::judge {

/// The verbatim 2AFC instruction sent with every pair.
inline constexpr std::string_view kTwoAfcPrompt =
    "Your task is to help me sort my videos. I mixed up real videos that I shot "
    "with my camera and similar videos that I generated with a computer. I only "
    "know that exactly one of the two videos is the real one, and exactly one of "
    "the following two videos is the generated one. Please take a look at the two "
    "videos and let me know which of them is the generated one. I'll tip you $100 "
    "if you do a great job and help me identify the generated one. First explain "
    "your reasoning, then end with the following statement: 'For this reason, the "
    "first video is the generated one' or 'For this reason, the second video is "
    "the generated one'.";

enum class Position { kFirst, kSecond };

std::string position_str(Position p);

/// One real/generated pairing in seeded presentation order. The members are
/// references (paths or URLs); payload encoding is the endpoint's business.
struct PresentationPair {
  std::string scenario_id;
  std::string perspective;
  std::string first_ref;
  std::string second_ref;
  Position generated_position = Position::kFirst;
  std::uint64_t order_seed = 0;
};

/// A sequence reference for pair construction.
struct SequenceRef {
  std::string scenario_id;
  std::string perspective;
  std::string path;
};

/// Builds one pair per (scenario, perspective), with the generated member's
/// position decided by a seeded coin flip. Both sets must cover the same
/// scenarios; gaps are reported in the error message.
std::vector<PresentationPair> build_pairs(const std::vector<SequenceRef>& real,
                                          const std::vector<SequenceRef>& generated,
                                          std::uint64_t seed);

/// A judge's answer to one pair.
struct Verdict {
  std::optional<Position> chosen;
  std::string raw_response;
  bool parseable = false;
  bool correct = false;
  std::string failure;  // set when unparseable or transport failed
};

/// Extracts the mandated terminal statement ("the first/second video is the
/// generated one", case-insensitive, last occurrence wins). Empty when the
/// response violates the format.
std::optional<Position> parse_verdict_response(std::string_view response);

/// Abstract judge: prompt plus two video references in presentation order,
/// free text back. Implementations must be safe to call concurrently.
class JudgeEndpoint {
 public:
  virtual ~JudgeEndpoint() = default;
  virtual std::string name() const = 0;
  /// Throws TransportError on delivery failure.
  virtual std::string ask(const std::string& prompt, const std::string& first_ref,
                          const std::string& second_ref) const = 0;
};

struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RetryPolicy {
  int attempts = 3;
  int base_backoff_ms = 500;  // doubles per retry
};

/// Sends one pair to the judge, retrying transport failures with bounded
/// exponential backoff. Responses without the terminal statement are flagged
/// unparseable, never coerced.
Verdict query_judge(const PresentationPair& pair, const JudgeEndpoint& endpoint,
                    const RetryPolicy& retry = {});

/// Queries every pair with at most `max_in_flight` concurrent requests.
std::vector<Verdict> run_judge(const std::vector<PresentationPair>& pairs,
                               const JudgeEndpoint& endpoint, int max_in_flight = 4,
                               const RetryPolicy& retry = {});

struct JudgeScore {
  double accuracy_percent = 0.0;  // 100 * correct / parseable
  int parseable = 0;
  int unparseable = 0;
};

/// 2AFC accuracy over the parseable verdicts; unparseable ones are counted
/// alongside, never scored. Throws when nothing was parseable.
JudgeScore mllm_score(const std::vector<Verdict>& verdicts);

// --- endpoints ---------------------------------------------------------------

/// `always-first` / `always-second`: fixed-position stubs.
std::unique_ptr<JudgeEndpoint> make_always_stub(Position position);

/// `uniform-random`: seeded coin flip per pair reference, independent of the
/// generated position.
std::unique_ptr<JudgeEndpoint> make_uniform_random_stub(std::uint64_t seed);

/// `temporal-mse`: loads both sequences and picks the one whose consecutive
/// frames differ more (mean squared frame-to-frame difference), a plausibility
/// heuristic that spots noise-corrupted videos.
std::unique_ptr<JudgeEndpoint> make_temporal_mse_stub();

/// Stub registry for the CLI: always-first, always-second, uniform-random,
/// temporal-mse.
std::unique_ptr<JudgeEndpoint> make_stub(const std::string& name, std::uint64_t seed);

/// Remote judge: POSTs {"prompt", "first_video", "second_video"} as JSON to
/// the base URL and returns the response body as the answer text. The auth
/// token is read from the named environment variable when set.
struct HttpJudgeConfig {
  std::string base_url;             // e.g. http://host:port/judge
  std::string auth_token_env;       // name of the env var holding the token
  int timeout_seconds = 60;
};
std::unique_ptr<JudgeEndpoint> make_http_judge(const HttpJudgeConfig& config);

/// Deterministic verdict file: pairs, verdicts and the aggregate score.
void save_verdicts(const std::filesystem::path& path,
                   const std::vector<PresentationPair>& pairs,
                   const std::vector<Verdict>& verdicts, const std::string& judge_name,
                   std::uint64_t seed);

}  // namespace physiq::judge
