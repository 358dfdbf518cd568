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

// The HTTP endpoint adapter lives in its own translation unit: httplib pulls
// in system headers whose macros collide with Eigen, so it must never share a
// TU with the pixel pipeline.

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

#include "physiq/judge.hpp"

namespace physiq::judge {

namespace {

class HttpJudge final : public JudgeEndpoint {
 public:
  explicit HttpJudge(HttpJudgeConfig config) : config_(std::move(config)) {
    const auto scheme_end = config_.base_url.find("://");
    if (scheme_end == std::string::npos) {
      throw std::invalid_argument("HttpJudge: base URL needs a scheme");
    }
    const auto path_start = config_.base_url.find('/', scheme_end + 3);
    host_ = config_.base_url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : config_.base_url.substr(path_start);
  }

  std::string name() const override { return "http:" + config_.base_url; }

  std::string ask(const std::string& prompt, const std::string& first_ref,
                  const std::string& second_ref) const override {
    httplib::Client client(host_);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    if (!config_.auth_token_env.empty()) {
      if (const char* token = std::getenv(config_.auth_token_env.c_str())) {
        client.set_default_headers({{"Authorization", std::string("Bearer ") + token}});
      }
    }
    nlohmann::json body;
    body["prompt"] = prompt;
    body["first_video"] = first_ref;
    body["second_video"] = second_ref;
    httplib::Result res = client.Post(path_, body.dump(), "application/json");
    if (!res) {
      throw TransportError("HTTP transport failure: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw TransportError("HTTP status " + std::to_string(res->status));
    }
    return res->body;
  }

 private:
  HttpJudgeConfig config_;
  std::string host_;
  std::string path_;
};

}  // namespace

std::unique_ptr<JudgeEndpoint> make_http_judge(const HttpJudgeConfig& config) {
  return std::make_unique<HttpJudge>(config);
}

}  // namespace physiq::judge
