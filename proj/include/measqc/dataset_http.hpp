// Copyright 2026 The measqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// GenerationClient over a chat-completions style JSON endpoint. Kept out of
// the umbrella header so that only users of the network adapter pay for
// httplib.

#pragma once

#include <cstdlib>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "measqc/dataset.hpp"
#include "measqc/error.hpp"

namespace measqc {

struct HttpEndpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // defaults to /v1/chat/completions

  static HttpEndpoint parse(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint '" + url + "' lacks a scheme");
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw ConfigError("unsupported endpoint scheme '" + scheme + "'");
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") throw ConfigError("https endpoints need a build with OpenSSL");
#endif
    const auto slash = url.find('/', scheme_end + 3);
    HttpEndpoint e;
    e.origin = url.substr(0, slash);
    e.path = slash == std::string::npos ? "/v1/chat/completions" : url.substr(slash);
    if (e.origin.size() <= scheme_end + 3) throw ConfigError("endpoint '" + url + "' lacks a host");
    return e;
  }
};

class HttpClient : public GenerationClient {
 public:
  HttpClient(std::string endpoint_url, std::string api_key, std::string model = "default", int timeout_s = 300)
      : endpoint_(HttpEndpoint::parse(endpoint_url)),
        api_key_(std::move(api_key)),
        model_(std::move(model)),
        timeout_s_(timeout_s) {}

  // Reads GEN_ENDPOINT (required), GEN_API_KEY and GEN_MODEL.
  static HttpClient from_env() {
    const char* url = std::getenv("GEN_ENDPOINT");
    if (!url || !*url) throw ConfigError("GEN_ENDPOINT is not set");
    const char* key = std::getenv("GEN_API_KEY");
    const char* model = std::getenv("GEN_MODEL");
    return HttpClient(url, key ? key : "", model && *model ? model : "default");
  }

  static nlohmann::json request_body(const std::string& model, const std::string& prompt,
                                     const GenerationParams& params) {
    return {{"model", model},
            {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
            {"temperature", params.temperature},
            {"max_tokens", params.max_tokens},
            {"seed", params.seed}};
  }

  // choices[0].message.content, or choices[0].text for completion servers.
  static std::string response_text(const std::string& body) {
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) throw Error("generation service returned invalid JSON");
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
      throw Error("generation service response has no choices");
    }
    const auto& c = j["choices"][0];
    if (c.contains("message") && c["message"].contains("content") && c["message"]["content"].is_string()) {
      return c["message"]["content"].get<std::string>();
    }
    if (c.contains("text") && c["text"].is_string()) return c["text"].get<std::string>();
    throw Error("generation service response has no text");
  }

  std::string send(const std::string& prompt, const GenerationParams& params) const override {
    httplib::Client cli(endpoint_.origin);
    cli.set_connection_timeout(timeout_s_, 0);
    cli.set_read_timeout(timeout_s_, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = cli.Post(endpoint_.path, headers, request_body(model_, prompt, params).dump(), "application/json");
    if (!res) throw Error("generation request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error("generation service returned HTTP " + std::to_string(res->status));
    return response_text(res->body);
  }

  const HttpEndpoint& endpoint() const { return endpoint_; }

 private:
  HttpEndpoint endpoint_;
  std::string api_key_;
  std::string model_;
  int timeout_s_;
};

}  // namespace measqc
