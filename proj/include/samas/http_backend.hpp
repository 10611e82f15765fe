#pragma once
// Chat backend speaking the OpenAI-compatible /chat/completions protocol.
// Plain HTTP only (point base_url at a local gateway for TLS providers).

#include <chrono>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "samas/agents.hpp"
#include "samas/errors.hpp"

namespace samas {

class HttpBackend final : public ChatBackend {
public:
    HttpBackend(std::string base_url, std::string api_key, long timeout_ms = 120000)
        : api_key_(std::move(api_key)), timeout_ms_(timeout_ms) {
        split_base_url(base_url, host_, prefix_);
    }

    BackendResponse complete(const BackendRequest& request) override {
        httplib::Client client(host_);
        client.set_connection_timeout(std::chrono::milliseconds(timeout_ms_));
        client.set_read_timeout(std::chrono::milliseconds(timeout_ms_));

        const nlohmann::json body{
            {"model", request.model},
            {"messages",
             nlohmann::json::array({{{"role", "system"}, {"content", request.system}},
                                    {{"role", "user"}, {"content", request.user}}})},
            {"temperature", request.temperature},
            {"max_tokens", request.max_tokens},
        };
        httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};

        const auto start = std::chrono::steady_clock::now();
        auto result = client.Post(prefix_ + "/chat/completions", headers, body.dump(),
                                  "application/json");
        const long latency = static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count());

        if (!result)
            throw TransportError("request to " + host_ +
                                 " failed: " + httplib::to_string(result.error()));
        if (result->status == 429 || result->status >= 500)
            throw TransportError("HTTP " + std::to_string(result->status) + " from backend");
        if (result->status != 200)
            throw Error(ErrorCode::BackendFailure,
                        "HTTP " + std::to_string(result->status) + ": " +
                            result->body.substr(0, 200));

        try {
            const auto j = nlohmann::json::parse(result->body);
            BackendResponse response;
            response.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
            response.latency_ms = latency;
            if (j.contains("usage")) {
                const auto& usage = j.at("usage");
                response.token_counts.prompt = usage.value("prompt_tokens", 0L);
                response.token_counts.completion = usage.value("completion_tokens", 0L);
            }
            return response;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::BackendFailure,
                        std::string("malformed backend response: ") + e.what());
        }
    }

    // Startup probe: any HTTP response at all counts as reachable.
    static bool reachable(const std::string& base_url, long timeout_ms = 3000) {
        std::string host;
        std::string prefix;
        split_base_url(base_url, host, prefix);
        httplib::Client client(host);
        client.set_connection_timeout(std::chrono::milliseconds(timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(timeout_ms));
        auto result = client.Get(prefix.empty() ? "/" : prefix + "/models");
        return static_cast<bool>(result);
    }

private:
    // "http://host:port/v1" -> ("http://host:port", "/v1")
    static void split_base_url(const std::string& base_url, std::string& host,
                               std::string& prefix) {
        if (base_url.empty())
            throw Error(ErrorCode::ConfigError, "backend.base_url is empty");
        const std::size_t scheme = base_url.find("://");
        const std::size_t path_start =
            base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
        if (path_start == std::string::npos) {
            host = base_url;
            prefix.clear();
        } else {
            host = base_url.substr(0, path_start);
            prefix = base_url.substr(path_start);
            while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
        }
    }

    std::string host_;
    std::string prefix_;
    std::string api_key_;
    long timeout_ms_;
};

} // namespace samas
