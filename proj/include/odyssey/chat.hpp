#pragma once

#include <chrono>
#include <cstdlib>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

namespace odyssey {

using json = nlohmann::json;

enum class Role { system, user, assistant };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::system: return "system";
        case Role::user: return "user";
        default: return "assistant";
    }
}

struct ChatMessage {
    Role role = Role::user;
    std::string content;
};

struct CompletionParams {
    double temperature = 0.0;
    int max_tokens = 1024;
};

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TransportError : BackendError {
    using BackendError::BackendError;
};
struct BadStatusError : BackendError {
    int status;
    BadStatusError(int s, const std::string& msg) : BackendError(msg), status(s) {}
};
struct EmptyCompletionError : BackendError {
    using BackendError::BackendError;
};

class LLMBackend {
public:
    virtual ~LLMBackend() = default;
    virtual std::string complete(const std::vector<ChatMessage>& messages,
                                 const CompletionParams& params = {}) = 0;
};

// Deterministic offline backend: ordered substring rules over the concatenated
// message contents; first match wins, otherwise the default reply.
class ScriptedBackend : public LLMBackend {
public:
    struct Rule {
        std::string contains;
        std::string reply;
    };

    ScriptedBackend(std::vector<Rule> rules, std::string default_reply)
        : rules_(std::move(rules)), default_reply_(std::move(default_reply)) {
        if (rules_.empty() && default_reply_.empty())
            throw std::invalid_argument("scripted backend needs rules or a default reply");
    }

    std::string complete(const std::vector<ChatMessage>& messages,
                         const CompletionParams& = {}) override {
        ++calls_;
        std::string all;
        for (const auto& m : messages) {
            all += m.content;
            all += '\n';
        }
        for (const auto& r : rules_)
            if (all.find(r.contains) != std::string::npos) return r.reply;
        return default_reply_;
    }

    int calls() const { return calls_; }

    static ScriptedBackend from_json(const json& j) {
        std::vector<Rule> rules;
        for (const auto& r : j.at("rules"))
            rules.push_back({r.at("contains").get<std::string>(),
                             r.at("reply").is_string() ? r.at("reply").get<std::string>()
                                                       : r.at("reply").dump()});
        return ScriptedBackend(std::move(rules), j.value("default", std::string{}));
    }

private:
    std::vector<Rule> rules_;
    std::string default_reply_;
    int calls_ = 0;
};

struct HttpBackendConfig {
    std::string base_url;  // e.g. "http://127.0.0.1:8080"
    std::string path = "/v1/chat/completions";
    std::string model = "gpt-3.5-turbo";
    std::string api_key_env = "ODYSSEY_API_KEY";  // key only ever read from env
    int timeout_seconds = 30;
    int retries = 3;        // extra attempts after the first
    int backoff_base_ms = 100;
    bool sleep_on_retry = true;  // tests disable to keep the suite fast
};

// OpenAI-style chat-completions client. Retries transport errors and 5xx with
// exponential backoff; at most 1 + retries attempts per call.
class HttpBackend : public LLMBackend {
public:
    explicit HttpBackend(HttpBackendConfig cfg) : cfg_(std::move(cfg)) {
        if (cfg_.base_url.empty() || cfg_.base_url.find("://") == std::string::npos)
            throw std::invalid_argument("malformed base_url: " + cfg_.base_url);
    }

    std::string complete(const std::vector<ChatMessage>& messages,
                         const CompletionParams& params = {}) override {
        json body;
        body["model"] = cfg_.model;
        body["temperature"] = params.temperature;
        body["max_tokens"] = params.max_tokens;
        body["messages"] = json::array();
        for (const auto& m : messages)
            body["messages"].push_back({{"role", role_name(m.role)}, {"content", m.content}});

        std::string last_error;
        int last_status = 0;
        for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
            if (attempt > 0 && cfg_.sleep_on_retry)
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(cfg_.backoff_base_ms << (attempt - 1)));
            httplib::Client cli(cfg_.base_url);
            cli.set_connection_timeout(cfg_.timeout_seconds, 0);
            cli.set_read_timeout(cfg_.timeout_seconds, 0);
            httplib::Headers headers;
            if (const char* key = std::getenv(cfg_.api_key_env.c_str()))
                headers.emplace("Authorization", std::string("Bearer ") + key);
            auto res = cli.Post(cfg_.path, headers, body.dump(), "application/json");
            if (!res) {
                last_error = httplib::to_string(res.error());
                continue;  // transport error: retry
            }
            if (res->status >= 500) {
                last_status = res->status;
                last_error = "server returned " + std::to_string(res->status);
                continue;  // retry
            }
            if (res->status != 200)
                throw BadStatusError(res->status,
                                     "chat completion failed with status " +
                                         std::to_string(res->status));
            return extract_content(res->body);
        }
        if (last_status >= 500)
            throw BadStatusError(last_status, "chat completion failed after retries: " + last_error);
        throw TransportError("chat completion transport failure: " + last_error);
    }

private:
    static std::string extract_content(const std::string& body) {
        json j;
        try {
            j = json::parse(body);
        } catch (const json::exception& e) {
            throw EmptyCompletionError(std::string("unparseable completion body: ") + e.what());
        }
        if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
            throw EmptyCompletionError("completion response has no choices");
        const json& msg = j["choices"][0].value("message", json::object());
        std::string content = msg.value("content", std::string{});
        if (content.empty()) throw EmptyCompletionError("completion message content is empty");
        return content;
    }

    HttpBackendConfig cfg_;
};

}  // namespace odyssey
