#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include <odyssey/chat.hpp>
#include <odyssey/rng.hpp>

namespace odyssey {

constexpr std::size_t kEmbeddingDim = 256;

struct EmbedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct KTooLargeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

using EmbeddingVector = std::vector<double>;

// Hashed bag-of-words embedding: lowercase, split on non-alphanumerics, FNV-1a
// each token into one of D buckets, term-frequency weights, L2-normalize.
inline EmbeddingVector embed(const std::string& text, std::size_t dim = kEmbeddingDim) {
    EmbeddingVector v(dim, 0.0);
    std::string token;
    bool any = false;
    auto flush = [&] {
        if (token.empty()) return;
        v[fnv1a64(token.data(), token.size()) % dim] += 1.0;
        any = true;
        token.clear();
    };
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else
            flush();
    }
    flush();
    if (!any) throw EmbedError("cannot embed empty text");
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

inline double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

struct SkillIndex {
    struct Entry {
        std::string name;
        std::string description;
        EmbeddingVector vec;
    };
    std::vector<Entry> entries;

    std::size_t size() const { return entries.size(); }
};

inline SkillIndex build_index(const std::vector<std::pair<std::string, std::string>>& descriptions,
                              std::size_t dim = kEmbeddingDim) {
    if (descriptions.empty()) throw std::invalid_argument("cannot build an empty index");
    SkillIndex idx;
    std::map<std::string, bool> seen;
    for (const auto& [name, desc] : descriptions) {
        if (seen.count(name)) throw std::invalid_argument("duplicate skill name: " + name);
        seen[name] = true;
        try {
            idx.entries.push_back({name, desc, embed(desc, dim)});
        } catch (const EmbedError&) {
            throw EmbedError("empty description for skill: " + name);
        }
    }
    return idx;
}

inline std::vector<std::pair<std::string, double>> query_top_k(const SkillIndex& index,
                                                               const std::string& query_text,
                                                               std::size_t k) {
    if (k < 1 || k > index.entries.size())
        throw KTooLargeError("k must be in [1, " + std::to_string(index.entries.size()) +
                             "], got " + std::to_string(k));
    EmbeddingVector q = embed(query_text, index.entries.front().vec.size());
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(index.entries.size());
    for (const auto& e : index.entries) scored.push_back({e.name, cosine(q, e.vec)});
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    scored.resize(k);
    return scored;
}

// Enriches the retrieval query with a backend-provided Q&A context. Without a
// backend (or on "Answer: Unknown") the subgoal passes through verbatim.
inline std::string query_context(const std::string& subgoal, LLMBackend* backend,
                                 const std::vector<ChatMessage>& prompt = {}) {
    if (subgoal.empty()) throw std::invalid_argument("subgoal must be non-empty");
    if (!backend) return subgoal;
    std::vector<ChatMessage> messages = prompt;
    if (messages.empty())
        messages = {{Role::user, "How to complete " + subgoal + " in Minecraft?"}};
    std::string answer = backend->complete(messages);
    auto trim = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        std::size_t i = 0;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        return s.substr(i);
    };
    std::string a = trim(answer);
    if (a.empty() || a == "Answer: Unknown") return subgoal;
    return subgoal + "\n" + a;
}

// External embedding service speaking the common embeddings wire shape:
// POST {"input": [...], "model": ...} -> {"data": [{"embedding": [...]}]}.
class HttpEmbedder {
public:
    struct Config {
        std::string base_url;
        std::string path = "/v1/embeddings";
        std::string model = "text-embedding";
        int timeout_seconds = 30;
        int retries = 2;
    };

    explicit HttpEmbedder(Config cfg) : cfg_(std::move(cfg)) {
        if (cfg_.base_url.find("://") == std::string::npos)
            throw std::invalid_argument("malformed base_url: " + cfg_.base_url);
    }

    std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) {
        json body = {{"input", texts}, {"model", cfg_.model}};
        std::string last_error;
        for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
            httplib::Client cli(cfg_.base_url);
            cli.set_connection_timeout(cfg_.timeout_seconds, 0);
            cli.set_read_timeout(cfg_.timeout_seconds, 0);
            auto res = cli.Post(cfg_.path, body.dump(), "application/json");
            if (!res) {
                last_error = httplib::to_string(res.error());
                continue;
            }
            if (res->status >= 500) {
                last_error = "server returned " + std::to_string(res->status);
                continue;
            }
            if (res->status != 200)
                throw BadStatusError(res->status, "embedding request failed with status " +
                                                      std::to_string(res->status));
            json j = json::parse(res->body);
            std::vector<EmbeddingVector> out;
            for (const auto& d : j.at("data"))
                out.push_back(d.at("embedding").get<EmbeddingVector>());
            if (out.size() != texts.size())
                throw EmbedError("embedding count mismatch");
            return out;
        }
        throw TransportError("embedding request failed after retries: " + last_error);
    }

private:
    Config cfg_;
};

}  // namespace odyssey
