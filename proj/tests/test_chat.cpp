#include <doctest.h>

#include <atomic>
#include <thread>

#include <odyssey/chat.hpp>
#include <odyssey/retrieval.hpp>

using namespace odyssey;

TEST_CASE("scripted backend: first match wins, default otherwise") {
    ScriptedBackend be({{"defeat all monsters", "[\"craft iron sword\"]"},
                        {"monsters", "never reached for the first key"}},
                       "{\"reasoning\":\"none\",\"task\":\"Mine log\"}");
    std::vector<ChatMessage> planner = {{Role::system, "... defeat all monsters ..."},
                                        {Role::user, "Monster: 1 zombie"}};
    CHECK(be.complete(planner) == "[\"craft iron sword\"]");
    CHECK(be.complete(planner) == "[\"craft iron sword\"]");  // deterministic

    std::vector<ChatMessage> other = {{Role::user, "unrelated"}};
    CHECK(be.complete(other) == "{\"reasoning\":\"none\",\"task\":\"Mine log\"}");
    CHECK(be.calls() == 3);
}

TEST_CASE("scripted backend loads from JSON rules") {
    json j = {{"rules", {{{"contains", "ping"}, {"reply", "pong"}},
                         {{"contains", "json"}, {"reply", {{"a", 1}}}}}},
              {"default", "dunno"}};
    ScriptedBackend be = ScriptedBackend::from_json(j);
    CHECK(be.complete({{Role::user, "ping"}}) == "pong");
    CHECK(be.complete({{Role::user, "json please"}}) == "{\"a\":1}");
    CHECK(be.complete({{Role::user, "?"}}) == "dunno");
}

namespace {

// Local chat-completions stub. Behavior keyed on the incoming model name.
struct StubServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> hits{0};

    StubServer() {
        server.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
            ++hits;
            json body = json::parse(req.body);
            std::string model = body.value("model", "");
            if (model == "flaky" && hits <= 2) {
                res.status = 503;
                return;
            }
            if (model == "always-503") {
                res.status = 503;
                return;
            }
            if (model == "denied") {
                res.status = 401;
                return;
            }
            if (model == "no-choices") {
                res.set_content(R"({"choices": []})", "application/json");
                return;
            }
            if (model == "empty-content") {
                res.set_content(R"({"choices":[{"message":{"role":"assistant","content":""}}]})",
                                "application/json");
                return;
            }
            json msg = {{"role", "assistant"},
                        {"content",
                         "echo:" + body["messages"].back()["content"].get<std::string>()}};
            json reply;
            reply["choices"] = json::array({json{{"message", msg}}});
            res.set_content(reply.dump(), "application/json");
        });
        server.Post("/v1/embeddings", [](const httplib::Request& req, httplib::Response& res) {
            json body = json::parse(req.body);
            json data = json::array();
            for (const auto& text : body.at("input")) {
                auto v = embed(text.get<std::string>(), 8);
                data.push_back({{"embedding", v}});
            }
            res.set_content(json{{"data", data}}.dump(), "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~StubServer() {
        server.stop();
        thread.join();
    }

    HttpBackendConfig config(const std::string& model) const {
        HttpBackendConfig cfg;
        cfg.base_url = "http://127.0.0.1:" + std::to_string(port);
        cfg.model = model;
        cfg.sleep_on_retry = false;
        return cfg;
    }
};

}  // namespace

TEST_CASE("http backend contract against a local stub") {
    StubServer stub;

    SUBCASE("happy path returns the first choice's content") {
        HttpBackend be(stub.config("ok"));
        CHECK(be.complete({{Role::system, "s"}, {Role::user, "hello"}}) == "echo:hello");
        CHECK(stub.hits == 1);
    }
    SUBCASE("two 503s then 200 succeeds with retries=3") {
        auto cfg = stub.config("flaky");
        cfg.retries = 3;
        HttpBackend be(cfg);
        CHECK(be.complete({{Role::user, "hi"}}) == "echo:hi");
        CHECK(stub.hits == 3);
    }
    SUBCASE("persistent 5xx exhausts retries") {
        auto cfg = stub.config("always-503");
        cfg.retries = 1;
        HttpBackend be(cfg);
        CHECK_THROWS_AS(be.complete({{Role::user, "hi"}}), BadStatusError);
        CHECK(stub.hits == 2);  // 1 + retries attempts, no more
    }
    SUBCASE("4xx fails immediately without retry") {
        auto cfg = stub.config("denied");
        cfg.retries = 3;
        HttpBackend be(cfg);
        CHECK_THROWS_AS(be.complete({{Role::user, "hi"}}), BadStatusError);
        CHECK(stub.hits == 1);
    }
    SUBCASE("empty choices -> EmptyCompletion") {
        HttpBackend be(stub.config("no-choices"));
        CHECK_THROWS_AS(be.complete({{Role::user, "hi"}}), EmptyCompletionError);
    }
    SUBCASE("empty message content -> EmptyCompletion") {
        HttpBackend be(stub.config("empty-content"));
        CHECK_THROWS_AS(be.complete({{Role::user, "hi"}}), EmptyCompletionError);
    }
    SUBCASE("malformed base_url rejected") {
        HttpBackendConfig cfg;
        cfg.base_url = "not a url";
        CHECK_THROWS_AS(HttpBackend{cfg}, std::invalid_argument);
    }
    SUBCASE("external embedding service wire shape") {
        HttpEmbedder::Config cfg;
        cfg.base_url = "http://127.0.0.1:" + std::to_string(stub.port);
        HttpEmbedder emb(cfg);
        auto vecs = emb.embed_batch({"mine stone", "craft sword"});
        REQUIRE(vecs.size() == 2);
        CHECK(vecs[0] == embed("mine stone", 8));
        CHECK(vecs[1] == embed("craft sword", 8));
    }
}

TEST_CASE("http backend transport error after retries") {
    HttpBackendConfig cfg;
    cfg.base_url = "http://127.0.0.1:9";  // discard port; nothing listens
    cfg.retries = 1;
    cfg.sleep_on_retry = false;
    cfg.timeout_seconds = 1;
    HttpBackend be(cfg);
    CHECK_THROWS_AS(be.complete({{Role::user, "hi"}}), TransportError);
}
