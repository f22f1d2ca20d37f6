#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <odyssey/retrieval.hpp>
#include <odyssey/rng.hpp>

#include "test_util.hpp"

using namespace odyssey;

TEST_CASE("embedding is deterministic and unit-norm") {
    auto a = embed("mine diamond");
    auto b = embed("mine diamond");
    CHECK(a == b);
    CHECK(a.size() == kEmbeddingDim);
    double norm = 0;
    for (double x : a) norm += x * x;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
}

TEST_CASE("embedding tokenization: lowercase, split on non-alphanumerics") {
    CHECK(embed("Mine   DIAMOND ore!") == embed("mine diamond ore"));
    CHECK(embed("craft-iron_sword") == embed("craft iron sword"));
    CHECK(embed("a b") != embed("a c"));
}

TEST_CASE("embedding rejects empty text") {
    CHECK_THROWS_AS(embed(""), EmbedError);
    CHECK_THROWS_AS(embed("   \t\n"), EmbedError);
    CHECK_THROWS_AS(embed("!!! ???"), EmbedError);
}

TEST_CASE("self-similarity is exactly 1") {
    auto v = embed("mine diamond ore");
    CHECK(std::abs(cosine(v, v) - 1.0) < 1e-9);
    CHECK(std::abs(cosine(embed("mine diamond ore"), embed("mine diamond ore")) - 1.0) < 1e-9);
}

TEST_CASE("index construction") {
    SUBCASE("one entry per skill") {
        auto idx = build_index(test_skills().descriptions());
        CHECK(idx.size() == test_skills().size());
    }
    SUBCASE("duplicate names rejected") {
        CHECK_THROWS_AS(build_index({{"a", "mine stone"}, {"a", "mine dirt"}}),
                        std::invalid_argument);
    }
    SUBCASE("empty input rejected") {
        CHECK_THROWS_AS(build_index({}), std::invalid_argument);
    }
    SUBCASE("empty description names the offending skill") {
        CHECK_THROWS_WITH_AS(build_index({{"ghost", "  "}}),
                             doctest::Contains("ghost"), EmbedError);
    }
    SUBCASE("single entry always returned") {
        auto idx = build_index({{"only", "mine the only block"}});
        auto top = query_top_k(idx, "anything else entirely", 1);
        CHECK(top.size() == 1);
        CHECK(top[0].first == "only");
    }
}

TEST_CASE("query_top_k contract") {
    auto idx = build_index(test_skills().descriptions());

    SUBCASE("k bounds") {
        CHECK_THROWS_AS(query_top_k(idx, "mine", 0), KTooLargeError);
        CHECK_THROWS_AS(query_top_k(idx, "mine", idx.size() + 1), KTooLargeError);
        CHECK(query_top_k(idx, "mine", idx.size()).size() == idx.size());
    }
    SUBCASE("k=5 returns exactly 5") {
        CHECK(query_top_k(idx, "craft a sword", 5).size() == 5);
    }
    SUBCASE("query equal to an indexed description ranks that skill first at 1.0") {
        const auto& entry = idx.entries[idx.entries.size() / 2];
        auto top = query_top_k(idx, entry.description, 1);
        CHECK(std::abs(top[0].second - 1.0) < 1e-9);
        CHECK(test_skills().spec(top[0].first).description == entry.description);
    }
    SUBCASE("scores bounded") {
        for (const auto& [name, score] : query_top_k(idx, "zzz unrelated words", idx.size())) {
            CHECK(score <= 1.0 + 1e-12);
            CHECK(score >= -1.0 - 1e-12);
        }
    }
    SUBCASE("ties broken by lexicographic name") {
        auto small = build_index(
            {{"zeta", "collect the block"}, {"alpha", "collect the block"}, {"mid", "other"}});
        auto top = query_top_k(small, "collect the block", 3);
        CHECK(top[0].first == "alpha");
        CHECK(top[1].first == "zeta");
        CHECK(top[0].second == top[1].second);
    }
}

// Independent oracle: recompute every score and sort with the documented
// tie-break; rankings must match exactly.
TEST_CASE("ranking equals brute-force cosine for 100 random queries") {
    const auto& reg = test_skills();
    auto idx = build_index(reg.descriptions());

    // vocabulary pool from the actual descriptions
    std::vector<std::string> vocab;
    for (const auto& [name, desc] : reg.descriptions()) {
        std::string w;
        for (char c : desc) {
            if (std::isalnum(static_cast<unsigned char>(c)))
                w += char(std::tolower(static_cast<unsigned char>(c)));
            else {
                if (w.size() > 2) vocab.push_back(w);
                w.clear();
            }
        }
        if (w.size() > 2) vocab.push_back(w);
    }
    REQUIRE(vocab.size() > 50);

    Pcg32 rng(20240817);
    for (int q = 0; q < 100; ++q) {
        int len = int(rng.uniform(1, 6));
        std::string query;
        for (int i = 0; i < len; ++i) {
            if (i) query += ' ';
            query += vocab[rng.uniform(0, std::uint32_t(vocab.size() - 1))];
        }
        auto got = query_top_k(idx, query, idx.size());

        auto qv = embed(query);
        std::vector<std::pair<std::string, double>> want;
        for (const auto& e : idx.entries) want.push_back({e.name, cosine(qv, embed(e.description))});
        std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].first == want[i].first);
            CHECK(std::abs(got[i].second - want[i].second) < 1e-9);
        }
    }
}

TEST_CASE("top-k is a prefix of top-(k+1)") {
    auto idx = build_index(test_skills().descriptions());
    auto prev = query_top_k(idx, "craft an iron sword for combat", 1);
    for (std::size_t k = 2; k <= 10; ++k) {
        auto cur = query_top_k(idx, "craft an iron sword for combat", k);
        REQUIRE(cur.size() == k);
        for (std::size_t i = 0; i + 1 < k; ++i) CHECK(cur[i].first == prev[i].first);
        prev = cur;
    }
}

TEST_CASE("query_context enrichment") {
    SUBCASE("no backend: passthrough") {
        CHECK(query_context("craft iron sword", nullptr) == "craft iron sword");
    }
    SUBCASE("Unknown answer leaves the query alone") {
        ScriptedBackend be({{"How to complete", "Answer: Unknown"}}, "Answer: Unknown");
        CHECK(query_context("craft iron sword", &be) == "craft iron sword");
    }
    SUBCASE("a real answer is appended to the query") {
        ScriptedBackend be({{"craft iron sword", "Answer: smelt iron ingots first"}}, "");
        std::string q = query_context("craft iron sword", &be);
        CHECK(q.find("craft iron sword") == 0);
        CHECK(q.find("Answer: smelt iron ingots first") != std::string::npos);
    }
    SUBCASE("empty subgoal rejected") {
        CHECK_THROWS_AS(query_context("", nullptr), std::invalid_argument);
    }
}
