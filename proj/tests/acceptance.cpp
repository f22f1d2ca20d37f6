// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include <odyssey/benchmark.hpp>
#include <odyssey/datagen.hpp>

#include "parser_cases.hpp"
#include "prompt_goldens.hpp"
#include "test_util.hpp"

using namespace odyssey;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::string name;
    bool ok = true;
    std::vector<std::string> problems;
    double limit_seconds = 0;  // 0 = unlimited

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (problems.size() < 5) problems.push_back(what);
        }
    }
};

int g_failures = 0;

template <typename F>
void run_criterion(const std::string& name, double limit_seconds, F body) {
    Criterion c;
    c.name = name;
    c.limit_seconds = limit_seconds;
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_seconds > 0 && elapsed > limit_seconds)
        c.require(false, "exceeded time limit of " + std::to_string(limit_seconds) + "s");
    if (c.ok) {
        std::printf("PASS %-24s (%.2fs)\n", name.c_str(), elapsed);
    } else {
        ++g_failures;
        std::printf("FAIL %-24s (%.2fs)\n", name.c_str(), elapsed);
        for (const auto& p : c.problems) std::printf("     - %s\n", p.c_str());
    }
    std::fflush(stdout);
}

const SkillIndex& acc_index() {
    static SkillIndex idx = build_index(test_skills().descriptions());
    return idx;
}

AgentConfig wide_agent() {
    AgentConfig cfg;
    cfg.k = acc_index().size();
    return cfg;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

// ---- 1: identical seeds and action sequences give identical world states --------

void criterion_determinism(Criterion& c) {
    const std::vector<std::string> pool = {
        "collectLog",  "craftPlanks",   "craftSticks", "collectSeeds", "pickDandelion",
        "mineDirt",    "mineSand",      "killCow",     "collectBirchLog", "craftCraftingTable",
        "mineCobblestone", "craftWoodenSword"};
    Pcg32 rng(424242);
    for (int pair = 0; pair < 100; ++pair) {
        std::uint64_t seed = (std::uint64_t(rng.next_u32()) << 32) | rng.next_u32();
        std::vector<std::string> ops;
        int len = 2 + int(rng.uniform(0, 3));
        for (int i = 0; i < len; ++i)
            ops.push_back(pool[rng.uniform(0, std::int64_t(pool.size() - 1))]);

        World a(seed, dense_config(), &test_fixture());
        World b(seed, dense_config(), &test_fixture());
        for (const auto& op : ops) {
            test_skills().execute(op, a, false);
            test_skills().execute(op, b, false);
        }
        if (a.to_json().dump() != b.to_json().dump()) {
            c.require(false, "pair " + std::to_string(pair) + " diverged (seed " +
                                 std::to_string(seed) + ")");
            return;
        }
    }
}

// ---- 2: resolver plans are admissible topological orders ------------------------

// Independent plan simulator: walks the plan keeping a virtual inventory and
// verifies every prerequisite at the moment its step runs.
bool plan_admissible(const SkillRegistry& reg, const std::vector<PlanStep>& plan,
                     std::map<std::string, int> have, std::string* why = nullptr) {
    for (const auto& step : plan) {
        const SkillSpec& s = reg.spec(step.skill);
        for (int run = 0; run < step.runs; ++run) {
            for (const auto& p : s.prerequisites) {
                if (have[p.item] < p.count) {
                    if (why)
                        *why = step.skill + " lacks " + std::to_string(p.count) + " " + p.item;
                    return false;
                }
            }
            for (const auto& p : s.prerequisites)
                if (p.consumed) have[p.item] -= p.count;
            if (!s.produces.kind.empty()) have[s.produces.kind] += s.produces.count;
        }
    }
    return true;
}

void criterion_resolver(Criterion& c) {
    const SkillRegistry& reg = test_skills();

    // Every compositional skill resolves to an admissible plan from empty hands.
    for (const auto& [name, desc] : reg.descriptions()) {
        if (reg.spec(name).kind != SkillKind::compositional) continue;
        auto plan = reg.resolve(name, {});
        c.require(!plan.empty() && plan.back().skill == name,
                  name + ": plan must end with the requested skill");
        std::set<std::string> seen;
        for (const auto& s : plan)
            c.require(seen.insert(s.skill).second, name + ": duplicate step " + s.skill);
        std::string why;
        c.require(plan_admissible(reg, plan, {}, &why), name + ": inadmissible plan (" + why + ")");
        if (!c.ok) return;
    }

    // 50 random starting inventories per skill family sample.
    Pcg32 rng(777);
    std::vector<std::string> stock = {"oak_log", "oak_planks", "stick", "crafting_table",
                                      "cobblestone", "iron_ingot", "coal", "furnace",
                                      "wooden_pickaxe", "stone_pickaxe", "iron_pickaxe"};
    const std::vector<std::string> probes = {"mineDiamond", "craftIronSword", "craftBucket",
                                             "craftShears", "craftFurnace", "craftHoe"};
    for (const auto& name : probes) {
        for (int trial = 0; trial < 50; ++trial) {
            std::map<std::string, int> have;
            for (const auto& item : stock)
                if (rng.uniform(0, 1)) have[item] = int(rng.uniform(0, 4));
            auto plan = reg.resolve(name, have);
            std::string why;
            c.require(plan_admissible(reg, plan, have, &why),
                      name + " trial " + std::to_string(trial) + ": " + why);
        }
    }

    // Exhaustive cross-check on a tiny synthetic graph: the resolver's output
    // must be one of the brute-force-enumerated admissible minimal plans.
    SkillRegistry tiny;
    {
        SkillSpec a;
        a.name = "mk_a";
        a.description = "make a";
        a.produces = {"a", 1};
        tiny.register_skill(a);
        SkillSpec b;
        b.name = "mk_b";
        b.description = "make b";
        b.produces = {"b", 2};
        b.prerequisites = {{"a", 1, "mk_a", true}};
        tiny.register_skill(b);
        SkillSpec d;
        d.name = "mk_c";
        d.description = "make c";
        d.produces = {"c", 1};
        d.prerequisites = {{"a", 2, "mk_a", true}, {"b", 3, "mk_b", true}};
        tiny.register_skill(d);
    }
    auto plan = tiny.resolve("mk_c", {});
    std::string why;
    c.require(plan_admissible(tiny, plan, {}, &why), "tiny graph plan inadmissible: " + why);
    int total_runs = 0;
    for (const auto& s : plan) total_runs += s.runs;

    std::vector<std::string> names = {"mk_a", "mk_b", "mk_c"};
    std::sort(names.begin(), names.end());
    int best = 1 << 20;
    std::set<std::string> minimal_plans;
    do {
        for (int ra = 1; ra <= 6; ++ra)
            for (int rb = 1; rb <= 6; ++rb) {
                std::vector<PlanStep> cand;
                for (const auto& n : names)
                    cand.push_back({n, n == "mk_a" ? ra : n == "mk_b" ? rb : 1});
                if (!plan_admissible(tiny, cand, {})) continue;
                int runs = ra + rb + 1;
                if (runs < best) {
                    best = runs;
                    minimal_plans.clear();
                }
                if (runs == best) {
                    std::string key;
                    for (const auto& s : cand)
                        key += s.skill + ":" + std::to_string(s.runs) + ";";
                    minimal_plans.insert(key);
                }
            }
    } while (std::next_permutation(names.begin(), names.end()));
    c.require(total_runs == best, "tiny graph: resolver used " + std::to_string(total_runs) +
                                      " runs, brute-force minimum is " + std::to_string(best));
    std::string key;
    for (const auto& s : plan) key += s.skill + ":" + std::to_string(s.runs) + ";";
    c.require(minimal_plans.count(key) == 1, "tiny graph: plan not among minimal admissible plans");

    // The deep chain: three pickaxe tiers end to end.
    auto chain = reg.resolve("mineDiamond", {});
    c.require(chain.size() == 13,
              "mineDiamond plan has " + std::to_string(chain.size()) + " steps, expected 13");
    auto pos = [&](const std::string& n) {
        for (std::size_t i = 0; i < chain.size(); ++i)
            if (chain[i].skill == n) return int(i);
        return -1;
    };
    c.require(pos("craftWoodenPickaxe") >= 0 && pos("craftStonePickaxe") > pos("craftWoodenPickaxe") &&
                  pos("craftIronPickaxe") > pos("craftStonePickaxe") &&
                  pos("mineDiamond") == int(chain.size()) - 1,
              "mineDiamond plan misorders the pickaxe tiers");

    // Ground truth: the plan actually runs.
    World w(3, dense_config(), &test_fixture());
    c.require(reg.execute("mineDiamond", w, false).success, "mineDiamond execution failed");
    c.require(w.agent().inventory.count_of("diamond") >= 1, "no diamond after execution");
}

// ---- 3: retrieval ranking equals brute-force cosine ------------------------------

void criterion_retrieval(Criterion& c) {
    const auto& idx = acc_index();
    for (const auto& e : idx.entries) {
        auto top = query_top_k(idx, e.description, 1);
        c.require(std::abs(top[0].second - 1.0) < 1e-9,
                  "self-query score for " + e.name + " is not 1.0");
    }

    std::vector<std::string> vocab;
    for (const auto& [name, desc] : test_skills().descriptions()) {
        std::string w;
        for (char ch : desc) {
            if (std::isalnum(static_cast<unsigned char>(ch)))
                w += char(std::tolower(static_cast<unsigned char>(ch)));
            else {
                if (w.size() > 2) vocab.push_back(w);
                w.clear();
            }
        }
        if (w.size() > 2) vocab.push_back(w);
    }
    Pcg32 rng(20240817);
    for (int q = 0; q < 100; ++q) {
        int len = int(rng.uniform(1, 6));
        std::string query;
        for (int i = 0; i < len; ++i) {
            if (i) query += ' ';
            query += vocab[rng.uniform(0, std::int64_t(vocab.size() - 1))];
        }
        auto got = query_top_k(idx, query, idx.size());
        auto qv = embed(query);
        std::vector<std::pair<std::string, double>> want;
        for (const auto& e : idx.entries)
            want.push_back({e.name, cosine(qv, embed(e.description))});
        std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (got[i].first != want[i].first || std::abs(got[i].second - want[i].second) > 1e-9) {
                c.require(false, "query \"" + query + "\" rank " + std::to_string(i) +
                                     ": got " + got[i].first + ", want " + want[i].first);
                return;
            }
        }
    }
}

// ---- 4: rendered templates are byte-identical to the pinned fixtures -------------

void criterion_prompts(Criterion& c) {
    int checked = 0;
    for (const auto& [file, msgs] : prompt_goldens()) {
        std::string got = render_messages(msgs);
        std::string want = read_file_bytes(data_path("prompts/" + file));
        c.require(got == want, file + " differs from the pinned fixture");
        ++checked;
    }
    c.require(checked >= 11, "expected at least 11 golden prompt files");
}

// ---- 5: parser corpus behaves exactly as documented ------------------------------

void criterion_parsers(Criterion& c) {
    auto rep = run_parser_cases(data_path("parsers/cases.json"));
    c.require(rep.total >= 50, "corpus has only " + std::to_string(rep.total) + " cases");
    for (const auto& f : rep.failures) c.require(false, f);
}

// ---- 6: critic verdicts match the rule-based oracle on 30 triples -----------------

void criterion_critic(Criterion& c) {
    json cases = load_json_file(data_path("scripts/critic_oracle.json"));
    c.require(cases.size() == 30, "expected 30 cases");
    int agreed = 0;
    for (const auto& cs : cases) {
        std::string task = cs.at("task");
        std::map<std::string, int> cur = cs.at("current_inventory");
        std::map<std::string, int> last = cs.at("last_inventory");
        std::vector<std::string> nearby = cs.at("nearby_blocks");
        std::string equipment = cs.at("equipment");

        // Independent oracle per the critic's documented judging rules.
        bool expected = false;
        auto item_of = [](const std::string& t, const std::string& verb) {
            std::string rest = t.substr(verb.size());
            for (char& ch : rest)
                if (ch == ' ') ch = '_';
            return rest;
        };
        if (task.rfind("craft ", 0) == 0) {
            std::string item = item_of(task, "craft ");
            expected = cur.count(item) && cur[item] > 0;
            if (!expected) expected = equipment.find(item) != std::string::npos;
        } else if (task.rfind("mine ", 0) == 0) {
            std::string item = item_of(task, "mine ");
            if (item == "iron_ore") item = "raw_iron";
            if (item == "copper_ore") item = "raw_copper";
            if (item == "gold_ore") item = "raw_gold";
            expected = (cur.count(item) && cur[item] > 0);
        } else if (task.rfind("hoe", 0) == 0) {
            expected = std::find(nearby.begin(), nearby.end(), "farmland") != nearby.end();
        } else if (task.rfind("plant", 0) == 0) {
            for (const auto& b : nearby)
                if (b.find("seed") != std::string::npos) expected = true;
        }
        c.require(expected == cs.at("expected_success").get<bool>(),
                  task + ": oracle disagrees with the fixture expectation");

        // The scripted reply must parse and agree with the oracle.
        ScriptedBackend be({}, cs.at("reply").get<std::string>());
        CriticFields f;
        f.task = task;
        f.nearby_blocks = join(nearby);
        f.equipment = equipment;
        f.current_inventory = render_inventory(cur);
        f.current_used = int(cur.size());
        f.last_inventory = render_inventory(last);
        f.last_used = int(last.size());
        std::string raw = be.complete(build_critic_prompt(f));
        CriticVerdict v = parse_critic(raw);
        if (v.success == expected) {
            ++agreed;
            if (!v.success && v.critique.empty())
                c.require(false, task + ": failed verdict without critique");
        } else {
            c.require(false, task + ": verdict disagrees with the oracle");
        }
    }
    c.require(agreed == 30, "only " + std::to_string(agreed) + "/30 verdicts agreed");
}

// ---- 7: combat replay reproduces the pinned crafting times ------------------------

void criterion_lpt(Criterion& c) {
    World w(101, dense_config(), &test_fixture());
    ScriptedBackend be =
        ScriptedBackend::from_json(load_json_file(data_path("scripts/lpt_replay.json")));
    TaskSpec spec;
    spec.id = "combat_1_skeleton";
    spec.kind = TaskKind::lpt_single;
    spec.lpt.monsters = {"1 skeleton"};
    spec.lpt.rounds = 3;
    LptOptions opt;
    opt.agent = wide_agent();
    auto rs = run_lpt(spec, w, be, acc_index(), test_skills(), opt);
    c.require(rs.size() == 3, "expected 3 rounds");
    if (rs.size() != 3) return;
    const std::int64_t want_ticks[3] = {15953, 3614, 416};
    const double want_minutes[3] = {13.29, 3.01, 0.35};
    for (int i = 0; i < 3; ++i) {
        c.require(rs[i].success, "round " + std::to_string(i + 1) + " failed");
        c.require(rs[i].ticks == want_ticks[i],
                  "round " + std::to_string(i + 1) + " ticks " + std::to_string(rs[i].ticks) +
                      ", expected " + std::to_string(want_ticks[i]));
        c.require(std::abs(rs[i].minutes - want_minutes[i]) < 0.01,
                  "round " + std::to_string(i + 1) + " minutes off");
    }
    c.require(rs[0].ticks > rs[1].ticks && rs[1].ticks > rs[2].ticks,
              "crafting time must strictly decrease across rounds");
}

// ---- 8: success-only aggregation with N/A on zero successes -----------------------

void criterion_aggregation(Criterion& c) {
    auto mk = [](bool success, double health, std::int64_t ticks, int iters) {
        RunResult r;
        r.task_id = "t";
        r.success = success;
        r.health_remaining = health;
        r.has_health = true;
        r.ticks = ticks;
        r.minutes = ticks_to_minutes(ticks);
        r.llm_iters = iters;
        return r;
    };
    auto agg = aggregate({mk(true, 14.0, 100, 8), mk(true, 9.2, 200, 4), mk(true, 9.0, 300, 1)});
    c.require(agg.health && std::abs(agg.health->mean - 10.733) < 1e-3, "health mean off");
    c.require(agg.health && std::abs(agg.health->stddev - 2.312) < 1e-3, "health std off");
    c.require(agg.success_rate == "3 / 3", "success rate rendering off");

    auto mixed = aggregate({mk(true, 10.0, 100, 2), mk(false, 3.0, 999, 9)});
    c.require(mixed.minutes && std::abs(mixed.minutes->mean - ticks_to_minutes(100)) < 1e-12,
              "failures leaked into the minutes statistic");

    auto none = aggregate({mk(false, 0, 1, 1), mk(false, 0, 2, 2)});
    c.require(!none.health && !none.minutes && !none.llm_iters,
              "all-failure aggregate must carry no statistics");
    json j = aggregate_to_json(none);
    c.require(j["health"] == "N/A" && j["minutes"] == "N/A" && j["llm_iters"] == "N/A",
              "all-failure aggregate must render N/A");
}

// ---- 9: exploration reaches 30 distinct items; counters are monotone --------------

void criterion_aet(Criterion& c) {
    WorldConfig cfg = dense_config();
    cfg.resource_counts["oak_log"] = 48;
    cfg.resource_counts["iron_ore"] = 160;
    cfg.resource_counts["coal_ore"] = 160;
    cfg.resource_counts["diamond_ore"] = 16;
    World w(5, cfg, &test_fixture());
    w.set_peaceful(true);
    ScriptedBackend be =
        ScriptedBackend::from_json(load_json_file(data_path("scripts/aet_exploration.json")));
    TaskSpec spec;
    spec.id = "exploration";
    spec.kind = TaskKind::aet;
    spec.aet_budget = 80;
    std::vector<AetSeriesPoint> series;
    auto r = run_aet(spec, w, be, acc_index(), test_skills(), wide_agent(), &series);
    c.require(r.success, "exploration run ended in death");
    c.require(r.aet.distinct_items >= 30, "only " + std::to_string(r.aet.distinct_items) +
                                              " distinct items within 80 cycles");
    c.require(series.size() == 80, "expected one series point per cycle");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].distinct_items < series[i - 1].distinct_items) {
            c.require(false, "distinct-items counter decreased at cycle " + std::to_string(i + 1));
            break;
        }

    std::vector<std::string> published = {
        "oak_log", "stick", "wooden_sword", "crafting_table", "wooden_pickaxe", "stone_pickaxe",
        "oak_planks", "wheat_seeds", "dirt", "cobblestone", "raw_iron", "granite", "andesite",
        "cobbled_deepslate", "diorite", "diamond", "iron_pickaxe", "furnace", "cobblestone_wall",
        "coal", "iron_ingot", "iron_trapdoor", "dandelion", "azure_bluet", "poppy", "oxeye_daisy",
        "chest", "cobblestone_stairs", "raw_copper", "copper_ingot", "calcite", "copper_block",
        "birch_planks", "jungle_log", "arrow", "bone", "rotten_flesh"};
    c.require(distinct_items_replay(published) == 37, "published log must replay to 37");
}

// ---- 10: all eight daily tasks complete on the published skill paths --------------

void criterion_dpt(Criterion& c) {
    struct Expect {
        const char* goal;
        const char* script;
        std::vector<std::string> path;
    };
    const std::vector<Expect> expects = {
        {"Collect Seeds", "dpt_collect_seeds.json", {"collectSeeds"}},
        {"Hoe Farmland", "dpt_hoe_farmland.json", {"craftHoe", "hoeFarmland"}},
        {"Shear Sheep", "dpt_shear_sheep.json", {"craftShears", "shearSheep"}},
        {"Milk Cow", "dpt_milk_cow.json", {"craftBucket", "milkCow"}},
        {"Cook Meat", "dpt_cook_meat.json", {"killCow", "cookBeef"}},
        {"Obtain Leather", "dpt_obtain_leather.json", {"killCow"}},
        {"Make Sugar", "dpt_make_sugar.json", {"collectSugarCane", "makeSugar"}},
        {"Collect Water", "dpt_collect_water.json", {"craftBucket", "collectWater"}},
    };
    for (const auto& e : expects) {
        World w(7, dense_config(), &test_fixture());
        ScriptedBackend be = ScriptedBackend::from_json(
            load_json_file(data_path(std::string("scripts/") + e.script)));
        TaskSpec spec;
        spec.id = e.goal;
        spec.kind = TaskKind::dpt;
        spec.dpt_goal = e.goal;
        auto r = run_dpt(spec, w, be, acc_index(), test_skills(), wide_agent());
        c.require(r.success, std::string(e.goal) + " did not complete");
        c.require(r.trace == e.path, std::string(e.goal) + " took an unexpected skill path");
    }
}

// ---- 11: HTTP backend honors the chat-completions contract ------------------------

void criterion_http(Criterion& c) {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        int n = ++hits;
        json body = json::parse(req.body);
        std::string model = body.value("model", "");
        if (model == "flaky" && n <= 2) {
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
        json msg = {{"role", "assistant"},
                    {"content", "echo:" + body["messages"].back()["content"].get<std::string>()}};
        json reply;
        reply["choices"] = json::array({json{{"message", msg}}});
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    auto cfg_for = [&](const std::string& model) {
        HttpBackendConfig cfg;
        cfg.base_url = "http://127.0.0.1:" + std::to_string(port);
        cfg.model = model;
        cfg.sleep_on_retry = false;
        return cfg;
    };

    {
        HttpBackend be(cfg_for("ok"));
        c.require(be.complete({{Role::user, "hello"}}) == "echo:hello", "happy path failed");
    }
    {
        hits = 0;
        auto cfg = cfg_for("flaky");
        cfg.retries = 3;
        HttpBackend be(cfg);
        c.require(be.complete({{Role::user, "hi"}}) == "echo:hi", "retry path failed");
        c.require(hits == 3, "expected exactly 3 attempts for two 503s");
    }
    {
        hits = 0;
        auto cfg = cfg_for("denied");
        cfg.retries = 3;
        HttpBackend be(cfg);
        bool threw = false;
        try {
            be.complete({{Role::user, "hi"}});
        } catch (const BadStatusError&) {
            threw = true;
        }
        c.require(threw && hits == 1, "4xx must fail immediately without retries");
    }
    {
        HttpBackend be(cfg_for("no-choices"));
        bool threw = false;
        try {
            be.complete({{Role::user, "hi"}});
        } catch (const EmptyCompletionError&) {
            threw = true;
        }
        c.require(threw, "empty choices must raise EmptyCompletion");
    }
    {
        HttpBackendConfig cfg;
        cfg.base_url = "http://127.0.0.1:9";
        cfg.retries = 0;
        cfg.sleep_on_retry = false;
        cfg.timeout_seconds = 1;
        HttpBackend be(cfg);
        bool threw = false;
        try {
            be.complete({{Role::user, "hi"}});
        } catch (const TransportError&) {
            threw = true;
        }
        c.require(threw, "unreachable host must raise TransportError");
    }
    server.stop();
    listener.join();
}

}  // namespace

int main() {
    run_criterion("world-determinism", 60, criterion_determinism);
    run_criterion("skill-resolver-oracle", 60, criterion_resolver);
    run_criterion("retrieval-oracle", 0, criterion_retrieval);
    run_criterion("prompt-golden-files", 0, criterion_prompts);
    run_criterion("parser-corpus", 0, criterion_parsers);
    run_criterion("critic-oracle", 0, criterion_critic);
    run_criterion("lpt-replay", 0, criterion_lpt);
    run_criterion("aggregation", 0, criterion_aggregation);
    run_criterion("aet-exploration", 0, criterion_aet);
    run_criterion("dpt-daily-tasks", 120, criterion_dpt);
    run_criterion("http-backend-contract", 0, criterion_http);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
