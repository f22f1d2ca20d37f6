#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <odyssey/agent.hpp>

namespace odyssey {

enum class TaskKind { lpt_single, lpt_multi, dpt, aet };

inline const char* task_kind_name(TaskKind k) {
    switch (k) {
        case TaskKind::lpt_single: return "LPT_single";
        case TaskKind::lpt_multi: return "LPT_multi";
        case TaskKind::dpt: return "DPT";
        default: return "AET";
    }
}

struct LptScenario {
    std::vector<std::string> monsters;  // "quantity species", e.g. "1 skeleton"
    int arena_h = 5;
    int arena_r = 16;
    int arena_y = 64;
    int rounds = 1;
};

struct TaskSpec {
    std::string id;
    TaskKind kind = TaskKind::dpt;
    LptScenario lpt{};
    std::string dpt_goal;       // one of the eight task names
    int aet_budget = 80;
    int dpt_budget = 12;
    int repetitions = 1;
    std::uint64_t seed_base = 1;
};

struct AETMetrics {
    int distinct_items = 0;
    int items_crafted_total = 0;
    int recipes_and_advancements = 0;
    double distance_traveled = 0;
};

struct RunResult {
    std::string task_id;
    int rep = 0;
    int round = 1;
    bool success = false;
    double health_remaining = 0;  // meaningful only when has_health
    bool has_health = false;
    std::int64_t ticks = 0;
    double minutes = 0;  // ticks * 0.05 / 60
    int llm_iters = 0;
    std::string terminal;
    std::vector<std::string> trace;  // executed skills, in order
    AETMetrics aet{};
    bool has_aet = false;
};

inline double ticks_to_minutes(std::int64_t ticks) { return double(ticks) * 0.05 / 60.0; }

// ---- aggregation --------------------------------------------------------------

struct Stat {
    double mean = 0;
    double stddev = 0;  // population standard deviation
};

struct AggregateStats {
    std::string task_id;
    int successes = 0;
    int total = 0;
    std::string success_rate;  // "s / n"
    std::optional<Stat> health;
    std::optional<Stat> minutes;
    std::optional<Stat> llm_iters;
};

inline Stat mean_std(const std::vector<double>& xs) {
    Stat s;
    for (double x : xs) s.mean += x;
    s.mean /= double(xs.size());
    double var = 0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / double(xs.size()));
    return s;
}

// Success-only mean/std per the benchmark protocol; all-failure tasks report
// no statistics at all (rendered "N/A" downstream).
inline AggregateStats aggregate(const std::vector<RunResult>& results) {
    if (results.empty()) throw std::invalid_argument("cannot aggregate zero results");
    AggregateStats agg;
    agg.task_id = results.front().task_id;
    for (const auto& r : results)
        if (r.task_id != agg.task_id)
            throw std::invalid_argument("results must share a task id");
    std::vector<double> health, minutes, iters;
    for (const auto& r : results) {
        ++agg.total;
        if (!r.success) continue;
        ++agg.successes;
        minutes.push_back(r.minutes);
        iters.push_back(double(r.llm_iters));
        if (r.has_health) health.push_back(r.health_remaining);
    }
    agg.success_rate = std::to_string(agg.successes) + " / " + std::to_string(agg.total);
    if (agg.successes > 0) {
        agg.minutes = mean_std(minutes);
        agg.llm_iters = mean_std(iters);
        if (!health.empty()) agg.health = mean_std(health);
    }
    return agg;
}

// ---- long-term planning task ---------------------------------------------------

inline std::pair<int, std::string> parse_monster_entry(const std::string& entry) {
    std::size_t sp = entry.find(' ');
    if (sp == std::string::npos) throw std::invalid_argument("monster entry needs a quantity");
    int n = std::stoi(entry.substr(0, sp));
    return {n, entry.substr(sp + 1)};
}

// Respawn, build the sealed arena, and provision raw resources inside it so
// the crafting phase never has to leave the arena.
inline void setup_combat(World& world, const LptScenario& sc) {
    world.respawn_and_clear();
    auto r = world.combat_env(sc.arena_h, sc.arena_r, sc.arena_y);
    if (!r.ok) throw std::runtime_error("arena setup failed: " + r.message);
    world.scatter_blocks("oak_log", 24, 3, sc.arena_r - 2);
    world.scatter_blocks("iron_ore", 160, 3, sc.arena_r - 2);
    world.scatter_blocks("coal_ore", 160, 3, sc.arena_r - 2);
}

struct LptOptions {
    AgentConfig agent{};
    std::string log_path;  // per-round suffix appended when set
};

// Multi-round combat protocol: plan -> craft -> rerank -> fight; equipment,
// health, and critique from round n feed round n+1's planner prompt.
inline std::vector<RunResult> run_lpt(const TaskSpec& spec, World& world, LLMBackend& backend,
                                      const SkillIndex& index, const SkillRegistry& registry,
                                      const LptOptions& opt = {}) {
    std::vector<RunResult> results;
    LptRoundInfo info;
    info.monster = join(spec.lpt.monsters);
    for (int round = 1; round <= spec.lpt.rounds; ++round) {
        RunResult rr;
        rr.task_id = spec.id;
        rr.round = round;
        rr.has_health = true;

        setup_combat(world, spec.lpt);
        int deaths_before = world.deaths();

        // Plan the crafting subgoal list.
        auto messages = build_lpt_planner_prompt(info);
        std::string raw = backend.complete(messages, opt.agent.params);
        std::vector<std::string> subgoals;
        try {
            subgoals = parse_planner(PlannerMode::lpt, raw).subgoals;
        } catch (const std::exception&) {
            messages.push_back({Role::assistant, raw});
            messages.push_back({Role::user, "Respond with valid JSON only."});
            raw = backend.complete(messages, opt.agent.params);
            try {
                subgoals = parse_planner(PlannerMode::lpt, raw).subgoals;
            } catch (const std::exception&) {
                subgoals.clear();
            }
        }

        // Crafting phase, measured in action ticks (mining/crafting/smelting).
        std::int64_t action_before = world.action_ticks();
        std::string last_program, last_critique;
        bool crafting_ok = !subgoals.empty();
        for (const auto& subgoal : subgoals) {
            ActResult a = act(subgoal, index, registry, world, backend, opt.agent,
                              last_program, last_critique);
            ++rr.llm_iters;
            if (!a.acted || !a.outcome.success) {
                crafting_ok = false;
                break;
            }
            last_program = a.choice.program;
            for (const auto& s : a.outcome.skills_invoked) rr.trace.push_back(s);
            try {
                CriticizeResult c =
                    criticize(subgoal, a.outcome, world.observe(), backend, opt.agent.params);
                last_critique = c.verdict.critique;
            } catch (const ParseFailed&) {
                last_critique.clear();
            }
        }
        world.equip_best("sword");
        world.equip_best("armor");
        rr.ticks = world.action_ticks() - action_before;
        rr.minutes = ticks_to_minutes(rr.ticks);
        std::string equipment_after_crafting = world.agent().equipment.to_string();

        // Combat phase: summon per entry, arm, engage in reranked order.
        auto order = rerank_combat_order(spec.lpt.monsters, backend, opt.agent.params);
        std::map<std::string, int> summoned;
        for (const auto& entry : order) {
            auto [n, species] = parse_monster_entry(entry);
            world.summon_mob(n, 6, species);
            summoned[species] += n;
        }
        world.arm_hostiles();
        bool agent_died = false;
        int swings_left = 4096;  // bounded even if the loadout cannot win
        for (const auto& entry : order) {
            auto [n, species] = parse_monster_entry(entry);
            (void)n;
            while (!agent_died && swings_left-- > 0) {
                auto ids = world.entities_by_distance(species);
                if (ids.empty()) break;
                auto res = world.attack(ids.front());
                if (!res.ok || world.deaths() > deaths_before) agent_died = true;
            }
        }
        bool all_dead = true;
        for (const auto& [species, n] : summoned)
            if (!world.entities_by_distance(species).empty()) all_dead = false;
        world.set_peaceful(true);

        rr.success = crafting_ok && all_dead && !agent_died;
        rr.health_remaining = rr.success ? world.agent().health : 0.0;
        rr.terminal = agent_died ? "agent_dead" : (rr.success ? "success" : "budget_exhausted");
        results.push_back(rr);

        // Feedback for the next round's planner prompt.
        info.equipment = equipment_after_crafting;
        info.health = fmt_fixed1(rr.health_remaining) + " / 20";
        info.critique =
            rr.success
                ? "Victory with the plan [" + join(subgoals) +
                      "]. Trim the subgoal list if you can win with cheaper equipment in "
                      "less time."
                : "Defeat with the plan [" + join(subgoals) +
                      "]. Upgrade the equipment quality in the subgoal list.";
    }
    return results;
}

// ---- dynamic-immediate planning task -------------------------------------------

struct DptTask {
    std::string goal;       // planner's ultimate goal text
    std::string reference;  // one-line task hint
    std::map<std::string, int> starter_inventory;
    std::function<bool(const World&)> predicate;
};

inline const std::map<std::string, DptTask>& dpt_tasks() {
    static const std::map<std::string, DptTask> tasks = {
        {"Collect Seeds",
         {"collect seeds", "break tall grass to gather seeds", {},
          [](const World& w) { return w.agent().inventory.count_of("wheat_seeds") >= 1; }}},
        {"Hoe Farmland",
         {"hoe farmland", "craft a hoe, then till ground near water",
          {{"oak_planks", 4}, {"stick", 4}, {"crafting_table", 1}},
          [](const World& w) { return w.nearest_block("farmland").has_value(); }}},
        {"Shear Sheep",
         {"shear sheep", "craft shears, then shear a nearby sheep",
          {{"iron_ingot", 2}, {"crafting_table", 1}},
          [](const World& w) { return w.agent().inventory.count_of("white_wool") >= 1; }}},
        {"Milk Cow",
         {"milk cow", "craft a bucket, then milk a nearby cow",
          {{"iron_ingot", 3}, {"crafting_table", 1}},
          [](const World& w) { return w.agent().inventory.count_of("milk_bucket") >= 1; }}},
        {"Cook Meat",
         {"cook meat", "kill a nearby animal, then cook its meat",
          {{"furnace", 1}, {"coal", 4}, {"wooden_sword", 1}},
          [](const World& w) {
              for (const char* k :
                   {"cooked_beef", "cooked_porkchop", "cooked_chicken", "cooked_mutton"})
                  if (w.agent().inventory.count_of(k) >= 1) return true;
              return false;
          }}},
        {"Obtain Leather",
         {"obtain leather", "kill a cow to collect leather", {{"wooden_sword", 1}},
          [](const World& w) { return w.agent().inventory.count_of("leather") >= 1; }}},
        {"Make Sugar",
         {"make sugar", "collect sugar cane, then craft sugar", {},
          [](const World& w) { return w.agent().inventory.count_of("sugar") >= 1; }}},
        {"Collect Water",
         {"collect water", "craft a bucket, then fill it with water",
          {{"iron_ingot", 3}, {"crafting_table", 1}},
          [](const World& w) { return w.agent().inventory.count_of("water_bucket") >= 1; }}},
    };
    return tasks;
}

inline RunResult run_dpt(const TaskSpec& spec, World& world, LLMBackend& backend,
                         const SkillIndex& index, const SkillRegistry& registry,
                         AgentConfig agent = {}, const std::string& log_path = {}) {
    auto it = dpt_tasks().find(spec.dpt_goal);
    if (it == dpt_tasks().end())
        throw std::invalid_argument("unknown DPT task: " + spec.dpt_goal);
    const DptTask& task = it->second;
    for (const auto& [kind, n] : task.starter_inventory)
        world.agent_mut().inventory.add(kind, n);

    EpisodeConfig ep;
    ep.mode = PlannerMode::dpt;
    ep.goal = task.goal;
    ep.reference = task.reference;
    ep.budget = spec.dpt_budget;
    agent.no_recursion = true;  // the planner must propose prerequisite steps itself
    ep.agent = agent;
    ep.goal_predicate = task.predicate;
    ep.log_path = log_path;

    std::int64_t clock_before = world.clock();
    EpisodeResult er = run_episode(ep, world, backend, index, registry);

    RunResult rr;
    rr.task_id = spec.id;
    rr.success = er.terminal == TerminalStatus::success;
    rr.ticks = world.clock() - clock_before;
    rr.minutes = ticks_to_minutes(rr.ticks);
    rr.llm_iters = er.llm_iters;
    rr.terminal = terminal_name(er.terminal);
    rr.trace = er.skill_trace;
    return rr;
}

// ---- autonomous exploration task -----------------------------------------------

struct AetSeriesPoint {
    int cycle;
    int distinct_items;
    int items_crafted_total;
    int recipes_and_advancements;
    double distance_traveled;
};

inline RunResult run_aet(const TaskSpec& spec, World& world, LLMBackend& backend,
                         const SkillIndex& index, const SkillRegistry& registry,
                         AgentConfig agent = {}, std::vector<AetSeriesPoint>* series = nullptr,
                         const std::string& log_path = {}) {
    EpisodeConfig ep;
    ep.mode = PlannerMode::aet;
    ep.budget = spec.aet_budget;
    ep.agent = agent;
    ep.log_path = log_path;
    ep.stop_on_death = true;
    if (series)
        ep.on_cycle_end = [&](int cycle) {
            series->push_back({cycle, int(world.items_ever_held().size()),
                               world.items_crafted_total(), world.recipes_and_advancements(),
                               world.distance_traveled()});
        };

    std::int64_t clock_before = world.clock();
    EpisodeResult er = run_episode(ep, world, backend, index, registry);

    RunResult rr;
    rr.task_id = spec.id;
    rr.success = er.terminal != TerminalStatus::agent_dead;
    rr.ticks = world.clock() - clock_before;
    rr.minutes = ticks_to_minutes(rr.ticks);
    rr.llm_iters = er.llm_iters;
    rr.terminal = terminal_name(er.terminal);
    rr.trace = er.skill_trace;
    rr.has_aet = true;
    rr.aet = {int(world.items_ever_held().size()), world.items_crafted_total(),
              world.recipes_and_advancements(), world.distance_traveled()};
    return rr;
}

// Replays an item-acquisition log through the distinct-items counter.
inline int distinct_items_replay(const std::vector<std::string>& items) {
    std::set<std::string> seen(items.begin(), items.end());
    return int(seen.size());
}

// ---- suite orchestration --------------------------------------------------------

using BackendFactory = std::function<std::unique_ptr<LLMBackend>()>;

inline std::vector<RunResult> run_task(const TaskSpec& spec, const Fixture& fixture,
                                       const WorldConfig& world_cfg, const BackendFactory& make,
                                       const SkillIndex& index, const SkillRegistry& registry,
                                       AgentConfig agent = {}) {
    std::vector<std::vector<RunResult>> per_rep(spec.repetitions);
    auto run_one = [&](int rep) {
        World world(spec.seed_base + std::uint64_t(rep), world_cfg, &fixture);
        auto backend = make();
        std::vector<RunResult> out;
        switch (spec.kind) {
            case TaskKind::lpt_single:
            case TaskKind::lpt_multi: {
                LptOptions opt;
                opt.agent = agent;
                out = run_lpt(spec, world, *backend, index, registry, opt);
                break;
            }
            case TaskKind::dpt:
                out.push_back(run_dpt(spec, world, *backend, index, registry, agent));
                break;
            case TaskKind::aet:
                out.push_back(run_aet(spec, world, *backend, index, registry, agent));
                break;
        }
        for (auto& r : out) r.rep = rep;
        per_rep[rep] = std::move(out);
    };
    if (spec.repetitions == 1) {
        run_one(0);
    } else {
        std::vector<std::thread> workers;
        for (int rep = 0; rep < spec.repetitions; ++rep) workers.emplace_back(run_one, rep);
        for (auto& w : workers) w.join();
    }
    std::vector<RunResult> all;
    for (auto& v : per_rep) all.insert(all.end(), v.begin(), v.end());
    return all;
}

// ---- result serialization --------------------------------------------------------

inline void write_results_csv(std::ostream& os, const std::vector<RunResult>& results) {
    os << "task_id,rep,round,success,health_remaining,ticks,minutes,llm_iters,terminal\n";
    for (const auto& r : results) {
        char minutes[32];
        std::snprintf(minutes, sizeof(minutes), "%.4f", r.minutes);
        os << r.task_id << "," << r.rep << "," << r.round << "," << (r.success ? 1 : 0) << ","
           << (r.has_health ? fmt_fixed1(r.health_remaining) : "") << "," << r.ticks << ","
           << minutes << "," << r.llm_iters << "," << r.terminal << "\n";
    }
}

inline json aggregate_to_json(const AggregateStats& agg) {
    json j;
    j["task_id"] = agg.task_id;
    j["success_rate"] = agg.success_rate;
    auto put = [&](const char* key, const std::optional<Stat>& s) {
        if (s)
            j[key] = {{"mean", s->mean}, {"std", s->stddev}};
        else
            j[key] = "N/A";
    };
    put("health", agg.health);
    put("minutes", agg.minutes);
    put("llm_iters", agg.llm_iters);
    return j;
}

inline void write_aet_series_csv(std::ostream& os, const std::vector<AetSeriesPoint>& series) {
    os << "cycle,distinct_items,items_crafted_total,recipes_and_advancements,distance_traveled\n";
    for (const auto& p : series)
        os << p.cycle << "," << p.distinct_items << "," << p.items_crafted_total << ","
           << p.recipes_and_advancements << "," << p.distance_traveled << "\n";
}

}  // namespace odyssey
