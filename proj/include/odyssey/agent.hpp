#pragma once

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <odyssey/chat.hpp>
#include <odyssey/parsers.hpp>
#include <odyssey/prompts.hpp>
#include <odyssey/retrieval.hpp>
#include <odyssey/rng.hpp>
#include <odyssey/skills.hpp>
#include <odyssey/world.hpp>

namespace odyssey {

inline std::string fmt_fixed1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

inline PlannerObservation to_planner_observation(const Observation& o) {
    PlannerObservation p;
    p.biome = o.biome;
    p.time = o.time_of_day;
    p.nearby_blocks = join(o.nearby_blocks);
    p.recently_seen_blocks = join(o.recently_seen_blocks);
    std::vector<std::string> ents;
    for (const auto& e : o.nearby_entities) ents.push_back(e.species);
    p.nearby_entities = join(ents);
    p.health = fmt_fixed1(o.health) + "/20";
    p.hunger = fmt_fixed1(o.hunger) + "/20";
    p.position = "(" + std::to_string(o.position.x) + ", " + std::to_string(o.position.y) +
                 ", " + std::to_string(o.position.z) + ")";
    p.equipment = o.equipment.to_string();
    p.inventory = render_inventory(o.inventory);
    p.inventory_used = o.inventory_used;
    p.chests = o.chests;
    return p;
}

struct AgentConfig {
    std::size_t k = 5;                    // retrieval depth for skill selection
    double relevance_threshold = -1.0;    // top score below this skips execution
    bool use_query_context = false;       // enrich the retrieval query via Q&A
    bool no_recursion = false;            // DPT: prerequisites are not auto-resolved
    CompletionParams params{};
};

struct ActResult {
    bool acted = false;            // a skill was actually executed
    std::string failure;           // reason when acted == false
    ActorChoice choice;
    SkillOutcome outcome;
    std::vector<std::string> candidates;
    double top_score = 0.0;
    std::string query;
    std::string raw_response;
    std::string prompt_user;       // the user message shown to the actor
    int llm_calls = 0;
};

// One actor step: retrieve candidates, ask the backend to pick, execute.
// A malformed or out-of-candidates reply earns exactly one re-prompt.
inline ActResult act(const std::string& subgoal, const SkillIndex& index,
                     const SkillRegistry& registry, World& world, LLMBackend& backend,
                     const AgentConfig& cfg, const std::string& last_program = "",
                     const std::string& critique = "") {
    ActResult res;
    res.query = subgoal;
    if (cfg.use_query_context) {
        res.query = query_context(subgoal, &backend, build_query_context_prompt(subgoal));
        ++res.llm_calls;
    }
    std::size_t k = std::min(cfg.k, index.size());
    auto top = query_top_k(index, res.query, k);
    res.top_score = top.front().second;
    std::string programs;
    std::map<std::string, bool> allowed;
    for (const auto& [name, score] : top) {
        res.candidates.push_back(name);
        allowed[name] = true;
        programs += name + ": " + registry.spec(name).description + "\n";
    }
    if (!programs.empty()) programs.pop_back();

    if (cfg.relevance_threshold > -1.0 && res.top_score < cfg.relevance_threshold) {
        res.failure = "no relevant skill above threshold";
        return res;
    }

    auto messages = build_skill_selection_prompt(subgoal, programs, last_program, critique);
    res.prompt_user = messages.back().content;
    std::optional<ActorChoice> choice;
    for (int attempt = 0; attempt < 2 && !choice; ++attempt) {
        res.raw_response = backend.complete(messages, cfg.params);
        ++res.llm_calls;
        try {
            ActorChoice c = parse_actor(res.raw_response);
            if (!allowed.count(c.program)) {
                res.failure = "selected program not among candidates: " + c.program;
                messages.push_back({Role::assistant, res.raw_response});
                messages.push_back(
                    {Role::user, "Your selected program must be exactly one of the listed "
                                 "program names. Respond with valid JSON only."});
                continue;
            }
            choice = c;
        } catch (const std::exception& e) {
            res.failure = e.what();
            messages.push_back({Role::assistant, res.raw_response});
            messages.push_back({Role::user, "Respond with valid JSON only."});
        }
    }
    if (!choice) return res;  // failure reason already set

    res.failure.clear();
    res.choice = *choice;
    res.outcome = registry.execute(choice->program, world, cfg.no_recursion);
    res.acted = true;
    return res;
}

struct CriticizeResult {
    CriticVerdict verdict;
    std::string raw_response;
    int llm_calls = 0;
};

inline CriticizeResult criticize(const std::string& task, const SkillOutcome& outcome,
                                 const Observation& obs_after, LLMBackend& backend,
                                 const CompletionParams& params = {}) {
    CriticFields f;
    f.task = task;
    f.nearby_blocks = join(obs_after.nearby_blocks);
    std::vector<std::string> ents;
    for (const auto& e : obs_after.nearby_entities) ents.push_back(e.species);
    f.entities = join(ents);
    f.equipment = obs_after.equipment.to_string();
    f.chests = obs_after.chests;
    f.current_inventory = render_inventory(outcome.inventory_after);
    f.current_used = obs_after.inventory_used;
    f.last_inventory = render_inventory(outcome.inventory_before);
    f.last_used = static_cast<int>(outcome.inventory_before.size());
    f.chat_log = outcome.log.empty() ? "None" : join(outcome.log, " ");

    auto messages = build_critic_prompt(f);
    CriticizeResult res;
    for (int attempt = 0; attempt < 2; ++attempt) {
        res.raw_response = backend.complete(messages, params);
        ++res.llm_calls;
        try {
            res.verdict = parse_critic(res.raw_response);
            return res;
        } catch (const std::exception&) {
            messages.push_back({Role::assistant, res.raw_response});
            messages.push_back({Role::user, "Respond with valid JSON only."});
        }
    }
    throw ParseFailed("critic response unparseable after repair re-prompt");
}

// Reorders "quantity monster" entries by threat. The reply must be a
// permutation of the input; one re-prompt, then the input order stands.
inline std::vector<std::string> rerank_combat_order(const std::vector<std::string>& monsters,
                                                    LLMBackend& backend,
                                                    const CompletionParams& params = {},
                                                    int* llm_calls = nullptr) {
    if (monsters.empty()) throw std::invalid_argument("monster list must be non-empty");
    if (monsters.size() == 1) return monsters;
    auto messages = build_combat_order_prompt(monsters);
    auto is_permutation = [&](std::vector<std::string> v) {
        std::vector<std::string> want = monsters;
        std::sort(v.begin(), v.end());
        std::sort(want.begin(), want.end());
        return v == want;
    };
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::string raw = backend.complete(messages, params);
        if (llm_calls) ++*llm_calls;
        try {
            auto order = parse_monster_list(raw);
            if (is_permutation(order)) return order;
            messages.push_back({Role::assistant, raw});
            messages.push_back(
                {Role::user, "Your list must contain exactly the monsters I gave you, each "
                             "once, same formatting. Respond with valid JSON only."});
        } catch (const std::exception&) {
            messages.push_back({Role::assistant, raw});
            messages.push_back({Role::user, "Respond with valid JSON only."});
        }
    }
    return monsters;
}

enum class TerminalStatus { success, budget_exhausted, agent_dead };

inline const char* terminal_name(TerminalStatus t) {
    switch (t) {
        case TerminalStatus::success: return "success";
        case TerminalStatus::budget_exhausted: return "budget_exhausted";
        default: return "agent_dead";
    }
}

struct EpisodeConfig {
    PlannerMode mode = PlannerMode::aet;
    std::string goal;                       // DPT ultimate goal / LPT monster list
    std::string reference;                  // DPT reference line
    int budget = 80;                        // max plan-act-critique cycles
    AgentConfig agent{};
    bool stop_on_death = true;
    std::string log_path;                   // JSONL episode log; empty disables
    std::function<bool(const World&)> goal_predicate;  // empty = run out budget
    std::function<void(int cycle)> on_cycle_end;       // metrics sampling hook
    LptRoundInfo lpt_info{};                // carried feedback for LPT planning
};

constexpr std::size_t kFailedTaskMemoryCap = 50;

struct EpisodeState {
    std::vector<std::string> completed_tasks;
    std::deque<std::string> failed_tasks;           // insertion order, capped
    std::map<std::string, int> failure_counts;
    std::vector<std::string> pending_subgoals;      // LPT queue
    std::string last_critique;
    std::string last_program;
    std::string last_logs;

    void record_failure(const std::string& task) {
        if (++failure_counts[task] == 1) {
            failed_tasks.push_back(task);
            if (failed_tasks.size() > kFailedTaskMemoryCap) {
                failure_counts.erase(failed_tasks.front());
                failed_tasks.pop_front();
            }
        }
    }

    std::string completed_rendered() const { return join(completed_tasks); }

    // Only tasks failed more than three times count as "too hard".
    std::string too_hard_rendered() const {
        std::vector<std::string> hard;
        for (const auto& t : failed_tasks)
            if (failure_counts.at(t) > 3) hard.push_back(t);
        return join(hard);
    }
};

struct EpisodeResult {
    TerminalStatus terminal = TerminalStatus::budget_exhausted;
    int llm_iters = 0;  // completed plan-act-critique cycles
    int planner_calls = 0;
    int actor_calls = 0;
    int critic_calls = 0;
    std::int64_t ticks = 0;         // world clock consumed by the episode
    std::int64_t action_ticks = 0;  // mining/crafting/smelting share
    std::vector<std::string> skill_trace;  // executed skills, in order
    EpisodeState state;
};

inline EpisodeResult run_episode(const EpisodeConfig& cfg, World& world, LLMBackend& backend,
                                 const SkillIndex& index, const SkillRegistry& registry) {
    if (cfg.budget < 1) throw std::invalid_argument("budget must be >= 1");
    EpisodeResult res;
    std::int64_t clock_start = world.clock();
    std::int64_t action_start = world.action_ticks();
    int deaths_start = world.deaths();
    std::ofstream log;
    if (!cfg.log_path.empty()) log.open(cfg.log_path);

    if (cfg.goal_predicate && cfg.goal_predicate(world)) {
        res.terminal = TerminalStatus::success;
        return res;
    }

    for (int cycle = 1; cycle <= cfg.budget; ++cycle) {
        // -- plan ------------------------------------------------------------
        std::string task;
        std::string planner_raw;
        std::string prompt_user;
        bool plan_ok = true;
        PlannerObservation pobs = to_planner_observation(world.observe());
        pobs.reference = cfg.reference;
        pobs.logs = cfg.mode == PlannerMode::dpt ? res.state.last_logs : pobs.logs;
        pobs.completed_tasks = res.state.completed_rendered();
        pobs.failed_tasks = res.state.too_hard_rendered();

        if (cfg.mode == PlannerMode::lpt) {
            if (res.state.pending_subgoals.empty()) {
                LptRoundInfo info = cfg.lpt_info;
                if (!res.state.last_critique.empty()) info.critique = res.state.last_critique;
                auto messages = build_lpt_planner_prompt(info);
                prompt_user = messages.back().content;
                planner_raw = backend.complete(messages, cfg.agent.params);
                ++res.planner_calls;
                try {
                    auto plan = parse_planner(PlannerMode::lpt, planner_raw);
                    res.state.pending_subgoals = plan.subgoals;
                } catch (const std::exception&) {
                    messages.push_back({Role::assistant, planner_raw});
                    messages.push_back({Role::user, "Respond with valid JSON only."});
                    planner_raw = backend.complete(messages, cfg.agent.params);
                    ++res.planner_calls;
                    try {
                        auto plan = parse_planner(PlannerMode::lpt, planner_raw);
                        res.state.pending_subgoals = plan.subgoals;
                    } catch (const std::exception&) {
                        plan_ok = false;
                    }
                }
            }
            if (plan_ok && !res.state.pending_subgoals.empty()) {
                task = res.state.pending_subgoals.front();
                res.state.pending_subgoals.erase(res.state.pending_subgoals.begin());
            } else {
                plan_ok = false;
            }
        } else {
            auto messages = cfg.mode == PlannerMode::dpt
                                ? build_dpt_planner_prompt(cfg.goal, pobs)
                                : build_aet_planner_prompt(pobs);
            prompt_user = messages.back().content;
            planner_raw = backend.complete(messages, cfg.agent.params);
            ++res.planner_calls;
            try {
                auto plan = parse_planner(cfg.mode, planner_raw);
                task = plan.task;
            } catch (const std::exception&) {
                // one repair re-prompt
                messages.push_back({Role::assistant, planner_raw});
                messages.push_back({Role::user, "Respond with valid JSON only."});
                planner_raw = backend.complete(messages, cfg.agent.params);
                ++res.planner_calls;
                try {
                    auto plan = parse_planner(cfg.mode, planner_raw);
                    task = plan.task;
                } catch (const std::exception&) {
                    plan_ok = false;
                }
            }
        }

        // -- act + criticize ---------------------------------------------------
        bool cycle_success = false;
        std::string skill;
        std::string critique;
        std::string raw_response = planner_raw;
        std::int64_t cycle_ticks = 0;
        if (plan_ok) {
            ActResult a = act(task, index, registry, world, backend, cfg.agent,
                              res.state.last_program, res.state.last_critique);
            res.actor_calls += a.llm_calls;
            raw_response = a.raw_response.empty() ? planner_raw : a.raw_response;
            if (a.acted) {
                skill = a.choice.program;
                res.state.last_program = skill;
                res.skill_trace.push_back(skill);
                for (std::size_t i = 1; i < a.outcome.skills_invoked.size(); ++i)
                    res.skill_trace.push_back(a.outcome.skills_invoked[i]);
                res.state.last_logs = a.outcome.log.empty() ? "None" : join(a.outcome.log, " ");
                cycle_ticks = a.outcome.ticks_consumed;
                try {
                    CriticizeResult c =
                        criticize(task, a.outcome, world.observe(), backend, cfg.agent.params);
                    res.critic_calls += c.llm_calls;
                    cycle_success = c.verdict.success;
                    critique = c.verdict.critique;
                } catch (const ParseFailed&) {
                    res.critic_calls += 2;
                    cycle_success = false;
                    critique = "critic response unparseable";
                }
            } else {
                critique = a.failure;
            }
        } else {
            critique = "planner output unparseable";
        }

        if (cycle_success) {
            res.state.completed_tasks.push_back(task);
            res.state.last_critique.clear();
        } else if (!task.empty()) {
            res.state.record_failure(task);
            res.state.last_critique = critique;
        } else {
            res.state.last_critique = critique;
        }
        ++res.llm_iters;

        if (log.is_open()) {
            char hash[24];
            std::snprintf(hash, sizeof(hash), "%016llx",
                          static_cast<unsigned long long>(fnv1a64(prompt_user.data(), prompt_user.size())));
            json rec = {{"cycle", cycle},          {"prompt_hash", hash},
                        {"raw_response", raw_response}, {"parsed", task},
                        {"skill", skill},          {"outcome_success", cycle_success},
                        {"ticks", cycle_ticks},    {"critique", critique}};
            log << rec.dump() << "\n";
        }

        if (cfg.on_cycle_end) cfg.on_cycle_end(cycle);
        if (cfg.stop_on_death && world.deaths() > deaths_start) {
            res.terminal = TerminalStatus::agent_dead;
            break;
        }
        if (cfg.goal_predicate && cfg.goal_predicate(world)) {
            res.terminal = TerminalStatus::success;
            break;
        }
    }
    res.ticks = world.clock() - clock_start;
    res.action_ticks = world.action_ticks() - action_start;
    return res;
}

}  // namespace odyssey
