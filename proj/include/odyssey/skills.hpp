#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "odyssey/world.hpp"

namespace odyssey {

enum class SkillKind { primitive, compositional };

enum class SkillFamily {
    mineX,
    craftX,
    smeltX,
    collectX,
    makeX,
    cookX,
    plantX,
    breedX,
    killX,
    placeX,
    special,
    operational_primitive,
    spatial_primitive,
};

inline const char* family_name(SkillFamily f) {
    switch (f) {
        case SkillFamily::mineX: return "mineX";
        case SkillFamily::craftX: return "craftX";
        case SkillFamily::smeltX: return "smeltX";
        case SkillFamily::collectX: return "collectX";
        case SkillFamily::makeX: return "makeX";
        case SkillFamily::cookX: return "cookX";
        case SkillFamily::plantX: return "plantX";
        case SkillFamily::breedX: return "breedX";
        case SkillFamily::killX: return "killX";
        case SkillFamily::placeX: return "placeX";
        case SkillFamily::special: return "special";
        case SkillFamily::operational_primitive: return "operational_primitive";
        default: return "spatial_primitive";
    }
}

inline SkillFamily family_from(const std::string& s) {
    static const std::map<std::string, SkillFamily> m = {
        {"mineX", SkillFamily::mineX},
        {"craftX", SkillFamily::craftX},
        {"smeltX", SkillFamily::smeltX},
        {"collectX", SkillFamily::collectX},
        {"makeX", SkillFamily::makeX},
        {"cookX", SkillFamily::cookX},
        {"plantX", SkillFamily::plantX},
        {"breedX", SkillFamily::breedX},
        {"killX", SkillFamily::killX},
        {"placeX", SkillFamily::placeX},
        {"special", SkillFamily::special},
        {"operational_primitive", SkillFamily::operational_primitive},
        {"spatial_primitive", SkillFamily::spatial_primitive},
    };
    auto it = m.find(s);
    if (it == m.end()) throw std::runtime_error("unknown skill family: " + s);
    return it->second;
}

// Inventory/equipment count threshold. When the count is short:
// consumed items are produced in bulk via the remedy (demand-propagated),
// presence items (tools, stations) get a single remedy run.
struct Prerequisite {
    std::string item;
    int count = 1;
    std::string remedy;
    bool consumed = false;
};

struct SkillOp {
    std::string op;
    std::string arg;
    int count = 1;
};

struct SkillSpec {
    std::string name;
    SkillKind kind = SkillKind::compositional;
    SkillFamily family = SkillFamily::special;
    std::string description;
    std::vector<Prerequisite> prerequisites;
    std::vector<SkillOp> body;
    ItemStackSpec produces{"", 0};  // per body run; empty kind = nothing countable
    std::string fail_message;       // reported when prerequisites are unmet and
                                    // recursion is disabled
};

struct PlanStep {
    std::string skill;
    int runs = 1;
};

struct SkillOutcome {
    bool success = false;
    std::vector<std::string> log;
    std::map<std::string, int> inventory_before;
    std::map<std::string, int> inventory_after;
    std::int64_t ticks_consumed = 0;
    std::vector<std::string> skills_invoked;
};

class SkillRegistry {
public:
    void register_skill(SkillSpec spec) {
        if (skills_.count(spec.name))
            throw std::runtime_error("duplicate skill name: " + spec.name);
        for (const auto& p : spec.prerequisites)
            if (p.remedy != spec.name && !skills_.count(p.remedy))
                throw std::runtime_error("dangling remedy '" + p.remedy + "' in skill " +
                                         spec.name);
        if (spec.kind == SkillKind::primitive &&
            (!spec.prerequisites.empty() || spec.body.size() != 1))
            throw std::runtime_error("primitive skill must have a single-op body and no "
                                     "prerequisites: " + spec.name);
        order_.push_back(spec.name);
        skills_[spec.name] = std::move(spec);
    }

    bool contains(const std::string& name) const { return skills_.count(name) != 0; }

    const SkillSpec& spec(const std::string& name) const {
        auto it = skills_.find(name);
        if (it == skills_.end()) throw std::runtime_error("unknown skill: " + name);
        return it->second;
    }

    std::size_t size() const { return skills_.size(); }

    std::vector<std::pair<std::string, std::string>> descriptions() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& name : order_) out.push_back({name, skills_.at(name).description});
        return out;
    }

    // Demand-propagated plan: a topological order of the unmet-prerequisite
    // subgraph with per-skill run counts sized so every consumed input is
    // produced before its consumer. Shared prerequisites are deduplicated;
    // sibling order follows prerequisite declaration order.
    std::vector<PlanStep> resolve(const std::string& name,
                                  const std::map<std::string, int>& have) const {
        if (!skills_.count(name)) throw std::runtime_error("unknown skill: " + name);
        std::map<std::string, int> virt = have;
        std::vector<PlanStep> plan;
        std::map<std::string, std::size_t> index;
        std::set<std::string> stack;
        visit(name, 1, virt, plan, index, stack);
        reorder_producers_first(plan, index);
        return plan;
    }

    // Runs the resolved plan against the world. With no_recursion set, unmet
    // prerequisites fail the skill instead of recursing.
    SkillOutcome execute(const std::string& name, World& world,
                         bool no_recursion = false) const {
        const SkillSpec& s = spec(name);
        SkillOutcome out;
        out.inventory_before = world.agent().inventory.summary();
        std::int64_t clock_before = world.clock();

        if (no_recursion) {
            auto have = counts_with_equipment(world);
            for (const auto& p : s.prerequisites) {
                if (have[p.item] < p.count) {
                    out.log.push_back(!s.fail_message.empty()
                                          ? s.fail_message
                                          : "No " + p.item + " in inventory. " +
                                                "Complete " + p.remedy + " first!");
                    out.inventory_after = out.inventory_before;
                    return out;
                }
            }
            out.skills_invoked.push_back(name);
            bool ok = run_body(s, world, out);
            out.success = ok;
            out.inventory_after = world.agent().inventory.summary();
            out.ticks_consumed = world.clock() - clock_before;
            return out;
        }

        std::vector<PlanStep> plan;
        try {
            plan = resolve(name, counts_with_equipment(world));
        } catch (const std::exception& e) {
            out.log.push_back(e.what());
            out.inventory_after = out.inventory_before;
            return out;
        }
        bool ok = true;
        for (const auto& step : plan) {
            const SkillSpec& sp = spec(step.skill);
            out.skills_invoked.push_back(step.skill);
            for (int r = 0; r < step.runs && ok; ++r) ok = run_body(sp, world, out);
            if (!ok) break;
        }
        out.success = ok;
        out.inventory_after = world.agent().inventory.summary();
        out.ticks_consumed = world.clock() - clock_before;
        return out;
    }

    static std::map<std::string, int> counts_with_equipment(const World& world) {
        auto have = world.agent().inventory.summary();
        for (const auto& slot : world.agent().equipment.slots)
            if (slot) have[*slot] += 1;
        return have;
    }

    static SkillRegistry load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open skill fixture: " + path);
        return from_json(json::parse(in));
    }

    static SkillRegistry from_json(const json& j) {
        SkillRegistry reg;
        for (const auto& js : j.at("skills")) {
            SkillSpec s;
            s.name = js.at("name").get<std::string>();
            s.kind = js.at("kind").get<std::string>() == "primitive" ? SkillKind::primitive
                                                                     : SkillKind::compositional;
            s.family = family_from(js.at("family").get<std::string>());
            s.description = js.at("description").get<std::string>();
            if (js.contains("prerequisites"))
                for (const auto& jp : js.at("prerequisites"))
                    s.prerequisites.push_back({jp.at("item").get<std::string>(),
                                               jp.value("count", 1),
                                               jp.at("remedy").get<std::string>(),
                                               jp.value("consumed", false)});
            for (const auto& jo : js.at("body"))
                s.body.push_back({jo.at("op").get<std::string>(), jo.value("arg", ""),
                                  jo.value("count", 1)});
            if (js.contains("produces"))
                s.produces = {js.at("produces").at("kind").get<std::string>(),
                              js.at("produces").at("count").get<int>()};
            s.fail_message = js.value("fail_message", "");
            reg.register_skill(std::move(s));
        }
        return reg;
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& name : order_) {
            const SkillSpec& s = skills_.at(name);
            json js;
            js["name"] = s.name;
            js["kind"] = s.kind == SkillKind::primitive ? "primitive" : "compositional";
            js["family"] = family_name(s.family);
            js["description"] = s.description;
            json jp = json::array();
            for (const auto& p : s.prerequisites)
                jp.push_back({{"item", p.item},
                              {"count", p.count},
                              {"remedy", p.remedy},
                              {"consumed", p.consumed}});
            js["prerequisites"] = jp;
            json jb = json::array();
            for (const auto& o : s.body)
                jb.push_back({{"op", o.op}, {"arg", o.arg}, {"count", o.count}});
            js["body"] = jb;
            if (!s.produces.kind.empty())
                js["produces"] = {{"kind", s.produces.kind}, {"count", s.produces.count}};
            if (!s.fail_message.empty()) js["fail_message"] = s.fail_message;
            arr.push_back(js);
        }
        return json{{"schema_version", 1}, {"skills", arr}};
    }

private:
    // When a later consumer raises the run count of an already-planned skill,
    // the extra remedies it needs are emitted after that skill's slot. A stable
    // topological pass moves every planned remedy ahead of its consumers; plans
    // that are already admissible come back unchanged.
    void reorder_producers_first(std::vector<PlanStep>& plan,
                                 const std::map<std::string, std::size_t>& index) const {
        std::size_t n = plan.size();
        std::vector<std::set<std::size_t>> out(n);
        std::vector<int> indeg(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& p : spec(plan[i].skill).prerequisites) {
                auto it = index.find(p.remedy);
                if (it == index.end() || it->second == i) continue;
                if (out[it->second].insert(i).second) ++indeg[i];
            }
        std::set<std::size_t> ready;
        for (std::size_t i = 0; i < n; ++i)
            if (indeg[i] == 0) ready.insert(i);
        std::vector<PlanStep> sorted;
        sorted.reserve(n);
        while (!ready.empty()) {
            std::size_t i = *ready.begin();
            ready.erase(ready.begin());
            sorted.push_back(plan[i]);
            for (std::size_t j : out[i])
                if (--indeg[j] == 0) ready.insert(j);
        }
        if (sorted.size() == n) plan = std::move(sorted);
    }

    void visit(const std::string& name, int times, std::map<std::string, int>& virt,
               std::vector<PlanStep>& plan, std::map<std::string, std::size_t>& index,
               std::set<std::string>& stack) const {
        if (stack.count(name))
            throw std::runtime_error("prerequisite cycle detected at skill: " + name);
        stack.insert(name);
        const SkillSpec& s = spec(name);
        for (const auto& p : s.prerequisites) {
            if (!p.consumed) {
                if (virt[p.item] >= p.count) continue;
                visit(p.remedy, 1, virt, plan, index, stack);
                continue;
            }
            int need = p.count * times;
            int take = std::min(virt[p.item], need);
            virt[p.item] -= take;
            int deficit = need - take;
            if (deficit > 0) {
                int yield = std::max(1, spec(p.remedy).produces.count);
                int runs = (deficit + yield - 1) / yield;
                visit(p.remedy, runs, virt, plan, index, stack);
                virt[p.item] -= deficit;  // consume what the remedy just provided
            }
        }
        if (!s.produces.kind.empty()) virt[s.produces.kind] += s.produces.count * times;
        auto it = index.find(name);
        if (it != index.end()) {
            plan[it->second].runs += times;
        } else {
            index[name] = plan.size();
            plan.push_back({name, times});
        }
        stack.erase(name);
    }

    bool run_body(const SkillSpec& s, World& world, SkillOutcome& out) const {
        for (const auto& op : s.body) {
            for (int i = 0; i < op.count; ++i) {
                OpResult r = run_op(op, world);
                if (!r.message.empty()) out.log.push_back(r.message);
                if (!r.ok) {
                    // Best-tool equipping is advisory: bare hands still work.
                    if (op.op == "equip_best" && r.error == OpError::not_found) continue;
                    return false;
                }
            }
        }
        return true;
    }

    OpResult run_op(const SkillOp& op, World& world) const {
        if (op.op == "mine") return world.mine(op.arg);
        if (op.op == "craft") return world.craft(op.arg);
        if (op.op == "smelt") return world.smelt(op.arg);
        if (op.op == "place") return world.place_item(op.arg);
        if (op.op == "equip_best") return world.equip_best(op.arg);
        if (op.op == "plant") return world.plant_seeds(op.arg);
        if (op.op == "hoe") return world.hoe_farmland();
        if (op.op == "shear") return world.shear_sheep();
        if (op.op == "milk") return world.milk_cow();
        if (op.op == "collect_water") return world.collect_water();
        if (op.op == "eat") return world.eat_food(op.arg);
        if (op.op == "feed") return world.feed_animals(op.arg, 1);
        if (op.op == "feed2") return world.feed_animals(op.arg, 2);
        if (op.op == "breed") return world.breed(op.arg);
        if (op.op == "kill") return kill_nearest(world, op.arg);
        if (op.op == "goto_here") return world.goto_pos(world.agent().pos);
        if (op.op == "wait") {
            world.tick(op.arg.empty() ? 10 : std::stoll(op.arg));
            return OpResult::success("Waited.");
        }
        if (op.op == "toss") {
            if (!world.agent_mut().inventory.remove(op.arg, 1))
                return OpResult::fail(OpError::missing_inputs, "No " + op.arg + " to toss.");
            return OpResult::success("Tossed 1 " + op.arg + ".");
        }
        if (op.op == "count_suffix") {
            int n = 0;
            for (const auto& [kind, c] : world.agent().inventory.summary())
                if (kind.size() >= op.arg.size() &&
                    kind.compare(kind.size() - op.arg.size(), op.arg.size(), op.arg) == 0)
                    n += c;
            return OpResult::success("Count of *" + op.arg + ": " + std::to_string(n) + ".");
        }
        if (op.op == "observe") {
            Observation o = world.observe();
            return OpResult::success("Observed " + std::to_string(o.nearby_blocks.size()) +
                                     " nearby block kinds.");
        }
        if (op.op == "chest_log") return OpResult::success("Chests: None.");
        if (op.op == "find_suitable_position") {
            auto p = world.find_suitable_position();
            return p ? OpResult::success("Found a suitable position.")
                     : OpResult::fail(OpError::not_found, "No suitable position nearby.");
        }
        if (op.op == "check_adjacent")
            return OpResult::success(
                world.check_adjacent_block({op.arg}, world.agent().pos) ? "true" : "false");
        if (op.op == "check_above")
            return OpResult::success(
                world.check_block_above(op.arg, world.agent().pos) ? "true" : "false");
        if (op.op == "check_around")
            return OpResult::success(
                world.check_blocks_around(op.arg, world.agent().pos) ? "true" : "false");
        if (op.op == "check_nearby")
            return OpResult::success(
                world.check_nearby_block({op.arg}, world.agent().pos, 4) ? "true" : "false");
        if (op.op == "check_no_adjacent")
            return OpResult::success(
                world.check_no_adjacent_block({op.arg}, world.agent().pos) ? "true" : "false");
        if (op.op == "get_animal") return world.get_animal(op.arg, world.agent().pos);
        throw std::runtime_error("unknown skill op: " + op.op);
    }

    OpResult kill_nearest(World& world, const std::string& species) const {
        Entity* e = world.nearest_entity(species);
        if (!e) return OpResult::fail(OpError::not_found, "No " + species + " nearby.");
        int id = e->id;
        OpResult last;
        for (int swings = 0; swings < 256; ++swings) {
            last = world.attack(id);
            if (!last.ok) return last;
            if (last.target_health <= 0) return last;
        }
        return OpResult::fail(OpError::invalid, "Could not kill the " + species + ".");
    }

    std::map<std::string, SkillSpec> skills_;
    std::vector<std::string> order_;
};

}  // namespace odyssey
