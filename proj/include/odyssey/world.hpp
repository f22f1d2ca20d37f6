#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "odyssey/fixtures.hpp"
#include "odyssey/rng.hpp"

namespace odyssey {

struct Position {
    int x = 0, y = 0, z = 0;
    friend bool operator==(const Position&, const Position&) = default;
    friend bool operator<(const Position& a, const Position& b) {
        return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
    }
};

inline int manhattan(const Position& a, const Position& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}
inline long euclidean_sq(const Position& a, const Position& b) {
    long dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}
inline int chebyshev(const Position& a, const Position& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

struct ItemStack {
    std::string kind;
    int count = 0;
};

class Inventory {
public:
    static constexpr int kCapacity = 36;
    static constexpr int kMaxStack = 64;

    const std::array<std::optional<ItemStack>, kCapacity>& slots() const { return slots_; }

    int count_of(const std::string& kind) const {
        int n = 0;
        for (const auto& s : slots_)
            if (s && s->kind == kind) n += s->count;
        return n;
    }

    int used_slots() const {
        int n = 0;
        for (const auto& s : slots_)
            if (s) ++n;
        return n;
    }

    // Returns the count that did not fit.
    int add(const std::string& kind, int count) {
        for (auto& s : slots_) {
            if (count == 0) break;
            if (s && s->kind == kind && s->count < kMaxStack) {
                int take = std::min(count, kMaxStack - s->count);
                s->count += take;
                count -= take;
            }
        }
        for (auto& s : slots_) {
            if (count == 0) break;
            if (!s) {
                int take = std::min(count, kMaxStack);
                s = ItemStack{kind, take};
                count -= take;
            }
        }
        return count;
    }

    bool remove(const std::string& kind, int count) {
        if (count_of(kind) < count) return false;
        for (auto& s : slots_) {
            if (count == 0) break;
            if (s && s->kind == kind) {
                int take = std::min(count, s->count);
                s->count -= take;
                count -= take;
                if (s->count == 0) s.reset();
            }
        }
        return true;
    }

    bool can_fit(const std::string& kind, int count) const {
        for (const auto& s : slots_) {
            if (count <= 0) return true;
            if (s && s->kind == kind) count -= (kMaxStack - s->count);
            else if (!s) count -= kMaxStack;
        }
        return count <= 0;
    }

    std::map<std::string, int> summary() const {
        std::map<std::string, int> m;
        for (const auto& s : slots_)
            if (s) m[s->kind] += s->count;
        return m;
    }

    void clear() { slots_.fill(std::nullopt); }

private:
    std::array<std::optional<ItemStack>, kCapacity> slots_{};
};

// [helmet, chestplate, leggings, boots, main_hand, off_hand]
struct EquipmentSet {
    std::array<std::optional<std::string>, 6> slots{};

    static constexpr int kHelmet = 0, kChestplate = 1, kLeggings = 2, kBoots = 3,
                         kMainHand = 4, kOffHand = 5;

    std::string to_string() const {
        std::string out = "[";
        for (int i = 0; i < 6; ++i) {
            if (i) out += ", ";
            out += slots[i] ? *slots[i] : "None";
        }
        return out + "]";
    }
    void clear() { slots.fill(std::nullopt); }
};

struct Entity {
    int id = 0;
    std::string species;
    Position pos;
    double health = 0;
    Hostility hostility = Hostility::passive;
    double damage = 0;
    bool ranged = false;
    bool fed = false;
};

struct AgentState {
    Position pos;
    double health = 20.0;
    double hunger = 20.0;
    Inventory inventory;
    EquipmentSet equipment;
    bool alive = true;
};

struct NearbyEntity {
    int id;
    std::string species;
    long dist_sq;
};

struct Observation {
    std::string biome;
    std::string time_of_day;
    std::vector<std::string> nearby_blocks;         // unique kinds, nearest first
    std::vector<std::string> recently_seen_blocks;  // seen before, not nearby now
    std::vector<NearbyEntity> nearby_entities;      // nearest to farthest
    double health = 0;
    double hunger = 0;
    Position position;
    EquipmentSet equipment;
    std::map<std::string, int> inventory;
    int inventory_used = 0;
    std::string chests = "None";
};

enum class OpError {
    none,
    not_found,
    tool_tier_too_low,
    inventory_full,
    missing_inputs,
    missing_station,
    missing_fuel,
    missing_tool,
    out_of_bounds,
    unreachable,
    no_food,
    unknown_species,
    agent_dead,
    invalid,
};

struct OpResult {
    bool ok = true;
    OpError error = OpError::none;
    std::string message;
    std::vector<ItemStackSpec> drops;
    std::map<std::string, int> shortfall;  // missing_inputs detail
    double damage_dealt = 0;
    double target_health = 0;
    std::int64_t ticks = 0;

    static OpResult success(std::string msg, std::int64_t ticks = 0) {
        OpResult r;
        r.message = std::move(msg);
        r.ticks = ticks;
        return r;
    }
    static OpResult fail(OpError e, std::string msg) {
        OpResult r;
        r.ok = false;
        r.error = e;
        r.message = std::move(msg);
        return r;
    }
};

struct WorldConfig {
    int size_x = 1024;
    int size_y = 256;
    int size_z = 1024;
    int ground_y = 63;
    std::string biome = "plains";
    int resource_radius = 64;
    int search_radius = 32;
    std::map<std::string, int> resource_counts;  // block kind -> cluster count
    std::map<std::string, int> animal_counts;    // species -> count

    static WorldConfig defaults() {
        WorldConfig c;
        c.resource_counts = {{"oak_log", 24},   {"birch_log", 8},  {"jungle_log", 6},
                             {"iron_ore", 16},  {"coal_ore", 16},  {"diamond_ore", 6},
                             {"copper_ore", 8}, {"sand", 12},      {"water", 8},
                             {"sugar_cane", 8}, {"grass", 16},     {"dirt", 12},
                             {"granite", 6},    {"andesite", 6},   {"diorite", 6},
                             {"calcite", 4},    {"cobbled_deepslate", 4},
                             {"dandelion", 4},  {"poppy", 4},      {"azure_bluet", 4},
                             {"oxeye_daisy", 4}};
        c.animal_counts = {{"cow", 6}, {"sheep", 6}, {"pig", 6}, {"chicken", 6}};
        return c;
    }
};

class World {
public:
    static constexpr std::int64_t kTicksPerDay = 24000;
    static constexpr int kAttackPeriod = 10;   // ticks between combat exchanges
    static constexpr int kTicksPerBlock = 2;   // pathing cost per block moved
    static constexpr int kHungerPeriod = 600;  // ticks per hunger point
    static constexpr int kStarvePeriod = 100;  // ticks per health point at hunger 0
    static constexpr int kAggroRadius = 16;
    static constexpr int kBreedDelayTicks = 60;

    World(std::uint64_t seed, WorldConfig cfg, const Fixture* fixture)
        : seed_(seed), cfg_(std::move(cfg)), fixture_(fixture), rng_(seed) {
        if (cfg_.size_x <= 0 || cfg_.size_y <= 0 || cfg_.size_z <= 0)
            throw std::invalid_argument("world bounds must be positive");
        if (cfg_.ground_y < 1 || cfg_.ground_y >= cfg_.size_y - 8)
            throw std::invalid_argument("ground level outside bounds");
        if (cfg_.animal_counts.empty())
            throw std::invalid_argument("empty entity spawn table");
        agent_.pos = {cfg_.size_x / 2, cfg_.ground_y + 1, cfg_.size_z / 2};
        generate();
    }

    const Fixture& fixture() const { return *fixture_; }
    const WorldConfig& config() const { return cfg_; }
    std::uint64_t seed() const { return seed_; }
    std::int64_t clock() const { return clock_; }
    const AgentState& agent() const { return agent_; }
    AgentState& agent_mut() { return agent_; }
    const std::map<int, Entity>& entities() const { return entities_; }
    bool peaceful() const { return peaceful_; }
    int deaths() const { return deaths_; }

    double distance_traveled() const { return distance_traveled_; }
    // Ticks spent mining/crafting/smelting, excluding travel. This is the
    // "time spent on crafting equipment" metric in the combat benchmark.
    std::int64_t action_ticks() const { return action_ticks_; }
    const std::set<std::string>& items_ever_held() const { return items_ever_held_; }
    int items_crafted_total() const { return items_crafted_; }
    int recipes_and_advancements() const {
        return static_cast<int>(recipes_crafted_.size() + milestones_unlocked_.size());
    }
    const std::set<std::string>& milestones_unlocked() const { return milestones_unlocked_; }

    std::string block_at(const Position& p) const {
        auto it = blocks_.find(p);
        if (it != blocks_.end()) return it->second;
        if (p.y == cfg_.ground_y) return "grass_block";
        if (p.y < cfg_.ground_y) return "stone";
        return "air";
    }

    bool in_bounds(const Position& p) const {
        return p.x >= 0 && p.x < cfg_.size_x && p.y >= 0 && p.y < cfg_.size_y && p.z >= 0 &&
               p.z < cfg_.size_z;
    }

    // ---- time -------------------------------------------------------------

    void tick(std::int64_t n) {
        if (n < 0) throw std::invalid_argument("negative tick count");
        advance(n, true);
    }

    std::string time_of_day() const {
        std::int64_t t = clock_ % kTicksPerDay;
        if (t < 12000) return "day";
        if (t < 13800) return "dusk";
        if (t < 22200) return "night";
        return "dawn";
    }

    static double ticks_to_minutes(std::int64_t ticks) { return ticks * 0.05 / 60.0; }

    // ---- observation ------------------------------------------------------

    Observation observe() const {
        Observation o;
        o.biome = cfg_.biome;
        o.time_of_day = time_of_day();
        o.position = agent_.pos;
        o.health = agent_.health;
        o.hunger = agent_.hunger;
        o.equipment = agent_.equipment;
        o.inventory = agent_.inventory.summary();
        o.inventory_used = agent_.inventory.used_slots();

        struct SeenKind {
            long dist;
            std::string kind;
        };
        std::map<std::string, long> nearest_of_kind;
        const int r = kAggroRadius;
        for (const auto& [pos, kind] : blocks_) {
            if (kind == "air") continue;
            long d = euclidean_sq(pos, agent_.pos);
            if (d > long(r) * r) continue;
            auto it = nearest_of_kind.find(kind);
            if (it == nearest_of_kind.end() || d < it->second) nearest_of_kind[kind] = d;
        }
        // Implicit terrain is always underfoot.
        nearest_of_kind.emplace("grass_block", 1);
        nearest_of_kind.emplace("stone", 4);
        std::vector<SeenKind> seen;
        for (const auto& [k, d] : nearest_of_kind) seen.push_back({d, k});
        std::sort(seen.begin(), seen.end(), [](const SeenKind& a, const SeenKind& b) {
            return std::tie(a.dist, a.kind) < std::tie(b.dist, b.kind);
        });
        for (const auto& s : seen) o.nearby_blocks.push_back(s.kind);
        for (const auto& k : ever_seen_blocks_)
            if (!nearest_of_kind.count(k)) o.recently_seen_blocks.push_back(k);

        for (const auto& [id, e] : entities_) {
            long d = euclidean_sq(e.pos, agent_.pos);
            if (d <= long(r) * r) o.nearby_entities.push_back({id, e.species, d});
        }
        std::sort(o.nearby_entities.begin(), o.nearby_entities.end(),
                  [](const NearbyEntity& a, const NearbyEntity& b) {
                      return std::tie(a.dist_sq, a.id) < std::tie(b.dist_sq, b.id);
                  });
        return o;
    }

    // ---- core ops ----------------------------------------------------------

    OpResult mine(const std::string& block_kind) {
        const BlockInfo* info = fixture_->find_block(block_kind);
        if (!info) return OpResult::fail(OpError::not_found, "Unknown block kind: " + block_kind);
        auto target = nearest_block(block_kind);
        if (!target)
            return OpResult::fail(OpError::not_found,
                                  "No " + block_kind + " found nearby.");
        if (info->required_tier) {
            auto tier = equipped_tool_tier("pickaxe");
            if (!tier || *tier < *info->required_tier)
                return OpResult::fail(OpError::tool_tier_too_low,
                                      "Cannot mine " + block_kind + ": need a " +
                                          std::string(tier_name(*info->required_tier)) +
                                          " pickaxe or better.");
        }
        for (const auto& d : info->drops)
            if (!agent_.inventory.can_fit(d.kind, d.count))
                return OpResult::fail(OpError::inventory_full, "Inventory is full.");
        std::int64_t cost = travel_to_adjacent(*target);
        blocks_[*target] = "air";
        OpResult r = OpResult::success("Mined 1 " + block_kind + ".", cost + info->mine_ticks);
        for (const auto& d : info->drops) {
            give(d.kind, d.count);
            r.drops.push_back(d);
        }
        action_ticks_ += info->mine_ticks;
        advance(info->mine_ticks, true);
        note_seen(block_kind);
        return r;
    }

    OpResult craft(const std::string& recipe_id) {
        const Recipe* rec = fixture_->find_recipe(recipe_id);
        if (!rec) return OpResult::fail(OpError::not_found, "Unknown recipe: " + recipe_id);
        if (rec->station == "furnace")
            return smelt(recipe_id);
        if (rec->station == "crafting_table" &&
            agent_.inventory.count_of("crafting_table") == 0 &&
            !equipped("crafting_table"))
            return OpResult::fail(OpError::missing_station,
                                  "No crafting table in inventory. Craft a crafting table first!");
        std::map<std::string, int> missing;
        for (const auto& in : rec->inputs) {
            int have = agent_.inventory.count_of(in.kind);
            if (have < in.count) missing[in.kind] = in.count - have;
        }
        if (!missing.empty()) {
            OpResult r = OpResult::fail(OpError::missing_inputs,
                                        "Missing materials to craft " + recipe_id + ".");
            r.shortfall = missing;
            return r;
        }
        if (!agent_.inventory.can_fit(rec->output.kind, rec->output.count))
            return OpResult::fail(OpError::inventory_full, "Inventory is full.");
        for (const auto& in : rec->inputs) agent_.inventory.remove(in.kind, in.count);
        give(rec->output.kind, rec->output.count);
        items_crafted_ += rec->output.count;
        recipes_crafted_.insert(rec->id);
        action_ticks_ += rec->ticks;
        advance(rec->ticks, true);
        return OpResult::success("Crafted " + std::to_string(rec->output.count) + " " +
                                     rec->output.kind + ".",
                                 rec->ticks);
    }

    OpResult smelt(const std::string& recipe_id) {
        const Recipe* rec = fixture_->find_recipe(recipe_id);
        if (!rec || rec->station != "furnace")
            return OpResult::fail(OpError::not_found, "Unknown furnace recipe: " + recipe_id);
        if (agent_.inventory.count_of("furnace") == 0)
            return OpResult::fail(OpError::missing_station,
                                  "No furnace in inventory. Craft a furnace first!");
        if (rec->fuel && agent_.inventory.count_of(rec->fuel->kind) < rec->fuel->count)
            return OpResult::fail(OpError::missing_fuel,
                                  "No " + rec->fuel->kind + " for fuel. Collect fuel first!");
        std::map<std::string, int> missing;
        for (const auto& in : rec->inputs) {
            int have = agent_.inventory.count_of(in.kind);
            if (have < in.count) missing[in.kind] = in.count - have;
        }
        if (!missing.empty()) {
            OpResult r = OpResult::fail(OpError::missing_inputs,
                                        "Missing materials to smelt " + recipe_id + ".");
            r.shortfall = missing;
            return r;
        }
        if (!agent_.inventory.can_fit(rec->output.kind, rec->output.count))
            return OpResult::fail(OpError::inventory_full, "Inventory is full.");
        for (const auto& in : rec->inputs) agent_.inventory.remove(in.kind, in.count);
        if (rec->fuel) agent_.inventory.remove(rec->fuel->kind, rec->fuel->count);
        give(rec->output.kind, rec->output.count);
        items_crafted_ += rec->output.count;
        recipes_crafted_.insert(rec->id);
        action_ticks_ += rec->ticks;
        advance(rec->ticks, true);
        return OpResult::success("Smelted " + std::to_string(rec->output.count) + " " +
                                     rec->output.kind + ".",
                                 rec->ticks);
    }

    // One combat exchange: the agent swings once; a hostile (armed) target
    // retaliates once. killX skills loop this until the target dies.
    OpResult attack(int entity_id) {
        if (agent_.health <= 0) return OpResult::fail(OpError::agent_dead, "Agent is dead.");
        auto it = entities_.find(entity_id);
        if (it == entities_.end())
            return OpResult::fail(OpError::not_found, "No such entity.");
        Entity& e = it->second;
        std::int64_t cost = travel_to_adjacent(e.pos);
        double dmg = fixture_->sword_damage_for(equipped_tool_tier("sword"));
        e.health -= dmg;
        OpResult r;
        r.damage_dealt = dmg;
        r.ticks = cost + kAttackPeriod;
        if (e.health <= 0) {
            const MobInfo* mob = fixture_->find_mob(e.species);
            r.message = "Killed 1 " + e.species + ".";
            if (mob)
                for (const auto& d : mob->drops) {
                    give(d.kind, d.count);
                    r.drops.push_back(d);
                }
            r.target_health = 0;
            entities_.erase(it);
        } else {
            r.target_health = e.health;
            r.message = "Hit " + e.species + " for " + std::to_string(dmg) + " damage.";
            if (e.hostility == Hostility::hostile && !peaceful_)
                damage_agent(e.damage);
        }
        advance(kAttackPeriod, false);
        return r;
    }

    // ---- spatial ops --------------------------------------------------------

    OpResult goto_pos(const Position& target) {
        if (!in_bounds(target))
            return OpResult::fail(OpError::out_of_bounds, "Target position out of bounds.");
        int dist = manhattan(agent_.pos, target);
        if (dist > 4096)
            return OpResult::fail(OpError::unreachable, "No path to target within range.");
        std::int64_t cost = std::int64_t(dist) * kTicksPerBlock;
        distance_traveled_ += dist;
        agent_.pos = target;
        advance(cost, true);
        return OpResult::success("Reached (" + std::to_string(target.x) + ", " +
                                     std::to_string(target.y) + ", " + std::to_string(target.z) +
                                     ").",
                                 cost);
    }

    std::optional<Position> find_suitable_position() const {
        auto offsets = sorted_offsets(8);
        for (const auto& off : offsets) {
            Position p{agent_.pos.x + off[0], agent_.pos.y + off[1], agent_.pos.z + off[2]};
            if (!in_bounds(p) || block_at(p) != "air") continue;
            if (has_adjacent_solid(p)) return p;
        }
        return std::nullopt;
    }

    bool check_adjacent_block(const std::vector<std::string>& kinds, const Position& p) const {
        for (const auto& n : six_neighbors(p)) {
            std::string b = block_at(n);
            for (const auto& k : kinds)
                if (b == k) return true;
        }
        return false;
    }

    bool check_block_above(const std::string& kind, const Position& p) const {
        return block_at({p.x, p.y + 1, p.z}) == kind;
    }

    bool check_blocks_around(const std::string& kind, const Position& p) const {
        static const int d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& o : d)
            if (block_at({p.x + o[0], p.y, p.z + o[1]}) == kind) return true;
        return false;
    }

    bool check_nearby_block(const std::vector<std::string>& kinds, const Position& p,
                            int r) const {
        for (int dx = -r; dx <= r; ++dx)
            for (int dy = -r; dy <= r; ++dy)
                for (int dz = -r; dz <= r; ++dz) {
                    std::string b = block_at({p.x + dx, p.y + dy, p.z + dz});
                    for (const auto& k : kinds)
                        if (b == k) return true;
                }
        return false;
    }

    bool check_no_adjacent_block(const std::vector<std::string>& kinds,
                                 const Position& p) const {
        for (const auto& n : six_neighbors(p)) {
            std::string b = block_at(n);
            bool matched = false;
            for (const auto& k : kinds)
                if (b == k) matched = true;
            if (!matched) return true;
        }
        return false;
    }

    OpResult get_animal(const std::string& species, const Position& target) {
        const MobInfo* mob = fixture_->find_mob(species);
        if (!mob) return OpResult::fail(OpError::unknown_species, "Unknown species: " + species);
        if (mob->feed_item.empty() || agent_.inventory.count_of(mob->feed_item) == 0)
            return OpResult::fail(OpError::no_food,
                                  "No " + (mob->feed_item.empty() ? std::string("food")
                                                                  : mob->feed_item) +
                                      " in inventory to attract the " + species + ".");
        Entity* e = nearest_entity(species);
        if (!e) return OpResult::fail(OpError::not_found, "No " + species + " nearby.");
        std::int64_t cost = std::int64_t(manhattan(e->pos, target)) * kTicksPerBlock;
        e->pos = target;
        advance(cost, true);
        return OpResult::success("Led the " + species + " to the target position.", cost);
    }

    // ---- farming / husbandry -------------------------------------------------

    OpResult hoe_farmland() {
        if (!has_tool("hoe"))
            return OpResult::fail(OpError::missing_tool, "No hoe in inventory. Craft a hoe first!");
        auto target = nearest_block_of({"grass_block", "dirt"});
        if (!target) return OpResult::fail(OpError::not_found, "No ground to hoe nearby.");
        std::int64_t cost = travel_to_adjacent(*target);
        blocks_[*target] = "farmland";
        note_seen("farmland");
        advance(10, true);
        return OpResult::success("Hoed 1 farmland.", cost + 10);
    }

    OpResult plant_seeds(const std::string& seed_kind) {
        auto cit = fixture_->crops.find(seed_kind);
        if (cit == fixture_->crops.end())
            return OpResult::fail(OpError::invalid, "Not a plantable seed: " + seed_kind);
        if (agent_.inventory.count_of(seed_kind) == 0)
            return OpResult::fail(OpError::missing_inputs,
                                  "No " + seed_kind + " in inventory. Collect seeds first!");
        auto target = nearest_block("farmland");
        if (!target)
            return OpResult::fail(OpError::not_found, "No farmland nearby. Hoe farmland first!");
        std::int64_t cost = travel_to_adjacent(*target);
        agent_.inventory.remove(seed_kind, 1);
        blocks_[{target->x, target->y + 1, target->z}] = cit->second;
        note_seen(cit->second);
        advance(10, true);
        return OpResult::success("Planted " + seed_kind + ".", cost + 10);
    }

    OpResult feed_animals(const std::string& species, int count) {
        const MobInfo* mob = fixture_->find_mob(species);
        if (!mob) return OpResult::fail(OpError::unknown_species, "Unknown species: " + species);
        if (mob->feed_item.empty())
            return OpResult::fail(OpError::no_food, "The " + species + " cannot be fed.");
        if (agent_.inventory.count_of(mob->feed_item) < count)
            return OpResult::fail(OpError::missing_inputs,
                                  "Not enough " + mob->feed_item + " to feed " +
                                      std::to_string(count) + " " + species + ".");
        auto near = entities_by_distance(species);
        if (static_cast<int>(near.size()) < count)
            return OpResult::fail(OpError::not_found, "Not enough " + species + " nearby.");
        std::int64_t cost = 0;
        for (int i = 0; i < count; ++i) {
            Entity& e = entities_.at(near[i]);
            cost += travel_to_adjacent(e.pos);
            e.fed = true;
            agent_.inventory.remove(mob->feed_item, 1);
        }
        advance(10, true);
        return OpResult::success("Fed " + std::to_string(count) + " " + species + ".", cost + 10);
    }

    OpResult breed(const std::string& species) {
        auto near = entities_by_distance(species);
        std::vector<int> fed;
        for (int id : near)
            if (entities_.at(id).fed) fed.push_back(id);
        if (fed.size() < 2)
            return OpResult::fail(OpError::missing_inputs,
                                  "Need two fed " + species + " nearby to breed. Feed them first!");
        entities_.at(fed[0]).fed = false;
        entities_.at(fed[1]).fed = false;
        advance(kBreedDelayTicks, true);
        const MobInfo* mob = fixture_->find_mob(species);
        Entity baby;
        baby.id = next_entity_id_++;
        baby.species = species;
        baby.pos = entities_.at(fed[0]).pos;
        baby.pos.x += 1;
        baby.health = mob->max_health;
        baby.hostility = mob->hostility;
        baby.damage = mob->damage;
        entities_[baby.id] = baby;
        return OpResult::success("A baby " + species + " was born.", kBreedDelayTicks);
    }

    OpResult shear_sheep() {
        if (agent_.inventory.count_of("shears") == 0 && !equipped("shears"))
            return OpResult::fail(OpError::missing_tool,
                                  "No shears in inventory. Craft shears first!");
        Entity* e = nearest_entity("sheep");
        if (!e) return OpResult::fail(OpError::not_found, "No sheep nearby.");
        std::int64_t cost = travel_to_adjacent(e->pos);
        give("white_wool", 1);
        advance(10, true);
        return OpResult::success("Sheared 1 sheep and got white_wool.", cost + 10);
    }

    OpResult milk_cow() {
        if (agent_.inventory.count_of("bucket") == 0)
            return OpResult::fail(OpError::missing_tool,
                                  "No bucket in inventory. Craft a bucket first!");
        Entity* e = nearest_entity("cow");
        if (!e) return OpResult::fail(OpError::not_found, "No cow nearby.");
        std::int64_t cost = travel_to_adjacent(e->pos);
        agent_.inventory.remove("bucket", 1);
        give("milk_bucket", 1);
        advance(10, true);
        return OpResult::success("Milked the cow.", cost + 10);
    }

    OpResult collect_water() {
        if (agent_.inventory.count_of("bucket") == 0)
            return OpResult::fail(OpError::missing_tool,
                                  "No bucket in inventory. Craft a bucket first!");
        auto target = nearest_block("water");
        if (!target) return OpResult::fail(OpError::not_found, "No water nearby.");
        std::int64_t cost = travel_to_adjacent(*target);
        agent_.inventory.remove("bucket", 1);
        give("water_bucket", 1);
        advance(10, true);
        return OpResult::success("Collected water.", cost + 10);
    }

    OpResult eat_food(const std::string& kind) {
        const ItemKind& k = fixture_->item(kind);
        if (k.category != ItemCategory::food)
            return OpResult::fail(OpError::invalid, kind + " is not edible.");
        if (agent_.inventory.count_of(kind) == 0)
            return OpResult::fail(OpError::missing_inputs, "No " + kind + " in inventory.");
        agent_.inventory.remove(kind, 1);
        agent_.hunger = std::min(20.0, agent_.hunger + k.food_value);
        advance(10, true);
        return OpResult::success("Ate 1 " + kind + ".", 10);
    }

    // slot_class: "sword" | "pickaxe" | "axe" | "hoe" | "shovel" | "armor"
    OpResult equip_best(const std::string& slot_class) {
        if (slot_class == "armor") {
            static const char* kSlots[4] = {"helmet", "chestplate", "leggings", "boots"};
            int equipped_count = 0;
            for (int i = 0; i < 4; ++i)
                if (equip_best_armor_piece(kSlots[i], i)) ++equipped_count;
            if (equipped_count == 0)
                return OpResult::fail(OpError::not_found, "No armor in inventory.");
            advance(2, true);
            return OpResult::success("Equipped the best armor.", 2);
        }
        std::optional<std::string> best;
        std::optional<Tier> best_tier;
        auto consider = [&](const std::string& kind) {
            const ItemKind& k = fixture_->item(kind);
            if (k.tool_class != slot_class) return;
            if (!best || (k.tier && (!best_tier || *k.tier > *best_tier))) {
                best = kind;
                best_tier = k.tier;
            }
        };
        auto& hand = agent_.equipment.slots[EquipmentSet::kMainHand];
        if (hand) consider(*hand);
        for (const auto& [kind, n] : agent_.inventory.summary()) consider(kind);
        if (!best)
            return OpResult::fail(OpError::not_found, "No " + slot_class + " in inventory.");
        if (!hand || *hand != *best) {
            if (hand) agent_.inventory.add(*hand, 1);
            agent_.inventory.remove(*best, 1);
            hand = *best;
        }
        advance(2, true);
        return OpResult::success("Equipped " + *best + ".", 2);
    }

    OpResult place_item(const std::string& kind) {
        if (agent_.inventory.count_of(kind) == 0)
            return OpResult::fail(OpError::missing_inputs, "No " + kind + " in inventory.");
        auto pos = find_suitable_position();
        if (!pos) return OpResult::fail(OpError::not_found, "No suitable position to place " + kind + ".");
        agent_.inventory.remove(kind, 1);
        blocks_[*pos] = kind;
        note_seen(kind);
        advance(5, true);
        return OpResult::success("Placed " + kind + ".", 5);
    }

    // ---- benchmark environment ------------------------------------------------

    OpResult combat_env(int h, int r, int y) {
        if (h <= 0 || r <= 0)
            return OpResult::fail(OpError::invalid, "Arena height and half-side must be positive.");
        Position c{agent_.pos.x, y, agent_.pos.z};
        if (!in_bounds({c.x - r, y - 1, c.z - r}) || !in_bounds({c.x + r, y + h, c.z + r}))
            return OpResult::fail(OpError::out_of_bounds, "Arena does not fit in world bounds.");
        for (int dx = -r; dx <= r; ++dx)
            for (int dz = -r; dz <= r; ++dz) {
                blocks_[{c.x + dx, y - 1, c.z + dz}] = "obsidian";
                blocks_[{c.x + dx, y + h, c.z + dz}] = "obsidian";
                for (int dy = 0; dy < h; ++dy) {
                    Position p{c.x + dx, y + dy, c.z + dz};
                    bool wall = std::max(std::abs(dx), std::abs(dz)) == r;
                    blocks_[p] = wall ? "obsidian" : "air";
                }
            }
        for (auto it = entities_.begin(); it != entities_.end();) {
            const Position& p = it->second.pos;
            if (std::abs(p.x - c.x) < r && std::abs(p.z - c.z) < r && p.y >= y && p.y < y + h)
                it = entities_.erase(it);
            else
                ++it;
        }
        agent_.pos = c;
        note_seen("obsidian");
        return OpResult::success("Arena built.");
    }

    std::vector<int> summon_mob(int n, int r, const std::string& species) {
        if (n < 1) throw std::invalid_argument("summon count must be >= 1");
        const MobInfo* mob = fixture_->find_mob(species);
        if (!mob) throw std::invalid_argument("unknown species: " + species);
        std::vector<int> ids;
        for (int i = 0; i < n; ++i) {
            int dx = static_cast<int>(rng_.uniform(r, 2 * r)) * (rng_.coin() ? 1 : -1);
            int dz = static_cast<int>(rng_.uniform(r, 2 * r)) * (rng_.coin() ? 1 : -1);
            Entity e;
            e.id = next_entity_id_++;
            e.species = species;
            e.pos = {agent_.pos.x + dx, agent_.pos.y, agent_.pos.z + dz};
            e.health = mob->max_health;
            e.hostility = mob->hostility;
            e.damage = mob->damage;
            e.ranged = mob->ranged;
            entities_[e.id] = e;
            ids.push_back(e.id);
        }
        return ids;
    }

    void respawn_and_clear() {
        int margin = 64;
        agent_.pos.x = static_cast<int>(rng_.uniform(margin, cfg_.size_x - margin));
        agent_.pos.z = static_cast<int>(rng_.uniform(margin, cfg_.size_z - margin));
        agent_.pos.y = cfg_.ground_y + 1;
        agent_.inventory.clear();
        agent_.equipment.clear();
        agent_.health = 20.0;
        agent_.hunger = 20.0;
        agent_.alive = true;
        peaceful_ = true;
    }

    void arm_hostiles() { peaceful_ = false; }
    void set_peaceful(bool p) { peaceful_ = p; }

    // Places `count` blocks of `kind` on a deterministic ring around the agent.
    void scatter_blocks(const std::string& kind, int count, int min_radius, int max_radius) {
        for (int i = 0; i < count; ++i) {
            int dx = static_cast<int>(rng_.uniform(min_radius, max_radius)) * (rng_.coin() ? 1 : -1);
            int dz = static_cast<int>(rng_.uniform(min_radius, max_radius)) * (rng_.coin() ? 1 : -1);
            Position p{agent_.pos.x + dx, agent_.pos.y, agent_.pos.z + dz};
            if (in_bounds(p)) blocks_[p] = kind;
        }
    }

    // ---- serialization ----------------------------------------------------------

    json to_json() const {
        json j;
        j["schema_version"] = 1;
        j["seed"] = seed_;
        j["clock"] = clock_;
        j["peaceful"] = peaceful_;
        j["deaths"] = deaths_;
        j["rng"] = {{"state", rng_.state()}, {"inc", rng_.inc()}};
        json jb = json::object();
        for (const auto& [p, k] : blocks_) {
            std::string key = std::to_string(p.x) + "," + std::to_string(p.y) + "," +
                              std::to_string(p.z);
            jb[key] = k;
        }
        j["blocks"] = jb;
        json je = json::object();
        for (const auto& [id, e] : entities_) {
            je[std::to_string(id)] = {{"species", e.species},
                                      {"pos", {e.pos.x, e.pos.y, e.pos.z}},
                                      {"health", e.health},
                                      {"fed", e.fed}};
        }
        j["entities"] = je;
        json ja;
        ja["pos"] = {agent_.pos.x, agent_.pos.y, agent_.pos.z};
        ja["health"] = agent_.health;
        ja["hunger"] = agent_.hunger;
        ja["inventory"] = agent_.inventory.summary();
        json jeq = json::array();
        for (const auto& s : agent_.equipment.slots) jeq.push_back(s ? json(*s) : json(nullptr));
        ja["equipment"] = jeq;
        j["agent"] = ja;
        j["counters"] = {{"hunger_acc", hunger_acc_},
                         {"starve_acc", starve_acc_},
                         {"distance", distance_traveled_},
                         {"items_crafted", items_crafted_},
                         {"action_ticks", action_ticks_},
                         {"next_entity_id", next_entity_id_}};
        j["ever_seen"] = ever_seen_blocks_;
        j["items_ever_held"] = items_ever_held_;
        return j;
    }

    std::string snapshot() const { return to_json().dump(); }

    // ---- helpers used by skills -----------------------------------------------

    std::optional<Position> nearest_block(const std::string& kind) const {
        return nearest_block_of({kind});
    }

    std::optional<Position> nearest_block_of(const std::vector<std::string>& kinds) const {
        std::optional<Position> best;
        long best_d = 0;
        auto consider = [&](const Position& p) {
            long d = euclidean_sq(p, agent_.pos);
            if (d > long(cfg_.search_radius) * cfg_.search_radius) return;
            if (!best || d < best_d || (d == best_d && p < *best)) {
                best = p;
                best_d = d;
            }
        };
        for (const auto& [p, k] : blocks_)
            for (const auto& want : kinds)
                if (k == want) consider(p);
        // Implicit terrain: stone below ground in the agent's column, grass at
        // ground level on a spiral outward.
        for (const auto& want : kinds) {
            if (want == "stone") {
                for (int y = cfg_.ground_y - 1; y >= 0; --y) {
                    Position p{agent_.pos.x, y, agent_.pos.z};
                    if (blocks_.count(p) == 0) {
                        consider(p);
                        break;
                    }
                }
            } else if (want == "grass_block") {
                int r = std::min(cfg_.search_radius, 16);
                for (int dx = -r; dx <= r; ++dx)
                    for (int dz = -r; dz <= r; ++dz) {
                        Position p{agent_.pos.x + dx, cfg_.ground_y, agent_.pos.z + dz};
                        if (blocks_.count(p) == 0) consider(p);
                    }
            }
        }
        return best;
    }

    Entity* nearest_entity(const std::string& species) {
        Entity* best = nullptr;
        long best_d = 0;
        for (auto& [id, e] : entities_) {
            if (e.species != species) continue;
            long d = euclidean_sq(e.pos, agent_.pos);
            if (d > long(cfg_.search_radius) * cfg_.search_radius) continue;
            if (!best || d < best_d || (d == best_d && e.id < best->id)) {
                best = &e;
                best_d = d;
            }
        }
        return best;
    }

    std::vector<int> entities_by_distance(const std::string& species) const {
        std::vector<std::pair<long, int>> v;
        for (const auto& [id, e] : entities_) {
            if (e.species != species) continue;
            long d = euclidean_sq(e.pos, agent_.pos);
            if (d <= long(cfg_.search_radius) * cfg_.search_radius) v.push_back({d, id});
        }
        std::sort(v.begin(), v.end());
        std::vector<int> ids;
        for (auto& [d, id] : v) ids.push_back(id);
        return ids;
    }

    std::optional<Tier> equipped_tool_tier(const std::string& tool_class) const {
        const auto& hand = agent_.equipment.slots[EquipmentSet::kMainHand];
        if (!hand) return std::nullopt;
        const ItemKind& k = fixture_->item(*hand);
        if (k.tool_class != tool_class) return std::nullopt;
        return k.tier;
    }

    bool has_tool(const std::string& tool_class) const {
        for (const auto& [kind, n] : agent_.inventory.summary())
            if (fixture_->item(kind).tool_class == tool_class) return true;
        const auto& hand = agent_.equipment.slots[EquipmentSet::kMainHand];
        return hand && fixture_->item(*hand).tool_class == tool_class;
    }

private:
    void generate() {
        // Resources scattered on a disc around spawn; trees are 3-log columns.
        for (const auto& [kind, count] : cfg_.resource_counts) {
            for (int i = 0; i < count; ++i) {
                int dx = static_cast<int>(rng_.uniform(-cfg_.resource_radius, cfg_.resource_radius));
                int dz = static_cast<int>(rng_.uniform(-cfg_.resource_radius, cfg_.resource_radius));
                Position base{agent_.pos.x + dx, agent_.pos.y, agent_.pos.z + dz};
                if (!in_bounds(base)) continue;
                if (kind.size() > 4 && kind.substr(kind.size() - 4) == "_log") {
                    for (int h = 0; h < 3; ++h) blocks_[{base.x, base.y + h, base.z}] = kind;
                } else if (kind == "water") {
                    blocks_[{base.x, cfg_.ground_y, base.z}] = "water";
                } else if (kind == "sugar_cane") {
                    blocks_[{base.x, cfg_.ground_y, base.z}] = "water";
                    blocks_[{base.x + 1, base.y, base.z}] = "sugar_cane";
                } else {
                    blocks_[base] = kind;
                }
            }
        }
        for (const auto& [species, count] : cfg_.animal_counts) {
            const MobInfo* mob = fixture_->find_mob(species);
            if (!mob) throw std::invalid_argument("spawn table references unknown species: " + species);
            for (int i = 0; i < count; ++i) {
                int dx = static_cast<int>(rng_.uniform(-cfg_.resource_radius, cfg_.resource_radius));
                int dz = static_cast<int>(rng_.uniform(-cfg_.resource_radius, cfg_.resource_radius));
                Entity e;
                e.id = next_entity_id_++;
                e.species = species;
                e.pos = {agent_.pos.x + dx, agent_.pos.y, agent_.pos.z + dz};
                e.health = mob->max_health;
                e.hostility = mob->hostility;
                e.damage = mob->damage;
                e.ranged = mob->ranged;
                entities_[e.id] = e;
            }
        }
    }

    // Advances the clock; when `process` is set, hunger decays and armed
    // hostiles approach and attack. Combat exchanges suppress processing so
    // the exchange itself is the only damage source for those ticks.
    void advance(std::int64_t n, bool process) {
        if (!process) {
            clock_ += n;
            return;
        }
        for (std::int64_t i = 0; i < n; ++i) {
            ++clock_;
            // Peaceful difficulty: hunger does not deplete and hostiles stand down.
            if (!peaceful_) {
                if (++hunger_acc_ >= kHungerPeriod) {
                    hunger_acc_ = 0;
                    if (agent_.hunger > 0) agent_.hunger = std::max(0.0, agent_.hunger - 1.0);
                }
                if (agent_.hunger <= 0) {
                    if (++starve_acc_ >= kStarvePeriod) {
                        starve_acc_ = 0;
                        damage_agent_raw(1.0);
                    }
                } else {
                    starve_acc_ = 0;
                }
                for (auto& [id, e] : entities_) {
                    if (e.hostility != Hostility::hostile) continue;
                    int cheb = chebyshev(e.pos, agent_.pos);
                    if (cheb > kAggroRadius) continue;
                    if (cheb > 1 && clock_ % 2 == 0) {
                        if (e.pos.x != agent_.pos.x) e.pos.x += e.pos.x < agent_.pos.x ? 1 : -1;
                        else if (e.pos.z != agent_.pos.z) e.pos.z += e.pos.z < agent_.pos.z ? 1 : -1;
                        else if (e.pos.y != agent_.pos.y) e.pos.y += e.pos.y < agent_.pos.y ? 1 : -1;
                        cheb = chebyshev(e.pos, agent_.pos);
                    }
                    bool in_reach = cheb <= 1 || (e.ranged && cheb <= 8);
                    if (in_reach && clock_ % kAttackPeriod == 0) damage_agent(e.damage);
                }
            }
        }
    }

    double armor_factor() const {
        double reduction = 0;
        for (int i = 0; i < 4; ++i) {
            const auto& s = agent_.equipment.slots[i];
            if (s) reduction += fixture_->item(*s).armor_reduction;
        }
        return 1.0 - std::min(0.8, reduction);
    }

    void damage_agent(double raw) { damage_agent_raw(raw * armor_factor()); }

    void damage_agent_raw(double d) {
        agent_.health -= d;
        if (agent_.health <= 0) {
            // Death: respawn near the death location, items retained.
            ++deaths_;
            agent_.pos.x = std::clamp(
                agent_.pos.x + static_cast<int>(rng_.uniform(-32, 32)), 0, cfg_.size_x - 1);
            agent_.pos.z = std::clamp(
                agent_.pos.z + static_cast<int>(rng_.uniform(-32, 32)), 0, cfg_.size_z - 1);
            agent_.pos.y = cfg_.ground_y + 1;
            agent_.health = 20.0;
            agent_.hunger = 20.0;
        }
    }

    std::int64_t travel_to_adjacent(const Position& target) {
        int dist = std::max(0, manhattan(agent_.pos, target) - 1);
        std::int64_t cost = std::int64_t(dist) * kTicksPerBlock;
        if (dist > 0) {
            distance_traveled_ += dist;
            // Stand next to the target, preferring the x approach.
            Position stand = target;
            if (agent_.pos.x != target.x) stand.x += agent_.pos.x < target.x ? -1 : 1;
            else if (agent_.pos.z != target.z) stand.z += agent_.pos.z < target.z ? -1 : 1;
            else if (agent_.pos.y != target.y) stand.y += agent_.pos.y < target.y ? -1 : 1;
            agent_.pos = stand;
        }
        advance(cost, true);
        return cost;
    }

    void give(const std::string& kind, int count) {
        agent_.inventory.add(kind, count);
        items_ever_held_.insert(kind);
        for (const auto& m : fixture_->milestones)
            if (m.item == kind) milestones_unlocked_.insert(m.id);
    }

    void note_seen(const std::string& kind) { ever_seen_blocks_.insert(kind); }

    bool equipped(const std::string& kind) const {
        for (const auto& s : agent_.equipment.slots)
            if (s && *s == kind) return true;
        return false;
    }

    bool equip_best_armor_piece(const std::string& slot_name, int slot_index) {
        std::optional<std::string> best;
        std::optional<Tier> best_tier;
        for (const auto& [kind, n] : agent_.inventory.summary()) {
            const ItemKind& k = fixture_->item(kind);
            if (k.armor_slot != slot_name) continue;
            if (!best || (k.tier && (!best_tier || *k.tier > *best_tier))) {
                best = kind;
                best_tier = k.tier;
            }
        }
        const auto& current = agent_.equipment.slots[slot_index];
        if (current) {
            const ItemKind& c = fixture_->item(*current);
            if (!best || (c.tier && best_tier && *c.tier >= *best_tier)) return false;
        }
        if (!best) return false;
        if (current) agent_.inventory.add(*current, 1);
        agent_.inventory.remove(*best, 1);
        agent_.equipment.slots[slot_index] = *best;
        return true;
    }

    static std::array<Position, 6> six_neighbors(const Position& p) {
        return {Position{p.x + 1, p.y, p.z}, Position{p.x - 1, p.y, p.z},
                Position{p.x, p.y + 1, p.z}, Position{p.x, p.y - 1, p.z},
                Position{p.x, p.y, p.z + 1}, Position{p.x, p.y, p.z - 1}};
    }

    bool has_adjacent_solid(const Position& p) const {
        for (const auto& n : six_neighbors(p)) {
            std::string b = block_at(n);
            if (b != "air" && b != "water") return true;
        }
        return false;
    }

    static const std::vector<std::array<int, 3>>& sorted_offsets(int r) {
        static std::map<int, std::vector<std::array<int, 3>>> cache;
        auto it = cache.find(r);
        if (it != cache.end()) return it->second;
        std::vector<std::array<int, 3>> offs;
        for (int dx = -r; dx <= r; ++dx)
            for (int dy = -r; dy <= r; ++dy)
                for (int dz = -r; dz <= r; ++dz) offs.push_back({dx, dy, dz});
        std::sort(offs.begin(), offs.end(), [](const auto& a, const auto& b) {
            long da = long(a[0]) * a[0] + long(a[1]) * a[1] + long(a[2]) * a[2];
            long db = long(b[0]) * b[0] + long(b[1]) * b[1] + long(b[2]) * b[2];
            return std::tie(da, a) < std::tie(db, b);
        });
        return cache.emplace(r, std::move(offs)).first->second;
    }

    std::uint64_t seed_;
    WorldConfig cfg_;
    const Fixture* fixture_;
    Pcg32 rng_;
    std::int64_t clock_ = 0;
    std::map<Position, std::string> blocks_;
    std::map<int, Entity> entities_;
    int next_entity_id_ = 1;
    AgentState agent_;
    bool peaceful_ = false;
    int deaths_ = 0;
    std::int64_t hunger_acc_ = 0;
    std::int64_t starve_acc_ = 0;
    double distance_traveled_ = 0;
    std::int64_t action_ticks_ = 0;
    std::set<std::string> ever_seen_blocks_;
    std::set<std::string> items_ever_held_;
    std::set<std::string> milestones_unlocked_;
    std::set<std::string> recipes_crafted_;
    int items_crafted_ = 0;
};

}  // namespace odyssey
