#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace odyssey {

using json = nlohmann::json;

enum class ItemCategory { block, tool, weapon, armor, food, material, seed, bucket_like };
enum class Tier { wooden = 0, stone = 1, iron = 2, diamond = 3 };
enum class Hostility { passive, neutral, hostile };

inline ItemCategory item_category_from(const std::string& s) {
    if (s == "block") return ItemCategory::block;
    if (s == "tool") return ItemCategory::tool;
    if (s == "weapon") return ItemCategory::weapon;
    if (s == "armor") return ItemCategory::armor;
    if (s == "food") return ItemCategory::food;
    if (s == "material") return ItemCategory::material;
    if (s == "seed") return ItemCategory::seed;
    if (s == "bucket_like") return ItemCategory::bucket_like;
    throw std::runtime_error("unknown item category: " + s);
}

inline std::optional<Tier> tier_from(const std::string& s) {
    if (s == "wooden") return Tier::wooden;
    if (s == "stone") return Tier::stone;
    if (s == "iron") return Tier::iron;
    if (s == "diamond") return Tier::diamond;
    return std::nullopt;
}

inline const char* tier_name(Tier t) {
    switch (t) {
        case Tier::wooden: return "wooden";
        case Tier::stone: return "stone";
        case Tier::iron: return "iron";
        default: return "diamond";
    }
}

struct ItemKind {
    std::string id;
    ItemCategory category = ItemCategory::material;
    std::optional<Tier> tier;
    std::string tool_class;   // "pickaxe", "sword", "axe", "hoe", "shovel", "shears"
    std::string armor_slot;   // "helmet", "chestplate", "leggings", "boots"
    double food_value = 0.0;
    double armor_reduction = 0.0;  // per-piece fraction of incoming damage absorbed
};

struct ItemStackSpec {
    std::string kind;
    int count = 1;
};

struct Recipe {
    std::string id;  // equals the output item id
    ItemStackSpec output;
    std::vector<ItemStackSpec> inputs;
    std::string station;  // "none", "crafting_table", "furnace"
    std::optional<ItemStackSpec> fuel;
    int ticks = 10;
};

struct BlockInfo {
    std::string id;
    std::optional<Tier> required_tier;  // minimum pickaxe tier; nullopt = any hand
    int mine_ticks = 20;
    std::vector<ItemStackSpec> drops;
};

struct MobInfo {
    std::string species;
    double max_health = 20.0;
    Hostility hostility = Hostility::passive;
    double damage = 0.0;
    bool ranged = false;
    std::vector<ItemStackSpec> drops;
    std::string feed_item;  // item that feeds/attracts this species, if any
};

struct Milestone {
    std::string id;
    std::string item;  // unlocked the first time this item kind is held
};

// Pinned gameplay tables. The paper inherits Minecraft's values; these are
// our own, loaded from a versioned JSON document so they can be audited and
// frozen independently of the code.
class Fixture {
public:
    int schema_version = 0;
    std::map<std::string, ItemKind> items;
    std::map<std::string, Recipe> recipes;
    std::map<std::string, BlockInfo> blocks;
    std::map<std::string, MobInfo> mobs;
    std::map<std::string, double> sword_damage;  // tier name -> damage; "none" = bare hand
    std::vector<Milestone> milestones;
    std::map<std::string, std::string> crops;  // seed item -> crop block planted

    static Fixture load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open fixture file: " + path);
        json j = json::parse(in);
        return from_json(j);
    }

    static Fixture from_json(const json& j) {
        Fixture f;
        f.schema_version = j.at("schema_version").get<int>();
        for (const auto& ji : j.at("items")) {
            ItemKind k;
            k.id = ji.at("id").get<std::string>();
            k.category = item_category_from(ji.at("category").get<std::string>());
            if (ji.contains("tier")) k.tier = tier_from(ji.at("tier").get<std::string>());
            if (ji.contains("tool_class")) k.tool_class = ji.at("tool_class").get<std::string>();
            if (ji.contains("armor_slot")) k.armor_slot = ji.at("armor_slot").get<std::string>();
            if (ji.contains("food_value")) k.food_value = ji.at("food_value").get<double>();
            if (ji.contains("armor_reduction")) k.armor_reduction = ji.at("armor_reduction").get<double>();
            bool tiered = k.category == ItemCategory::tool || k.category == ItemCategory::weapon ||
                          k.category == ItemCategory::armor;
            if (tiered != k.tier.has_value() && k.tool_class != "shears")
                throw std::runtime_error("item tier/category mismatch: " + k.id);
            if (f.items.count(k.id)) throw std::runtime_error("duplicate item id: " + k.id);
            f.items[k.id] = k;
        }
        for (const auto& jr : j.at("recipes")) {
            Recipe r;
            r.id = jr.at("id").get<std::string>();
            r.output = {jr.at("output").at("kind").get<std::string>(), jr.at("output").at("count").get<int>()};
            for (const auto& in : jr.at("inputs"))
                r.inputs.push_back({in.at("kind").get<std::string>(), in.at("count").get<int>()});
            if (r.inputs.empty()) throw std::runtime_error("recipe with no inputs: " + r.id);
            r.station = jr.value("station", "none");
            if (jr.contains("fuel"))
                r.fuel = ItemStackSpec{jr.at("fuel").at("kind").get<std::string>(),
                                       jr.at("fuel").at("count").get<int>()};
            if (r.station == "furnace" && !r.fuel)
                throw std::runtime_error("furnace recipe without fuel: " + r.id);
            r.ticks = jr.value("ticks", 10);
            f.recipes[r.id] = r;
        }
        for (const auto& jb : j.at("blocks")) {
            BlockInfo b;
            b.id = jb.at("id").get<std::string>();
            if (jb.contains("required_tier")) b.required_tier = tier_from(jb.at("required_tier").get<std::string>());
            b.mine_ticks = jb.value("mine_ticks", 20);
            if (jb.contains("drops"))
                for (const auto& d : jb.at("drops"))
                    b.drops.push_back({d.at("kind").get<std::string>(), d.at("count").get<int>()});
            f.blocks[b.id] = b;
        }
        for (const auto& jm : j.at("mobs")) {
            MobInfo m;
            m.species = jm.at("species").get<std::string>();
            m.max_health = jm.at("max_health").get<double>();
            std::string h = jm.at("hostility").get<std::string>();
            m.hostility = h == "hostile" ? Hostility::hostile
                        : h == "neutral" ? Hostility::neutral
                                         : Hostility::passive;
            m.damage = jm.value("damage", 0.0);
            if (m.hostility == Hostility::hostile && m.damage <= 0)
                throw std::runtime_error("hostile mob without damage: " + m.species);
            m.ranged = jm.value("ranged", false);
            if (jm.contains("drops"))
                for (const auto& d : jm.at("drops"))
                    m.drops.push_back({d.at("kind").get<std::string>(), d.at("count").get<int>()});
            m.feed_item = jm.value("feed_item", "");
            f.mobs[m.species] = m;
        }
        for (auto it = j.at("sword_damage").begin(); it != j.at("sword_damage").end(); ++it)
            f.sword_damage[it.key()] = it.value().get<double>();
        for (const auto& jm : j.at("milestones"))
            f.milestones.push_back({jm.at("id").get<std::string>(), jm.at("item").get<std::string>()});
        for (auto it = j.at("crops").begin(); it != j.at("crops").end(); ++it)
            f.crops[it.key()] = it.value().get<std::string>();
        return f;
    }

    const ItemKind& item(const std::string& id) const {
        auto it = items.find(id);
        if (it == items.end()) throw std::runtime_error("unknown item: " + id);
        return it->second;
    }
    const Recipe* find_recipe(const std::string& id) const {
        auto it = recipes.find(id);
        return it == recipes.end() ? nullptr : &it->second;
    }
    const BlockInfo* find_block(const std::string& id) const {
        auto it = blocks.find(id);
        return it == blocks.end() ? nullptr : &it->second;
    }
    const MobInfo* find_mob(const std::string& s) const {
        auto it = mobs.find(s);
        return it == mobs.end() ? nullptr : &it->second;
    }
    double sword_damage_for(const std::optional<Tier>& t) const {
        if (!t) return sword_damage.at("none");
        return sword_damage.at(tier_name(*t));
    }
};

}  // namespace odyssey
