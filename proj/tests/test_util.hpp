#pragma once

#include <string>

#include <odyssey/fixtures.hpp>
#include <odyssey/skills.hpp>
#include <odyssey/world.hpp>

inline std::string data_path(const std::string& rel) {
    return std::string(ODYSSEY_DATA_DIR) + "/" + rel;
}

inline const odyssey::Fixture& test_fixture() {
    static odyssey::Fixture f = odyssey::Fixture::load(data_path("fixtures/world_fixture.json"));
    return f;
}

inline const odyssey::SkillRegistry& test_skills() {
    static odyssey::SkillRegistry r = odyssey::SkillRegistry::load(data_path("skills/skills.json"));
    return r;
}

// Compact config with all resources close to spawn so travel never leaves the
// search radius, and enough ore for a full iron loadout.
inline odyssey::WorldConfig dense_config() {
    odyssey::WorldConfig c = odyssey::WorldConfig::defaults();
    c.resource_radius = 14;
    c.resource_counts = {{"oak_log", 12},  {"birch_log", 4}, {"jungle_log", 4},
                         {"iron_ore", 80}, {"coal_ore", 80}, {"diamond_ore", 12},
                         {"copper_ore", 12}, {"water", 4},   {"sugar_cane", 4},
                         {"grass", 8},     {"dirt", 6},      {"sand", 4},
                         {"granite", 4},   {"andesite", 4},  {"diorite", 4},
                         {"calcite", 4},   {"cobbled_deepslate", 4},
                         {"dandelion", 2}, {"poppy", 2},     {"azure_bluet", 2},
                         {"oxeye_daisy", 2}};
    c.animal_counts = {{"cow", 4}, {"sheep", 4}, {"pig", 4}, {"chicken", 4}};
    return c;
}
