#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <odyssey/chat.hpp>

namespace odyssey {

struct MissingFieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string render_inventory(const std::map<std::string, int>& inv) {
    if (inv.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (const auto& [k, n] : inv) {
        if (!first) out += ", ";
        first = false;
        out += "'" + k + "': " + std::to_string(n);
    }
    return out + "}";
}

inline std::string join(const std::vector<std::string>& items, const std::string& sep = ", ") {
    if (items.empty()) return "None";
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

// ---- planner prompts --------------------------------------------------------

constexpr const char* kLptPlannerSystem =
    R"(---Overall goals---

Your goal is to generate the plan that can defeat all monsters while using the shortest time. So, more is not always better when proposing your plan list.

---External information---

In Minecraft, combating with monsters requires weapons and armor.
The weapon options are limited to "sword", while the armor includes "helmet", "chestplate", "leggings", and "boots".
The materials for swords range from low to high level: wooden swords, stone swords, iron swords, and diamond swords;
The materials for armor range from low to high level: iron, diamond.
The higher the material level, the greater the attack damage of the weapon and the better the protection effect of the armor.
However, the higher the material level, the more time it costs to collect.

Tips: Wooden, stone, iron and diamond are the only levels of sword; iron and diamond are the only levels of armors; helmet, chestplate, leggings and boots are the only types of armors; do not generate information that doesn't relate to them.

After each round of combat, I will give you:

Equipment obtained from last round: ...

Health after last combat: ...

Critique: ...

Monster: The monsters you need to defeat.

---Directions---

The critique (if any) will tell you the subgoal list from the previous round and whether you should trim or add to it. Remember to refer to the critique to adjust your task list.
Next, you will start a new combat task, the last round of equipment and health is only for planning reference, not related to the current round. Plan from scratch!

---Behaviour constraints---

You must follow the following criteria:

1) Return a Python list of subgoals that can be completed in order to complete the specified task.

2) Each subgoal should only start with "craft"! do not propose any other type of skills!

3) Each subgoal should follow a concise format "craft [material type] [equipment type]".

You should only respond in JSON format as described below:

["subgoal1", "subgoal2", "subgoal3", ...]

Ensure the response can be parsed by Python `json.loads`, e.g.: no trailing commas, no single quotes, etc.)";

struct LptRoundInfo {
    std::string equipment = "None";  // e.g. "[None, None, None, None, iron_sword, None]"
    std::string health = "None";     // e.g. "14.0 / 20"
    std::string critique = "None";
    std::string monster;             // e.g. "1 skeleton"
};

inline std::vector<ChatMessage> build_lpt_planner_prompt(const LptRoundInfo& info) {
    if (info.monster.empty()) throw MissingFieldError("LPT planner prompt needs a monster list");
    std::string user = "Equipment obtained from last round: " + info.equipment +
                       "\nHealth after last combat: " + info.health +
                       "\nCritique: " + info.critique + "\nMonster: " + info.monster;
    return {{Role::system, kLptPlannerSystem}, {Role::user, user}};
}

constexpr const char* kCombatOrderSystem =
    R"(You are a helpful assistant that generates the order of fighting monsters to defeat all monsters specified by me.

I'll give you a list of monsters, and you need to rearrange the order of monsters according to how hard it is to beat them.
You should give priority to monsters that attack the player and do more damage, while monsters that don't actively attack the player or do less damage should be left behind.
Make sure your list includes all the monsters in your task.
The output format must be exactly same as the input, including the underline.
If your task is to combat a single type of monsters, return a list containing only that monster as well.

You should only respond in JSON format as described below:

["quantity monster1", "quantity monster2", "quantity monster3", ...]

Ensure the response can be parsed by Python `json.loads`, e.g.: no trailing commas, no single quotes, etc.)";

inline std::vector<ChatMessage> build_combat_order_prompt(const std::vector<std::string>& monsters) {
    if (monsters.empty()) throw MissingFieldError("combat order prompt needs monsters");
    return {{Role::system, kCombatOrderSystem}, {Role::user, json(monsters).dump()}};
}

constexpr const char* kDptPlannerSystemPrefix = R"(---Overall goals---

You are a helpful assistant that tells me the next immediate task to do in Minecraft. My ultimate goal is to ")";

constexpr const char* kDptPlannerSystemSuffix = R"(".
Make sure that the proposed task is related to the ultimate goal, and do not propose unrelated tasks!

---Directions---

You need to plan step by step towards your ultimate goal, so propose necessary prerequisite tasks first.
For example, "craft hoe" before "hoe farmland", "collect [type] seeds" and "hoe farmland" before "plant seed", "kill [animalType]" before "cook meat", "craft shears" before "shear sheep", "craft bucket" before "collect milk".
Propose the current task only when you ensure that you have all the necessary dependent items in inventory.
Don't ask for repetitive tasks. If you already have an item in your inventory, try not to collect it repeatedly.
For example, when you already have a hoe in your inventory, propose "hoe farmland" instead of "craft hoe" again.

---External information---

I will give you the following information:
Ultimate goal: ...
Reference: ...
Biome: ...
Nearby blocks: ...
Other blocks that are recently seen: ...
Nearby entities (nearest to farthest): ...
Health: Higher than 15 means I'm healthy.
Hunger: Higher than 15 means I'm not hungry.
Inventory (xx/36): ...
Logs: The execution logs in last task, you can refer to it to propose next task.
Completed tasks so far: ...
Failed tasks that are too hard: ...

---Behaviour constraints---

You must follow the following criteria:
1) Please be very specific about what resources I need to collect, what I need to farm, or what animals I need to breed/kill.
2) The next task should follow a concise format, such as "craft [item]", "breed/kill [animal type]", "cook/eat [food type]", "plant [seed type] seed" or some specific action "shear sheep", "collect milk". Do not propose multiple tasks at the same time. Do not mention anything else.

You should only respond in JSON format as described below:
{
    "reasoning": "Based on the information I listed above, do reasoning about what the next task should be",
    "task": "The next task"
}
Ensure the response can be parsed by Python `json.loads`, e.g.: no trailing commas, no single quotes, etc.)";

// Observation snapshot rendered to the strings the planner templates expect.
struct PlannerObservation {
    std::string reference;
    std::string biome;
    std::string time;
    std::string nearby_blocks;
    std::string recently_seen_blocks = "None";
    std::string nearby_entities = "None";
    std::string health;   // e.g. "20.0/20"
    std::string hunger;
    std::string position;
    std::string equipment;
    std::string inventory;  // Python-dict rendering
    int inventory_used = 0;
    std::string chests = "None";
    std::string logs = "None";
    std::string completed_tasks = "None";
    std::string failed_tasks = "None";
};

inline std::vector<ChatMessage> build_dpt_planner_prompt(const std::string& goal,
                                                         const PlannerObservation& obs) {
    if (goal.empty()) throw MissingFieldError("DPT planner prompt needs an ultimate goal");
    if (obs.biome.empty()) throw MissingFieldError("DPT planner prompt needs an observation");
    std::string user = "Ultimate goal: " + goal + "\nReference: " + obs.reference +
                       "\nBiome: " + obs.biome + "\nNearby blocks: " + obs.nearby_blocks +
                       "\nOther blocks that are recently seen: " + obs.recently_seen_blocks +
                       "\nNearby entities (nearest to farthest): " + obs.nearby_entities +
                       "\nHealth: " + obs.health + "\nHunger: " + obs.hunger + "\nInventory (" +
                       std::to_string(obs.inventory_used) + "/36): " + obs.inventory +
                       "\nLogs: " + obs.logs + "\nCompleted tasks so far: " + obs.completed_tasks +
                       "\nFailed tasks that are too hard: " + obs.failed_tasks;
    return {{Role::system, kDptPlannerSystemPrefix + goal + kDptPlannerSystemSuffix},
            {Role::user, user}};
}

constexpr const char* kAetPlannerSystem = R"(---Overall goals---

You are a helpful assistant that tells me the next immediate task to do in Minecraft. My ultimate goal is to discover as many diverse things as possible, accomplish as many diverse tasks as possible and become the best Minecraft player in the world.

---External information---

I will give you the following information:
Biome: ...
Time: ...
Nearby blocks: ...
Other blocks that are recently seen: ...
Nearby entities (nearest to farthest): ...
Health: Higher than 15 means I'm healthy.
Hunger: Higher than 15 means I'm not hungry.
Position: ...
Equipment: If I have better armor in my inventory, you should ask me to equip it.
Inventory (xx/36): ...
Chests: ...
Completed tasks so far: ...
Failed tasks that are too hard: ...

---Directions---

You must follow the following criteria:
1) You should act as a mentor and guide me to the next task based on my current learning progress.
2) Please be very specific about what resources I need to collect, what I need to craft, or what mobs I need to kill.
3) The next task should follow a concise format, such as "Mine [block]", "Craft [item]", "Smelt [item]", "Kill [mob]", "Cook [food]", "Equip" etc. It should be a single phrase. Do not propose multiple tasks at the same time. Do not mention anything else.
4) The next task should be novel and interesting. I should look for rare resources, upgrade my equipment and tools using better materials, and discover new things. I should not be doing the same thing over and over again.
5) Don't propose tasks that have already completed once or failed more than three times!
6) Do not ask me to build or dig shelter even if it's at night. I want to explore the world and discover new things. I don't want to stay in one place.
7) Tasks that require information beyond the player's status to verify should be avoided. For instance, "Placing 4 torches" and "Dig a 2x1x2 hole" are not ideal since they require visual confirmation from the screen. All the placing, building and trading tasks should be avoided. Do not propose task starting with these keywords.
8) For wood-related tasks, you don't need to emphasize the type of wood, just propose "mine log" or "craft planks".

---Behaviour constraints---

You should only respond in JSON format as described below:
{
    "reasoning": "Based on the information I listed above, do reasoning about what the next task should be.",
    "task": "The next task."
}
Ensure the response can be parsed by Python `json.loads`, e.g.: no trailing commas, no single quotes, etc.)";

inline std::vector<ChatMessage> build_aet_planner_prompt(const PlannerObservation& obs) {
    if (obs.biome.empty()) throw MissingFieldError("AET planner prompt needs an observation");
    std::string user = "Biome: " + obs.biome + "\nTime: " + obs.time +
                       "\nNearby blocks: " + obs.nearby_blocks +
                       "\nOther blocks that are recently seen: " + obs.recently_seen_blocks +
                       "\nNearby entities (nearest to farthest): " + obs.nearby_entities +
                       "\nHealth: " + obs.health + "\nHunger: " + obs.hunger +
                       "\nPosition: " + obs.position + "\nEquipment: " + obs.equipment +
                       "\nInventory (" + std::to_string(obs.inventory_used) +
                       "/36): " + obs.inventory + "\nChests: " + obs.chests +
                       "\nCompleted tasks so far: " + obs.completed_tasks +
                       "\nFailed tasks that are too hard: " + obs.failed_tasks;
    return {{Role::system, kAetPlannerSystem}, {Role::user, user}};
}

// ---- actor prompts ----------------------------------------------------------

constexpr const char* kQueryContextSystem =
    R"(You are a helpful assistant that answer my question about Minecraft.

I will give you the following information:
Question: ...

You will answer the question based on the context (only if available and helpful) and your own knowledge of Minecraft.
1) Start your answer with "Answer: ".
2) Answer "Answer: Unknown" if you don't know the answer.)";

inline std::vector<ChatMessage> build_query_context_prompt(const std::string& subgoal) {
    if (subgoal.empty()) throw MissingFieldError("query context prompt needs a subgoal");
    return {{Role::system, kQueryContextSystem},
            {Role::user, "How to complete " + subgoal + " in Minecraft?"}};
}

constexpr const char* kSkillSelectionSystem =
    R"(You are a helpful assistant that decides Mineflayer javascript code to complete any Minecraft task specified by me.

I will give you
Task: The task I need to complete in this stage.
Programs: The description of relevant programs that may use to complete the task.
Program used in the last round: ...
Critique: ...

You will choose only one program based on the program description and critique. You should only respond in the format as described below:
{
    "program": "your selected program name",
    "reason": "Reason you choose the program."
}
Ensure the response can be parsed by Python `json.loads`, e.g.: no trailing commas, no single quotes, etc.
Please ensure that the program name you output should be exactly the same (case-inclusive) as the information provided!)";

inline std::vector<ChatMessage> build_skill_selection_prompt(const std::string& task,
                                                             const std::string& programs,
                                                             const std::string& last_program,
                                                             const std::string& critique) {
    if (task.empty()) throw MissingFieldError("skill selection prompt needs a task");
    std::string user = "Task: " + task + "\nPrograms:\n" + programs +
                       "\nProgram used in the last round: " +
                       (last_program.empty() ? "None" : last_program) +
                       "\nCritique: " + (critique.empty() ? "None" : critique);
    return {{Role::system, kSkillSelectionSystem}, {Role::user, user}};
}

// ---- critic prompts ---------------------------------------------------------

constexpr const char* kCriticSystem =
    R"(You are required to evaluate if I have met the task requirements in Minecraft. Exceeding the task requirements is also considered a success while failing to meet them requires you to provide critique to help me improve.

I will give you the following information:

Task: The objective I need to accomplish.
Nearby blocks:
Entities:
Equipment: My tools, weapons and armor could sometimes be here.
Chests: If the task requires me to place items in a chest, you can find chest information here.
Current inventory (xx/36): My final inventory after carry out the task.
Last inventory (xx/36): My inventory before carry out the task.
Chat log: The logs during carrying out the task.

**Note** that you only need to check the changes of my inventory to judge whether I meet the task.
For a `craft [item]` task, all you need to do is checking if the item I need to craft is in my current inventory or equipment. If in, you should judge it as a success and vice versa.
For a `mine [item]` task, you only need to check whether the item is in my current inventory or has an increase over the last inventory.
For a `hoe` or `plant` task, you only need to check whether the `farmland` or `seed` is in Nearby Blocks.
Do not judge the success of a `craft` task based on other materials I have!
You can only judge a task failure via chat log, not as a reason to judge a task's success.

You should only respond in JSON format as described below:
{
    "reasoning": "reasoning",
    "success": boolean,
    "critique": "critique",
}
Ensure the response can be parsed by Python `json.loads`, e.g.: no trailing commas, no single quotes, etc.)";

struct CriticFields {
    std::string task;
    std::string nearby_blocks = "None";
    std::string entities = "None";
    std::string equipment = "[None, None, None, None, None, None]";
    std::string chests = "None";
    std::string current_inventory = "{}";
    int current_used = 0;
    std::string last_inventory = "{}";
    int last_used = 0;
    std::string chat_log = "None";
};

inline std::vector<ChatMessage> build_critic_prompt(const CriticFields& f) {
    if (f.task.empty()) throw MissingFieldError("critic prompt needs a task");
    std::string user = "Task: " + f.task + "\nNearby blocks: " + f.nearby_blocks +
                       "\nEntities: " + f.entities + "\nEquipment: " + f.equipment +
                       "\nChests: " + f.chests + "\nCurrent inventory (" +
                       std::to_string(f.current_used) + "/36): " + f.current_inventory +
                       "\nLast inventory (" + std::to_string(f.last_used) +
                       "/36): " + f.last_inventory + "\nChat log: " + f.chat_log;
    return {{Role::system, kCriticSystem}, {Role::user, user}};
}

// ---- dataset generation prompts ----------------------------------------------

enum class QAType { short_answer, long_answer, bool_answer, normal_answer };

inline const char* qa_type_name(QAType t) {
    switch (t) {
        case QAType::short_answer: return "short";
        case QAType::long_answer: return "long";
        case QAType::bool_answer: return "bool";
        default: return "normal";
    }
}

constexpr const char* kQaFormatBlock =
    "```\n\nprompt\n\n-----------\n\nprompt_goes_here\n\n-----------\n\nresponse\n\n"
    "-----------\n\nresponse_goes_here\n\n-----------\n\n```";

inline std::string qa_generation_system(QAType type) {
    int n = type == QAType::short_answer ? 30 : type == QAType::bool_answer ? 10 : 20;
    return std::string(
               "You are a question-and-answer dataset generating expert, you are generating "
               "data that will be used to train a large language model designed to address "
               "questions posed by users regarding the game Minecraft, and from that, you will "
               "generate question-and-answer data samples, each with a prompt/response pair.\n\n"
               "You will do so in this format:\n\n") +
           kQaFormatBlock + "\n\nYour task is to generate at least " + std::to_string(n) +
           " examples. Make sure your samples are unique and diverse, yet high-quality and "
           "complex enough to train a well-performing model.";
}

inline std::string qa_generation_user(QAType type, const std::string& user_content) {
    std::string head;
    switch (type) {
        case QAType::short_answer:
            head = "Your task is to generate 30 question-and-answer examples, and you should "
                   "generate questions within the provided user text that can be directly "
                   "answered with a word or phrase, such as dates, names, statistics, etc. This "
                   "involves identifying specific, concise information within the text that can "
                   "be succinctly responded to, ensuring that the answers are clear and directly "
                   "related to the questions asked. And you will do so in this format:";
            break;
        case QAType::long_answer:
            head = "Your task is to generate 20 question-and-answer examples. Identify questions "
                   "within the provided user text that require one or more complete sentences as "
                   "answers. These questions should be suitable for explanatory or definitional "
                   "responses, where a detailed explanation or a clear definition is needed to "
                   "fully address the question. This involves crafting answers that are "
                   "comprehensive and informative, ensuring they adequately explain or define "
                   "the subject matter in question. And you will do so in this format:";
            break;
        case QAType::bool_answer:
            head = "Your task is to generate 10 question-and-answer examples. Look for questions "
                   "within the provided user text that can be answered with a simple True or "
                   "False. This task involves pinpointing statements or queries within the text "
                   "that lend themselves to binary responses, ensuring that the answers are "
                   "straightforward and unambiguous, clearly indicating whether the statement is "
                   "true or false based on the information available. And you will do so in this "
                   "format:";
            break;
        case QAType::normal_answer:
            head = "Your task is to generate 20 question-and-answer examples. And you will do so "
                   "in this format:";
            break;
    }
    return head + "\n\n" + kQaFormatBlock +
           "\n\nPlease generate as many question and answer pairs as possible. Here is the user "
           "content: " + user_content;
}

inline std::vector<ChatMessage> build_generation_prompt(QAType type,
                                                        const std::string& user_content) {
    return {{Role::system, qa_generation_system(type)},
            {Role::user, qa_generation_user(type, user_content)}};
}

// ---- MCQ generation prompts ---------------------------------------------------

constexpr const char* kMcqThemeSystem =
    R"(You are an expert in generating Minecraft quiz questions. Your task is to create multiple-choice questions about the game Minecraft based on the theme of "Special Dimensions" and the provided keywords. The introduction of the theme of "Special Dimensions" is as follows:

Special Dimensions:

The Nether: Peculiarities of the Nether, unique blocks and mobs, special structures, etc.

The End: Characteristics of the End, Ender Dragon, cities, ships, etc.

Adventure and Exploration: Special generated structures like ocean monuments, woodland mansions, ruins, fortresses, etc.

Provide four answer options labeled A, B, C, and D. Only one option should be correct. After the question and options, state the correct answer. Please format the output as follows:

Difficulty: Easy/Medium/Hard

Topic: Special Dimensions

Key Word: text

Question: Question text

Options: A.text B.text C.text D.text

Correct Answer: A/B/C/D

Ensure that the difficulty distribution of the questions and options is reasonable, and the answers should be detailed and informative.)";

constexpr const char* kMcqThemeUserPrefix =
    R"(Please generate some Minecraft multiple-choice questions based on the following 5 keywords, covering three difficulty levels: simple, moderate, and difficult. The number after the keyword represents how many multiple-choice questions to generate based on this keyword.

Keywords:

)";

constexpr const char* kMcqThemeUserSuffix =
    R"(

Ensure that the Q&A content is rich and accurate, and test the player's understanding of the game. Provide a balanced combination of simple, medium, and difficult questions. Generate each question and answer in the given format. Here is an example:

Example:

Difficulty: Hard

Topic: Special Dimensions

Key Word: End Ship

Question: What exclusive item can be found in the End Ship in Minecraft?

Options: A. Netherite B. Dragon Egg C. Elytra D. Beacon

Correct Answer: C)";

constexpr const char* kMcqWikiSystem =
    R"(You are an expert in generating Minecraft multiple-choice questions. Your task is to create multiple choice questions about the game Minecraft based on the provided keywords and the information on the corresponding page on the Minecraft Wiki. Ensure that the source of information for the multiple-choice questions you generate is the Minecraft Wiki, while ensuring the objectivity and accuracy of the multiple-choice questions and ensuring good quality.

Provide four answer options labeled A, B, C, and D. Only one option should be correct. After the question and options, state the correct answer. Please format the output as follows:

Difficulty: Easy/Medium/Hard

Key Word: text

Question: Question text

Options: A.text B.text C.text D.text

Correct Answer: A/B/C/D

Ensure that the difficulty distribution of the questions and options is reasonable, and the answers should be detailed and informative.)";

constexpr const char* kMcqWikiUserPrefix =
    R"(Please generate some Minecraft multiple-choice questions based on the following 5 keywords, covering three difficulty levels: simple, moderate, and difficult. The number after the keyword represents the minimum number of multiple-choice questions generated based on the keyword. For important keyword, you should generate more questions.

Keywords:

)";

constexpr const char* kMcqWikiUserSuffix =
    R"(

Ensure the source of information for the multiple-choice questions you generate is the Minecraft Wiki, while ensuring the objectivity and accuracy of the multiple-choice questions and ensuring good quality. Provide a balanced combination of simple, medium, and difficult questions. Generate each question and answer in the given format, do not use '#' or '*'.. Here is an example:

Example:

Difficulty: Medium

Key Word: Dirt

Question: What happens when you right-click on a dirt block with a hoe?

Options:
A. It turns into farmland
B. It turns into grass
C. It turns into a path block
D. Nothing happens

Correct Answer: A)";

inline std::vector<ChatMessage> build_mcq_theme_prompt(const std::string& keywords) {
    return {{Role::system, kMcqThemeSystem},
            {Role::user, kMcqThemeUserPrefix + keywords + kMcqThemeUserSuffix}};
}

inline std::vector<ChatMessage> build_mcq_wiki_prompt(const std::string& keywords) {
    return {{Role::system, kMcqWikiSystem},
            {Role::user, kMcqWikiUserPrefix + keywords + kMcqWikiUserSuffix}};
}

}  // namespace odyssey
