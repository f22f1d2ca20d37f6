#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <odyssey/benchmark.hpp>
#include <odyssey/datagen.hpp>

namespace fs = std::filesystem;
using namespace odyssey;

namespace {

// Configuration and file-system problems exit with code 1; anything else that
// escapes is an internal invariant violation and exits with code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
}

struct Context {
    std::string config_path;
    json config = json::object();
    std::string backend_kind = "scripted";
    std::uint64_t seed = 1;
    std::string out_dir = ".";

    // Relative paths resolve against the config's directory first, then the
    // bundled data directory.
    std::string resolve(const std::string& path) const {
        if (fs::path(path).is_absolute() || fs::exists(path)) return path;
        if (!config_path.empty()) {
            fs::path near = fs::path(config_path).parent_path() / path;
            if (fs::exists(near)) return near.string();
        }
        fs::path bundled = fs::path(ODYSSEY_DATA_DIR) / path;
        if (fs::exists(bundled)) return bundled.string();
        throw ConfigError("cannot resolve path: " + path);
    }

    std::unique_ptr<LLMBackend> make_backend(const json& task = json::object()) const {
        if (backend_kind == "http") {
            if (!config.contains("http"))
                throw ConfigError("--backend http requires an \"http\" section in the config");
            const json& h = config["http"];
            HttpBackendConfig cfg;
            cfg.base_url = h.value("base_url", "");
            cfg.model = h.value("model", "");
            cfg.path = h.value("path", cfg.path);
            cfg.timeout_seconds = h.value("timeout_seconds", cfg.timeout_seconds);
            cfg.retries = h.value("retries", cfg.retries);
            if (cfg.base_url.empty() || cfg.model.empty())
                throw ConfigError("http backend needs base_url and model");
            return std::make_unique<HttpBackend>(cfg);  // key read from ODYSSEY_API_KEY
        }
        std::string script =
            task.value("script", config.value("script", std::string{}));
        if (script.empty())
            throw ConfigError("scripted backend needs a \"script\" path in the config");
        return std::make_unique<ScriptedBackend>(
            ScriptedBackend::from_json(load_json(resolve(script))));
    }

    WorldConfig world_config() const {
        WorldConfig c = WorldConfig::defaults();
        if (!config.contains("world")) return c;
        const json& w = config["world"];
        c.resource_radius = w.value("resource_radius", c.resource_radius);
        c.search_radius = w.value("search_radius", c.search_radius);
        c.biome = w.value("biome", c.biome);
        if (w.contains("resource_counts"))
            for (const auto& [k, n] : w["resource_counts"].items())
                c.resource_counts[k] = n.get<int>();
        if (w.contains("animal_counts"))
            for (const auto& [k, n] : w["animal_counts"].items())
                c.animal_counts[k] = n.get<int>();
        return c;
    }
};

const Fixture& bundled_fixture() {
    static Fixture f =
        Fixture::load(std::string(ODYSSEY_DATA_DIR) + "/fixtures/world_fixture.json");
    return f;
}

const SkillRegistry& bundled_skills() {
    static SkillRegistry r =
        SkillRegistry::load(std::string(ODYSSEY_DATA_DIR) + "/skills/skills.json");
    return r;
}

const SkillIndex& bundled_index() {
    static SkillIndex idx = build_index(bundled_skills().descriptions());
    return idx;
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

// ---- simulate: run a skill sequence on a fresh world ---------------------------

int cmd_simulate(const Context& ctx) {
    World world(ctx.seed, ctx.world_config(), &bundled_fixture());
    json report;
    report["seed"] = ctx.seed;
    report["skills"] = json::array();
    for (const auto& entry : ctx.config.value("skills", json::array())) {
        std::string name = entry.get<std::string>();
        SkillOutcome o = bundled_skills().execute(name, world, false);
        report["skills"].push_back({{"skill", name},
                                    {"success", o.success},
                                    {"ticks", o.ticks_consumed},
                                    {"invoked", o.skills_invoked}});
    }
    report["clock"] = world.clock();
    report["action_ticks"] = world.action_ticks();
    report["deaths"] = world.deaths();
    report["inventory"] = world.agent().inventory.summary();
    std::string text = report.dump(2) + "\n";
    write_text(fs::path(ctx.out_dir) / "simulate.json", text);
    std::cout << text;
    return 0;
}

// ---- benchmark: run the configured task suite ----------------------------------

TaskSpec task_from_json(const json& t, std::uint64_t seed) {
    TaskSpec spec;
    spec.id = t.value("id", "task");
    std::string kind = t.value("kind", "dpt");
    if (kind == "lpt")
        spec.kind = t.value("monsters", json::array()).size() > 1 ? TaskKind::lpt_multi
                                                                  : TaskKind::lpt_single;
    else if (kind == "dpt")
        spec.kind = TaskKind::dpt;
    else if (kind == "aet")
        spec.kind = TaskKind::aet;
    else
        throw ConfigError("unknown task kind: " + kind);
    for (const auto& m : t.value("monsters", json::array()))
        spec.lpt.monsters.push_back(m.get<std::string>());
    spec.lpt.rounds = t.value("rounds", spec.lpt.rounds);
    spec.dpt_goal = t.value("goal", "");
    spec.aet_budget = t.value("budget", spec.aet_budget);
    spec.dpt_budget = t.value("budget", spec.dpt_budget);
    spec.repetitions = t.value("repetitions", spec.repetitions);
    spec.seed_base = t.value("seed_base", seed);
    return spec;
}

int cmd_benchmark(const Context& ctx) {
    if (!ctx.config.contains("tasks")) throw ConfigError("benchmark config needs \"tasks\"");
    AgentConfig agent;
    agent.k = ctx.config.value("k", int(bundled_index().size()));
    WorldConfig wc = ctx.world_config();

    std::vector<RunResult> all;
    json aggregates = json::array();
    for (const auto& t : ctx.config["tasks"]) {
        TaskSpec spec = task_from_json(t, ctx.seed);
        auto factory = [&]() { return ctx.make_backend(t); };
        std::vector<RunResult> results;
        if (spec.kind == TaskKind::aet && spec.repetitions == 1) {
            World world(spec.seed_base, wc, &bundled_fixture());
            if (t.value("peaceful", false)) world.set_peaceful(true);
            auto backend = factory();
            std::vector<AetSeriesPoint> series;
            results.push_back(run_aet(spec, world, *backend, bundled_index(), bundled_skills(),
                                      agent, &series));
            std::ostringstream csv;
            write_aet_series_csv(csv, series);
            write_text(fs::path(ctx.out_dir) / (spec.id + "_series.csv"), csv.str());
        } else {
            results = run_task(spec, bundled_fixture(), wc, factory, bundled_index(),
                               bundled_skills(), agent);
        }
        aggregates.push_back(aggregate_to_json(aggregate(results)));
        all.insert(all.end(), results.begin(), results.end());
    }

    std::ostringstream csv;
    write_results_csv(csv, all);
    write_text(fs::path(ctx.out_dir) / "results.csv", csv.str());
    write_text(fs::path(ctx.out_dir) / "aggregates.json", aggregates.dump(2) + "\n");
    std::cout << aggregates.dump(2) << "\n";
    return 0;
}

// ---- gendata: corpus -> prompt -> parsed training pairs -------------------------

QAType qa_type_from_name(const std::string& name) {
    if (name == "short") return QAType::short_answer;
    if (name == "long") return QAType::long_answer;
    if (name == "bool") return QAType::bool_answer;
    if (name == "normal") return QAType::normal_answer;
    throw ConfigError("unknown qa type: " + name);
}

int cmd_gendata(const Context& ctx) {
    if (!ctx.config.contains("corpus")) throw ConfigError("gendata config needs \"corpus\"");
    int word_limit = ctx.config.value("word_limit", 800);
    std::vector<QAType> types;
    for (const auto& t : ctx.config.value("types", json::array({"normal"})))
        types.push_back(qa_type_from_name(t.get<std::string>()));

    auto backend = ctx.make_backend();
    std::vector<QAPair> pairs;
    int dropped = 0;
    for (const auto& doc : ctx.config["corpus"]) {
        std::string path = ctx.resolve(doc.get<std::string>());
        auto chunks = chunk_corpus(path, parse_sections(read_file(path)), word_limit);
        for (const auto& chunk : chunks) {
            for (QAType type : types) {
                auto messages = build_generation_prompt(type, chunk.text());
                std::string raw = backend->complete(messages);
                auto parsed = parse_generation_response(raw, type);
                dropped += parsed.dropped_incomplete;
                pairs.insert(pairs.end(), parsed.pairs.begin(), parsed.pairs.end());
            }
        }
    }
    auto unique = dedup_pairs(pairs);
    std::ostringstream jsonl;
    write_pairs_jsonl(jsonl, unique);
    write_text(fs::path(ctx.out_dir) / "qa_pairs.jsonl", jsonl.str());
    json report = {{"pairs", unique.size()},
                   {"duplicates_removed", pairs.size() - unique.size()},
                   {"dropped_incomplete", dropped}};
    write_text(fs::path(ctx.out_dir) / "gendata_report.json", report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

// ---- evalmcq: score a question bank against a backend ---------------------------

int cmd_evalmcq(const Context& ctx) {
    if (!ctx.config.contains("questions"))
        throw ConfigError("evalmcq config needs \"questions\"");
    std::string raw = read_file(ctx.resolve(ctx.config["questions"].get<std::string>()));
    auto parsed = parse_mcq(raw);
    auto backend = ctx.make_backend();
    int trials = ctx.config.value("trials", 1);
    McqScore score = score_mcq(parsed.questions, *backend, trials);
    json report = {{"questions", parsed.questions.size()},
                   {"rejected", parsed.rejected},
                   {"trials", trials},
                   {"per_trial", score.per_trial},
                   {"mean_accuracy", score.mean}};
    write_text(fs::path(ctx.out_dir) / "mcq_scores.json", report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Odyssey agent toolkit"};
    app.require_subcommand(1);

    Context ctx;
    std::string command;
    for (const char* name : {"simulate", "benchmark", "gendata", "evalmcq"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", ctx.config_path, "JSON configuration file");
        sub->add_option("--seed", ctx.seed, "base world seed");
        sub->add_option("--out", ctx.out_dir, "output directory");
        sub->add_option("--backend", ctx.backend_kind, "LLM backend")
            ->check(CLI::IsMember({"scripted", "http"}));
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (!ctx.config_path.empty()) ctx.config = load_json(ctx.config_path);
        if (command == "simulate") return cmd_simulate(ctx);
        if (command == "benchmark") return cmd_benchmark(ctx);
        if (command == "gendata") return cmd_gendata(ctx);
        return cmd_evalmcq(ctx);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
