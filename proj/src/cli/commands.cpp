#include "vqe/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "vqe/core/error.hpp"
#include "vqe/curate/exporter.hpp"

namespace vqe {

using nlohmann::json;
using nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DecodeFailure:
        case ErrorKind::EmptyVideo:
        case ErrorKind::InvalidFrame:
        case ErrorKind::EmptyQuery:
        case ErrorKind::ZeroEntropyMass:
        case ErrorKind::InvalidConfig:
        case ErrorKind::MalformedScenario:
            return 2;
        case ErrorKind::BackendUnreachable:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::ZeroNorm:
        case ErrorKind::MalformedPlan:
        case ErrorKind::AllToolsUnavailable:
        case ErrorKind::EmptyResponse:
        case ErrorKind::MalformedClarification:
        case ErrorKind::MalformedReport:
        case ErrorKind::DimensionOutOfRange:
        case ErrorKind::MalformedReflection:
        case ErrorKind::ConfidenceOutOfRange:
            return 3;
        case ErrorKind::NoEligibleRecords:
            return 4;
        case ErrorKind::ScriptMismatch:
        case ErrorKind::Internal:
            return 5;
    }
    return 5;
}

namespace {

int report_failure(std::ostream& err, ErrorKind kind, const std::string& message) {
    const ordered_json body = {
        {"error", {{"kind", std::string(to_string(kind))}, {"message", message}}}};
    err << body.dump() << "\n";
    return exit_code_for(kind);
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return report_failure(err, e.kind(), e.what());
    } catch (const std::exception& e) {
        return report_failure(err, ErrorKind::Internal, e.what());
    }
}

EngineConfig load_config(const CommonArgs& args) {
    EngineConfig cfg = EngineConfig::load(args.config_path);
    if (args.out_dir) cfg.output_dir = *args.out_dir;
    if (args.workers) {
        if (*args.workers < 1) throw Error(ErrorKind::InvalidConfig, "workers must be >= 1");
        cfg.workers = *args.workers;
    }
    return cfg;
}

FramePool decode_pool(const EngineConfig& cfg, const std::string& video) {
    if (cfg.decoder.command.empty()) {
        throw Error(ErrorKind::InvalidConfig, "config has no decoder.command");
    }
    std::optional<FrameCache> cache;
    if (cfg.cache_dir) cache.emplace(*cfg.cache_dir);
    return sample_pool(video, cfg.pool_cap, cfg.decoder, cache ? &*cache : nullptr);
}

std::string result_stem(const std::string& video, const std::string& question) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : video + "\n" + question) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

// --- bench -------------------------------------------------------------------

struct Scenario {
    int pool_size = 0;
    int select_count = 32;
    std::vector<int> planted;
    std::vector<double> similarities;
    std::vector<double> entropies;
    SelectionConfig selection;
};

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::MalformedScenario, "cannot open scenario " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.empty()) {
        throw Error(ErrorKind::MalformedScenario, "scenario must be a nonempty JSON object");
    }

    Scenario s;
    s.pool_size = j.value("pool_size", 0);
    if (s.pool_size < 1) throw Error(ErrorKind::MalformedScenario, "pool_size must be >= 1");
    s.select_count = j.value("select_count", 32);
    if (s.select_count < 1 || s.select_count > s.pool_size) {
        throw Error(ErrorKind::MalformedScenario, "select_count must be in [1, pool_size]");
    }

    if (!j.contains("frames") || !j["frames"].is_array() ||
        j["frames"].size() != static_cast<std::size_t>(s.pool_size)) {
        throw Error(ErrorKind::MalformedScenario, "frames must list every pool index once");
    }
    s.similarities.assign(s.pool_size, 0.0);
    s.entropies.assign(s.pool_size, 0.0);
    std::set<int> seen;
    for (const auto& f : j["frames"]) {
        const int index = f.at("index").get<int>();
        if (index < 0 || index >= s.pool_size || !seen.insert(index).second) {
            throw Error(ErrorKind::MalformedScenario, "bad or duplicate frame index");
        }
        s.similarities[index] = f.at("s").get<double>();
        s.entropies[index] = f.at("h").get<double>();
    }

    for (const auto& p : j.value("planted", json::array())) {
        const int index = p.get<int>();
        if (index < 0 || index >= s.pool_size) {
            throw Error(ErrorKind::MalformedScenario, "planted index out of range");
        }
        s.planted.push_back(index);
    }
    if (s.planted.empty()) {
        throw Error(ErrorKind::MalformedScenario, "scenario plants no relevant frames");
    }

    if (j.contains("selection")) {
        const auto& sel = j["selection"];
        if (sel.contains("tau") && !sel["tau"].is_null()) s.selection.tau = sel["tau"].get<double>();
        s.selection.k = sel.value("k", s.selection.k);
        s.selection.alpha = sel.value("alpha", s.selection.alpha);
        s.selection.max_iterations = sel.value("max_iterations", s.selection.max_iterations);
    }
    s.selection.min_output = s.select_count;
    s.selection.validate();
    return s;
}

std::vector<int> uniform_select(int pool_size, int count) {
    std::vector<int> out;
    out.reserve(count);
    const double stride = static_cast<double>(pool_size) / count;
    for (int i = 0; i < count; ++i) out.push_back(static_cast<int>(i * stride));
    return out;
}

std::vector<int> top_similarity_select(const std::vector<double>& similarities, int count) {
    std::vector<int> order(similarities.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (similarities[a] != similarities[b]) return similarities[a] > similarities[b];
        return a < b;
    });
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(count)));
    std::sort(order.begin(), order.end());
    return order;
}

struct StrategyMetrics {
    std::string name;
    std::vector<int> selected;
    double recall = 0.0;
    double precision = 0.0;
    double wall_ms = 0.0;
};

StrategyMetrics measure(const std::string& name, const std::vector<int>& planted,
                        std::vector<int> selected, double wall_ms) {
    StrategyMetrics m;
    m.name = name;
    m.selected = std::move(selected);
    m.wall_ms = wall_ms;
    const std::set<int> chosen(m.selected.begin(), m.selected.end());
    int hits = 0;
    for (int p : planted) hits += chosen.count(p) ? 1 : 0;
    m.recall = planted.empty() ? 0.0 : static_cast<double>(hits) / planted.size();
    m.precision = chosen.empty() ? 0.0 : static_cast<double>(hits) / chosen.size();
    return m;
}

}  // namespace

int cmd_select(const SelectArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        EngineConfig cfg = load_config(args);
        if (!cfg.embedder) throw Error(ErrorKind::InvalidConfig, "config has no embedder");
        if (args.question.empty()) throw Error(ErrorKind::EmptyQuery, "question is empty");

        const FramePool pool = decode_pool(cfg, args.video);
        const SelectionResult result =
            select_keyframes(pool, args.question, *cfg.embedder, cfg.selection, cfg.workers);

        ordered_json output;
        output["video_ref"] = pool.source_id;
        output["selected_frames"] = result.trace.final_set;
        output["trace"] = result.trace.to_json();
        out << output.dump(2) << "\n";

        if (args.emit_plot) {
            std::filesystem::create_directories(cfg.output_dir);
            const auto csv_path =
                cfg.output_dir / ("scores_" + result_stem(args.video, args.question) + ".csv");
            std::ofstream csv(csv_path, std::ios::trunc);
            csv << "frame_index,s,H,ecrs_round1\n";
            const auto& round1 = result.trace.iterations.front().scores;
            for (std::size_t i = 0; i < round1.size(); ++i) {
                csv << round1[i].frame_index << "," << result.similarities[i] << ","
                    << result.entropies[i] << "," << round1[i].value << "\n";
            }
            err << "plot csv: " << csv_path.string() << "\n";
        }
        return 0;
    });
}

int cmd_answer(const AnswerArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        EngineConfig cfg = load_config(args);
        if (!cfg.embedder) throw Error(ErrorKind::InvalidConfig, "config has no embedder");
        if (!cfg.backends.target || !cfg.backends.critic) {
            throw Error(ErrorKind::InvalidConfig, "config needs target and critic backends");
        }
        if (args.question.empty()) throw Error(ErrorKind::EmptyQuery, "question is empty");

        const FramePool pool = decode_pool(cfg, args.video);
        const Transcript transcript = run_query(pool, args.question, cfg.backends, cfg.registry,
                                                cfg.prompts, cfg.pipeline(), *cfg.embedder);

        std::filesystem::create_directories(cfg.output_dir);
        const auto path = cfg.output_dir /
                          ("transcript_" + result_stem(args.video, args.question) + ".json");
        {
            std::ofstream file(path, std::ios::trunc);
            file << transcript.to_json().dump(2) << "\n";
        }
        out << transcript.final_answer << "\n";
        err << "transcript: " << path.string() << "\n";
        return 0;
    });
}

int cmd_curate(const CurateArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        EngineConfig cfg = load_config(args);

        CurationRule rule;
        if (args.mode == "sft") {
            rule = {CurationMode::sft, args.threshold.value_or(5.0), ThresholdDirection::above};
        } else if (args.mode == "dpo") {
            rule = {CurationMode::dpo, args.threshold.value_or(5.0), ThresholdDirection::below};
        } else if (args.mode == "grpo") {
            rule = {CurationMode::grpo, args.threshold.value_or(5.0), ThresholdDirection::below};
        } else {
            throw Error(ErrorKind::InvalidConfig, "mode must be sft, dpo or grpo");
        }

        const std::vector<Transcript> transcripts = load_transcripts(args.transcript_dir);
        const ExportResult result = export_dataset(transcripts, rule, cfg.output_dir);

        const ordered_json summary = {{"dataset", result.dataset_path.string()},
                                      {"manifest", result.manifest_path.string()},
                                      {"input_count", result.input_count},
                                      {"exported_count", result.exported_count},
                                      {"skipped_count", result.skipped_count}};
        out << summary.dump(2) << "\n";
        return 0;
    });
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        EngineConfig cfg = load_config(args);
        const Scenario scenario = load_scenario(args.scenario_path);

        std::vector<StrategyMetrics> table;
        {
            const auto start = std::chrono::steady_clock::now();
            auto picks = uniform_select(scenario.pool_size, scenario.select_count);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            table.push_back(measure("uniform", scenario.planted, std::move(picks), ms));
        }
        {
            const auto start = std::chrono::steady_clock::now();
            auto picks = top_similarity_select(scenario.similarities, scenario.select_count);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            table.push_back(measure("similarity-top-k", scenario.planted, std::move(picks), ms));
        }
        {
            const auto start = std::chrono::steady_clock::now();
            const EcrsTrace trace =
                iterate_selection(scenario.similarities, scenario.entropies, scenario.selection);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            table.push_back(measure("ecrs", scenario.planted, trace.final_set, ms));
        }

        ordered_json output;
        output["scenario"] = args.scenario_path;
        output["pool_size"] = scenario.pool_size;
        output["select_count"] = scenario.select_count;
        output["planted"] = scenario.planted;
        output["strategies"] = ordered_json::array();
        for (const StrategyMetrics& m : table) {
            output["strategies"].push_back({{"name", m.name},
                                            {"recall", m.recall},
                                            {"precision", m.precision},
                                            {"frames_used", m.selected.size()},
                                            {"wall_ms", m.wall_ms},
                                            {"selected", m.selected}});
        }
        out << output.dump(2) << "\n";

        err << std::left << std::setw(18) << "strategy" << std::right << std::setw(8) << "recall"
            << std::setw(11) << "precision" << std::setw(8) << "frames" << std::setw(10)
            << "wall_ms" << "\n";
        for (const StrategyMetrics& m : table) {
            err << std::left << std::setw(18) << m.name << std::right << std::setw(8)
                << std::fixed << std::setprecision(3) << m.recall << std::setw(11) << m.precision
                << std::setw(8) << m.selected.size() << std::setw(10) << std::setprecision(2)
                << m.wall_ms << "\n";
        }
        (void)cfg;
        return 0;
    });
}

}  // namespace vqe
