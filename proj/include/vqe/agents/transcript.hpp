#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqe/agents/eval_report.hpp"
#include "vqe/ecrs/selection.hpp"
#include "vqe/toolkit/modal_info.hpp"
#include "vqe/toolkit/tool_plan.hpp"

namespace vqe {

enum class Strategy { conservative, neutral, aggressive };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct AnswerRecord {
    enum class Kind { initial, reflected, final };

    std::string text;
    Kind kind = Kind::initial;
    std::optional<Strategy> strategy;  // reflected records only
};

struct ConfidenceScore {
    double value = 0.0;  // validated in [0, 1], never clamped
};

struct ClarificationSet {
    std::vector<std::string> questions;  // 0-3 after truncation
    bool truncated = false;              // model offered more than 3

    bool accepts_initial() const { return questions.empty(); }
};

struct Reflection {
    Strategy strategy = Strategy::conservative;
    AnswerRecord answer;
    ConfidenceScore confidence;
    std::string confidence_source;  // "self-reported" or "logprob"
};

// How the final answer was chosen.
enum class AggregationPath {
    merge,                        // all confidences strictly above 0.6: meta call
    argmax,                       // highest confidence wins
    accepted_without_reflection,  // critic returned no clarifications
    degraded,                     // a stage-3 failure fell back to the initial answer
};

std::string_view to_string(AggregationPath p);

struct ToolPlanRecord {
    std::string provenance;  // question that drove this plan
    ToolPlan plan;
};

// Full provenance of one query through the pipeline. Serialization is
// deterministic; wall-clock fields ("timings", "latency_ms") are the only
// run-to-run variance and can be masked for comparison.
struct Transcript {
    std::string query;
    std::string video_ref;
    std::vector<int> selected_frames;  // original pool indices
    EcrsTrace trace;
    std::vector<ToolPlanRecord> plans;
    ModalInfo modal_base;
    ModalInfo modal_updated;
    std::vector<AnswerRecord> answers;  // exactly one final record
    ClarificationSet clarifications;
    std::optional<EvalReport> report;
    std::vector<Reflection> reflections;
    AggregationPath aggregation_path = AggregationPath::accepted_without_reflection;
    std::optional<std::string> stage3_error;
    std::vector<std::string> stages;  // execution order, Algorithm-style
    std::vector<std::pair<std::string, double>> timings;  // stage -> ms
    std::string final_answer;

    nlohmann::ordered_json to_json() const;
    static Transcript from_json(const nlohmann::json& j);
};

// Zeroes every wall-clock field in a serialized transcript, for golden
// comparisons and determinism checks.
void mask_timings(nlohmann::ordered_json& j);

}  // namespace vqe
