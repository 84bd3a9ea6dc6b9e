#include "vqe/agents/transcript.hpp"

#include "vqe/core/error.hpp"

namespace vqe {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::conservative: return "conservative";
        case Strategy::neutral: return "neutral";
        case Strategy::aggressive: return "aggressive";
    }
    return "conservative";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "conservative") return Strategy::conservative;
    if (s == "neutral") return Strategy::neutral;
    if (s == "aggressive") return Strategy::aggressive;
    throw Error(ErrorKind::Internal, "unknown strategy " + s);
}

std::string_view to_string(AggregationPath p) {
    switch (p) {
        case AggregationPath::merge: return "merge";
        case AggregationPath::argmax: return "argmax";
        case AggregationPath::accepted_without_reflection: return "accepted-without-reflection";
        case AggregationPath::degraded: return "degraded";
    }
    return "degraded";
}

namespace {

AggregationPath path_from_string(const std::string& s) {
    if (s == "merge") return AggregationPath::merge;
    if (s == "argmax") return AggregationPath::argmax;
    if (s == "accepted-without-reflection") return AggregationPath::accepted_without_reflection;
    if (s == "degraded") return AggregationPath::degraded;
    throw Error(ErrorKind::Internal, "unknown aggregation path " + s);
}

std::string_view kind_name(AnswerRecord::Kind k) {
    switch (k) {
        case AnswerRecord::Kind::initial: return "initial";
        case AnswerRecord::Kind::reflected: return "reflected";
        case AnswerRecord::Kind::final: return "final";
    }
    return "initial";
}

AnswerRecord::Kind kind_from_string(const std::string& s) {
    if (s == "initial") return AnswerRecord::Kind::initial;
    if (s == "reflected") return AnswerRecord::Kind::reflected;
    if (s == "final") return AnswerRecord::Kind::final;
    throw Error(ErrorKind::Internal, "unknown answer kind " + s);
}

nlohmann::ordered_json answer_to_json(const AnswerRecord& a) {
    nlohmann::ordered_json j;
    j["text"] = a.text;
    j["kind"] = kind_name(a.kind);
    if (a.strategy) j["strategy"] = std::string(to_string(*a.strategy));
    return j;
}

AnswerRecord answer_from_json(const nlohmann::json& j) {
    AnswerRecord a;
    a.text = j.at("text").get<std::string>();
    a.kind = kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("strategy")) a.strategy = strategy_from_string(j["strategy"].get<std::string>());
    return a;
}

}  // namespace

nlohmann::ordered_json Transcript::to_json() const {
    nlohmann::ordered_json j;
    j["query"] = query;
    j["video_ref"] = video_ref;
    j["selected_frames"] = selected_frames;
    j["trace"] = trace.to_json();
    j["plans"] = nlohmann::ordered_json::array();
    for (const ToolPlanRecord& p : plans) {
        j["plans"].push_back({{"provenance", p.provenance},
                              {"plan", p.plan.to_json()},
                              {"unknown_tools", p.plan.unknown_tools}});
    }
    j["modal_base"] = modal_base.to_json();
    j["modal_updated"] = modal_updated.to_json();
    j["answers"] = nlohmann::ordered_json::array();
    for (const AnswerRecord& a : answers) j["answers"].push_back(answer_to_json(a));
    j["clarifications"] = {{"questions", clarifications.questions},
                           {"truncated", clarifications.truncated}};
    if (report) j["report"] = report->to_json();
    j["reflections"] = nlohmann::ordered_json::array();
    for (const Reflection& r : reflections) {
        j["reflections"].push_back({{"strategy", std::string(to_string(r.strategy))},
                                    {"answer", answer_to_json(r.answer)},
                                    {"confidence", r.confidence.value},
                                    {"confidence_source", r.confidence_source}});
    }
    j["aggregation_path"] = std::string(to_string(aggregation_path));
    if (stage3_error) j["stage3_error"] = *stage3_error;
    j["stages"] = stages;
    j["timings"] = nlohmann::ordered_json::array();
    for (const auto& [stage, ms] : timings) {
        j["timings"].push_back({{"stage", stage}, {"ms", ms}});
    }
    j["final_answer"] = final_answer;
    return j;
}

Transcript Transcript::from_json(const nlohmann::json& j) {
    Transcript t;
    t.query = j.at("query").get<std::string>();
    t.video_ref = j.at("video_ref").get<std::string>();
    t.selected_frames = j.at("selected_frames").get<std::vector<int>>();
    t.trace = EcrsTrace::from_json(j.at("trace"));
    for (const auto& p : j.at("plans")) {
        ToolPlanRecord record;
        record.provenance = p.at("provenance").get<std::string>();
        record.plan = ToolPlan::from_json(p.at("plan"));
        record.plan.unknown_tools = p.value("unknown_tools", std::vector<std::string>{});
        t.plans.push_back(std::move(record));
    }
    t.modal_base = ModalInfo::from_json(j.at("modal_base"));
    t.modal_updated = ModalInfo::from_json(j.at("modal_updated"));
    for (const auto& a : j.at("answers")) t.answers.push_back(answer_from_json(a));
    t.clarifications.questions =
        j.at("clarifications").at("questions").get<std::vector<std::string>>();
    t.clarifications.truncated = j.at("clarifications").value("truncated", false);
    if (j.contains("report")) t.report = EvalReport::from_json(j["report"]);
    for (const auto& r : j.value("reflections", nlohmann::json::array())) {
        Reflection refl;
        refl.strategy = strategy_from_string(r.at("strategy").get<std::string>());
        refl.answer = answer_from_json(r.at("answer"));
        refl.confidence.value = r.at("confidence").get<double>();
        refl.confidence_source = r.value("confidence_source", "self-reported");
        t.reflections.push_back(std::move(refl));
    }
    t.aggregation_path = path_from_string(j.at("aggregation_path").get<std::string>());
    if (j.contains("stage3_error")) t.stage3_error = j["stage3_error"].get<std::string>();
    t.stages = j.at("stages").get<std::vector<std::string>>();
    for (const auto& timing : j.value("timings", nlohmann::json::array())) {
        t.timings.emplace_back(timing.at("stage").get<std::string>(),
                               timing.at("ms").get<double>());
    }
    t.final_answer = j.at("final_answer").get<std::string>();
    return t;
}

void mask_timings(nlohmann::ordered_json& j) {
    if (j.is_object()) {
        for (auto& [key, value] : j.items()) {
            if (key == "ms" || key == "latency_ms") {
                value = 0.0;
            } else {
                mask_timings(value);
            }
        }
    } else if (j.is_array()) {
        for (auto& item : j) mask_timings(item);
    }
}

}  // namespace vqe
