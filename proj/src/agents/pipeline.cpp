#include "vqe/agents/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "vqe/core/error.hpp"
#include "vqe/core/json_util.hpp"

namespace vqe {

namespace {

constexpr const char* kRetrySuffix =
    "\n\nYour previous reply was not valid JSON. Reply again with only the required JSON.";

std::vector<const Frame*> frame_refs(const FramePool& pool) {
    std::vector<const Frame*> refs;
    refs.reserve(pool.frames.size());
    for (const Frame& f : pool.frames) refs.push_back(&f);
    return refs;
}

// One model call with the shared malformed-output policy: a reply whose
// JSON cannot be extracted earns exactly one corrective re-prompt.
template <typename Parse>
auto call_and_parse(ModelBackend& backend, ChatRequest request, Parse parse)
    -> decltype(parse(std::declval<ChatResponse>())) {
    const ChatResponse first = backend.chat(request);
    try {
        return parse(first);
    } catch (const Error& e) {
        const bool malformed = e.kind() == ErrorKind::MalformedPlan ||
                               e.kind() == ErrorKind::MalformedClarification ||
                               e.kind() == ErrorKind::MalformedReport ||
                               e.kind() == ErrorKind::MalformedReflection;
        if (!malformed) throw;
        request.prompt += kRetrySuffix;
        return parse(backend.chat(request));
    }
}

std::string roster_text(const ToolRegistry& registry) {
    std::ostringstream out;
    for (const std::string& name : registry.ordered_names()) {
        const ToolSpec* spec = registry.resolve(name);
        out << "- " << name;
        if (!spec->function_category.empty()) out << " (" << spec->function_category << ")";
        out << "\n";
    }
    return out.str();
}

std::string format_confidence(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

class StageClock {
public:
    explicit StageClock(Transcript& transcript) : transcript_(transcript) {}

    template <typename F>
    auto run(const std::string& stage, F&& body) {
        const auto start = std::chrono::steady_clock::now();
        transcript_.stages.push_back(stage);
        if constexpr (std::is_void_v<decltype(body())>) {
            body();
            record(stage, start);
        } else {
            auto result = body();
            record(stage, start);
            return result;
        }
    }

private:
    void record(const std::string& stage, std::chrono::steady_clock::time_point start) {
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        transcript_.timings.emplace_back(stage, ms);
    }

    Transcript& transcript_;
};

}  // namespace

ClarificationSet parse_clarifications(const std::string& model_output) {
    const auto array = jsonutil::extract_first_array(model_output);
    if (!array) {
        throw Error(ErrorKind::MalformedClarification,
                    "no balanced JSON list in clarification output");
    }
    ClarificationSet set;
    for (const auto& q : *array) {
        if (!q.is_string()) {
            throw Error(ErrorKind::MalformedClarification, "clarification entries must be strings");
        }
        set.questions.push_back(q.get<std::string>());
    }
    if (set.questions.size() > 3) {
        set.questions.resize(3);  // the prompt mandates 1-3
        set.truncated = true;
    }
    return set;
}

std::pair<std::string, ConfidenceScore> parse_reflection(const std::string& model_output) {
    const auto obj = jsonutil::extract_first_object(model_output);
    if (!obj || !obj->contains("final_answer") || !(*obj)["final_answer"].is_string() ||
        !obj->contains("confidence") || !(*obj)["confidence"].is_number()) {
        throw Error(ErrorKind::MalformedReflection,
                    "reflection output needs {\"final_answer\": str, \"confidence\": number}");
    }
    const double confidence = (*obj)["confidence"].get<double>();
    if (confidence < 0.0 || confidence > 1.0) {
        throw Error(ErrorKind::ConfidenceOutOfRange,
                    "confidence " + std::to_string(confidence) + " outside [0, 1]");
    }
    return {(*obj)["final_answer"].get<std::string>(), ConfidenceScore{confidence}};
}

ToolPlan plan_tools(ModelBackend& backend, const std::string& question,
                    const ToolRegistry& registry, const PromptSet& prompts,
                    const FramePool& frames, int max_tokens) {
    ChatRequest request;
    request.prompt = render_template(prompts.tool_selection,
                                     {{"tool_roster", roster_text(registry)}, {"text", question}});
    request.frames = frame_refs(frames);
    request.max_tokens = max_tokens;
    const auto known = registry.names();
    return call_and_parse(backend, std::move(request), [&](const ChatResponse& r) {
        return parse_tool_plan(r.content, known);
    });
}

AnswerRecord initial_answer(ModelBackend& backend, const std::string& query,
                            const FramePool& frames, const ModalInfo& modal,
                            const PromptSet& prompts, int max_tokens) {
    if (frames.empty()) throw Error(ErrorKind::InvalidFrame, "cannot answer without frames");

    // An empty ModalInfo keeps the findings section out of the prompt
    // entirely.
    std::string context_section;
    if (!modal.empty()) {
        context_section = "\n[Tool Findings]\n" + modal.render_context();
    }
    ChatRequest request;
    request.prompt = render_template(prompts.initial_answer,
                                     {{"text", query}, {"context_section", context_section}});
    request.frames = frame_refs(frames);
    request.max_tokens = max_tokens;

    const ChatResponse response = backend.chat(request);
    if (response.content.empty()) {
        throw Error(ErrorKind::EmptyResponse, "backend returned an empty answer");
    }
    return AnswerRecord{response.content, AnswerRecord::Kind::initial, std::nullopt};
}

ClarificationSet clarify(ModelBackend& backend, const std::string& query,
                         const AnswerRecord& answer, const ModalInfo& modal,
                         const FramePool& frames, const PromptSet& prompts, int max_tokens) {
    if (answer.kind != AnswerRecord::Kind::initial) {
        throw Error(ErrorKind::InvalidConfig, "clarify expects the initial answer");
    }
    ChatRequest request;
    request.prompt = render_template(
        prompts.clarification,
        {{"text", query}, {"answer", answer.text}, {"context", modal.render_context()}});
    request.frames = frame_refs(frames);
    request.max_tokens = max_tokens;
    return call_and_parse(backend, std::move(request), [](const ChatResponse& r) {
        return parse_clarifications(r.content);
    });
}

EvalReport evaluate(ModelBackend& backend, const std::string& query, const AnswerRecord& answer,
                    const ModalInfo& merged_modal, const FramePool& frames,
                    const PromptSet& prompts, int max_tokens) {
    ChatRequest request;
    request.prompt = render_template(prompts.eval_report, {{"text", query},
                                                           {"context", merged_modal.render_context()},
                                                           {"initial_answer", answer.text}});
    request.frames = frame_refs(frames);
    request.max_tokens = max_tokens;
    return call_and_parse(backend, std::move(request), [](const ChatResponse& r) {
        return parse_eval_report(r.content);
    });
}

Reflection reflect(ModelBackend& backend, Strategy strategy, const std::string& query,
                   const AnswerRecord& initial, const EvalReport& report, const FramePool& frames,
                   const PromptSet& prompts, int max_tokens, bool use_logprob_confidence) {
    const std::string* tmpl = nullptr;
    switch (strategy) {
        case Strategy::conservative: tmpl = &prompts.reflect_conservative; break;
        case Strategy::neutral: tmpl = &prompts.reflect_neutral; break;
        case Strategy::aggressive: tmpl = &prompts.reflect_aggressive; break;
    }
    ChatRequest request;
    request.prompt = render_template(*tmpl, {{"text", query},
                                             {"initial_answer", initial.text},
                                             {"report", report.to_json().dump(2)}});
    request.frames = frame_refs(frames);
    request.max_tokens = max_tokens;

    Reflection out;
    out.strategy = strategy;
    out.confidence_source = "self-reported";
    auto [answer_text, confidence] = call_and_parse(
        backend, std::move(request),
        [&](const ChatResponse& r) -> std::pair<std::string, ConfidenceScore> {
            auto parsed = parse_reflection(r.content);
            if (use_logprob_confidence && r.logprob) {
                const double p = std::exp(*r.logprob);
                if (p < 0.0 || p > 1.0) {
                    throw Error(ErrorKind::ConfidenceOutOfRange,
                                "logprob-derived confidence outside [0, 1]");
                }
                out.confidence_source = "logprob";
                parsed.second = ConfidenceScore{p};
            }
            return parsed;
        });
    out.answer = AnswerRecord{std::move(answer_text), AnswerRecord::Kind::reflected, strategy};
    out.confidence = confidence;
    return out;
}

AggregationPath aggregation_decision(double conf_conservative, double conf_neutral,
                                     double conf_aggressive) {
    const double lowest = std::min(conf_conservative, std::min(conf_neutral, conf_aggressive));
    return lowest > 0.6 ? AggregationPath::merge : AggregationPath::argmax;
}

std::pair<AnswerRecord, AggregationPath> aggregate(ModelBackend& meta_backend,
                                                   const std::string& query,
                                                   const AnswerRecord& initial,
                                                   const std::vector<Reflection>& trio,
                                                   const PromptSet& prompts, int max_tokens) {
    if (trio.size() != 3) {
        throw Error(ErrorKind::InvalidConfig, "aggregation expects exactly three reflections");
    }
    const Reflection* by_strategy[3] = {nullptr, nullptr, nullptr};
    for (const Reflection& r : trio) by_strategy[static_cast<int>(r.strategy)] = &r;
    for (const Reflection* r : by_strategy) {
        if (!r) throw Error(ErrorKind::InvalidConfig, "aggregation needs one of each strategy");
    }
    const Reflection& conservative = *by_strategy[static_cast<int>(Strategy::conservative)];
    const Reflection& neutral = *by_strategy[static_cast<int>(Strategy::neutral)];
    const Reflection& aggressive = *by_strategy[static_cast<int>(Strategy::aggressive)];

    const AggregationPath path = aggregation_decision(
        conservative.confidence.value, neutral.confidence.value, aggressive.confidence.value);

    if (path == AggregationPath::argmax) {
        // Fixed tie order: conservative beats neutral beats aggressive.
        const Reflection* best = &conservative;
        if (neutral.confidence.value > best->confidence.value) best = &neutral;
        if (aggressive.confidence.value > best->confidence.value) best = &aggressive;
        return {AnswerRecord{best->answer.text, AnswerRecord::Kind::final, std::nullopt}, path};
    }

    ChatRequest request;
    request.prompt = render_template(
        prompts.meta_aggregation,
        {{"text", query},
         {"initial_answer", initial.text},
         {"answer_conservative", conservative.answer.text},
         {"answer_neutral", neutral.answer.text},
         {"answer_aggressive", aggressive.answer.text},
         {"conf_conservative", format_confidence(conservative.confidence.value)},
         {"conf_neutral", format_confidence(neutral.confidence.value)},
         {"conf_aggressive", format_confidence(aggressive.confidence.value)}});
    request.max_tokens = max_tokens;
    auto [merged_text, confidence] = call_and_parse(
        meta_backend, std::move(request),
        [](const ChatResponse& r) { return parse_reflection(r.content); });
    (void)confidence;
    return {AnswerRecord{std::move(merged_text), AnswerRecord::Kind::final, std::nullopt}, path};
}

Transcript run_query(const FramePool& pool, const std::string& query, const Backends& backends,
                     const ToolRegistry& registry, const PromptSet& prompts,
                     const PipelineConfig& config, Embedder& embedder) {
    if (!backends.target || !backends.critic) {
        throw Error(ErrorKind::InvalidConfig, "run_query needs target and critic backends");
    }
    ModelBackend& target = *backends.target;
    ModelBackend& critic = *backends.critic;
    ModelBackend& meta = backends.meta ? *backends.meta : *backends.target;

    Transcript t;
    t.query = query;
    t.video_ref = pool.source_id;
    StageClock clock(t);

    // Stage 1: frame selection.
    SelectionResult selection = clock.run("select", [&] {
        return select_keyframes(pool, query, embedder, config.selection, config.workers);
    });
    t.selected_frames = selection.trace.final_set;
    t.trace = std::move(selection.trace);
    const FramePool& frames = selection.selected;

    // Stage 2: tool-augmented answering.
    ToolPlan plan = clock.run("plan", [&] {
        return plan_tools(target, query, registry, prompts, frames, config.max_tokens);
    });
    t.plans.push_back({query, plan});
    t.modal_base = clock.run("invoke", [&] { return invoke_tools(plan, registry, query, frames); });
    AnswerRecord initial = clock.run("answer", [&] {
        return initial_answer(target, query, frames, t.modal_base, prompts, config.max_tokens);
    });
    t.answers.push_back(initial);

    // Stage 3: critic evaluation and multi-perspective reflection. Any model
    // failure here keeps the pipeline total: fall back to the initial answer
    // and record the cause.
    try {
        t.clarifications = clock.run("clarify", [&] {
            return clarify(critic, query, initial, t.modal_base, frames, prompts,
                           config.max_tokens);
        });

        if (t.clarifications.accepts_initial()) {
            t.modal_updated = t.modal_base;
            t.aggregation_path = AggregationPath::accepted_without_reflection;
            t.answers.push_back({initial.text, AnswerRecord::Kind::final, std::nullopt});
            t.final_answer = initial.text;
            return t;
        }

        t.modal_updated = t.modal_base;
        for (const std::string& question : t.clarifications.questions) {
            ToolPlan update_plan = clock.run("replan", [&] {
                return plan_tools(critic, question, registry, prompts, frames, config.max_tokens);
            });
            t.plans.push_back({question, update_plan});
            ModalInfo update = clock.run("invoke", [&] {
                return invoke_tools(update_plan, registry, question, frames);
            });
            t.modal_updated = merge_modal_info(std::move(t.modal_updated), update);
        }

        t.report = clock.run("evaluate", [&] {
            return evaluate(critic, query, initial, t.modal_updated, frames, prompts,
                            config.max_tokens);
        });

        for (Strategy s : {Strategy::conservative, Strategy::neutral, Strategy::aggressive}) {
            const std::string stage = "reflect:" + std::string(to_string(s));
            Reflection r = clock.run(stage, [&] {
                return reflect(target, s, query, initial, *t.report, frames, prompts,
                               config.max_tokens, config.use_logprob_confidence);
            });
            t.answers.push_back(r.answer);
            t.reflections.push_back(std::move(r));
        }

        auto [final_record, path] = clock.run("aggregate", [&] {
            return aggregate(meta, query, initial, t.reflections, prompts, config.max_tokens);
        });
        t.aggregation_path = path;
        t.final_answer = final_record.text;
        t.answers.push_back(std::move(final_record));
    } catch (const Error& e) {
        t.aggregation_path = AggregationPath::degraded;
        t.stage3_error = e.what();
        t.final_answer = initial.text;
        t.answers.push_back({initial.text, AnswerRecord::Kind::final, std::nullopt});
    }
    return t;
}

}  // namespace vqe
