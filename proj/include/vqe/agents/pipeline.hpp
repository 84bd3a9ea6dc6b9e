#pragma once

#include <memory>
#include <string>

#include "vqe/agents/model_backend.hpp"
#include "vqe/agents/prompts.hpp"
#include "vqe/agents/transcript.hpp"
#include "vqe/relevance/embedder.hpp"
#include "vqe/toolkit/tool_registry.hpp"

namespace vqe {

// The three model roles. `meta` may alias `target`; it only serves the
// high-confidence merge call.
struct Backends {
    std::shared_ptr<ModelBackend> target;
    std::shared_ptr<ModelBackend> critic;
    std::shared_ptr<ModelBackend> meta;
};

struct PipelineConfig {
    SelectionConfig selection;
    int max_tokens = 1024;
    bool use_logprob_confidence = false;  // substitute exp(logprob) when offered
    int workers = 1;
};

// --- Parsers (model output -> typed values) ---------------------------------

// JSON list of sub-questions; empty means the critic accepts the answer.
// More than three are truncated to the first three. Throws
// MalformedClarification.
ClarificationSet parse_clarifications(const std::string& model_output);

// {"final_answer": str, "confidence": float in [0,1]}. Throws
// MalformedReflection / ConfidenceOutOfRange.
std::pair<std::string, ConfidenceScore> parse_reflection(const std::string& model_output);

// --- Pipeline operations -----------------------------------------------------

ToolPlan plan_tools(ModelBackend& backend, const std::string& question,
                    const ToolRegistry& registry, const PromptSet& prompts,
                    const FramePool& frames, int max_tokens);

AnswerRecord initial_answer(ModelBackend& backend, const std::string& query,
                            const FramePool& frames, const ModalInfo& modal,
                            const PromptSet& prompts, int max_tokens);

ClarificationSet clarify(ModelBackend& backend, const std::string& query,
                         const AnswerRecord& answer, const ModalInfo& modal,
                         const FramePool& frames, const PromptSet& prompts, int max_tokens);

EvalReport evaluate(ModelBackend& backend, const std::string& query, const AnswerRecord& answer,
                    const ModalInfo& merged_modal, const FramePool& frames,
                    const PromptSet& prompts, int max_tokens);

Reflection reflect(ModelBackend& backend, Strategy strategy, const std::string& query,
                   const AnswerRecord& initial, const EvalReport& report, const FramePool& frames,
                   const PromptSet& prompts, int max_tokens, bool use_logprob_confidence);

// The aggregation decision by itself: merge exactly when the smallest of
// the three confidences strictly exceeds 0.6.
AggregationPath aggregation_decision(double conf_conservative, double conf_neutral,
                                     double conf_aggressive);

// Merge path issues one meta call; argmax returns the highest-confidence
// answer, ties resolved conservative > neutral > aggressive.
std::pair<AnswerRecord, AggregationPath> aggregate(ModelBackend& meta_backend,
                                                   const std::string& query,
                                                   const AnswerRecord& initial,
                                                   const std::vector<Reflection>& trio,
                                                   const PromptSet& prompts, int max_tokens);

// The whole pipeline for one query. Stage-3 model failures never abort:
// the transcript degrades to the initial answer with the error recorded.
Transcript run_query(const FramePool& pool, const std::string& query, const Backends& backends,
                     const ToolRegistry& registry, const PromptSet& prompts,
                     const PipelineConfig& config, Embedder& embedder);

}  // namespace vqe
