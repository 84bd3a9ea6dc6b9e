#include "vqe/agents/prompts.hpp"

#include "vqe/core/error.hpp"

namespace vqe {

namespace {

const char* kToolSelection = R"PROMPT([Task]
Carefully analyze the video content and identify exactly what information needs to be retrieved to support answering the given question. To answer the question step by step, list all the physical entities related to the question you want to retrieve. You can provide your retrieve request by the following JSON format.

[Tool Functions]
The Tool Factory supports the following types of retrieval via specialized tools:
{tool_roster}

[Output format]
Use the following format to list the functional categories and corresponding tools required:
[
  {"function": "Function Category",
  "tools": ["Tool1", "Tool2"]}
]

[Question]
{text}

[Now begin]
Note that you don't need to answer the question in this step, so you don't need any information about the video or image. You only need to provide your retrieve request (it's optional), and I will help you retrieve the information you want. Please provide the json format.
)PROMPT";

const char* kInitialAnswer = R"PROMPT([Task]
Answer the question about the attached video frames. Ground your answer in what the frames show.

[Question]
{text}
{context_section}
[Output]
Answer directly and concisely.
)PROMPT";

const char* kClarification = R"PROMPT([Task]
You are a critic agent tasked with evaluating the quality of the initial answer generated by the target agent, based on the provided question, context, and video content. If the answer is deemed unsatisfactory, your goal is to help localize potential errors by generating one or more sub-questions. These sub-questions should be highly specific and firmly grounded in the visual or contextual evidence.

[Input Data]
Question: "{text}"
Answer: "{answer}"
Context: "{context}"

[Evaluation Criteria]
1. Check if the answer fully addresses the question
2. Verify all key elements from context are included
3. Assess whether video content supports the answer
4. If not, raise sub-questions to expose missing or uncertain reasoning

[Clarification Guidelines]
If the answer is incomplete, generate 1-3 ultra-specific clarification questions following these rules:
- Must start with: "What", "Where", "When", "Which", or "How"
- Must reference concrete elements from context/video
- No vague pronouns ("it", "they") - use specific nouns

[Output Format]
- Return []                               (for complete answers)
- Return ["question1?", "question2?", ...] (for incomplete answers)
)PROMPT";

const char* kEvalReport = R"PROMPT([Task]
You are a critic agent tasked with evaluating the quality of the initial answer generated by the target agent, using the given question and contextual information. Your goal is to provide structured diagnostic feedback by scoring the answer across multiple dimensions and computing a final scalar reward (0.0-1.0) based on the total score.

[Input Data]
Question: {text}
Context: {context}
Initial Answer: {initial_answer}

[Evaluation Criteria]
Rate the answer on the following five dimensions (0.0-5.0 scale for each):
- Visual Alignment: Is the answer aligned with visible video evidence?
- Temporal Accuracy: Is the answer consistent with the timeline or timestamps?
- Option Disambiguation: If multiple options are similar, does the answer clearly justify the selected one?
- Reasoning Specificity: Is the reasoning clear, focused, and appropriately detailed?
- Linguistic Precision: Is the answer grammatically correct and semantically accurate?

[Output Format]
Return a JSON object with the following fields:
{
  "structured_feedback": "...",
  "scores": {
    "visual_alignment": { "value": float, "reason": "..." },
    "temporal_accuracy": { "value": float, "reason": "..." },
    "option_disambiguation": { "value": float, "reason": "..." },
    "reasoning_specificity": { "value": float, "reason": "..." },
    "linguistic_precision": { "value": float, "reason": "..." }
  },
  "total_score": float (0.0-25.0),
  "scalar_reward": float (0.0-1.0)
}
)PROMPT";

const char* kReflectConservative = R"PROMPT([Task]
You are a conservative agent responsible for validating the initial model answer. Your role is to preserve the original answer unless there is irrefutable visual evidence that directly contradicts it. Do not revise or reinterpret the reasoning or scene elements unless the contradiction is absolute.

[Reflection Requirement]
Only revise the final answer itself - do not modify scene elements or reasoning logic. If the original answer remains potentially valid, it should be retained. This strategy aims for minimal intervention: conservative reflection focuses on maintaining output stability unless overwhelming visual contradiction is present.

[Input]
- Question: {text}
- Initial Answer: {initial_answer}
- Eval Report: {report}

[Output Format]
Use the following format to provide the final decision after conservative validation. Only output the revised answer and your confidence score - no explanations, no justifications, and no extra text of any kind.
{
  "final_answer": "<your final revised answer>",
  "confidence": <float between 0 and 1>
}
)PROMPT";

const char* kReflectNeutral = R"PROMPT([Task]
You are a neutral agent responsible for reassessing the initial model answer by correcting only visual misperceptions of scene elements. Your role is to revise the perceptual input (i.e., object/entity grounding) while preserving the original reasoning logic. Do not introduce any new reasoning steps.

[Reflection Requirement]
If the original answer is based on a misidentified visual entity, correct that grounding (e.g., object type, color, spatial position). Keep the interpretation process unchanged. This strategy focuses on refining what is seen, not how it is reasoned.

[Input]
- Question: {text}
- Initial Answer: {initial_answer}
- Eval Report: {report}

[Output Format]
Use the following format to provide the final revised answer after entity-level correction. Only output the revised answer and its confidence score - no explanations, no justifications, and no extra text of any kind.
{
  "final_answer": "<your final revised answer>",
  "confidence": <float between 0 and 1>
}
)PROMPT";

const char* kReflectAggressive = R"PROMPT([Task]
You are an aggressive agent responsible for actively challenging the initial model answer. Your role is to revise both the reasoning process and the visual understanding in order to reconstruct a superior alternative.

[Reflection Requirement]
This strategy requires modifying both the reasoning steps and the associated scene entities. It involves the widest scope of change and is intended to completely overturn the original logic and rebuild a more accurate answer from scratch. Accept loose semantic alignment, reinterpret ambiguous scenes, and prioritize alternative perspectives over the original.

[Input]
- Question: {text}
- Initial Answer: {initial_answer}
- Eval Report: {report}

[Output Format]
Use the following format to provide the final revised answer after full reasoning and entity-level revision. Only output the revised answer and your confidence score - no explanations, no justifications, and no extra text of any kind.
{
  "final_answer": "<your final revised answer>",
  "confidence": <float between 0 and 1>
}
)PROMPT";

const char* kMetaAggregation = R"PROMPT([Task]
You are a specialized Meta-Agent for video question answering. Your role is to integrate the answers and confidence scores from three agents with different reflection strategies. Your goal is to synthesize a final answer by evaluating answer quality, confidence levels, and semantic overlap: extract shared components and consistent semantic information, remove contradictions or unsupported segments, and produce a final, coherent answer that integrates the common insights.

[Multi-Perspective Inputs]
- Conservative Agent (Answer-Focused Reflection)
  Answer: {answer_conservative}, Confidence: {conf_conservative}
- Neutral Agent (Entity-Centric Reflection)
  Answer: {answer_neutral}, Confidence: {conf_neutral}
- Aggressive Agent (Reasoning-Driven Reflection)
  Answer: {answer_aggressive}, Confidence: {conf_aggressive}

[Input]
- Question: {text}
- Initial Answer: {initial_answer}

[Output Format]
Use the following format to provide the final revised answer. Only output the revised answer - no explanations, no justifications, and no extra text of any kind.
{
  "final_answer": "<your final revised answer>",
  "confidence": <float between 0 and 1>
}
)PROMPT";

}  // namespace

PromptSet PromptSet::defaults() {
    PromptSet p;
    p.tool_selection = kToolSelection;
    p.initial_answer = kInitialAnswer;
    p.clarification = kClarification;
    p.eval_report = kEvalReport;
    p.reflect_conservative = kReflectConservative;
    p.reflect_neutral = kReflectNeutral;
    p.reflect_aggressive = kReflectAggressive;
    p.meta_aggregation = kMetaAggregation;
    return p;
}

void PromptSet::apply_overrides(const std::map<std::string, std::string>& by_name) {
    for (const auto& [name, text] : by_name) {
        if (name == "tool_selection") tool_selection = text;
        else if (name == "initial_answer") initial_answer = text;
        else if (name == "clarification") clarification = text;
        else if (name == "eval_report") eval_report = text;
        else if (name == "reflect_conservative") reflect_conservative = text;
        else if (name == "reflect_neutral") reflect_neutral = text;
        else if (name == "reflect_aggressive") reflect_aggressive = text;
        else if (name == "meta_aggregation") meta_aggregation = text;
        else throw Error(ErrorKind::InvalidConfig, "unknown prompt template: " + name);
    }
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& vars) {
    std::string out = tmpl;
    for (const auto& [key, value] : vars) {
        const std::string token = "{" + key + "}";
        for (std::size_t pos = out.find(token); pos != std::string::npos;
             pos = out.find(token, pos + value.size())) {
            out.replace(pos, token.size(), value);
        }
    }
    return out;
}

}  // namespace vqe
