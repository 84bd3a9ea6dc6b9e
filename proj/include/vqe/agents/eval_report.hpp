#pragma once

#include <array>
#include <string>

#include <json.hpp>

namespace vqe {

struct DimensionScore {
    double value = 0.0;  // 0..5
    std::string reason;
};

// The critic's evaluation report: structured feedback, five scored
// dimensions, a 0-25 total and a 0-1 scalar reward. Local arithmetic is
// authoritative: total is always the dimension sum and scalar always
// total/25, whatever the model claimed; a disagreement is flagged.
struct EvalReport {
    std::string structured_feedback;
    DimensionScore visual_alignment;
    DimensionScore temporal_accuracy;
    DimensionScore option_disambiguation;
    DimensionScore reasoning_specificity;
    DimensionScore linguistic_precision;
    double total_score = 0.0;
    double scalar_reward = 0.0;
    bool arithmetic_corrected = false;

    double dimension_sum() const;

    nlohmann::ordered_json to_json() const;
    static EvalReport from_json(const nlohmann::json& j);
};

// Names in schema order.
extern const std::array<const char*, 5> kDimensionKeys;

// Extracts the first balanced JSON object from the model output and
// validates it against the report schema. Throws MalformedReport on shape
// problems and DimensionOutOfRange when any value leaves [0, 5].
EvalReport parse_eval_report(const std::string& model_output);

}  // namespace vqe
