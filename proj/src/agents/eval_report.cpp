#include "vqe/agents/eval_report.hpp"

#include <cmath>

#include "vqe/core/error.hpp"
#include "vqe/core/json_util.hpp"

namespace vqe {

const std::array<const char*, 5> kDimensionKeys = {
    "visual_alignment", "temporal_accuracy", "option_disambiguation", "reasoning_specificity",
    "linguistic_precision"};

namespace {

DimensionScore* dimension_slot(EvalReport& report, const std::string& key) {
    if (key == "visual_alignment") return &report.visual_alignment;
    if (key == "temporal_accuracy") return &report.temporal_accuracy;
    if (key == "option_disambiguation") return &report.option_disambiguation;
    if (key == "reasoning_specificity") return &report.reasoning_specificity;
    if (key == "linguistic_precision") return &report.linguistic_precision;
    return nullptr;
}

}  // namespace

double EvalReport::dimension_sum() const {
    return visual_alignment.value + temporal_accuracy.value + option_disambiguation.value +
           reasoning_specificity.value + linguistic_precision.value;
}

EvalReport parse_eval_report(const std::string& model_output) {
    const auto candidate = jsonutil::extract_first_object(model_output);
    if (!candidate) {
        throw Error(ErrorKind::MalformedReport, "no balanced JSON object in evaluation output");
    }
    const nlohmann::json& j = *candidate;
    if (!j.contains("structured_feedback") || !j["structured_feedback"].is_string() ||
        !j.contains("scores") || !j["scores"].is_object() || !j.contains("total_score") ||
        !j["total_score"].is_number() || !j.contains("scalar_reward") ||
        !j["scalar_reward"].is_number()) {
        throw Error(ErrorKind::MalformedReport, "report is missing required fields");
    }

    EvalReport report;
    report.structured_feedback = j["structured_feedback"].get<std::string>();
    for (const char* key : kDimensionKeys) {
        if (!j["scores"].contains(key) || !j["scores"][key].is_object() ||
            !j["scores"][key].contains("value") || !j["scores"][key]["value"].is_number()) {
            throw Error(ErrorKind::MalformedReport, std::string("missing dimension ") + key);
        }
        DimensionScore score;
        score.value = j["scores"][key]["value"].get<double>();
        score.reason = j["scores"][key].value("reason", "");
        if (score.value < 0.0 || score.value > 5.0) {
            throw Error(ErrorKind::DimensionOutOfRange,
                        std::string(key) + " = " + std::to_string(score.value) +
                            " is outside [0, 5]");
        }
        *dimension_slot(report, key) = score;
    }

    const double claimed_total = j["total_score"].get<double>();
    const double claimed_scalar = j["scalar_reward"].get<double>();
    report.total_score = report.dimension_sum();
    report.scalar_reward = report.total_score / 25.0;
    report.arithmetic_corrected = std::fabs(claimed_total - report.total_score) > 1e-6 ||
                                  std::fabs(claimed_scalar - report.scalar_reward) > 1e-6;
    return report;
}

nlohmann::ordered_json EvalReport::to_json() const {
    nlohmann::ordered_json scores;
    const DimensionScore* dims[5] = {&visual_alignment, &temporal_accuracy, &option_disambiguation,
                                     &reasoning_specificity, &linguistic_precision};
    for (std::size_t i = 0; i < kDimensionKeys.size(); ++i) {
        scores[kDimensionKeys[i]] = {{"value", dims[i]->value}, {"reason", dims[i]->reason}};
    }
    return {{"structured_feedback", structured_feedback},
            {"scores", std::move(scores)},
            {"total_score", total_score},
            {"scalar_reward", scalar_reward},
            {"arithmetic_corrected", arithmetic_corrected}};
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
    EvalReport report;
    report.structured_feedback = j.at("structured_feedback").get<std::string>();
    for (const char* key : kDimensionKeys) {
        DimensionScore score;
        score.value = j.at("scores").at(key).at("value").get<double>();
        score.reason = j.at("scores").at(key).value("reason", "");
        *dimension_slot(report, key) = score;
    }
    report.total_score = j.at("total_score").get<double>();
    report.scalar_reward = j.at("scalar_reward").get<double>();
    report.arithmetic_corrected = j.value("arithmetic_corrected", false);
    return report;
}

}  // namespace vqe
