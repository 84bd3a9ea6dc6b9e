#include "vqe/toolkit/tool_plan.hpp"

#include <algorithm>

#include "vqe/core/error.hpp"
#include "vqe/core/json_util.hpp"

namespace vqe {

std::vector<std::string> ToolPlan::planned_tools() const {
    std::vector<std::string> out;
    for (const ToolPlanEntry& e : entries) {
        for (const std::string& t : e.tools) {
            if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
        }
    }
    return out;
}

ToolPlan parse_tool_plan(const std::string& model_output,
                         const std::set<std::string>& known_tools) {
    auto array = jsonutil::extract_first_array(model_output);
    if (!array) {
        throw Error(ErrorKind::MalformedPlan, "no balanced JSON array in tool-selection output");
    }

    ToolPlan plan;
    for (const auto& item : *array) {
        if (!item.is_object() || !item.contains("function") || !item.contains("tools") ||
            !item["function"].is_string() || !item["tools"].is_array()) {
            throw Error(ErrorKind::MalformedPlan,
                        "plan entries must be {\"function\": str, \"tools\": [str]}");
        }
        ToolPlanEntry entry;
        entry.function_category = item["function"].get<std::string>();
        for (const auto& t : item["tools"]) {
            if (!t.is_string()) {
                throw Error(ErrorKind::MalformedPlan, "tool names must be strings");
            }
            entry.tools.push_back(t.get<std::string>());
            if (!known_tools.empty() && known_tools.count(entry.tools.back()) == 0) {
                plan.unknown_tools.push_back(entry.tools.back());
            }
        }
        plan.entries.push_back(std::move(entry));
    }
    return plan;
}

nlohmann::ordered_json ToolPlan::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const ToolPlanEntry& e : entries) {
        j.push_back({{"function", e.function_category}, {"tools", e.tools}});
    }
    return j;
}

ToolPlan ToolPlan::from_json(const nlohmann::json& j) {
    return parse_tool_plan(j.dump());
}

}  // namespace vqe
