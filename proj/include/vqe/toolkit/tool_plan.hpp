#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace vqe {

// Parsed tool-selection output:
//   [ {"function": "Function Category", "tools": ["Tool1", "Tool2"]} ]
struct ToolPlanEntry {
    std::string function_category;  // free text, not normative
    std::vector<std::string> tools;
};

struct ToolPlan {
    std::vector<ToolPlanEntry> entries;
    std::vector<std::string> unknown_tools;  // flagged, never dropped

    bool empty() const { return entries.empty(); }

    // Planned tool names deduplicated in first-appearance order; each
    // planned tool runs at most once per question.
    std::vector<std::string> planned_tools() const;

    nlohmann::ordered_json to_json() const;
    static ToolPlan from_json(const nlohmann::json& j);
};

// Pulls the first balanced JSON array out of the model output and checks
// its shape. Tool names outside `known_tools` (when provided) are kept in
// the plan and flagged in unknown_tools. Throws MalformedPlan.
ToolPlan parse_tool_plan(const std::string& model_output,
                         const std::set<std::string>& known_tools = {});

}  // namespace vqe
