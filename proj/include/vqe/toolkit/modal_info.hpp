#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace vqe {

// One tool's findings for one triggering question.
struct ToolResult {
    std::string tool_name;
    std::string payload;          // nonempty on success
    std::vector<int> frame_scope;  // original pool indices consulted
    double latency_ms = 0.0;
    std::string provenance;       // the question that triggered the call
};

// Tool outputs keyed by (tool, provenance), in first-invocation order.
// Merging is associative with the empty value as identity; a duplicate
// (tool, provenance) keeps the latest payload in its original position.
struct ModalInfo {
    std::vector<ToolResult> entries;
    std::vector<std::string> warnings;  // skipped/failed tools, with reasons

    bool empty() const { return entries.empty(); }
    const ToolResult* find(const std::string& tool, const std::string& provenance) const;

    // Deterministic prompt block: one "Tool: payload" line per entry,
    // grouped under the triggering question.
    std::string render_context() const;

    nlohmann::ordered_json to_json() const;
    static ModalInfo from_json(const nlohmann::json& j);
};

ModalInfo merge_modal_info(ModalInfo base, const ModalInfo& update);

}  // namespace vqe
