#include "vqe/toolkit/modal_info.hpp"

#include <sstream>

namespace vqe {

const ToolResult* ModalInfo::find(const std::string& tool, const std::string& provenance) const {
    for (const ToolResult& r : entries) {
        if (r.tool_name == tool && r.provenance == provenance) return &r;
    }
    return nullptr;
}

std::string ModalInfo::render_context() const {
    std::ostringstream out;
    std::string current_provenance;
    bool first_group = true;
    for (const ToolResult& r : entries) {
        if (r.provenance != current_provenance || first_group) {
            if (!first_group) out << "\n";
            out << "[Findings for: " << r.provenance << "]\n";
            current_provenance = r.provenance;
            first_group = false;
        }
        out << r.tool_name << ": " << r.payload << "\n";
    }
    return out.str();
}

ModalInfo merge_modal_info(ModalInfo base, const ModalInfo& update) {
    for (const ToolResult& r : update.entries) {
        bool replaced = false;
        for (ToolResult& existing : base.entries) {
            if (existing.tool_name == r.tool_name && existing.provenance == r.provenance) {
                existing = r;  // last write wins, position preserved
                replaced = true;
                break;
            }
        }
        if (!replaced) base.entries.push_back(r);
    }
    base.warnings.insert(base.warnings.end(), update.warnings.begin(), update.warnings.end());
    return base;
}

nlohmann::ordered_json ModalInfo::to_json() const {
    nlohmann::ordered_json j;
    j["entries"] = nlohmann::ordered_json::array();
    for (const ToolResult& r : entries) {
        j["entries"].push_back({{"tool_name", r.tool_name},
                                {"payload", r.payload},
                                {"frame_scope", r.frame_scope},
                                {"latency_ms", r.latency_ms},
                                {"provenance", r.provenance}});
    }
    j["warnings"] = warnings;
    return j;
}

ModalInfo ModalInfo::from_json(const nlohmann::json& j) {
    ModalInfo info;
    for (const auto& r : j.at("entries")) {
        ToolResult t;
        t.tool_name = r.at("tool_name").get<std::string>();
        t.payload = r.at("payload").get<std::string>();
        t.frame_scope = r.at("frame_scope").get<std::vector<int>>();
        t.latency_ms = r.at("latency_ms").get<double>();
        t.provenance = r.at("provenance").get<std::string>();
        info.entries.push_back(std::move(t));
    }
    info.warnings = j.at("warnings").get<std::vector<std::string>>();
    return info;
}

}  // namespace vqe
