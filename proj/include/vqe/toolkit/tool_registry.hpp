#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vqe/media/frame.hpp"
#include "vqe/toolkit/modal_info.hpp"
#include "vqe/toolkit/tool_plan.hpp"

namespace vqe {

// A tool adapter answers one (query, frames) request with a text payload.
// No ML ships in-repo: adapters are canned stubs or remote JSON services.
class ToolAdapter {
public:
    virtual ~ToolAdapter() = default;
    virtual std::string run(const std::string& query, const FramePool& frames) = 0;
};

// First stub response whose `match` substring occurs in the query wins;
// an empty match string acts as a catch-all.
struct StubResponse {
    std::string match;
    std::string payload;
};

class StubToolAdapter : public ToolAdapter {
public:
    explicit StubToolAdapter(std::vector<StubResponse> responses)
        : responses_(std::move(responses)) {}
    std::string run(const std::string& query, const FramePool& frames) override;

private:
    std::vector<StubResponse> responses_;
};

// Remote wire contract:
//   request  {"tool": name, "query": text,
//             "frames": [{"index", "width", "height", "payload": b64 rgb24}]}
//   response {"payload": text}
class RemoteToolAdapter : public ToolAdapter {
public:
    RemoteToolAdapter(std::string tool_name, std::string endpoint, int timeout_ms = 10000,
                      int max_retries = 2)
        : tool_name_(std::move(tool_name)),
          endpoint_(std::move(endpoint)),
          timeout_ms_(timeout_ms),
          max_retries_(max_retries) {}
    std::string run(const std::string& query, const FramePool& frames) override;

private:
    std::string tool_name_;
    std::string endpoint_;
    int timeout_ms_;
    int max_retries_;
};

struct ToolSpec {
    std::string name;
    std::string function_category;
    std::shared_ptr<ToolAdapter> adapter;
};

class ToolRegistry {
public:
    void add(ToolSpec spec);  // throws InvalidConfig on duplicate names
    const ToolSpec* resolve(const std::string& name) const;
    std::set<std::string> names() const;
    std::vector<std::string> ordered_names() const;
    bool empty() const { return tools_.empty(); }

    // Registry file: JSON map of tool name to
    //   {"mode":"stub","responses":[{"match":substr,"payload":text}]}
    // or {"mode":"remote","endpoint":"http://..."}
    // with an optional "category" on either.
    static ToolRegistry from_json(const nlohmann::json& j);
    static ToolRegistry from_file(const std::string& path);

private:
    std::vector<ToolSpec> tools_;  // insertion order preserved for rosters
};

// Runs each resolvable planned tool once over (query, frames), provenance
// set to the query. Unresolvable or failing tools degrade to warnings.
// Throws AllToolsUnavailable only when a nonempty plan resolves nothing;
// an empty plan yields an empty ModalInfo.
ModalInfo invoke_tools(const ToolPlan& plan, const ToolRegistry& registry,
                       const std::string& query, const FramePool& frames);

}  // namespace vqe
