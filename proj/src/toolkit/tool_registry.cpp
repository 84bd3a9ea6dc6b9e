#include "vqe/toolkit/tool_registry.hpp"

#include <chrono>
#include <fstream>

#include "vqe/core/error.hpp"
#include "vqe/core/http.hpp"
#include "vqe/core/json_util.hpp"

namespace vqe {

using nlohmann::json;

std::string StubToolAdapter::run(const std::string& query, const FramePool&) {
    for (const StubResponse& r : responses_) {
        if (r.match.empty() || query.find(r.match) != std::string::npos) {
            return r.payload;
        }
    }
    throw Error(ErrorKind::EmptyResponse, "no stub response matches the query");
}

std::string RemoteToolAdapter::run(const std::string& query, const FramePool& frames) {
    json request;
    request["tool"] = tool_name_;
    request["query"] = query;
    request["frames"] = json::array();
    for (const Frame& f : frames.frames) {
        request["frames"].push_back(
            {{"index", f.index},
             {"width", f.width},
             {"height", f.height},
             {"payload", jsonutil::base64_encode(f.pixels.data(), f.pixels.size())}});
    }
    const std::string body = http_post_json(endpoint_, request.dump(), timeout_ms_, max_retries_);
    const json response = json::parse(body, nullptr, false);
    if (response.is_discarded() || !response.contains("payload") ||
        !response["payload"].is_string()) {
        throw Error(ErrorKind::EmptyResponse, "tool " + tool_name_ + " returned no payload");
    }
    return response["payload"].get<std::string>();
}

void ToolRegistry::add(ToolSpec spec) {
    if (resolve(spec.name)) {
        throw Error(ErrorKind::InvalidConfig, "duplicate tool name: " + spec.name);
    }
    tools_.push_back(std::move(spec));
}

const ToolSpec* ToolRegistry::resolve(const std::string& name) const {
    for (const ToolSpec& t : tools_) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

std::set<std::string> ToolRegistry::names() const {
    std::set<std::string> out;
    for (const ToolSpec& t : tools_) out.insert(t.name);
    return out;
}

std::vector<std::string> ToolRegistry::ordered_names() const {
    std::vector<std::string> out;
    out.reserve(tools_.size());
    for (const ToolSpec& t : tools_) out.push_back(t.name);
    return out;
}

ToolRegistry ToolRegistry::from_json(const json& j) {
    if (!j.is_object()) {
        throw Error(ErrorKind::InvalidConfig, "tool registry must be a JSON object");
    }
    ToolRegistry registry;
    for (const auto& [name, cfg] : j.items()) {
        if (!cfg.is_object() || !cfg.contains("mode")) {
            throw Error(ErrorKind::InvalidConfig, "tool " + name + " needs a mode");
        }
        ToolSpec spec;
        spec.name = name;
        spec.function_category = cfg.value("category", "");
        const std::string mode = cfg["mode"].get<std::string>();
        if (mode == "stub") {
            std::vector<StubResponse> responses;
            for (const auto& r : cfg.value("responses", json::array())) {
                responses.push_back({r.value("match", ""), r.at("payload").get<std::string>()});
            }
            spec.adapter = std::make_shared<StubToolAdapter>(std::move(responses));
        } else if (mode == "remote") {
            if (!cfg.contains("endpoint")) {
                throw Error(ErrorKind::InvalidConfig, "remote tool " + name + " needs an endpoint");
            }
            spec.adapter = std::make_shared<RemoteToolAdapter>(
                name, cfg["endpoint"].get<std::string>(), cfg.value("timeout_ms", 10000),
                cfg.value("max_retries", 2));
        } else {
            throw Error(ErrorKind::InvalidConfig, "tool " + name + " has unknown mode " + mode);
        }
        registry.add(std::move(spec));
    }
    return registry;
}

ToolRegistry ToolRegistry::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open tool registry " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorKind::InvalidConfig, "tool registry " + path + " is not valid JSON");
    }
    return from_json(j);
}

ModalInfo invoke_tools(const ToolPlan& plan, const ToolRegistry& registry,
                       const std::string& query, const FramePool& frames) {
    ModalInfo info;
    const std::vector<std::string> planned = plan.planned_tools();
    if (planned.empty()) return info;  // empty plan is legal: answer from raw frames

    std::vector<int> scope;
    scope.reserve(frames.frames.size());
    for (const Frame& f : frames.frames) scope.push_back(f.index);

    int resolvable = 0;
    for (const std::string& name : planned) {
        const ToolSpec* spec = registry.resolve(name);
        if (!spec) {
            info.warnings.push_back("tool not in registry, skipped: " + name);
            continue;
        }
        ++resolvable;
        const auto start = std::chrono::steady_clock::now();
        try {
            std::string payload = spec->adapter->run(query, frames);
            if (payload.empty()) {
                throw Error(ErrorKind::EmptyResponse, "tool returned an empty payload");
            }
            const auto elapsed = std::chrono::duration<double, std::milli>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
            info.entries.push_back({name, std::move(payload), scope, elapsed, query});
        } catch (const std::exception& e) {
            // One failing adapter never suppresses the others.
            info.warnings.push_back("tool " + name + " failed: " + e.what());
        }
    }

    if (resolvable == 0) {
        throw Error(ErrorKind::AllToolsUnavailable,
                    "none of the " + std::to_string(planned.size()) + " planned tools resolve");
    }
    return info;
}

}  // namespace vqe
