#include "vqe/agents/model_backend.hpp"

#include <fstream>

#include "vqe/core/error.hpp"
#include "vqe/core/http.hpp"
#include "vqe/core/json_util.hpp"

namespace vqe {

using nlohmann::json;

ChatResponse ScriptedBackend::chat(const ChatRequest& request) {
    if (next_ >= script_.size()) {
        throw Error(ErrorKind::ScriptMismatch,
                    "script exhausted after " + std::to_string(script_.size()) + " calls");
    }
    const Entry& entry = script_[next_];
    if (!entry.match.empty() && request.prompt.find(entry.match) == std::string::npos) {
        throw Error(ErrorKind::ScriptMismatch,
                    "script entry " + std::to_string(next_) + " expects \"" + entry.match +
                        "\" in the prompt");
    }
    ++next_;
    return ChatResponse{entry.response, entry.logprob};
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_json(const json& j) {
    if (!j.is_array()) {
        throw Error(ErrorKind::InvalidConfig, "scripted backend wants a JSON list");
    }
    std::vector<Entry> script;
    for (const auto& item : j) {
        Entry e;
        e.match = item.value("match", "");
        e.response = item.at("response").get<std::string>();
        if (item.contains("logprob")) e.logprob = item["logprob"].get<double>();
        script.push_back(std::move(e));
    }
    return std::make_shared<ScriptedBackend>(std::move(script));
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open script " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorKind::InvalidConfig, "script " + path + " is not valid JSON");
    }
    return from_json(j);
}

ChatResponse RemoteChatBackend::chat(const ChatRequest& request) {
    json content = json::array();
    content.push_back({{"type", "text"}, {"text", request.prompt}});
    for (const Frame* frame : request.frames) {
        const Frame small = downscale_to_edge(*frame, attach_edge_);
        content.push_back(
            {{"type", "image"},
             {"width", small.width},
             {"height", small.height},
             {"payload", jsonutil::base64_encode(small.pixels.data(), small.pixels.size())}});
    }
    const json body = {{"messages", json::array({{{"role", "user"}, {"content", content}}})},
                       {"max_tokens", request.max_tokens}};

    const std::string reply = http_post_json(endpoint_, body.dump(), timeout_ms_, max_retries_);
    const json parsed = json::parse(reply, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("content") || !parsed["content"].is_string()) {
        throw Error(ErrorKind::EmptyResponse, "model reply carried no content field");
    }
    ChatResponse out;
    out.content = parsed["content"].get<std::string>();
    if (out.content.empty()) {
        throw Error(ErrorKind::EmptyResponse, "model reply was empty");
    }
    if (parsed.contains("logprobs") && parsed["logprobs"].is_number()) {
        out.logprob = parsed["logprobs"].get<double>();
    }
    return out;
}

}  // namespace vqe
