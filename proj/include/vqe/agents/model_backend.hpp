#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqe/media/frame.hpp"

namespace vqe {

// One chat turn to a model: prompt text plus optional frame attachments.
struct ChatRequest {
    std::string prompt;
    std::vector<const Frame*> frames;
    int max_tokens = 1024;
};

struct ChatResponse {
    std::string content;
    std::optional<double> logprob;  // summed answer log-probability, when offered
};

class ModelBackend {
public:
    virtual ~ModelBackend() = default;
    virtual ChatResponse chat(const ChatRequest& request) = 0;
};

// Replays a fixed script strictly in order. Each entry's `match` substring
// must occur in the outgoing prompt; a mismatch or an exhausted script
// raises instead of fabricating a reply.
class ScriptedBackend : public ModelBackend {
public:
    struct Entry {
        std::string match;
        std::string response;
        std::optional<double> logprob;
    };

    explicit ScriptedBackend(std::vector<Entry> script) : script_(std::move(script)) {}

    ChatResponse chat(const ChatRequest& request) override;

    std::size_t consumed() const { return next_; }
    std::size_t remaining() const { return script_.size() - next_; }

    // JSON list of {"match": substr, "response": text, optional "logprob"}.
    static std::shared_ptr<ScriptedBackend> from_json(const nlohmann::json& j);
    static std::shared_ptr<ScriptedBackend> from_file(const std::string& path);

private:
    std::vector<Entry> script_;
    std::size_t next_ = 0;
};

// JSON-over-HTTP chat contract:
//   request  {"messages":[{"role":"user","content":[{"type":"text","text":...},
//             {"type":"image","width":w,"height":h,"payload":b64}...]}],
//             "max_tokens": n}
//   response {"content": text, optional "logprobs": number}
class RemoteChatBackend : public ModelBackend {
public:
    RemoteChatBackend(std::string endpoint, int timeout_ms = 30000, int max_retries = 2,
                      int attach_edge = 128)
        : endpoint_(std::move(endpoint)),
          timeout_ms_(timeout_ms),
          max_retries_(max_retries),
          attach_edge_(attach_edge) {}

    ChatResponse chat(const ChatRequest& request) override;

private:
    std::string endpoint_;
    int timeout_ms_;
    int max_retries_;
    int attach_edge_;  // frames are downscaled to this edge before base64
};

}  // namespace vqe
