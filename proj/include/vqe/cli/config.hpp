#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "vqe/agents/pipeline.hpp"
#include "vqe/media/decoder.hpp"
#include "vqe/media/frame_cache.hpp"

namespace vqe {

// One JSON document configures a whole run. Unknown keys are rejected and
// referenced files must exist at load time. Environment variables
// VQE_EMBEDDER_ENDPOINT / VQE_TARGET_ENDPOINT / VQE_CRITIC_ENDPOINT /
// VQE_META_ENDPOINT override endpoints (and only endpoints).
struct EngineConfig {
    SelectionConfig selection;
    int pool_cap = 64;
    DecoderConfig decoder;
    std::optional<std::filesystem::path> cache_dir;

    std::shared_ptr<Embedder> embedder;
    Backends backends;
    ToolRegistry registry;
    PromptSet prompts;

    std::filesystem::path output_dir = "out";
    int attach_edge = 128;
    int max_tokens = 1024;
    bool use_logprob_confidence = false;
    int workers = 1;

    PipelineConfig pipeline() const {
        return PipelineConfig{selection, max_tokens, use_logprob_confidence, workers};
    }

    static EngineConfig load(const std::filesystem::path& path);
    static EngineConfig from_json(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir);
};

}  // namespace vqe
