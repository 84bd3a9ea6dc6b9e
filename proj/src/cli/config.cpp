#include "vqe/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "vqe/core/error.hpp"

namespace vqe {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (allowed.count(key) == 0) {
            throw Error(ErrorKind::InvalidConfig, "unknown key \"" + key + "\" in " + where);
        }
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& path) {
    std::filesystem::path p(path);
    return p.is_absolute() ? p : base / p;
}

std::filesystem::path require_file(const std::filesystem::path& base, const std::string& path,
                                   const std::string& what) {
    const auto resolved = resolve(base, path);
    if (!std::filesystem::exists(resolved)) {
        throw Error(ErrorKind::InvalidConfig, what + " does not exist: " + resolved.string());
    }
    return resolved;
}

std::optional<std::string> env_endpoint(const std::string& var) {
    const char* value = std::getenv(var.c_str());
    if (value && *value) return std::string(value);
    return std::nullopt;
}

SelectionConfig parse_selection(const json& j) {
    reject_unknown_keys(j, {"tau", "k", "alpha", "min_output", "max_iterations"}, "selection");
    SelectionConfig cfg;
    if (j.contains("tau") && !j["tau"].is_null()) cfg.tau = j["tau"].get<double>();
    cfg.k = j.value("k", cfg.k);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.min_output = j.value("min_output", cfg.min_output);
    cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
    cfg.validate();
    return cfg;
}

std::shared_ptr<Embedder> parse_embedder(const json& j) {
    reject_unknown_keys(j, {"kind", "endpoint", "dimension", "seed", "pinned_similarities",
                            "timeout_ms", "max_retries"},
                        "embedder");
    const std::string kind = j.value("kind", "mock");
    if (kind == "mock") {
        auto mock = std::make_shared<MockEmbedder>(j.value("seed", 1u), j.value("dimension", 64));
        if (j.contains("pinned_similarities")) {
            mock->pin_similarities(j["pinned_similarities"].get<std::vector<double>>());
        }
        return mock;
    }
    if (kind == "remote") {
        std::string endpoint = j.value("endpoint", "");
        if (auto env = env_endpoint("VQE_EMBEDDER_ENDPOINT")) endpoint = *env;
        if (endpoint.empty()) {
            throw Error(ErrorKind::InvalidConfig, "remote embedder needs an endpoint");
        }
        return std::make_shared<RemoteEmbedder>(endpoint, j.value("timeout_ms", 10000),
                                                j.value("max_retries", 2));
    }
    throw Error(ErrorKind::InvalidConfig, "embedder kind must be mock or remote, got " + kind);
}

std::shared_ptr<ModelBackend> parse_backend(const json& j, const std::string& role,
                                            const std::filesystem::path& base, int attach_edge) {
    reject_unknown_keys(
        j, {"kind", "endpoint", "script", "script_file", "timeout_ms", "max_retries"},
        "backends." + role);
    const std::string kind = j.value("kind", "scripted");
    if (kind == "scripted") {
        if (j.contains("script")) return ScriptedBackend::from_json(j["script"]);
        if (j.contains("script_file")) {
            return ScriptedBackend::from_file(
                require_file(base, j["script_file"].get<std::string>(), role + " script").string());
        }
        throw Error(ErrorKind::InvalidConfig,
                    "scripted backend " + role + " needs script or script_file");
    }
    if (kind == "remote") {
        std::string endpoint = j.value("endpoint", "");
        std::string var = "VQE_" + role + "_ENDPOINT";
        for (char& c : var) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (auto env = env_endpoint(var)) endpoint = *env;
        if (endpoint.empty()) {
            throw Error(ErrorKind::InvalidConfig, "remote backend " + role + " needs an endpoint");
        }
        return std::make_shared<RemoteChatBackend>(endpoint, j.value("timeout_ms", 30000),
                                                   j.value("max_retries", 2), attach_edge);
    }
    throw Error(ErrorKind::InvalidConfig, "backend kind must be scripted or remote, got " + kind);
}

}  // namespace

EngineConfig EngineConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
    reject_unknown_keys(j,
                        {"selection", "pool_cap", "decoder", "cache_dir", "embedder", "backends",
                         "registry", "prompts", "output_dir", "attach_edge", "max_tokens",
                         "use_logprob_confidence", "workers"},
                        "config");

    EngineConfig cfg;
    if (j.contains("selection")) cfg.selection = parse_selection(j["selection"]);
    cfg.pool_cap = j.value("pool_cap", cfg.pool_cap);
    if (cfg.pool_cap < 1) throw Error(ErrorKind::InvalidConfig, "pool_cap must be >= 1");

    if (j.contains("decoder")) {
        reject_unknown_keys(j["decoder"], {"command", "width", "height", "fps"}, "decoder");
        cfg.decoder.command = j["decoder"].value("command", "");
        cfg.decoder.width = j["decoder"].value("width", cfg.decoder.width);
        cfg.decoder.height = j["decoder"].value("height", cfg.decoder.height);
        cfg.decoder.fps = j["decoder"].value("fps", cfg.decoder.fps);
    }
    if (j.contains("cache_dir") && !j["cache_dir"].is_null()) {
        cfg.cache_dir = resolve(base_dir, j["cache_dir"].get<std::string>());
    }

    cfg.attach_edge = j.value("attach_edge", cfg.attach_edge);
    cfg.max_tokens = j.value("max_tokens", cfg.max_tokens);
    cfg.use_logprob_confidence = j.value("use_logprob_confidence", cfg.use_logprob_confidence);
    cfg.workers = j.value("workers", cfg.workers);
    if (cfg.workers < 1) throw Error(ErrorKind::InvalidConfig, "workers must be >= 1");

    cfg.embedder = parse_embedder(j.value("embedder", json{{"kind", "mock"}}));

    if (j.contains("backends")) {
        reject_unknown_keys(j["backends"], {"target", "critic", "meta"}, "backends");
        if (j["backends"].contains("target")) {
            cfg.backends.target =
                parse_backend(j["backends"]["target"], "target", base_dir, cfg.attach_edge);
        }
        if (j["backends"].contains("critic")) {
            cfg.backends.critic =
                parse_backend(j["backends"]["critic"], "critic", base_dir, cfg.attach_edge);
        }
        if (j["backends"].contains("meta")) {
            cfg.backends.meta =
                parse_backend(j["backends"]["meta"], "meta", base_dir, cfg.attach_edge);
        }
    }
    if (cfg.backends.target && !cfg.backends.meta) cfg.backends.meta = cfg.backends.target;

    if (j.contains("registry")) {
        cfg.registry = ToolRegistry::from_file(
            require_file(base_dir, j["registry"].get<std::string>(), "tool registry").string());
    }

    cfg.prompts = PromptSet::defaults();
    if (j.contains("prompts")) {
        std::map<std::string, std::string> overrides;
        for (const auto& [name, path] : j["prompts"].items()) {
            const auto file = require_file(base_dir, path.get<std::string>(), "prompt " + name);
            std::ifstream in(file);
            overrides[name] = std::string((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
        }
        cfg.prompts.apply_overrides(overrides);
    }

    cfg.output_dir = resolve(base_dir, j.value("output_dir", "out"));
    return cfg;
}

EngineConfig EngineConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open config " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorKind::InvalidConfig, "config " + path.string() + " is not valid JSON");
    }
    return from_json(j, path.parent_path());
}

}  // namespace vqe
