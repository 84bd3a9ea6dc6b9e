// Test decoder honoring the engine's external-decoder contract: reads a
// synthetic "video" description (JSON) and prints raw RGB24 frames on
// stdout at the requested size and stride.
//
// Video JSON: {"frames": N, "seed": u64, "levels": [L...],
//              "truncate_bytes": K?, "exit_code": E?}
// Frame f uses levels[f % len] equiprobable channel values, so its channel
// entropy is exactly log2(L) bits when width*height is divisible by L.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

int main(int argc, char** argv) {
    std::string source;
    int width = 16, height = 16, stride = 1;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const std::string value = argv[i + 1];
        if (flag == "--source") source = value;
        else if (flag == "--width") width = std::stoi(value);
        else if (flag == "--height") height = std::stoi(value);
        else if (flag == "--stride") stride = std::stoi(value);
    }
    if (source.empty() || width < 1 || height < 1 || stride < 1) {
        std::fprintf(stderr, "rawgen: bad arguments\n");
        return 2;
    }

    std::ifstream in(source);
    if (!in) {
        std::fprintf(stderr, "rawgen: cannot open %s\n", source.c_str());
        return 2;
    }
    nlohmann::json spec = nlohmann::json::parse(in, nullptr, false);
    if (spec.is_discarded()) {
        std::fprintf(stderr, "rawgen: %s is not JSON\n", source.c_str());
        return 2;
    }

    const std::uint64_t total = spec.value("frames", 0ull);
    const std::uint64_t seed = spec.value("seed", 1ull);
    std::vector<int> levels = spec.value("levels", std::vector<int>{256});
    if (levels.empty()) levels = {256};
    const std::uint64_t truncate_bytes = spec.value("truncate_bytes", 0ull);
    const int exit_code = spec.value("exit_code", 0);

    std::string payload;
    const std::size_t pixels = static_cast<std::size_t>(width) * height;
    for (std::uint64_t f = 0; f < total; f += static_cast<std::uint64_t>(stride)) {
        const int level = levels[f % levels.size()];
        const int step = level > 0 ? 256 / level : 0;
        for (std::size_t p = 0; p < pixels; ++p) {
            for (int c = 0; c < 3; ++c) {
                // Rotate the start per frame/channel: histograms stay
                // uniform while the bytes differ frame to frame.
                const std::uint64_t slot = (p + f * 7 + seed + static_cast<std::uint64_t>(c)) %
                                           static_cast<std::uint64_t>(level);
                payload.push_back(static_cast<char>(slot * step));
            }
        }
    }
    if (truncate_bytes > 0 && truncate_bytes < payload.size()) {
        payload.resize(payload.size() - truncate_bytes);
    }
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    std::fflush(stdout);
    return exit_code;
}
