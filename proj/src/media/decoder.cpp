#include "vqe/media/decoder.hpp"

#include <cstdio>
#include <cstring>
#include <memory>

#include <sys/wait.h>

#include "vqe/core/error.hpp"
#include "vqe/media/frame_cache.hpp"

namespace vqe {

namespace {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    const std::string token = "{" + key + "}";
    for (std::size_t pos = text.find(token); pos != std::string::npos;
         pos = text.find(token, pos + value.size())) {
        text.replace(pos, token.size(), value);
    }
    return text;
}

std::string render_command(const DecoderConfig& config, const std::string& source, int stride) {
    std::string cmd = config.command;
    cmd = substitute(cmd, "source", source);
    cmd = substitute(cmd, "width", std::to_string(config.width));
    cmd = substitute(cmd, "height", std::to_string(config.height));
    cmd = substitute(cmd, "stride", std::to_string(stride));
    return cmd;
}

struct StreamResult {
    std::vector<std::vector<std::uint8_t>> kept;  // first `keep_limit` frames
    std::size_t total_frames = 0;
};

// Runs the decoder once, keeping up to `keep_limit` frames and counting the
// rest. Always drains to EOF so the child never dies on a broken pipe.
StreamResult run_decoder(const DecoderConfig& config, const std::string& source, int stride,
                         std::size_t keep_limit) {
    const std::string cmd = render_command(config, source, stride);
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        throw Error(ErrorKind::DecodeFailure, "failed to launch decoder: " + cmd);
    }

    const std::size_t frame_bytes = static_cast<std::size_t>(config.width) * config.height * 3;
    StreamResult result;
    std::vector<std::uint8_t> buffer(frame_bytes);
    bool short_read = false;

    for (;;) {
        const std::size_t got = fread(buffer.data(), 1, frame_bytes, pipe);
        if (got == 0) break;
        if (got < frame_bytes) {
            short_read = true;
            break;
        }
        if (result.kept.size() < keep_limit) result.kept.push_back(buffer);
        ++result.total_frames;
    }

    const int status = pclose(pipe);
    const bool clean_exit = status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    if (!clean_exit) {
        throw Error(ErrorKind::DecodeFailure, "decoder exited nonzero: " + cmd);
    }
    if (short_read) {
        throw Error(ErrorKind::DecodeFailure, "short read: truncated frame on decoder stream");
    }
    return result;
}

}  // namespace

FramePool sample_pool(const std::string& source, int cap, const DecoderConfig& config,
                      FrameCache* cache) {
    if (cap < 1) throw Error(ErrorKind::InvalidConfig, "pool cap must be >= 1");
    if (config.width <= 0 || config.height <= 0 || config.fps <= 0.0) {
        throw Error(ErrorKind::InvalidConfig, "decoder width/height/fps must be positive");
    }

    if (cache) {
        if (auto hit = cache->try_load(source, cap)) return std::move(*hit);
    }

    // Pass 1: enumerate, buffering in case the clip already fits the cap.
    StreamResult counted = run_decoder(config, source, 1, static_cast<std::size_t>(cap));
    if (counted.total_frames == 0) {
        throw Error(ErrorKind::EmptyVideo, "decoder emitted zero frames for " + source);
    }

    FramePool pool;
    pool.source_id = source;

    auto emplace = [&](std::size_t pool_index, std::size_t source_index,
                       std::vector<std::uint8_t>&& pixels) {
        Frame f;
        f.index = static_cast<int>(pool_index);
        f.source_timestamp = static_cast<double>(source_index) / config.fps;
        f.width = config.width;
        f.height = config.height;
        f.pixels = std::move(pixels);
        pool.frames.push_back(std::move(f));
    };

    if (counted.total_frames <= static_cast<std::size_t>(cap)) {
        for (std::size_t i = 0; i < counted.kept.size(); ++i) {
            emplace(i, i, std::move(counted.kept[i]));
        }
    } else {
        const std::size_t stride = counted.total_frames / static_cast<std::size_t>(cap);
        StreamResult strided = run_decoder(config, source, static_cast<int>(stride),
                                           static_cast<std::size_t>(cap));
        for (std::size_t i = 0; i < strided.kept.size(); ++i) {
            emplace(i, i * stride, std::move(strided.kept[i]));
        }
    }

    validate_pool(pool);
    if (cache) cache->store(pool, cap);
    return pool;
}

}  // namespace vqe
