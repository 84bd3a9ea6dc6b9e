#pragma once

#include <optional>
#include <string>

#include "vqe/media/frame.hpp"

namespace vqe {

class FrameCache;

// External decoder contract: the configured command must print raw RGB24
// frames (row-major, 3 bytes/pixel, no padding) at the requested size on
// stdout, emitting every `stride`-th source frame starting at frame 0.
// Placeholders {source}, {width}, {height}, {stride} are substituted
// before the command runs. Everything else about the decoder is the
// operator's business.
struct DecoderConfig {
    std::string command;
    int width = 336;
    int height = 336;
    double fps = 1.0;  // timestamp basis for the emitted stream
};

// Uniform temporal sampling: enumerate the decodable frames, then re-decode
// at stride floor(total/cap) and keep the first min(cap, total). Single-pass
// when the clip fits the cap. Byte-deterministic for a deterministic decoder.
//
// Throws DecodeFailure (nonzero decoder exit or short read) and EmptyVideo.
FramePool sample_pool(const std::string& source, int cap, const DecoderConfig& config,
                      FrameCache* cache = nullptr);

}  // namespace vqe
