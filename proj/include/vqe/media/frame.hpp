#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vqe {

// One decoded RGB24 frame. Immutable after construction by convention;
// everything downstream takes const references.
struct Frame {
    int index = 0;                   // ordinal position in its pool, 0-based
    double source_timestamp = 0.0;   // seconds from video start
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major RGB, 3 bytes per pixel

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

struct FramePool {
    std::string source_id;
    std::vector<Frame> frames;

    std::size_t size() const { return frames.size(); }
    bool empty() const { return frames.empty(); }
};

// Throws InvalidFrame when dimensions or the pixel byte count are off.
void validate_frame(const Frame& frame);

// Throws InvalidFrame on gapped indices or an empty pool.
void validate_pool(const FramePool& pool);

// Grayscale and RGBA inputs are normalized to RGB before anything else
// sees them: gray replicates into all three channels, alpha is dropped.
Frame frame_from_gray(int index, double timestamp, int width, int height,
                      const std::vector<std::uint8_t>& gray);
Frame frame_from_rgba(int index, double timestamp, int width, int height,
                      const std::vector<std::uint8_t>& rgba);

// Nearest-neighbor downscale so the longer edge is at most `max_edge`.
// Used for wire attachments only; scoring always sees full frames.
Frame downscale_to_edge(const Frame& frame, int max_edge);

}  // namespace vqe
