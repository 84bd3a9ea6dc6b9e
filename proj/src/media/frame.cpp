#include "vqe/media/frame.hpp"

#include <algorithm>

#include "vqe/core/error.hpp"

namespace vqe {

void validate_frame(const Frame& frame) {
    if (frame.width <= 0 || frame.height <= 0) {
        throw Error(ErrorKind::InvalidFrame, "non-positive frame dimensions");
    }
    if (frame.pixels.size() != frame.pixel_count() * 3) {
        throw Error(ErrorKind::InvalidFrame,
                    "pixel byte count " + std::to_string(frame.pixels.size()) +
                        " does not match " + std::to_string(frame.width) + "x" +
                        std::to_string(frame.height) + " RGB24");
    }
}

void validate_pool(const FramePool& pool) {
    if (pool.frames.empty()) {
        throw Error(ErrorKind::InvalidFrame, "empty frame pool");
    }
    for (std::size_t i = 0; i < pool.frames.size(); ++i) {
        validate_frame(pool.frames[i]);
        if (pool.frames[i].index != static_cast<int>(i)) {
            throw Error(ErrorKind::InvalidFrame, "pool indices must be 0..len-1 with no gaps");
        }
    }
}

Frame frame_from_gray(int index, double timestamp, int width, int height,
                      const std::vector<std::uint8_t>& gray) {
    Frame f{index, timestamp, width, height, {}};
    f.pixels.resize(static_cast<std::size_t>(width) * height * 3);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        f.pixels[i * 3 + 0] = gray[i];
        f.pixels[i * 3 + 1] = gray[i];
        f.pixels[i * 3 + 2] = gray[i];
    }
    validate_frame(f);
    return f;
}

Frame frame_from_rgba(int index, double timestamp, int width, int height,
                      const std::vector<std::uint8_t>& rgba) {
    Frame f{index, timestamp, width, height, {}};
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (rgba.size() != n * 4) {
        throw Error(ErrorKind::InvalidFrame, "RGBA byte count does not match dimensions");
    }
    f.pixels.resize(n * 3);
    for (std::size_t i = 0; i < n; ++i) {
        f.pixels[i * 3 + 0] = rgba[i * 4 + 0];
        f.pixels[i * 3 + 1] = rgba[i * 4 + 1];
        f.pixels[i * 3 + 2] = rgba[i * 4 + 2];
    }
    validate_frame(f);
    return f;
}

Frame downscale_to_edge(const Frame& frame, int max_edge) {
    validate_frame(frame);
    const int edge = std::max(frame.width, frame.height);
    if (max_edge <= 0 || edge <= max_edge) return frame;

    const double scale = static_cast<double>(max_edge) / edge;
    const int out_w = std::max(1, static_cast<int>(frame.width * scale));
    const int out_h = std::max(1, static_cast<int>(frame.height * scale));

    Frame out{frame.index, frame.source_timestamp, out_w, out_h, {}};
    out.pixels.resize(static_cast<std::size_t>(out_w) * out_h * 3);
    for (int y = 0; y < out_h; ++y) {
        const int sy = std::min(frame.height - 1, static_cast<int>(y / scale));
        for (int x = 0; x < out_w; ++x) {
            const int sx = std::min(frame.width - 1, static_cast<int>(x / scale));
            const std::size_t src = (static_cast<std::size_t>(sy) * frame.width + sx) * 3;
            const std::size_t dst = (static_cast<std::size_t>(y) * out_w + x) * 3;
            out.pixels[dst + 0] = frame.pixels[src + 0];
            out.pixels[dst + 1] = frame.pixels[src + 1];
            out.pixels[dst + 2] = frame.pixels[src + 2];
        }
    }
    return out;
}

}  // namespace vqe
