#include "vqe/media/entropy.hpp"

#include <cmath>
#include <thread>

#include "vqe/core/error.hpp"

namespace vqe {

std::array<std::uint32_t, 256> channel_histogram(const Frame& frame, Channel channel) {
    validate_frame(frame);
    std::array<std::uint32_t, 256> bins{};
    const int offset = static_cast<int>(channel);
    const std::size_t n = frame.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        ++bins[frame.pixels[i * 3 + offset]];
    }
    return bins;
}

double channel_entropy_bits(const std::array<std::uint32_t, 256>& bins) {
    std::uint64_t total = 0;
    for (std::uint32_t b : bins) total += b;
    if (total == 0) return 0.0;

    double h = 0.0;
    const double inv_total = 1.0 / static_cast<double>(total);
    for (std::uint32_t b : bins) {
        if (b == 0) continue;  // 0 * log2(0) := 0
        const double p = static_cast<double>(b) * inv_total;
        h -= p * std::log2(p);
    }
    return h;
}

EntropyValue frame_entropy(const Frame& frame) {
    double sum = 0.0;
    for (Channel c : {Channel::R, Channel::G, Channel::B}) {
        sum += channel_entropy_bits(channel_histogram(frame, c));
    }
    return EntropyValue{sum / 3.0};
}

std::vector<double> pool_entropies(const FramePool& pool, int workers) {
    validate_pool(pool);
    const std::size_t n = pool.frames.size();
    std::vector<double> out(n, 0.0);

    const int threads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = frame_entropy(pool.frames[i]).bits;
        return out;
    }

    std::vector<std::thread> crew;
    crew.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        crew.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < n; i += threads) {
                out[i] = frame_entropy(pool.frames[i]).bits;
            }
        });
    }
    for (auto& th : crew) th.join();
    return out;
}

}  // namespace vqe
