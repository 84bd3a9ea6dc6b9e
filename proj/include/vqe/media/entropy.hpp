#pragma once

#include <array>
#include <cstdint>

#include "vqe/media/frame.hpp"

namespace vqe {

enum class Channel : int { R = 0, G = 1, B = 2 };

// Per-frame information content in bits, averaged over the RGB channels.
struct EntropyValue {
    double bits = 0.0;  // in [0, 8] for 8-bit channels
};

// 256-bin value histogram for one channel; bins sum to width*height.
std::array<std::uint32_t, 256> channel_histogram(const Frame& frame, Channel channel);

// Shannon entropy of one channel's value distribution, base 2.
// Zero-probability bins contribute nothing.
double channel_entropy_bits(const std::array<std::uint32_t, 256>& bins);

// Mean of the three per-channel entropies.
EntropyValue frame_entropy(const Frame& frame);

// Entropy for every frame in the pool, fanned out over `workers` threads.
// Results are written per index, so the output is identical for any worker
// count.
std::vector<double> pool_entropies(const FramePool& pool, int workers = 1);

}  // namespace vqe
