#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "vqe/media/frame.hpp"

namespace vqe {

// On-disk pool cache keyed by (source_id, cap). Records are length-prefixed
// binary: u32 payload length, then index u32 LE, timestamp f64 LE, width u32
// LE, height u32 LE, pixel bytes. A small header carries the source_id so a
// filename-hash collision can never serve the wrong video.
class FrameCache {
public:
    explicit FrameCache(std::filesystem::path dir);

    std::optional<FramePool> try_load(const std::string& source_id, int cap) const;
    void store(const FramePool& pool, int cap) const;

    std::filesystem::path entry_path(const std::string& source_id, int cap) const;

private:
    std::filesystem::path dir_;
};

}  // namespace vqe
