#include "vqe/media/frame_cache.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "vqe/core/error.hpp"

namespace vqe {

namespace {

constexpr char kMagic[8] = {'V', 'Q', 'E', 'P', 'O', 'O', 'L', '1'};

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    bool read_u32(std::uint32_t& v) {
        if (pos_ + 4 > data_.size()) return false;
        v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        }
        pos_ += 4;
        return true;
    }

    bool read_f64(double& v) {
        if (pos_ + 8 > data_.size()) return false;
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) {
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i]))
                    << (8 * i);
        }
        std::memcpy(&v, &bits, 8);
        pos_ += 8;
        return true;
    }

    bool read_bytes(std::size_t n, std::string& out) {
        if (pos_ + n > data_.size()) return false;
        out = data_.substr(pos_, n);
        pos_ += n;
        return true;
    }

private:
    std::string data_;
    std::size_t pos_ = 0;
};

}  // namespace

FrameCache::FrameCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path FrameCache::entry_path(const std::string& source_id, int cap) const {
    std::ostringstream name;
    name << std::hex << fnv1a64(source_id) << "_" << std::dec << cap << ".pool";
    return dir_ / name.str();
}

std::optional<FramePool> FrameCache::try_load(const std::string& source_id, int cap) const {
    const auto path = entry_path(source_id, cap);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Reader r(std::move(data));
    std::string magic;
    if (!r.read_bytes(sizeof(kMagic), magic) || std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
        return std::nullopt;
    }
    std::uint32_t id_len = 0;
    std::string id;
    if (!r.read_u32(id_len) || !r.read_bytes(id_len, id) || id != source_id) return std::nullopt;

    std::uint32_t count = 0;
    if (!r.read_u32(count)) return std::nullopt;

    FramePool pool;
    pool.source_id = source_id;
    pool.frames.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint32_t payload_len = 0;
        if (!r.read_u32(payload_len)) return std::nullopt;
        Frame f;
        std::uint32_t index = 0, width = 0, height = 0;
        std::string pixels;
        if (!r.read_u32(index) || !r.read_f64(f.source_timestamp) || !r.read_u32(width) ||
            !r.read_u32(height)) {
            return std::nullopt;
        }
        const std::size_t pixel_bytes = payload_len - 20;
        if (!r.read_bytes(pixel_bytes, pixels)) return std::nullopt;
        f.index = static_cast<int>(index);
        f.width = static_cast<int>(width);
        f.height = static_cast<int>(height);
        f.pixels.assign(pixels.begin(), pixels.end());
        pool.frames.push_back(std::move(f));
    }

    try {
        validate_pool(pool);
    } catch (const Error&) {
        return std::nullopt;  // corrupt entry: fall back to a fresh decode
    }
    return pool;
}

void FrameCache::store(const FramePool& pool, int cap) const {
    std::string out;
    out.append(kMagic, sizeof(kMagic));
    put_u32(out, static_cast<std::uint32_t>(pool.source_id.size()));
    out.append(pool.source_id);
    put_u32(out, static_cast<std::uint32_t>(pool.frames.size()));
    for (const Frame& f : pool.frames) {
        put_u32(out, static_cast<std::uint32_t>(20 + f.pixels.size()));
        put_u32(out, static_cast<std::uint32_t>(f.index));
        put_f64(out, f.source_timestamp);
        put_u32(out, static_cast<std::uint32_t>(f.width));
        put_u32(out, static_cast<std::uint32_t>(f.height));
        out.append(reinterpret_cast<const char*>(f.pixels.data()), f.pixels.size());
    }

    const auto path = entry_path(pool.source_id, cap);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        file.write(out.data(), static_cast<std::streamsize>(out.size()));
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace vqe
