#include "vqe/relevance/embedder.hpp"

#include <cmath>

#include <json.hpp>

#include "vqe/core/error.hpp"
#include "vqe/core/http.hpp"
#include "vqe/core/json_util.hpp"

namespace vqe {

using nlohmann::json;

RelevanceScore cosine(const Embedding& a, const Embedding& b) {
    if (a.dimension() != b.dimension()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cosine over dimensions " + std::to_string(a.dimension()) + " and " +
                        std::to_string(b.dimension()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw Error(ErrorKind::ZeroNorm, "cosine undefined for a zero-norm embedding");
    }
    return RelevanceScore{dot / (std::sqrt(na) * std::sqrt(nb))};
}

namespace {

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

MockEmbedder::MockEmbedder(std::uint64_t seed, int dimension) : seed_(seed), dimension_(dimension) {
    if (dimension < 2) {
        throw Error(ErrorKind::InvalidConfig, "mock embedder dimension must be >= 2");
    }
}

void MockEmbedder::pin_similarities(std::vector<double> sims) {
    for (double s : sims) {
        if (!(s >= -1.0 && s <= 1.0)) {
            throw Error(ErrorKind::InvalidConfig, "pinned similarity outside [-1, 1]");
        }
    }
    pinned_ = std::move(sims);
}

Embedding MockEmbedder::hash_embedding(const std::uint8_t* data, std::size_t len) const {
    std::uint64_t state = seed_ ^ fnv1a64(data, len);
    Embedding e;
    e.values.resize(dimension_);
    for (int i = 0; i < dimension_; i += 2) {
        // Box-Muller from two uniform draws; keeps the expansion stdlib-free
        // and bit-reproducible.
        double u1 = unit_interval(splitmix64(state));
        double u2 = unit_interval(splitmix64(state));
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        e.values[i] = r * std::cos(2.0 * M_PI * u2);
        if (i + 1 < dimension_) e.values[i + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    double norm = 0.0;
    for (double v : e.values) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        e.values[0] = 1.0;
        return e;
    }
    for (double& v : e.values) v /= norm;
    return e;
}

std::vector<Embedding> MockEmbedder::embed_frames(const FramePool& pool) {
    std::vector<Embedding> out;
    out.reserve(pool.frames.size());
    for (std::size_t i = 0; i < pool.frames.size(); ++i) {
        if (pinned_) {
            if (i >= pinned_->size()) {
                throw Error(ErrorKind::InvalidConfig,
                            "pinned similarities cover " + std::to_string(pinned_->size()) +
                                " frames but the pool has " + std::to_string(pool.frames.size()));
            }
            const double s = (*pinned_)[i];
            Embedding e;
            e.values.assign(dimension_, 0.0);
            e.values[0] = s;
            e.values[1] = std::sqrt(std::max(0.0, 1.0 - s * s));
            out.push_back(std::move(e));
        } else {
            const Frame& f = pool.frames[i];
            out.push_back(hash_embedding(f.pixels.data(), f.pixels.size()));
        }
    }
    return out;
}

Embedding MockEmbedder::embed_text(const std::string& query) {
    if (query.empty()) throw Error(ErrorKind::EmptyQuery, "cannot embed an empty query");
    if (pinned_) {
        Embedding e;
        e.values.assign(dimension_, 0.0);
        e.values[0] = 1.0;
        return e;
    }
    return hash_embedding(reinterpret_cast<const std::uint8_t*>(query.data()), query.size());
}

RemoteEmbedder::RemoteEmbedder(std::string endpoint, int timeout_ms, int max_retries)
    : endpoint_(std::move(endpoint)), timeout_ms_(timeout_ms), max_retries_(max_retries) {}

int RemoteEmbedder::dimension() {
    if (!handshake_dimension_) {
        const json req = {{"kind", "dimension"}};
        const std::string body = http_post_json(endpoint_, req.dump(), timeout_ms_, max_retries_);
        const json res = json::parse(body, nullptr, false);
        if (res.is_discarded() || !res.contains("dimension") || !res["dimension"].is_number()) {
            throw Error(ErrorKind::BackendUnreachable,
                        "embedder dimension handshake returned no dimension");
        }
        const int d = res["dimension"].get<int>();
        if (d < 1) throw Error(ErrorKind::DimensionMismatch, "handshake dimension < 1");
        handshake_dimension_ = d;
    }
    return *handshake_dimension_;
}

Embedding RemoteEmbedder::request_embedding(const std::string& body) {
    const int expected = dimension();
    const std::string response = http_post_json(endpoint_, body, timeout_ms_, max_retries_);
    const json res = json::parse(response, nullptr, false);
    if (res.is_discarded() || !res.contains("values") || !res["values"].is_array()) {
        throw Error(ErrorKind::BackendUnreachable, "embedder returned no values array");
    }
    Embedding e;
    e.values = res["values"].get<std::vector<double>>();
    const int reported =
        res.contains("dimension") ? res["dimension"].get<int>() : static_cast<int>(e.values.size());
    if (reported != expected || static_cast<int>(e.values.size()) != expected) {
        throw Error(ErrorKind::DimensionMismatch,
                    "embedder returned dimension " + std::to_string(e.values.size()) +
                        ", handshake promised " + std::to_string(expected));
    }
    return e;
}

std::vector<Embedding> RemoteEmbedder::embed_frames(const FramePool& pool) {
    std::vector<Embedding> out;
    out.reserve(pool.frames.size());
    for (const Frame& f : pool.frames) {
        const json req = {{"kind", "image"},
                          {"payload", jsonutil::base64_encode(f.pixels.data(), f.pixels.size())},
                          {"width", f.width},
                          {"height", f.height}};
        out.push_back(request_embedding(req.dump()));
    }
    return out;
}

Embedding RemoteEmbedder::embed_text(const std::string& query) {
    if (query.empty()) throw Error(ErrorKind::EmptyQuery, "cannot embed an empty query");
    const json req = {{"kind", "text"}, {"payload", query}};
    return request_embedding(req.dump());
}

}  // namespace vqe
