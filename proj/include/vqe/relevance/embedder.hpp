#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vqe/media/frame.hpp"

namespace vqe {

struct Embedding {
    std::vector<double> values;

    std::size_t dimension() const { return values.size(); }
};

// Query-frame relevance, the cosine of the two embeddings.
struct RelevanceScore {
    double value = 0.0;  // in [-1, 1]
};

RelevanceScore cosine(const Embedding& a, const Embedding& b);

// Wire-contract embedding backend. The engine never assumes a particular
// model; anything that answers the dimension handshake and returns vectors
// of that dimension qualifies.
class Embedder {
public:
    virtual ~Embedder() = default;

    virtual int dimension() = 0;
    virtual std::vector<Embedding> embed_frames(const FramePool& pool) = 0;
    virtual Embedding embed_text(const std::string& query) = 0;
};

// Deterministic test/offline backend: embeddings are seeded hashes of the
// input bytes expanded to unit vectors. pin_similarities() switches to a
// mode where the i-th frame of a batch gets cosine exactly sims[i] against
// the text embedding, which lets scenarios plant known relevance values.
class MockEmbedder : public Embedder {
public:
    MockEmbedder(std::uint64_t seed, int dimension);

    int dimension() override { return dimension_; }
    std::vector<Embedding> embed_frames(const FramePool& pool) override;
    Embedding embed_text(const std::string& query) override;

    void pin_similarities(std::vector<double> sims);

private:
    Embedding hash_embedding(const std::uint8_t* data, std::size_t len) const;

    std::uint64_t seed_;
    int dimension_;
    std::optional<std::vector<double>> pinned_;
};

// HTTP backend speaking the JSON embedding contract:
//   request  {"kind":"image","payload":<b64 rgb24>,"width":w,"height":h}
//            {"kind":"text","payload":<utf-8>}
//            {"kind":"dimension"}            (handshake, sent once)
//   response {"dimension":d,"values":[...]}
class RemoteEmbedder : public Embedder {
public:
    explicit RemoteEmbedder(std::string endpoint, int timeout_ms = 10000, int max_retries = 2);

    int dimension() override;
    std::vector<Embedding> embed_frames(const FramePool& pool) override;
    Embedding embed_text(const std::string& query) override;

private:
    Embedding request_embedding(const std::string& body);
    std::string post_json(const std::string& body);

    std::string endpoint_;
    int timeout_ms_;
    int max_retries_;
    std::optional<int> handshake_dimension_;
};

}  // namespace vqe
