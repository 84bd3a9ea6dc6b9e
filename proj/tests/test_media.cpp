#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "vqe/core/error.hpp"
#include "vqe/media/decoder.hpp"
#include "vqe/media/entropy.hpp"
#include "vqe/media/frame_cache.hpp"

using namespace vqe;
namespace fs = std::filesystem;

namespace {

Frame solid_frame(int index, int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    Frame f{index, static_cast<double>(index), w, h, {}};
    f.pixels.resize(static_cast<std::size_t>(w) * h * 3);
    for (std::size_t i = 0; i < f.pixel_count(); ++i) {
        f.pixels[i * 3 + 0] = r;
        f.pixels[i * 3 + 1] = g;
        f.pixels[i * 3 + 2] = b;
    }
    return f;
}

fs::path temp_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("vqe_media_" + tag + "_" +
                                                  std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_video_json(const fs::path& path, int frames, const std::string& extra = "") {
    std::ofstream out(path);
    out << "{\"frames\": " << frames << ", \"seed\": 3, \"levels\": [64, 4, 256, 1]" << extra
        << "}";
}

DecoderConfig rawgen_config(int w = 16, int h = 16) {
    DecoderConfig cfg;
    cfg.command = std::string(VQE_RAWGEN_PATH) +
                  " --source {source} --width {width} --height {height} --stride {stride}";
    cfg.width = w;
    cfg.height = h;
    cfg.fps = 2.0;
    return cfg;
}

}  // namespace

TEST_CASE("frame validation") {
    Frame bad{0, 0.0, 2, 2, std::vector<std::uint8_t>(11, 0)};
    CHECK_THROWS_AS(validate_frame(bad), Error);
    CHECK_NOTHROW(validate_frame(solid_frame(0, 2, 2, 1, 2, 3)));

    FramePool gapped;
    gapped.frames.push_back(solid_frame(0, 2, 2, 0, 0, 0));
    gapped.frames.push_back(solid_frame(2, 2, 2, 0, 0, 0));
    CHECK_THROWS_AS(validate_pool(gapped), Error);
}

TEST_CASE("grayscale replication and alpha drop") {
    std::vector<std::uint8_t> gray = {10, 20, 30, 40};
    const Frame g = frame_from_gray(0, 0.0, 2, 2, gray);
    CHECK(g.pixels[0] == 10);
    CHECK(g.pixels[1] == 10);
    CHECK(g.pixels[2] == 10);
    // All channels identical, so entropy equals the gray-channel entropy.
    const auto bins = channel_histogram(g, Channel::R);
    CHECK(frame_entropy(g).bits == doctest::Approx(channel_entropy_bits(bins)).epsilon(1e-12));

    std::vector<std::uint8_t> rgba = {1, 2, 3, 255, 4, 5, 6, 0, 7, 8, 9, 128, 10, 11, 12, 7};
    const Frame c = frame_from_rgba(1, 0.0, 2, 2, rgba);
    CHECK(c.pixels == std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
}

TEST_CASE("histogram basics") {
    const Frame gray = solid_frame(0, 2, 2, 128, 128, 128);
    auto bins = channel_histogram(gray, Channel::R);
    CHECK(bins[128] == 4);
    std::uint64_t total = 0;
    for (auto b : bins) total += b;
    CHECK(total == 4);

    Frame split = solid_frame(0, 2, 2, 0, 0, 0);
    split.pixels[2 * 3] = 255;
    split.pixels[3 * 3] = 255;
    bins = channel_histogram(split, Channel::R);
    CHECK(bins[0] == 2);
    CHECK(bins[255] == 2);
}

TEST_CASE("histogram conserves pixel count on random frames") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        Frame f{0, 0.0, 16, 16, {}};
        f.pixels.resize(16 * 16 * 3);
        for (auto& p : f.pixels) p = static_cast<std::uint8_t>(rng());
        for (Channel c : {Channel::R, Channel::G, Channel::B}) {
            const auto bins = channel_histogram(f, c);
            std::uint64_t total = 0;
            for (auto b : bins) total += b;
            CHECK(total == 256);
        }
    }
}

TEST_CASE("entropy anchors") {
    // Constant image: zero bits.
    CHECK(frame_entropy(solid_frame(0, 8, 8, 7, 7, 7)).bits == doctest::Approx(0.0).epsilon(1e-12));

    // Half 0 / half 255 per channel: exactly one bit.
    Frame half = solid_frame(0, 2, 2, 0, 0, 0);
    for (int p = 2; p < 4; ++p) {
        half.pixels[p * 3 + 0] = 255;
        half.pixels[p * 3 + 1] = 255;
        half.pixels[p * 3 + 2] = 255;
    }
    CHECK(frame_entropy(half).bits == doctest::Approx(1.0).epsilon(1e-12));

    // Uniform over all 256 values: exactly eight bits.
    Frame uniform{0, 0.0, 16, 16, {}};
    uniform.pixels.resize(16 * 16 * 3);
    for (int p = 0; p < 256; ++p) {
        uniform.pixels[p * 3 + 0] = static_cast<std::uint8_t>(p);
        uniform.pixels[p * 3 + 1] = static_cast<std::uint8_t>(p);
        uniform.pixels[p * 3 + 2] = static_cast<std::uint8_t>(p);
    }
    CHECK(frame_entropy(uniform).bits == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("entropy is permutation invariant and bounded") {
    std::mt19937_64 rng(7);
    Frame f{0, 0.0, 12, 9, {}};
    f.pixels.resize(12 * 9 * 3);
    for (auto& p : f.pixels) p = static_cast<std::uint8_t>(rng());
    const double before = frame_entropy(f).bits;

    // Shuffle whole pixels (keep channel triples together).
    std::vector<std::array<std::uint8_t, 3>> px(f.pixel_count());
    for (std::size_t i = 0; i < px.size(); ++i) {
        px[i] = {f.pixels[i * 3], f.pixels[i * 3 + 1], f.pixels[i * 3 + 2]};
    }
    std::shuffle(px.begin(), px.end(), rng);
    for (std::size_t i = 0; i < px.size(); ++i) {
        f.pixels[i * 3] = px[i][0];
        f.pixels[i * 3 + 1] = px[i][1];
        f.pixels[i * 3 + 2] = px[i][2];
    }
    CHECK(frame_entropy(f).bits == doctest::Approx(before).epsilon(1e-12));
    CHECK(before >= 0.0);
    CHECK(before <= 8.0);
}

TEST_CASE("pool entropy fan-out is worker-count independent") {
    FramePool pool;
    pool.source_id = "mem";
    std::mt19937_64 rng(11);
    for (int i = 0; i < 9; ++i) {
        Frame f{i, static_cast<double>(i), 8, 8, {}};
        f.pixels.resize(8 * 8 * 3);
        for (auto& p : f.pixels) p = static_cast<std::uint8_t>(rng());
        pool.frames.push_back(std::move(f));
    }
    CHECK(pool_entropies(pool, 1) == pool_entropies(pool, 4));
}

TEST_CASE("sample_pool keeps short clips whole") {
    const auto dir = temp_dir("short");
    const auto video = dir / "clip.json";
    write_video_json(video, 10);

    const FramePool pool = sample_pool(video.string(), 64, rawgen_config());
    CHECK(pool.frames.size() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(pool.frames[i].index == i);
        CHECK(pool.frames[i].source_timestamp == doctest::Approx(i / 2.0));
    }
    fs::remove_all(dir);
}

TEST_CASE("sample_pool strides long clips uniformly") {
    const auto dir = temp_dir("long");
    const auto video = dir / "clip.json";
    write_video_json(video, 640);

    const FramePool pool = sample_pool(video.string(), 64, rawgen_config());
    // Oracle: 640 decodable frames at cap 64 means stride floor(640/64) = 10.
    CHECK(pool.frames.size() == 64);
    for (int i = 0; i + 1 < 64; ++i) {
        CHECK(pool.frames[i + 1].source_timestamp > pool.frames[i].source_timestamp);
    }
    CHECK(pool.frames[1].source_timestamp == doctest::Approx(10 / 2.0));
    CHECK(pool.frames[63].source_timestamp == doctest::Approx(630 / 2.0));
    fs::remove_all(dir);
}

TEST_CASE("sample_pool error paths") {
    const auto dir = temp_dir("errors");
    const DecoderConfig cfg = rawgen_config();

    const auto missing = (dir / "missing.json").string();
    CHECK_THROWS_WITH_AS(sample_pool(missing, 64, cfg), doctest::Contains("DecodeFailure"), Error);

    const auto empty = dir / "empty.json";
    write_video_json(empty, 0);
    CHECK_THROWS_WITH_AS(sample_pool(empty.string(), 64, cfg), doctest::Contains("EmptyVideo"),
                         Error);

    const auto truncated = dir / "truncated.json";
    write_video_json(truncated, 5, ", \"truncate_bytes\": 10");
    CHECK_THROWS_WITH_AS(sample_pool(truncated.string(), 64, cfg), doctest::Contains("short read"),
                         Error);

    const auto crashing = dir / "crash.json";
    write_video_json(crashing, 5, ", \"exit_code\": 3");
    CHECK_THROWS_WITH_AS(sample_pool(crashing.string(), 64, cfg),
                         doctest::Contains("exited nonzero"), Error);
    fs::remove_all(dir);
}

TEST_CASE("sample_pool is deterministic and cache round-trips byte-identically") {
    const auto dir = temp_dir("cache");
    const auto video = dir / "clip.json";
    write_video_json(video, 40);
    const DecoderConfig cfg = rawgen_config();

    const FramePool direct1 = sample_pool(video.string(), 8, cfg);
    const FramePool direct2 = sample_pool(video.string(), 8, cfg);
    REQUIRE(direct1.frames.size() == direct2.frames.size());
    for (std::size_t i = 0; i < direct1.frames.size(); ++i) {
        CHECK(direct1.frames[i].pixels == direct2.frames[i].pixels);
        CHECK(direct1.frames[i].source_timestamp == direct2.frames[i].source_timestamp);
    }

    FrameCache cache(dir / "cache");
    const FramePool stored = sample_pool(video.string(), 8, cfg, &cache);
    CHECK(fs::exists(cache.entry_path(video.string(), 8)));
    const FramePool loaded = sample_pool(video.string(), 8, cfg, &cache);
    REQUIRE(loaded.frames.size() == stored.frames.size());
    for (std::size_t i = 0; i < stored.frames.size(); ++i) {
        CHECK(loaded.frames[i].pixels == stored.frames[i].pixels);
        CHECK(loaded.frames[i].source_timestamp == stored.frames[i].source_timestamp);
        CHECK(loaded.frames[i].index == stored.frames[i].index);
    }
    fs::remove_all(dir);
}
