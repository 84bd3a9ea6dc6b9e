#include "vqe/ecrs/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "vqe/core/error.hpp"
#include "vqe/media/entropy.hpp"

namespace vqe {

void SelectionConfig::validate() const {
    if (tau && !(*tau > 0.0)) throw Error(ErrorKind::InvalidConfig, "tau must be > 0");
    if (!(k > 0.0)) throw Error(ErrorKind::InvalidConfig, "k must be > 0");
    if (!(alpha > 1.0)) throw Error(ErrorKind::InvalidConfig, "alpha must be > 1");
    if (min_output < 1) throw Error(ErrorKind::InvalidConfig, "min_output must be >= 1");
    if (max_iterations < 1) throw Error(ErrorKind::InvalidConfig, "max_iterations must be >= 1");
}

std::vector<EcrsScore> compute_ecrs(const std::vector<double>& similarities,
                                    const std::vector<double>& entropies,
                                    const std::vector<int>& member_indices) {
    if (member_indices.empty()) {
        throw Error(ErrorKind::InvalidConfig, "ECRS over an empty member set");
    }
    if (similarities.size() != entropies.size()) {
        throw Error(ErrorKind::InvalidConfig, "similarity/entropy arrays differ in length");
    }

    double entropy_mass = 0.0;
    for (int i : member_indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= entropies.size()) {
            throw Error(ErrorKind::InvalidConfig, "member index out of range");
        }
        entropy_mass += entropies[i];
    }
    if (entropy_mass == 0.0) {
        throw Error(ErrorKind::ZeroEntropyMass,
                    "every member frame has zero entropy; pool is degenerate");
    }

    std::vector<EcrsScore> scores;
    scores.reserve(member_indices.size());
    for (int i : member_indices) {
        scores.push_back({i, similarities[i] * entropies[i] / entropy_mass});
    }
    return scores;
}

namespace {

// Highest score first, ascending frame index on ties.
std::vector<EcrsScore> ranked(std::vector<EcrsScore> scores) {
    std::stable_sort(scores.begin(), scores.end(), [](const EcrsScore& a, const EcrsScore& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.frame_index < b.frame_index;
    });
    return scores;
}

}  // namespace

EcrsTrace iterate_selection(const std::vector<double>& similarities,
                            const std::vector<double>& entropies, const SelectionConfig& config) {
    config.validate();
    const int n = static_cast<int>(similarities.size());
    if (n < 1) throw Error(ErrorKind::InvalidConfig, "selection over an empty pool");

    EcrsTrace trace;

    std::vector<int> candidates(n);
    std::iota(candidates.begin(), candidates.end(), 0);

    // Round-1 scores double as the tau calibration basis.
    std::vector<EcrsScore> scores = compute_ecrs(similarities, entropies, candidates);
    double tau;
    if (config.tau) {
        tau = *config.tau;
    } else {
        double sum = 0.0;
        for (const EcrsScore& s : scores) sum += s.value;
        tau = sum / static_cast<double>(n);
    }
    trace.calibrated_tau = tau;

    std::vector<int> final_set;
    for (int m = 1; m <= config.max_iterations; ++m) {
        if (m > 1) scores = compute_ecrs(similarities, entropies, candidates);
        const double threshold = config.k * std::pow(config.alpha, m) * tau;

        std::vector<int> survivors;
        for (const EcrsScore& s : scores) {
            if (s.value > threshold) survivors.push_back(s.frame_index);
        }

        trace.iterations.push_back({m, threshold, candidates, scores, survivors});
        if (survivors.empty()) {
            trace.note = m == 1 ? "no frame passed round 1" : "threshold exceeded every score";
            break;
        }
        trace.successful_rounds = m;
        final_set = survivors;
        if (m == config.max_iterations) {
            trace.note = "iteration cap reached";
            break;
        }
        candidates = std::move(survivors);
    }

    // Floor guarantee: walk back from the round that produced the final set,
    // filling from each round's ranked leftovers until min(min_output, N)
    // frames are selected. Round 1 spans the whole pool, so the floor is
    // always reachable. A fruitless round 1 degenerates to exactly the
    // top-min_output frames by round-1 score.
    const std::size_t floor = static_cast<std::size_t>(std::min(config.min_output, n));
    std::set<int> chosen(final_set.begin(), final_set.end());
    if (chosen.size() < floor) {
        for (int r = std::max(trace.successful_rounds, 1); r >= 1 && chosen.size() < floor; --r) {
            for (const EcrsScore& s : ranked(trace.iterations[static_cast<std::size_t>(r - 1)].scores)) {
                if (chosen.size() >= floor) break;
                if (chosen.insert(s.frame_index).second) {
                    trace.backfilled.push_back(s.frame_index);
                }
            }
        }
    }
    if (floor >= static_cast<std::size_t>(n)) {
        if (!trace.note.empty()) trace.note += "; ";
        trace.note += "min_output >= pool size; every frame retained";
    }

    trace.final_set.assign(chosen.begin(), chosen.end());
    return trace;
}

SelectionResult select_keyframes(const FramePool& pool, const std::string& query,
                                 Embedder& embedder, const SelectionConfig& config, int workers) {
    validate_pool(pool);
    if (query.empty()) throw Error(ErrorKind::EmptyQuery, "selection needs a nonempty query");

    SelectionResult result;
    result.entropies = pool_entropies(pool, workers);

    const Embedding query_embedding = embedder.embed_text(query);
    const std::vector<Embedding> frame_embeddings = embedder.embed_frames(pool);
    if (frame_embeddings.size() != pool.frames.size()) {
        throw Error(ErrorKind::DimensionMismatch, "embedder returned a short frame batch");
    }

    result.similarities.reserve(pool.frames.size());
    for (const Embedding& e : frame_embeddings) {
        result.similarities.push_back(cosine(e, query_embedding).value);
    }

    result.trace = iterate_selection(result.similarities, result.entropies, config);

    result.selected.source_id = pool.source_id;
    result.selected.frames.reserve(result.trace.final_set.size());
    for (int original_index : result.trace.final_set) {
        Frame f = pool.frames[static_cast<std::size_t>(original_index)];
        f.index = static_cast<int>(result.selected.frames.size());
        result.selected.frames.push_back(std::move(f));
    }
    return result;
}

nlohmann::ordered_json EcrsTrace::to_json() const {
    nlohmann::ordered_json j;
    j["iterations"] = nlohmann::ordered_json::array();
    for (const EcrsRound& round : iterations) {
        nlohmann::ordered_json r;
        r["m"] = round.m;
        r["threshold"] = round.threshold;
        r["candidate_set"] = round.candidate_set;
        r["scores"] = nlohmann::ordered_json::array();
        for (const EcrsScore& s : round.scores) {
            r["scores"].push_back({{"frame_index", s.frame_index}, {"value", s.value}});
        }
        r["survivors"] = round.survivors;
        j["iterations"].push_back(std::move(r));
    }
    j["final_set"] = final_set;
    j["backfilled"] = backfilled;
    j["successful_rounds"] = successful_rounds;
    j["calibrated_tau"] = calibrated_tau;
    j["note"] = note;
    return j;
}

EcrsTrace EcrsTrace::from_json(const nlohmann::json& j) {
    EcrsTrace t;
    for (const auto& r : j.at("iterations")) {
        EcrsRound round;
        round.m = r.at("m").get<int>();
        round.threshold = r.at("threshold").get<double>();
        round.candidate_set = r.at("candidate_set").get<std::vector<int>>();
        for (const auto& s : r.at("scores")) {
            round.scores.push_back(
                {s.at("frame_index").get<int>(), s.at("value").get<double>()});
        }
        round.survivors = r.at("survivors").get<std::vector<int>>();
        t.iterations.push_back(std::move(round));
    }
    t.final_set = j.at("final_set").get<std::vector<int>>();
    t.backfilled = j.at("backfilled").get<std::vector<int>>();
    t.successful_rounds = j.at("successful_rounds").get<int>();
    t.calibrated_tau = j.at("calibrated_tau").get<double>();
    t.note = j.value("note", "");
    return t;
}

}  // namespace vqe
