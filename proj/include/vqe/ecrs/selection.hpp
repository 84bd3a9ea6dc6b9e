#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqe/media/frame.hpp"
#include "vqe/relevance/embedder.hpp"

namespace vqe {

// Entropy-calibrated relevance score of one frame:
//   score_i = s_i * H_i / sum_{k in current set} H_k
// where s_i is query-frame cosine similarity and H_i is frame entropy.
struct EcrsScore {
    int frame_index = 0;
    double value = 0.0;
};

struct SelectionConfig {
    // Base threshold. Unset means self-calibrated: the mean round-1 score
    // over the full pool, which adapts the cut to each video's entropy mass.
    std::optional<double> tau;
    double k = 1.0;        // threshold scale
    double alpha = 1.1;    // per-round exponential growth, must be > 1
    int min_output = 32;   // floor on the selected set (clamped to pool size)
    int max_iterations = 50;

    void validate() const;
};

struct EcrsRound {
    int m = 0;               // 1-based iteration index
    double threshold = 0.0;  // k * alpha^m * tau
    std::vector<int> candidate_set;  // ascending frame indices entering the round
    std::vector<EcrsScore> scores;   // aligned with candidate_set
    std::vector<int> survivors;      // strict score > threshold
};

struct EcrsTrace {
    std::vector<EcrsRound> iterations;
    std::vector<int> final_set;   // ascending; survivors of the last successful
                                  // round plus any backfill
    std::vector<int> backfilled;  // subset of final_set added to reach the floor
    int successful_rounds = 0;
    double calibrated_tau = 0.0;  // tau actually applied
    std::string note;             // why the loop ended / floor commentary

    nlohmann::ordered_json to_json() const;
    static EcrsTrace from_json(const nlohmann::json& j);
};

// Scores for exactly the members, in ascending index order. The denominator
// spans the members only. Throws ZeroEntropyMass when every member entropy
// is zero.
std::vector<EcrsScore> compute_ecrs(const std::vector<double>& similarities,
                                    const std::vector<double>& entropies,
                                    const std::vector<int>& member_indices);

// The iterative threshold loop. Round m keeps members with score strictly
// above k * alpha^m * tau, recomputed over the shrinking set; it stops when
// a round keeps nothing (returning the previous round's set) or at the
// iteration cap. When the result is short of min(min_output, N), the floor
// is met by backfilling the highest-scoring unused frames, walking back
// from the round that produced the result toward round 1, ties broken by
// ascending frame index.
EcrsTrace iterate_selection(const std::vector<double>& similarities,
                            const std::vector<double>& entropies, const SelectionConfig& config);

struct SelectionResult {
    FramePool selected;  // reindexed 0..k-1, original temporal order
    std::vector<double> similarities;  // per original pool index
    std::vector<double> entropies;     // per original pool index
    EcrsTrace trace;
};

// Full stage-1 composition: embed, score, iterate. `workers` bounds the
// entropy fan-out.
SelectionResult select_keyframes(const FramePool& pool, const std::string& query,
                                 Embedder& embedder, const SelectionConfig& config,
                                 int workers = 1);

}  // namespace vqe
