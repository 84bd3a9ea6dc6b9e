#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vqe/agents/transcript.hpp"

namespace vqe {

// Report total rescaled onto the 10-point importance scale.
struct ImportanceScore {
    double value = 0.0;
};

ImportanceScore importance(const EvalReport& report);

enum class CurationMode { sft, dpo, grpo };
enum class ThresholdDirection { below, above };

struct CurationRule {
    CurationMode mode = CurationMode::grpo;
    double threshold = 5.0;  // on the 10-point importance scale
    ThresholdDirection direction = ThresholdDirection::below;

    void validate() const;  // threshold must sit in [0, 10]
};

struct ExportResult {
    std::filesystem::path dataset_path;
    std::filesystem::path manifest_path;
    int input_count = 0;
    int exported_count = 0;
    int skipped_count = 0;  // transcripts lacking the rule's prerequisites
};

// Writes <mode>.jsonl plus <mode>.manifest.json under out_dir. Records are
// filtered strictly (boundary importance is never exported), ordered by
// (video_ref, question), and every field is copied from a transcript.
// Transcripts without a report are skipped and counted; DPO additionally
// skips transcripts whose final answer matches the initial one. Throws
// NoEligibleRecords when nothing qualifies.
ExportResult export_dataset(const std::vector<Transcript>& transcripts, const CurationRule& rule,
                            const std::filesystem::path& out_dir);

// Loads every *.json transcript under `dir`, sorted by filename.
std::vector<Transcript> load_transcripts(const std::filesystem::path& dir);

}  // namespace vqe
