#include "vqe/curate/exporter.hpp"

#include <algorithm>
#include <fstream>

#include "vqe/core/error.hpp"

namespace vqe {

ImportanceScore importance(const EvalReport& report) {
    return ImportanceScore{report.total_score / 25.0 * 10.0};
}

void CurationRule::validate() const {
    if (threshold < 0.0 || threshold > 10.0) {
        throw Error(ErrorKind::InvalidConfig, "curation threshold must be in [0, 10]");
    }
}

namespace {

const char* mode_name(CurationMode mode) {
    switch (mode) {
        case CurationMode::sft: return "sft";
        case CurationMode::dpo: return "dpo";
        case CurationMode::grpo: return "grpo";
    }
    return "grpo";
}

const AnswerRecord* answer_of_kind(const Transcript& t, AnswerRecord::Kind kind) {
    for (const AnswerRecord& a : t.answers) {
        if (a.kind == kind) return &a;
    }
    return nullptr;
}

bool passes(double importance_value, const CurationRule& rule) {
    return rule.direction == ThresholdDirection::below ? importance_value < rule.threshold
                                                       : importance_value > rule.threshold;
}

}  // namespace

ExportResult export_dataset(const std::vector<Transcript>& transcripts, const CurationRule& rule,
                            const std::filesystem::path& out_dir) {
    rule.validate();
    std::filesystem::create_directories(out_dir);

    struct Row {
        std::string video_ref;
        std::string question;
        nlohmann::ordered_json record;
    };
    std::vector<Row> rows;
    int skipped = 0;

    for (const Transcript& t : transcripts) {
        if (!t.report) {
            ++skipped;  // accept-path transcripts carry no importance
            continue;
        }
        const double score = importance(*t.report).value;

        if (rule.mode == CurationMode::grpo) {
            if (!passes(score, rule)) continue;
            rows.push_back({t.video_ref, t.query,
                            {{"video_ref", t.video_ref},
                             {"question", t.query},
                             {"importance", score}}});
        } else if (rule.mode == CurationMode::sft) {
            if (!passes(score, rule)) continue;
            rows.push_back({t.video_ref, t.query,
                            {{"video_ref", t.video_ref},
                             {"question", t.query},
                             {"answer", t.final_answer}}});
        } else {
            const AnswerRecord* initial = answer_of_kind(t, AnswerRecord::Kind::initial);
            if (!initial || t.final_answer == initial->text) {
                ++skipped;  // no revision, no preference pair
                continue;
            }
            rows.push_back({t.video_ref, t.query,
                            {{"video_ref", t.video_ref},
                             {"question", t.query},
                             {"chosen", t.final_answer},
                             {"rejected", initial->text},
                             {"importance", score}}});
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.video_ref != b.video_ref) return a.video_ref < b.video_ref;
        return a.question < b.question;
    });

    if (rows.empty()) {
        throw Error(ErrorKind::NoEligibleRecords,
                    std::string(mode_name(rule.mode)) + " export matched no records");
    }

    ExportResult result;
    result.input_count = static_cast<int>(transcripts.size());
    result.exported_count = static_cast<int>(rows.size());
    result.skipped_count = skipped;
    result.dataset_path = out_dir / (std::string(mode_name(rule.mode)) + ".jsonl");
    result.manifest_path = out_dir / (std::string(mode_name(rule.mode)) + ".manifest.json");

    {
        std::ofstream out(result.dataset_path, std::ios::trunc);
        for (const Row& row : rows) out << row.record.dump() << "\n";
    }
    {
        const nlohmann::ordered_json manifest = {{"mode", mode_name(rule.mode)},
                                                 {"threshold", rule.threshold},
                                                 {"input_count", result.input_count},
                                                 {"exported_count", result.exported_count},
                                                 {"skipped_count", result.skipped_count}};
        std::ofstream out(result.manifest_path, std::ios::trunc);
        out << manifest.dump(2) << "\n";
    }
    return result;
}

std::vector<Transcript> load_transcripts(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw Error(ErrorKind::InvalidConfig, "not a transcript directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<Transcript> out;
    out.reserve(files.size());
    for (const auto& path : files) {
        std::ifstream in(path);
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) {
            throw Error(ErrorKind::InvalidConfig, "transcript " + path.string() + " is not JSON");
        }
        out.push_back(Transcript::from_json(j));
    }
    return out;
}

}  // namespace vqe
