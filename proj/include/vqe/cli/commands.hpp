#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "vqe/cli/config.hpp"
#include "vqe/core/error.hpp"

namespace vqe {

// Exit codes: 0 ok, 2 input error, 3 backend error, 4 empty result,
// 5 internal.
int exit_code_for(ErrorKind kind);

struct CommonArgs {
    std::string config_path;
    std::optional<std::string> out_dir;  // overrides the config's output_dir
    std::optional<int> workers;
};

struct SelectArgs : CommonArgs {
    std::string video;
    std::string question;
    bool emit_plot = false;
};

struct AnswerArgs : CommonArgs {
    std::string video;
    std::string question;
};

struct CurateArgs : CommonArgs {
    std::string transcript_dir;
    std::string mode;  // sft | dpo | grpo
    std::optional<double> threshold;
};

struct BenchArgs : CommonArgs {
    std::string scenario_path;
};

// Each command prints machine-readable output on `out`, an error JSON of
// the form {"error":{"kind","message"}} on `err` when it fails, and
// returns the mapped exit code.
int cmd_select(const SelectArgs& args, std::ostream& out, std::ostream& err);
int cmd_answer(const AnswerArgs& args, std::ostream& out, std::ostream& err);
int cmd_curate(const CurateArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace vqe
