#include <iostream>

#include <CLI11.hpp>

#include "vqe/cli/commands.hpp"

namespace {

void add_common(CLI::App* cmd, std::string& config_path, std::string& out_dir, int& workers) {
    cmd->add_option("--config", config_path, "engine config JSON")->required();
    cmd->add_option("--out", out_dir, "output directory override");
    cmd->add_option("--workers", workers, "bounded worker pool size");
}

void fill_common(vqe::CommonArgs& args, const std::string& config_path, const std::string& out_dir,
                 int workers) {
    args.config_path = config_path;
    if (!out_dir.empty()) args.out_dir = out_dir;
    if (workers > 0) args.workers = workers;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vqe - entropy-calibrated keyframe selection and tool-augmented video QA"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int workers = 0;

    vqe::SelectArgs select_args;
    auto* select = app.add_subcommand("select", "run keyframe selection and print the trace");
    add_common(select, config_path, out_dir, workers);
    select->add_option("--video", select_args.video, "video source")->required();
    select->add_option("--question", select_args.question, "query text")->required();
    select->add_flag("--emit-plot", select_args.emit_plot, "write per-frame score CSV");

    vqe::AnswerArgs answer_args;
    auto* answer = app.add_subcommand("answer", "run the full pipeline for one query");
    add_common(answer, config_path, out_dir, workers);
    answer->add_option("--video", answer_args.video, "video source")->required();
    answer->add_option("--question", answer_args.question, "query text")->required();

    vqe::CurateArgs curate_args;
    std::string curate_mode = "grpo";
    double curate_threshold = -1.0;
    auto* curate = app.add_subcommand("curate", "export training data from transcripts");
    add_common(curate, config_path, out_dir, workers);
    curate->add_option("dir", curate_args.transcript_dir, "transcript directory")->required();
    curate->add_option("--mode", curate_mode, "sft | dpo | grpo");
    curate->add_option("--threshold", curate_threshold, "importance threshold (0-10)");

    vqe::BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "compare selection strategies on a scenario");
    add_common(bench, config_path, out_dir, workers);
    bench->add_option("--scenario", bench_args.scenario_path, "scenario JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (select->parsed()) {
        fill_common(select_args, config_path, out_dir, workers);
        return vqe::cmd_select(select_args, std::cout, std::cerr);
    }
    if (answer->parsed()) {
        fill_common(answer_args, config_path, out_dir, workers);
        return vqe::cmd_answer(answer_args, std::cout, std::cerr);
    }
    if (curate->parsed()) {
        fill_common(curate_args, config_path, out_dir, workers);
        curate_args.mode = curate_mode;
        if (curate_threshold >= 0.0) curate_args.threshold = curate_threshold;
        return vqe::cmd_curate(curate_args, std::cout, std::cerr);
    }
    fill_common(bench_args, config_path, out_dir, workers);
    return vqe::cmd_bench(bench_args, std::cout, std::cerr);
}
