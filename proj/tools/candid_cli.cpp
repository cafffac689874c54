#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "candid/evaluator.hpp"
#include "candid/params.hpp"
#include "candid/pipeline.hpp"
#include "candid/synth.hpp"

namespace {

candid::Params load_or_default(const std::string& config_path) {
    return config_path.empty() ? candid::Params{} : candid::load_params(config_path);
}

int run_command(const std::string& config_path, const std::string& input_dir,
                const std::string& output_dir, const std::string& pattern) {
    candid::Params params = load_or_default(config_path);
    candid::RunReport report = candid::run_pipeline(params, input_dir, output_dir, pattern);
    std::cout << candid::format_run_report(report, true);
    return 0;
}

int eval_command(const std::string& mask_dir, const std::string& gt_dir, std::uint64_t skip,
                 const std::string& mask_pattern, const std::string& gt_pattern,
                 const std::string& out_path) {
    std::string name = std::filesystem::path(mask_dir).filename().string();
    if (name.empty()) name = "sequence";
    candid::SequenceScore score = candid::evaluate_sequence(mask_dir, gt_dir, mask_pattern,
                                                            gt_pattern, skip, name);
    std::string csv = candid::metrics_csv({score});
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw candid::DataError(out_path + ": cannot open for writing");
        out << csv;
    }
    return 0;
}

int synth_command(const std::string& spec_path, const std::string& out_dir) {
    candid::SceneSpec spec = candid::load_scene_spec(spec_path);
    std::filesystem::path out(out_dir);
    candid::SynthStats stats = candid::generate(spec, out / "input", out / "groundtruth");
    std::cout << "frames = " << stats.frames << '\n';
    std::cout << "pixels = " << stats.pixels << '\n';
    char rate[32];
    std::snprintf(rate, sizeof(rate), "%.6f", stats.clamp_rate());
    std::cout << "noise_clamp_rate = " << rate << '\n';
    return 0;
}

int bench_command(const std::string& config_path, const std::string& input_dir, int reps,
                  const std::string& pattern) {
    candid::Params params = load_or_default(config_path);
    candid::BenchResult result = candid::run_bench(params, input_dir, reps, pattern);
    std::cout << candid::format_bench_result(result);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"candid: streaming background subtraction"};
    app.require_subcommand(1);

    std::string config_path, input_dir, output_dir, pattern = "*.p?m";
    std::string mask_dir, gt_dir, mask_pattern = "*.pgm", gt_pattern = "*.pgm", csv_out;
    std::string spec_path, synth_out;
    std::uint64_t skip = 0;
    int reps = 3;

    CLI::App* run = app.add_subcommand("run", "process a frame sequence into masks");
    run->add_option("--config", config_path, "key = value parameter file");
    run->add_option("--input", input_dir, "directory of input frames")->required();
    run->add_option("--output", output_dir, "directory for masks and report")->required();
    run->add_option("--pattern", pattern, "input filename glob (default *.p?m)");

    CLI::App* eval = app.add_subcommand("eval", "score masks against ground truth");
    eval->add_option("--masks", mask_dir, "directory of predicted masks")->required();
    eval->add_option("--gt", gt_dir, "directory of ground-truth frames")->required();
    eval->add_option("--skip", skip, "leading frames to exclude (warm-up)");
    eval->add_option("--mask-pattern", mask_pattern, "mask filename glob (default *.pgm)");
    eval->add_option("--gt-pattern", gt_pattern, "ground-truth filename glob (default *.pgm)");
    eval->add_option("--out", csv_out, "write the CSV here instead of stdout");

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic sequence");
    synth->add_option("--spec", spec_path, "scene description file")->required();
    synth->add_option("--out", synth_out, "output root (creates input/ and groundtruth/)")
        ->required();

    CLI::App* bench = app.add_subcommand("bench", "time the pipeline on a sequence");
    bench->add_option("--config", config_path, "key = value parameter file");
    bench->add_option("--input", input_dir, "directory of input frames")->required();
    bench->add_option("--reps", reps, "repetitions (default 3)");
    bench->add_option("--pattern", pattern, "input filename glob (default *.p?m)");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_command(config_path, input_dir, output_dir, pattern);
        if (eval->parsed())
            return eval_command(mask_dir, gt_dir, skip, mask_pattern, gt_pattern, csv_out);
        if (synth->parsed()) return synth_command(spec_path, synth_out);
        if (bench->parsed()) return bench_command(config_path, input_dir, reps, pattern);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const candid::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const candid::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
