// Command-line front end: run deliberation sessions from JSON configs, score
// benchmark datasets against an expected set, print modification schedules,
// and lint config/dataset files.
//
// Exit codes: 0 success, 2 configuration or validation failure, 3 runtime
// backend failure (a partial transcript is still written).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autoparl/bench.hpp"
#include "autoparl/config.hpp"
#include "autoparl/dataset.hpp"
#include "autoparl/engine.hpp"
#include "autoparl/schedule.hpp"
#include "autoparl/transcript.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBackend = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw autoparl::Error(autoparl::ErrorKind::configuration,
                              "cannot write to '" + path + "'");
    out << content;
}

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw autoparl::Error(autoparl::ErrorKind::configuration,
                              "cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct RunOptions {
    std::string config_path;
    std::string question;
    std::string out_path = "transcript.json";
    std::string judge_mode;
    double threshold = -1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool threshold_set = false;
};

int cmd_run(const RunOptions& options) {
    autoparl::SessionSetup setup;
    autoparl::Question question;
    try {
        setup = autoparl::load_session_config(options.config_path);
        std::string text = options.question;
        if (!text.empty() && text[0] == '@') text = read_file_or_die(text.substr(1));
        if (text.empty()) text = setup.default_question;
        if (text.empty())
            throw autoparl::Error(autoparl::ErrorKind::configuration,
                                  "no question given (use --question or a config default)");
        // Trim one trailing newline so @file questions match inline ones.
        if (!text.empty() && text.back() == '\n') text.pop_back();
        question = {"cli", text};
        if (!options.judge_mode.empty())
            setup.parliament.judge.mode = autoparl::parse_judge_mode(options.judge_mode);
        if (options.seed_set) setup.parliament.judge.seed = options.seed;
        if (options.threshold_set) setup.parliament.threshold = options.threshold;
        setup.parliament.validate();
    } catch (const autoparl::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const autoparl::SessionTranscript transcript =
            autoparl::run_session(question, setup.parliament, setup.backends);
        write_file(options.out_path, autoparl::to_json_string(transcript));
        const auto& stance =
            setup.parliament.stances[static_cast<std::size_t>(transcript.winner - 1)];
        std::cout << "winner: " << transcript.winner << " (" << stance.name << ")\n";
        std::cout << "transcript: " << options.out_path << "\n";
        return kExitOk;
    } catch (const autoparl::SessionError& e) {
        std::cerr << e.what() << "\n";
        if (e.partial_transcript()) {
            write_file(options.out_path, autoparl::to_json_string(*e.partial_transcript()));
            std::cerr << "partial transcript: " << options.out_path << "\n";
        }
        return kExitBackend;
    } catch (const autoparl::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
}

struct BenchOptions {
    std::string expected_path;
    std::vector<std::string> actual_paths;
    std::vector<std::string> labels;
    std::string out_path;
};

int cmd_bench(const BenchOptions& options) {
    try {
        if (options.actual_paths.empty())
            throw autoparl::Error(autoparl::ErrorKind::configuration,
                                  "at least one --actual dataset is required");
        if (options.labels.size() != options.actual_paths.size())
            throw autoparl::Error(autoparl::ErrorKind::configuration,
                                  "each --actual needs a matching --label (model:condition)");
        const autoparl::Dataset expected = autoparl::load_dataset(options.expected_path);
        std::vector<autoparl::BenchResult> results;
        for (std::size_t i = 0; i < options.actual_paths.size(); ++i) {
            const std::string& label = options.labels[i];
            const std::size_t colon = label.rfind(':');
            if (colon == std::string::npos || colon == 0)
                throw autoparl::Error(autoparl::ErrorKind::configuration,
                                      "label '" + label + "' is not of the form model:condition");
            const autoparl::Dataset actual = autoparl::load_dataset(options.actual_paths[i]);
            results.push_back(autoparl::make_bench_result(
                label.substr(0, colon),
                autoparl::parse_bench_condition(label.substr(colon + 1)), expected, actual));
        }
        const autoparl::BenchReport report = autoparl::render_report(results);
        std::cout << report.text;
        if (options.out_path.empty()) {
            std::cout << "\n" << report.csv;
        } else {
            write_file(options.out_path, report.csv);
            std::cout << "csv: " << options.out_path << "\n";
        }
        return kExitOk;
    } catch (const autoparl::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_schedule(int n) {
    try {
        const auto schedule = autoparl::plan_schedule(n);
        if (schedule.empty()) {
            std::cout << "no modification iterations\n";
            return kExitOk;
        }
        for (std::size_t k = 0; k < schedule.size(); ++k) {
            std::cout << "iteration " << (k + 1) << ":";
            for (const auto& [modifier, origin] : schedule[k])
                std::cout << " " << modifier << "->" << origin;
            std::cout << "\n";
        }
        return kExitOk;
    } catch (const autoparl::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_validate(const std::vector<std::string>& paths) {
    try {
        for (const std::string& path : paths) {
            const std::string ext = std::filesystem::path(path).extension().string();
            if (ext == ".json") {
                const autoparl::SessionSetup setup = autoparl::load_session_config(path);
                std::cout << path << ": ok (config, " << setup.parliament.size()
                          << " stances)\n";
            } else if (ext == ".csv") {
                const std::string text = read_file_or_die(path);
                const auto records = autoparl::csv::parse(text, path);
                const bool scored =
                    !records.empty() && records[0].size() >= 2 && records[0][1] == "answer";
                if (scored) {
                    const autoparl::Dataset ds = autoparl::parse_dataset_csv(text, path);
                    std::cout << path << ": ok (dataset, " << ds.rows.size() << " rows, "
                              << ds.stances.size() << " stance columns)\n";
                } else {
                    const autoparl::CompletionTable table =
                        autoparl::parse_completion_csv(text, path);
                    std::cout << path << ": ok (completion table, " << table.rows.size()
                              << " rows, " << table.stances.size() << " stance columns)\n";
                }
            } else {
                throw autoparl::Error(autoparl::ErrorKind::configuration,
                                      path + ": unsupported file type '" + ext + "'");
            }
        }
        return kExitOk;
    } catch (const autoparl::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deliberation engine and benchmark harness"};
    app.require_subcommand(1);

    RunOptions run_options;
    CLI::App* run = app.add_subcommand("run", "Run one deliberation session");
    run->add_option("--config", run_options.config_path, "Session config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--question", run_options.question,
                    "Question text, or @path to read it from a file");
    run->add_option("--out", run_options.out_path, "Transcript output path");
    run->add_option("--judge", run_options.judge_mode,
                    "Judge override: argmax or proportional-chances");
    run->add_option("--seed", run_options.seed, "Judge seed override")
        ->each([&](const std::string&) { run_options.seed_set = true; });
    run->add_option("--threshold", run_options.threshold, "Activation threshold override")
        ->each([&](const std::string&) { run_options.threshold_set = true; });

    BenchOptions bench_options;
    CLI::App* bench = app.add_subcommand("bench", "Score datasets against an expected set");
    bench->add_option("--expected", bench_options.expected_path, "Expected-score dataset CSV")
        ->required()
        ->check(CLI::ExistingFile);
    bench->add_option("--actual", bench_options.actual_paths, "Produced-score dataset CSV")
        ->check(CLI::ExistingFile);
    bench->add_option("--label", bench_options.labels,
                      "Label for the matching --actual, as model:condition "
                      "(condition: amp or single-value)");
    bench->add_option("--out", bench_options.out_path, "Write the CSV report here");

    int schedule_n = 0;
    CLI::App* schedule = app.add_subcommand("schedule", "Print the modification schedule");
    schedule->add_option("n", schedule_n, "Delegate count")->required();

    std::vector<std::string> validate_paths;
    CLI::App* validate = app.add_subcommand("validate", "Lint config or dataset files");
    validate->add_option("paths", validate_paths, "Files to check (.json or .csv)")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed()) return cmd_run(run_options);
    if (bench->parsed()) return cmd_bench(bench_options);
    if (schedule->parsed()) return cmd_schedule(schedule_n);
    if (validate->parsed()) return cmd_validate(validate_paths);
    return kExitConfig;
}
