#pragma once

// Session transcripts: the complete record of one deliberation (chains with
// their revision history, per-iteration score matrices / totals / win flags,
// the final totals and winner, emitted loss records, and any warnings), plus
// JSON serialization and the training-signal emitter.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoparl/errors.hpp"
#include "autoparl/losses.hpp"
#include "autoparl/schedule.hpp"
#include "autoparl/scoring.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

struct Revision {
    int iteration = 0;    // k >= 1
    int modifier = 0;     // delegate that produced this text
    std::string text;
    std::string subtype;  // modification sub-type label, e.g. "any-changes"
};

struct AnswerChain {
    int origin = 0;            // generating delegate, 1-based
    std::string generation;    // iteration-0 text
    std::vector<Revision> revisions;
    std::string current_text;  // latest text (the final answer once complete)
};

struct IterationRecord {
    int iteration = 0;           // k, 0-based; 0 is the generation round
    Grid scores;                 // evaluators x chains
    std::vector<double> totals;  // per-chain weighted totals at this iteration
    std::vector<int> win_flags;  // 1 where the total equals the iteration max
};

struct SessionTranscript {
    Question question;
    ParliamentConfig config;
    std::vector<AnswerChain> chains;
    std::vector<IterationRecord> iterations;
    std::vector<double> totals;  // final totals, identical to the last iteration's
    int winner = 0;              // 1-based origin chosen by the judge
    std::vector<LossRecord> losses;
    std::vector<std::string> warnings;
    bool complete = false;
};

// Recomputes every training signal from a completed transcript's score
// matrices, totals, and win flags: n generator records, then for each
// modification iteration and delegate the self/good-win/total components and
// their sum. Ordered by iteration, then delegate.
inline std::vector<LossRecord> emit_training_signals(const SessionTranscript& transcript) {
    const int n = transcript.config.size();
    if (!transcript.complete)
        throw Error(ErrorKind::structure, "transcript is incomplete");
    if (static_cast<int>(transcript.iterations.size()) != n)
        throw Error(ErrorKind::structure,
                    "expected " + std::to_string(n) + " iteration records, found " +
                        std::to_string(transcript.iterations.size()));
    for (const IterationRecord& it : transcript.iterations) {
        if (it.scores.rows != n || it.scores.cols != n)
            throw Error(ErrorKind::structure, "iteration " + std::to_string(it.iteration) +
                                                  " score matrix is not " + std::to_string(n) +
                                                  "x" + std::to_string(n));
        if (static_cast<int>(it.totals.size()) != n ||
            static_cast<int>(it.win_flags.size()) != n)
            throw Error(ErrorKind::structure, "iteration " + std::to_string(it.iteration) +
                                                  " totals or win flags have the wrong length");
    }

    std::vector<LossRecord> out;
    out.reserve(static_cast<std::size_t>(n + 4 * n * (n - 1)));
    const IterationRecord& first = transcript.iterations[0];
    for (int i = 1; i <= n; ++i) {
        const double s = first.scores.at(i - 1, i - 1);
        out.push_back({LossKind::generator, i, 0, i, generator_loss(s)});
    }
    for (int k = 1; k <= n - 1; ++k) {
        const IterationRecord& it = transcript.iterations[static_cast<std::size_t>(k)];
        for (int i = 1; i <= n; ++i) {
            const int j = modification_target(i, k, n);
            const double s_self = it.scores.at(i - 1, j - 1);
            const int win = it.win_flags[static_cast<std::size_t>(j - 1)];
            const double act =
                activation(transcript.config.threshold, s_self, transcript.config.steepness);
            const double s_total = it.totals[static_cast<std::size_t>(j - 1)];
            const ModifierLoss ml = modifier_loss(s_self, win, act, s_total);
            out.push_back({LossKind::modifier_self, i, k, j, ml.self_alignment});
            out.push_back({LossKind::modifier_goodwin, i, k, j, ml.good_win});
            out.push_back({LossKind::modifier_total, i, k, j, ml.total_alignment});
            out.push_back({LossKind::modifier_sum, i, k, j, ml.sum});
        }
    }
    return out;
}

inline nlohmann::json to_json(const LossRecord& record) {
    return {{"kind", to_string(record.kind)},
            {"delegate", record.delegate},
            {"iteration", record.iteration},
            {"origin", record.origin},
            {"value", record.value}};
}

inline nlohmann::json to_json(const ParliamentConfig& config) {
    nlohmann::json stances = nlohmann::json::array();
    for (const StanceSpec& s : config.stances)
        stances.push_back({{"id", s.id}, {"name", s.name}, {"weight", s.weight}});
    return {{"stances", stances},
            {"threshold", config.threshold},
            {"steepness", config.steepness},
            {"judge", {{"mode", to_string(config.judge.mode)}, {"seed", config.judge.seed}}},
            {"modification_policy", to_string(config.policy)}};
}

inline nlohmann::json to_json(const SessionTranscript& transcript) {
    nlohmann::json chains = nlohmann::json::array();
    for (const AnswerChain& chain : transcript.chains) {
        nlohmann::json revisions = nlohmann::json::array();
        for (const Revision& rev : chain.revisions)
            revisions.push_back({{"iteration", rev.iteration},
                                 {"modifier", rev.modifier},
                                 {"text", rev.text},
                                 {"subtype", rev.subtype}});
        chains.push_back({{"origin", chain.origin},
                          {"generation", chain.generation},
                          {"revisions", revisions},
                          {"current_text", chain.current_text}});
    }
    nlohmann::json iterations = nlohmann::json::array();
    for (const IterationRecord& it : transcript.iterations)
        iterations.push_back({{"iteration", it.iteration},
                              {"scores", it.scores.cells},
                              {"totals", it.totals},
                              {"win_flags", it.win_flags}});
    nlohmann::json losses = nlohmann::json::array();
    for (const LossRecord& record : transcript.losses) losses.push_back(to_json(record));
    return {{"question", {{"id", transcript.question.id}, {"text", transcript.question.text}}},
            {"config", to_json(transcript.config)},
            {"chains", chains},
            {"iterations", iterations},
            {"totals", transcript.totals},
            {"winner", transcript.winner},
            {"losses", losses},
            {"warnings", transcript.warnings},
            {"complete", transcript.complete}};
}

inline std::string to_json_string(const SessionTranscript& transcript) {
    return to_json(transcript).dump(2) + "\n";
}

// One JSON object per line, for downstream training pipelines.
inline std::string losses_to_ldjson(const std::vector<LossRecord>& records) {
    std::string out;
    for (const LossRecord& record : records) {
        out += to_json(record).dump();
        out += '\n';
    }
    return out;
}

}  // namespace autoparl
