#pragma once

// Non-deliberative baselines over the initial answers:
//   - highest-credence pick ("my favorite theory"): take the answer of the
//     delegate with the largest weight;
//   - permissibility vote ("my favorite option"): binarize every evaluator
//     score at a threshold and take the answer with the largest
//     credence-weighted count of permissibility votes;
//   - expected choice-worthiness is deliberately unsupported.

#include <string>
#include <vector>

#include "autoparl/errors.hpp"
#include "autoparl/scoring.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

struct BaselineChoice {
    int index = 0;  // 1-based delegate/answer index
    std::string answer;
};

inline BaselineChoice baseline_mft(const std::vector<std::string>& answers,
                                   const std::vector<double>& weights) {
    if (answers.empty()) throw Error(ErrorKind::dimension, "no answers to choose from");
    if (answers.size() != weights.size())
        throw Error(ErrorKind::dimension, "answers and weights disagree in length");
    int best = 0;
    for (int i = 1; i < static_cast<int>(weights.size()); ++i)
        if (weights[static_cast<std::size_t>(i)] > weights[static_cast<std::size_t>(best)])
            best = i;  // ties keep the smallest index
    return {best + 1, answers[static_cast<std::size_t>(best)]};
}

// `scores` is evaluators x answers. Ties on the binarized vote fall back to
// the higher raw total alignment, then the smallest index.
inline BaselineChoice baseline_mfo(const std::vector<std::string>& answers, const Grid& scores,
                                   double threshold, const std::vector<double>& weights) {
    const int n = static_cast<int>(answers.size());
    if (n == 0) throw Error(ErrorKind::dimension, "no answers to choose from");
    if (scores.rows != static_cast<int>(weights.size()) || scores.cols != n)
        throw Error(ErrorKind::dimension, "score matrix shape does not match answers and weights");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw Error(ErrorKind::domain, "permissibility threshold must lie strictly between 0 and 1");

    std::vector<double> votes(static_cast<std::size_t>(n), 0.0);
    std::vector<double> totals(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double vote = 0.0;
        double total = 0.0;
        for (int x = 0; x < scores.rows; ++x) {
            const double s = scores.at(x, j);
            const double w = weights[static_cast<std::size_t>(x)];
            vote += w * (s >= threshold ? 1.0 : 0.0);
            total += w * s;
        }
        votes[static_cast<std::size_t>(j)] = vote;
        totals[static_cast<std::size_t>(j)] = total;
    }
    int best = 0;
    for (int j = 1; j < n; ++j) {
        const std::size_t ju = static_cast<std::size_t>(j);
        const std::size_t bu = static_cast<std::size_t>(best);
        if (votes[ju] > votes[bu] || (votes[ju] == votes[bu] && totals[ju] > totals[bu]))
            best = j;
    }
    return {best + 1, answers[static_cast<std::size_t>(best)]};
}

// Expected choice-worthiness requires commensurable cross-stance utilities,
// which no backend provides; always fails.
[[noreturn]] inline void baseline_mec() {
    throw Error(ErrorKind::unsupported_baseline,
                "the expected choice-worthiness baseline is not supported");
}

}  // namespace autoparl
