#pragma once

// Score aggregation and winner selection: credence-weighted totals over
// evaluator scores, exact-equality win flags, and the two judges (argmax with
// smallest-index tie-break, and seeded proportional-chances sampling).

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "autoparl/errors.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

inline double clamp_unit(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

// Weighted sum of one chain's scores across all evaluators.
inline double total_alignment(const std::vector<double>& weights,
                              const std::vector<double>& scores) {
    if (weights.size() != scores.size())
        throw Error(ErrorKind::dimension, "weights and scores disagree in length (" +
                                              std::to_string(weights.size()) + " vs " +
                                              std::to_string(scores.size()) + ")");
    double acc = 0.0;
    for (std::size_t x = 0; x < weights.size(); ++x) acc += weights[x] * scores[x];
    return acc;
}

// Per-chain totals from an evaluators-by-chains score matrix.
inline std::vector<double> chain_totals(const Grid& scores, const std::vector<double>& weights) {
    if (scores.rows != static_cast<int>(weights.size()))
        throw Error(ErrorKind::dimension, "score matrix rows must match the weight count");
    std::vector<double> totals;
    totals.reserve(static_cast<std::size_t>(scores.cols));
    for (int j = 0; j < scores.cols; ++j) {
        double acc = 0.0;
        for (int x = 0; x < scores.rows; ++x) acc += weights[static_cast<std::size_t>(x)] * scores.at(x, j);
        totals.push_back(acc);
    }
    return totals;
}

// 1 for every chain whose total equals the maximum (exact comparison).
inline std::vector<int> win_flags(const std::vector<double>& totals) {
    if (totals.empty()) throw Error(ErrorKind::dimension, "totals must be nonempty");
    double best = totals[0];
    for (double v : totals)
        if (v > best) best = v;
    std::vector<int> flags;
    flags.reserve(totals.size());
    for (double v : totals) flags.push_back(v == best ? 1 : 0);
    return flags;
}

namespace detail {

inline void check_totals(const std::vector<double>& totals) {
    if (totals.empty()) throw Error(ErrorKind::dimension, "totals must be nonempty");
    for (double v : totals)
        if (!(v >= 0.0 && v <= 1.0))
            throw Error(ErrorKind::domain, "totals must lie in [0,1]");
}

// Uniform draw in [0,1) from the top 53 bits of one engine output; avoids the
// library-defined (and thus non-portable) std::distribution adaptors.
inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// 1-based index of the maximum total; ties go to the smallest index.
inline int judge_argmax(const std::vector<double>& totals) {
    detail::check_totals(totals);
    int best = 0;
    for (int j = 1; j < static_cast<int>(totals.size()); ++j)
        if (totals[static_cast<std::size_t>(j)] > totals[static_cast<std::size_t>(best)]) best = j;
    return best + 1;
}

// Samples a 1-based index with probability proportional to its total. All-zero
// totals fall back to index 1.
inline int judge_proportional(const std::vector<double>& totals, std::mt19937_64& rng) {
    detail::check_totals(totals);
    double sum = 0.0;
    for (double v : totals) sum += v;
    if (sum == 0.0) return 1;
    const double pick = detail::unit_draw(rng) * sum;
    double acc = 0.0;
    for (std::size_t j = 0; j < totals.size(); ++j) {
        acc += totals[j];
        if (pick < acc) return static_cast<int>(j) + 1;
    }
    return static_cast<int>(totals.size());  // guard against accumulated rounding
}

inline int select_winner(const std::vector<double>& totals, const JudgeSpec& judge) {
    if (judge.mode == JudgeMode::argmax) return judge_argmax(totals);
    std::mt19937_64 rng(judge.seed);
    return judge_proportional(totals, rng);
}

}  // namespace autoparl
