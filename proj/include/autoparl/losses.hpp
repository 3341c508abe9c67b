#pragma once

// Training-signal kernels: the generator loss, the sigmoid activation gate,
// the win indicator, and the three-part modifier loss. All pure functions.

#include <cmath>
#include <string>
#include <vector>

#include "autoparl/errors.hpp"

namespace autoparl {

namespace detail {
inline void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw Error(ErrorKind::domain, std::string(name) + " must lie in [0,1]");
}
}  // namespace detail

// (1 - s)^2 where s is the delegate's own evaluator's score of its own
// initial answer.
inline double generator_loss(double s) {
    detail::require_unit(s, "score");
    return (1.0 - s) * (1.0 - s);
}

// Sigmoid gate 1 / (1 + e^(steepness * (threshold - score))): ~0 well below
// the threshold, 0.5 exactly at it, ~1 well above.
inline double activation(double threshold, double score, double steepness = 20.0) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw Error(ErrorKind::domain, "threshold must lie strictly between 0 and 1");
    detail::require_unit(score, "score");
    if (!(steepness > 0.0)) throw Error(ErrorKind::domain, "steepness must be positive");
    return 1.0 / (1.0 + std::exp(steepness * (threshold - score)));
}

// 1 iff the chain with 1-based index `origin` holds the (possibly shared)
// maximum total. Exact comparison on stored values.
inline int win_indicator(const std::vector<double>& totals, int origin) {
    if (totals.empty()) throw Error(ErrorKind::dimension, "totals must be nonempty");
    if (origin < 1 || origin > static_cast<int>(totals.size()))
        throw Error(ErrorKind::index, "origin " + std::to_string(origin) +
                                          " out of range 1.." + std::to_string(totals.size()));
    double best = totals[0];
    for (double v : totals)
        if (v > best) best = v;
    return totals[static_cast<std::size_t>(origin - 1)] == best ? 1 : 0;
}

struct ModifierLoss {
    double self_alignment = 0.0;  // (1 - s_self)^2
    double good_win = 0.0;        // (1 - win * act)^2
    double total_alignment = 0.0; // (1 - S_total)^2
    double sum = 0.0;             // self + good win + total, in [0,3]
};

inline ModifierLoss modifier_loss(double s_self, int win, double act, double s_total) {
    detail::require_unit(s_self, "self score");
    if (win != 0 && win != 1) throw Error(ErrorKind::domain, "win flag must be 0 or 1");
    detail::require_unit(act, "activation");
    detail::require_unit(s_total, "total alignment");
    ModifierLoss out;
    out.self_alignment = (1.0 - s_self) * (1.0 - s_self);
    out.good_win = (1.0 - win * act) * (1.0 - win * act);
    out.total_alignment = (1.0 - s_total) * (1.0 - s_total);
    out.sum = out.self_alignment + out.good_win + out.total_alignment;
    return out;
}

enum class LossKind {
    generator,
    modifier_self,
    modifier_goodwin,
    modifier_total,
    modifier_sum,
};

inline const char* to_string(LossKind kind) {
    switch (kind) {
        case LossKind::generator: return "generator";
        case LossKind::modifier_self: return "modifier-self";
        case LossKind::modifier_goodwin: return "modifier-goodwin";
        case LossKind::modifier_total: return "modifier-total";
        case LossKind::modifier_sum: return "modifier-sum";
    }
    return "unknown";
}

inline LossKind parse_loss_kind(const std::string& text) {
    if (text == "generator") return LossKind::generator;
    if (text == "modifier-self") return LossKind::modifier_self;
    if (text == "modifier-goodwin") return LossKind::modifier_goodwin;
    if (text == "modifier-total") return LossKind::modifier_total;
    if (text == "modifier-sum") return LossKind::modifier_sum;
    throw Error(ErrorKind::schema, "unknown loss kind '" + text + "'");
}

// One emitted training signal. Generator records have iteration 0 and
// origin == delegate; modifier records have origin == the chain the delegate
// modified during that iteration.
struct LossRecord {
    LossKind kind = LossKind::generator;
    int delegate = 0;
    int iteration = 0;
    int origin = 0;
    double value = 0.0;
};

}  // namespace autoparl
