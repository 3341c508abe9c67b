#pragma once

// Core domain types: stances with credence weights, the parliament
// configuration, questions, and a row-major numeric grid used both for
// per-iteration score matrices (evaluators x chains) and benchmark score
// tables (rows x stance columns).

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "autoparl/errors.hpp"

namespace autoparl {

enum class JudgeMode { argmax, proportional_chances };
enum class ModificationPolicy { any_changes, amendments_only };

inline const char* to_string(JudgeMode mode) {
    return mode == JudgeMode::argmax ? "argmax" : "proportional-chances";
}

inline const char* to_string(ModificationPolicy policy) {
    return policy == ModificationPolicy::any_changes ? "any-changes" : "amendments-only";
}

inline JudgeMode parse_judge_mode(const std::string& text) {
    if (text == "argmax") return JudgeMode::argmax;
    if (text == "proportional-chances") return JudgeMode::proportional_chances;
    throw Error(ErrorKind::schema, "unknown judge mode '" + text + "'");
}

inline ModificationPolicy parse_modification_policy(const std::string& text) {
    if (text == "any-changes") return ModificationPolicy::any_changes;
    if (text == "amendments-only") return ModificationPolicy::amendments_only;
    throw Error(ErrorKind::schema, "unknown modification policy '" + text + "'");
}

struct JudgeSpec {
    JudgeMode mode = JudgeMode::argmax;
    std::uint64_t seed = 42;
};

struct StanceSpec {
    int id = 0;              // 1-based delegate index
    std::string name;        // stance label, e.g. "deontology"
    double weight = 0.0;     // credence in [0,1]
};

struct ParliamentConfig {
    std::vector<StanceSpec> stances;
    double threshold = 0.5;
    double steepness = 20.0;
    JudgeSpec judge;
    ModificationPolicy policy = ModificationPolicy::any_changes;

    int size() const { return static_cast<int>(stances.size()); }

    std::vector<double> weights() const {
        std::vector<double> out;
        out.reserve(stances.size());
        for (const auto& s : stances) out.push_back(s.weight);
        return out;
    }

    // Throws invalid-parliament on any violated structural invariant.
    void validate() const {
        const int n = size();
        if (n < 1) throw Error(ErrorKind::invalid_parliament, "at least one stance is required");
        std::set<std::string> names;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const StanceSpec& s = stances[static_cast<std::size_t>(i)];
            if (s.id != i + 1)
                throw Error(ErrorKind::invalid_parliament,
                            "stance ids must be exactly 1.." + std::to_string(n) +
                                " in order; position " + std::to_string(i + 1) + " has id " +
                                std::to_string(s.id));
            if (s.name.empty())
                throw Error(ErrorKind::invalid_parliament,
                            "stance " + std::to_string(s.id) + " has an empty name");
            if (!names.insert(s.name).second)
                throw Error(ErrorKind::invalid_parliament, "duplicate stance name '" + s.name + "'");
            if (!(s.weight >= 0.0) || !std::isfinite(s.weight))
                throw Error(ErrorKind::invalid_parliament,
                            "stance '" + s.name + "' has negative or non-finite weight");
            sum += s.weight;
        }
        if (std::fabs(sum - 1.0) > 1e-9)
            throw Error(ErrorKind::invalid_parliament,
                        "stance weights must sum to 1 (got " + std::to_string(sum) + ")");
        if (!(threshold > 0.0 && threshold < 1.0))
            throw Error(ErrorKind::invalid_parliament, "threshold must lie strictly between 0 and 1");
        if (!(steepness > 0.0))
            throw Error(ErrorKind::invalid_parliament, "steepness must be positive");
    }
};

struct Question {
    std::string id;
    std::string text;
};

// Dense row-major grid of doubles.
struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<double> cells;

    Grid() = default;
    Grid(int r, int c, double fill = 0.0)
        : rows(r), cols(c), cells(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {
        if (r < 0 || c < 0) throw Error(ErrorKind::dimension, "grid dimensions must be nonnegative");
    }

    double at(int r, int c) const {
        check(r, c);
        return cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                     static_cast<std::size_t>(c)];
    }

    double& at(int r, int c) {
        check(r, c);
        return cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                     static_cast<std::size_t>(c)];
    }

    bool same_shape(const Grid& other) const { return rows == other.rows && cols == other.cols; }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw Error(ErrorKind::index, "grid index (" + std::to_string(r) + "," +
                                              std::to_string(c) + ") out of range for " +
                                              std::to_string(rows) + "x" + std::to_string(cols));
    }
};

}  // namespace autoparl
