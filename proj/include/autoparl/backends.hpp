#pragma once

// Backend interfaces for the three delegate roles, deterministic scripted
// implementations backed by lookup tables, and the numeric score text codec.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <utility>

#include "autoparl/dataset.hpp"
#include "autoparl/errors.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

struct Modification {
    std::string text;
    std::string subtype;  // e.g. "any-changes", "amendments-only"
};

class Generator {
public:
    virtual ~Generator() = default;
    virtual std::string generate(const Question& question, const StanceSpec& stance) = 0;
    // Whether the engine may invoke this backend from several threads at once.
    virtual bool concurrent_safe() const { return true; }
};

class Modifier {
public:
    virtual ~Modifier() = default;
    virtual Modification modify(const Question& question, const StanceSpec& stance,
                                const std::string& current_text, ModificationPolicy policy) = 0;
    virtual bool concurrent_safe() const { return true; }
};

class Evaluator {
public:
    virtual ~Evaluator() = default;
    // May return values outside [0,1]; the engine clamps and records a warning.
    virtual double evaluate(const Question& question, const std::string& answer,
                            const StanceSpec& stance) = 0;
    virtual bool concurrent_safe() const { return true; }
};

// Raises a policy error when a modification breaks the configured policy
// (amendments-only output must extend its input).
inline void enforce_modification_policy(const std::string& input, const std::string& output,
                                        ModificationPolicy policy) {
    if (policy == ModificationPolicy::amendments_only &&
        output.compare(0, input.size(), input) != 0)
        throw Error(ErrorKind::policy,
                    "amendments-only modification must keep the input text as a prefix");
}

// ---------------------------------------------------------------------------
// Score text codec

struct ParsedScore {
    double raw = 0.0;    // first decimal literal as written
    double value = 0.0;  // raw clamped to [0,1]
    bool clamped = false;
};

// Extracts the first decimal literal from model output; clamps it to [0,1].
inline ParsedScore parse_score_detailed(const std::string& text) {
    static const std::regex literal(R"([-+]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+))");
    std::smatch match;
    if (!std::regex_search(text, match, literal))
        throw Error(ErrorKind::parse, "no decimal literal in '" + text + "'");
    ParsedScore out;
    out.raw = std::strtod(match.str().c_str(), nullptr);
    out.value = out.raw;
    if (out.value < 0.0) {
        out.value = 0.0;
        out.clamped = true;
    } else if (out.value > 1.0) {
        out.value = 1.0;
        out.clamped = true;
    }
    return out;
}

inline double parse_score(const std::string& text) { return parse_score_detailed(text).value; }

// Two-decimal rendering used in prompts; lossless for scores on a 0.05 grid.
inline std::string format_score(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

// ---------------------------------------------------------------------------
// Scripted backends

class ScriptedGenerator : public Generator {
public:
    ScriptedGenerator() = default;
    explicit ScriptedGenerator(std::map<std::string, std::string> by_question,
                               std::optional<std::string> fallback = std::nullopt)
        : by_question_(std::move(by_question)), fallback_(std::move(fallback)) {}

    void add(const std::string& question, const std::string& text) { by_question_[question] = text; }
    void set_fallback(const std::string& text) { fallback_ = text; }

    std::string generate(const Question& question, const StanceSpec& stance) override {
        auto it = by_question_.find(question.text);
        if (it != by_question_.end()) return it->second;
        if (fallback_) return *fallback_;
        throw Error(ErrorKind::backend, "no scripted generation for stance '" + stance.name +
                                            "' and question '" + question.text + "'");
    }

private:
    std::map<std::string, std::string> by_question_;
    std::optional<std::string> fallback_;
};

class ScriptedModifier : public Modifier {
public:
    ScriptedModifier() = default;

    void add(const std::string& input, const std::string& output, const std::string& subtype) {
        by_input_[input] = {output, subtype};
    }
    void set_fallback(const std::string& output, const std::string& subtype) {
        fallback_ = Modification{output, subtype};
    }

    Modification modify(const Question&, const StanceSpec& stance, const std::string& current_text,
                        ModificationPolicy policy) override {
        auto it = by_input_.find(current_text);
        Modification result;
        if (it != by_input_.end()) {
            result = it->second;
        } else if (fallback_) {
            result = *fallback_;
        } else {
            throw Error(ErrorKind::backend, "no scripted modification for stance '" + stance.name +
                                                "' and text '" + current_text + "'");
        }
        if (result.subtype.empty()) result.subtype = to_string(policy);
        return result;
    }

private:
    std::map<std::string, Modification> by_input_;
    std::optional<Modification> fallback_;
};

class ScriptedEvaluator : public Evaluator {
public:
    ScriptedEvaluator() = default;

    void add(const std::string& answer, double score) { by_answer_[answer] = score; }
    void set_fallback(double score) { fallback_ = score; }

    double evaluate(const Question&, const std::string& answer, const StanceSpec& stance) override {
        auto it = by_answer_.find(answer);
        if (it != by_answer_.end()) return it->second;
        if (fallback_) return *fallback_;
        throw Error(ErrorKind::backend, "no scripted score for stance '" + stance.name +
                                            "' and answer '" + answer + "'");
    }

private:
    std::map<std::string, double> by_answer_;
    std::optional<double> fallback_;
};

// Scripted generator fed by a completion-table fixture: each stance column
// holds that stance's aligned answer per question.
inline std::shared_ptr<ScriptedGenerator> generator_from_completions(const CompletionTable& table,
                                                                     const std::string& stance) {
    const int col = stance_column(table.stances, stance);
    if (col < 0)
        throw Error(ErrorKind::schema, "completion table has no stance column '" + stance + "'");
    auto generator = std::make_shared<ScriptedGenerator>();
    for (const CompletionRow& row : table.rows)
        generator->add(row.question, row.answers[static_cast<std::size_t>(col)]);
    return generator;
}

// Scripted evaluator fed by a scored dataset: scores each answer text with the
// stance column's expected value.
inline std::shared_ptr<ScriptedEvaluator> evaluator_from_dataset(const Dataset& dataset,
                                                                 const std::string& stance) {
    const int col = stance_column(dataset.stances, stance);
    if (col < 0) throw Error(ErrorKind::schema, "dataset has no stance column '" + stance + "'");
    auto evaluator = std::make_shared<ScriptedEvaluator>();
    for (const ScoredRow& row : dataset.rows)
        evaluator->add(row.answer, row.scores[static_cast<std::size_t>(col)]);
    return evaluator;
}

}  // namespace autoparl
