#pragma once

// The deliberation engine. One session: every delegate generates an answer,
// then over n-1 iterations every modifier revises another delegate's chain
// following the circular schedule, with all n evaluators scoring all n chains
// after every round (including round 0). Totals, win flags, loss records, and
// the judged winner land in an immutable transcript.
//
// Within an iteration the modification calls are independent and run
// concurrently when every backend allows it, as do the n*n evaluation calls.
// Results are committed in index order at the barrier, so transcripts are
// identical whether or not threads are used.

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "autoparl/backends.hpp"
#include "autoparl/concurrency.hpp"
#include "autoparl/errors.hpp"
#include "autoparl/schedule.hpp"
#include "autoparl/scoring.hpp"
#include "autoparl/transcript.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

struct DelegateBackends {
    std::shared_ptr<Generator> generator;
    std::shared_ptr<Modifier> modifier;
    std::shared_ptr<Evaluator> evaluator;
};

struct BackendSet {
    std::vector<DelegateBackends> delegates;

    bool concurrent_safe() const {
        for (const DelegateBackends& d : delegates) {
            if (d.generator && !d.generator->concurrent_safe()) return false;
            if (d.modifier && !d.modifier->concurrent_safe()) return false;
            if (d.evaluator && !d.evaluator->concurrent_safe()) return false;
        }
        return true;
    }

    void validate_for(const ParliamentConfig& config) const {
        if (static_cast<int>(delegates.size()) != config.size())
            throw Error(ErrorKind::configuration,
                        "backend set covers " + std::to_string(delegates.size()) +
                            " delegates but the parliament has " + std::to_string(config.size()));
        for (std::size_t i = 0; i < delegates.size(); ++i) {
            const std::string& name = config.stances[i].name;
            if (!delegates[i].generator)
                throw Error(ErrorKind::configuration, "stance '" + name + "' has no generator");
            if (!delegates[i].modifier)
                throw Error(ErrorKind::configuration, "stance '" + name + "' has no modifier");
            if (!delegates[i].evaluator)
                throw Error(ErrorKind::configuration, "stance '" + name + "' has no evaluator");
        }
    }
};

// A backend failure mid-session; carries everything recorded before the
// failing round so callers can persist the partial transcript.
class SessionError : public Error {
public:
    SessionError(ErrorKind kind, const std::string& message,
                 std::shared_ptr<SessionTranscript> partial)
        : Error(kind, message), partial_(std::move(partial)) {}

    const std::shared_ptr<SessionTranscript>& partial_transcript() const { return partial_; }

private:
    std::shared_ptr<SessionTranscript> partial_;
};

namespace detail {

inline std::string short_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace detail

inline SessionTranscript run_session(const Question& question, const ParliamentConfig& config,
                                     const BackendSet& backends) {
    config.validate();
    backends.validate_for(config);
    if (question.text.empty())
        throw Error(ErrorKind::validation, "question text must be non-empty");

    const int n = config.size();
    const bool parallel = backends.concurrent_safe();
    const std::vector<double> weights = config.weights();

    auto transcript = std::make_shared<SessionTranscript>();
    transcript->question = question;
    transcript->config = config;

    auto abort_with = [&](const Error& inner) -> SessionError {
        return SessionError(inner.kind(), inner.what(), transcript);
    };

    // Round 0: every delegate answers the question.
    {
        std::vector<std::string> generations(static_cast<std::size_t>(n));
        try {
            run_indexed_jobs(n, parallel, [&](int i) {
                const std::size_t iu = static_cast<std::size_t>(i);
                generations[iu] =
                    backends.delegates[iu].generator->generate(question, config.stances[iu]);
                if (generations[iu].empty())
                    throw Error(ErrorKind::backend, "generator for stance '" +
                                                        config.stances[iu].name +
                                                        "' produced empty text");
            });
        } catch (const Error& e) {
            throw abort_with(e);
        }
        for (int i = 0; i < n; ++i) {
            AnswerChain chain;
            chain.origin = i + 1;
            chain.generation = generations[static_cast<std::size_t>(i)];
            chain.current_text = chain.generation;
            transcript->chains.push_back(std::move(chain));
        }
    }

    for (int k = 0; k <= n - 1; ++k) {
        if (k >= 1) {
            // Modification round: gather all results, then commit together so
            // an aborted round leaves no half-applied changes.
            std::vector<Modification> results(static_cast<std::size_t>(n));
            std::vector<int> targets(static_cast<std::size_t>(n));
            for (int i = 1; i <= n; ++i)
                targets[static_cast<std::size_t>(i - 1)] = modification_target(i, k, n);
            try {
                run_indexed_jobs(n, parallel, [&](int idx) {
                    const int i = idx + 1;
                    const int j = targets[static_cast<std::size_t>(idx)];
                    const std::string& input =
                        transcript->chains[static_cast<std::size_t>(j - 1)].current_text;
                    Modification mod = backends.delegates[static_cast<std::size_t>(idx)]
                                           .modifier->modify(question,
                                                             config.stances[static_cast<std::size_t>(idx)],
                                                             input, config.policy);
                    if (mod.text.empty())
                        throw Error(ErrorKind::backend,
                                    "modifier for stance '" +
                                        config.stances[static_cast<std::size_t>(idx)].name +
                                        "' produced empty text");
                    enforce_modification_policy(input, mod.text, config.policy);
                    results[static_cast<std::size_t>(idx)] = std::move(mod);
                });
            } catch (const Error& e) {
                throw abort_with(e);
            }
            for (int i = 1; i <= n; ++i) {
                const int j = targets[static_cast<std::size_t>(i - 1)];
                AnswerChain& chain = transcript->chains[static_cast<std::size_t>(j - 1)];
                Modification& mod = results[static_cast<std::size_t>(i - 1)];
                chain.revisions.push_back({k, i, mod.text, mod.subtype});
                chain.current_text = mod.text;
            }
        }

        // Scoring round: all n evaluators score all n chains' current texts.
        Grid raw(n, n);
        try {
            run_indexed_jobs(n * n, parallel, [&](int idx) {
                const int x = idx / n;
                const int j = idx % n;
                raw.at(x, j) = backends.delegates[static_cast<std::size_t>(x)].evaluator->evaluate(
                    question, transcript->chains[static_cast<std::size_t>(j)].current_text,
                    config.stances[static_cast<std::size_t>(x)]);
            });
        } catch (const Error& e) {
            throw abort_with(e);
        }
        IterationRecord record;
        record.iteration = k;
        record.scores = Grid(n, n);
        for (int x = 0; x < n; ++x)
            for (int j = 0; j < n; ++j) {
                const double value = raw.at(x, j);
                if (!std::isfinite(value))
                    throw abort_with(Error(ErrorKind::backend,
                                           "evaluator for stance '" +
                                               config.stances[static_cast<std::size_t>(x)].name +
                                               "' returned a non-finite score"));
                if (value < 0.0 || value > 1.0) {
                    transcript->warnings.push_back(
                        "iteration " + std::to_string(k) + ": evaluator " + std::to_string(x + 1) +
                        " score " + detail::short_number(value) + " for chain " +
                        std::to_string(j + 1) + " clamped to " +
                        detail::short_number(clamp_unit(value)));
                }
                record.scores.at(x, j) = clamp_unit(value);
            }
        record.totals = chain_totals(record.scores, weights);
        record.win_flags = win_flags(record.totals);
        transcript->iterations.push_back(std::move(record));
    }

    transcript->totals = transcript->iterations.back().totals;
    transcript->winner = select_winner(transcript->totals, config.judge);
    transcript->complete = true;
    transcript->losses = emit_training_signals(*transcript);
    return std::move(*transcript);
}

}  // namespace autoparl
