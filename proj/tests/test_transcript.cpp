#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "autoparl/transcript.hpp"
#include "helpers.hpp"

using autoparl::ErrorKind;
using autoparl::IterationRecord;
using autoparl::LossKind;
using autoparl::LossRecord;
using autoparl::SessionTranscript;
using test_helpers::error_kind;

namespace {

// A structurally complete transcript over the synthetic score rule; chain
// texts are irrelevant to signal emission.
SessionTranscript synthetic_transcript(int n) {
    SessionTranscript transcript;
    transcript.question = {"synthetic", "q"};
    transcript.config = test_helpers::uniform_parliament(n);
    const auto weights = transcript.config.weights();
    for (int j = 1; j <= n; ++j)
        transcript.chains.push_back({j, "g", {}, "final"});
    for (int k = 0; k <= n - 1; ++k) {
        IterationRecord record;
        record.iteration = k;
        record.scores = autoparl::Grid(n, n);
        for (int x = 0; x < n; ++x)
            for (int j = 0; j < n; ++j)
                record.scores.at(x, j) = test_helpers::synthetic_score(x + 1, j + 1, k);
        record.totals = autoparl::chain_totals(record.scores, weights);
        record.win_flags = autoparl::win_flags(record.totals);
        transcript.iterations.push_back(std::move(record));
    }
    transcript.totals = transcript.iterations.back().totals;
    transcript.winner = autoparl::judge_argmax(transcript.totals);
    transcript.complete = true;
    return transcript;
}

}  // namespace

TEST_CASE("emitted record counts follow the delegate-count formulas") {
    for (int n = 1; n <= 10; ++n) {
        const auto records = autoparl::emit_training_signals(synthetic_transcript(n));
        const int generator = n;
        const int per_modifier = 4;  // three components plus their sum
        CHECK(static_cast<int>(records.size()) == generator + per_modifier * n * (n - 1));
        int sums = 0;
        for (const LossRecord& r : records)
            if (r.kind == LossKind::modifier_sum) ++sums;
        CHECK(sums == n * (n - 1));
    }
}

TEST_CASE("a three-delegate session emits 3 generator and 6 modifier-sum records") {
    const auto records = autoparl::emit_training_signals(synthetic_transcript(3));
    REQUIRE(records.size() == 27);
    for (int i = 0; i < 3; ++i) {
        CHECK(records[static_cast<std::size_t>(i)].kind == LossKind::generator);
        CHECK(records[static_cast<std::size_t>(i)].iteration == 0);
        CHECK(records[static_cast<std::size_t>(i)].delegate == i + 1);
        CHECK(records[static_cast<std::size_t>(i)].origin == i + 1);
    }
}

TEST_CASE("records are ordered by iteration then delegate with a fixed component order") {
    const auto records = autoparl::emit_training_signals(synthetic_transcript(4));
    std::size_t idx = 4;  // past the generator block
    for (int k = 1; k <= 3; ++k)
        for (int i = 1; i <= 4; ++i) {
            const int j = autoparl::modification_target(i, k, 4);
            const LossKind expected_kinds[] = {LossKind::modifier_self,
                                               LossKind::modifier_goodwin,
                                               LossKind::modifier_total,
                                               LossKind::modifier_sum};
            for (LossKind kind : expected_kinds) {
                REQUIRE(idx < records.size());
                const LossRecord& r = records[idx++];
                CHECK(r.kind == kind);
                CHECK(r.iteration == k);
                CHECK(r.delegate == i);
                CHECK(r.origin == j);
            }
        }
    CHECK(idx == records.size());
}

TEST_CASE("a single delegate emits one generator record and nothing else") {
    const auto records = autoparl::emit_training_signals(synthetic_transcript(1));
    REQUIRE(records.size() == 1);
    CHECK(records[0].kind == LossKind::generator);
    const double s = test_helpers::synthetic_score(1, 1, 0);
    CHECK(records[0].value == autoparl::generator_loss(s));
}

TEST_CASE("generator record values square the self-score shortfall") {
    const auto transcript = synthetic_transcript(2);
    const auto records = autoparl::emit_training_signals(transcript);
    for (int i = 1; i <= 2; ++i) {
        const double s = transcript.iterations[0].scores.at(i - 1, i - 1);
        CHECK(records[static_cast<std::size_t>(i - 1)].value == (1.0 - s) * (1.0 - s));
    }
}

TEST_CASE("modifier sums equal their components") {
    const auto records = autoparl::emit_training_signals(synthetic_transcript(3));
    for (std::size_t i = 3; i + 3 < records.size(); i += 4) {
        CHECK(records[i + 3].kind == LossKind::modifier_sum);
        CHECK(records[i + 3].value ==
              records[i].value + records[i + 1].value + records[i + 2].value);
    }
}

TEST_CASE("incomplete transcripts are rejected") {
    auto transcript = synthetic_transcript(3);
    transcript.complete = false;
    CHECK(error_kind([&] { autoparl::emit_training_signals(transcript); }) ==
          ErrorKind::structure);

    auto missing = synthetic_transcript(3);
    missing.iterations.pop_back();
    CHECK(error_kind([&] { autoparl::emit_training_signals(missing); }) ==
          ErrorKind::structure);

    auto misshapen = synthetic_transcript(3);
    misshapen.iterations[2].scores = autoparl::Grid(2, 2);
    CHECK(error_kind([&] { autoparl::emit_training_signals(misshapen); }) ==
          ErrorKind::structure);
}

TEST_CASE("transcript JSON exposes the pinned field names") {
    const auto transcript = synthetic_transcript(3);
    const nlohmann::json doc = autoparl::to_json(transcript);
    REQUIRE(doc.contains("chains"));
    CHECK(doc["chains"][0].contains("origin"));
    CHECK(doc["chains"][0].contains("current_text"));
    REQUIRE(doc.contains("iterations"));
    const auto& iteration = doc["iterations"][1];
    CHECK(iteration.contains("iteration"));
    CHECK(iteration["scores"].size() == 9);  // row-major n*n
    CHECK(iteration.contains("totals"));
    CHECK(iteration.contains("win_flags"));
    CHECK(doc.contains("totals"));
    CHECK(doc.contains("winner"));
    CHECK(doc.contains("losses"));
    CHECK(doc.contains("warnings"));
}

TEST_CASE("loss records serialize one JSON object per line") {
    auto transcript = synthetic_transcript(3);
    transcript.losses = autoparl::emit_training_signals(transcript);
    const std::string ldjson = autoparl::losses_to_ldjson(transcript.losses);
    std::istringstream lines(ldjson);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        const nlohmann::json entry = nlohmann::json::parse(line);
        CHECK(entry.contains("kind"));
        CHECK(entry.contains("delegate"));
        CHECK(entry.contains("iteration"));
        CHECK(entry.contains("origin"));
        CHECK(entry.contains("value"));
        ++count;
    }
    CHECK(count == 27);
}
