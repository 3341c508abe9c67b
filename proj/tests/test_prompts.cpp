#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "autoparl/dataset.hpp"
#include "autoparl/prompts.hpp"
#include "helpers.hpp"

using autoparl::Dataset;
using autoparl::ErrorKind;
using autoparl::Question;
using test_helpers::data_dir;
using test_helpers::error_kind;
using test_helpers::prompts_dir;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("placeholders substitute by name") {
    CHECK(autoparl::render_template("Hello {{who}}!", {{"who", "world"}}) == "Hello world!");
    CHECK(autoparl::render_template("{{a}}{{b}}{{a}}", {{"a", "x"}, {"b", "y"}}) == "xyx");
    CHECK(autoparl::render_template("no placeholders", {}) == "no placeholders");
    CHECK(autoparl::render_template("", {{"a", "x"}}) == "");
}

TEST_CASE("template problems are schema errors") {
    CHECK(error_kind([] { autoparl::render_template("{{missing}}", {}); }) == ErrorKind::schema);
    CHECK(error_kind([] {
              autoparl::render_template("{{unclosed", {{"unclosed", "x"}});
          }) == ErrorKind::schema);
}

TEST_CASE("the shipped prompt templates load and render") {
    const autoparl::PromptTemplates templates = autoparl::PromptTemplates::load(prompts_dir());
    CHECK_FALSE(templates.evaluator_instruction.empty());
    CHECK_FALSE(templates.evaluator_exemplar.empty());
    CHECK_FALSE(templates.evaluator_target.empty());
    CHECK_FALSE(templates.evaluator_single_value.empty());
    CHECK_FALSE(templates.generator.empty());
    CHECK_FALSE(templates.modifier_any.empty());
    CHECK_FALSE(templates.modifier_amend.empty());

    const std::string generator_prompt = autoparl::render_template(
        templates.generator, {{"question", "Q?"}, {"stance", "deontology"}});
    CHECK(generator_prompt.find("Q?") != std::string::npos);
    CHECK(generator_prompt.find("deontology") != std::string::npos);
    CHECK(generator_prompt.find("{{") == std::string::npos);
}

TEST_CASE("the few-shot prompt renders every training row in order") {
    const Dataset training = autoparl::load_dataset(data_dir() + "/fewshot_train.csv");
    const autoparl::PromptTemplates templates = autoparl::PromptTemplates::load(prompts_dir());
    const Question question{"t", "Is lying always wrong?"};
    const std::string prompt = autoparl::build_fewshot_prompt(training, "deontology", question,
                                                              "Lying is usually wrong.", templates);

    // One scored exemplar per training row plus the unscored target.
    CHECK(count_occurrences(prompt, "alignment score:") == training.rows.size() + 1);
    CHECK(prompt.find("{{") == std::string::npos);
    CHECK(prompt.find(question.text) != std::string::npos);
    CHECK(prompt.find("Lying is usually wrong.") != std::string::npos);

    // Exemplars appear in dataset order.
    std::size_t last = 0;
    for (const autoparl::ScoredRow& row : training.rows) {
        const std::size_t pos = prompt.find(row.answer, last);
        REQUIRE(pos != std::string::npos);
        last = pos;
    }
    // The target comes after every exemplar.
    CHECK(prompt.rfind(question.text) > last);
}

TEST_CASE("exemplar scores render from the requested stance column") {
    Dataset training;
    training.stances = {"deontology", "utilitarianism"};
    training.rows.push_back({"Q1?", "A1.", {0.25, 0.9}});
    const autoparl::PromptTemplates templates = autoparl::PromptTemplates::load(prompts_dir());
    const Question question{"t", "T?"};

    const std::string deon =
        autoparl::build_fewshot_prompt(training, "deontology", question, "target", templates);
    CHECK(deon.find("0.25") != std::string::npos);
    CHECK(deon.find("0.90") == std::string::npos);

    const std::string util =
        autoparl::build_fewshot_prompt(training, "utilitarianism", question, "target", templates);
    CHECK(util.find("0.90") != std::string::npos);
    CHECK(util.find("0.25") == std::string::npos);
}

TEST_CASE("zero training rows fall back to the single-value prompt") {
    Dataset empty;
    empty.stances = {"deontology"};
    const autoparl::PromptTemplates templates = autoparl::PromptTemplates::load(prompts_dir());
    const Question question{"t", "T?"};
    const std::string prompt =
        autoparl::build_fewshot_prompt(empty, "deontology", question, "target answer", templates);
    CHECK(prompt.find("T?") != std::string::npos);
    CHECK(prompt.find("target answer") != std::string::npos);
    // The zero-shot prompt names no stance and contains no exemplars.
    CHECK(prompt.find("deontology") == std::string::npos);
    CHECK(count_occurrences(prompt, "alignment score:") == 0);
}

TEST_CASE("a missing stance column in the training rows is a schema error") {
    const Dataset training = autoparl::load_dataset(data_dir() + "/fewshot_train.csv");
    const autoparl::PromptTemplates templates = autoparl::PromptTemplates::load(prompts_dir());
    CHECK(error_kind([&] {
              autoparl::build_fewshot_prompt(training, "hedonism", {"t", "T?"}, "a", templates);
          }) == ErrorKind::schema);
}
