#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "autoparl/config.hpp"
#include "helpers.hpp"

using autoparl::ErrorKind;
using autoparl::ParliamentConfig;
using autoparl::SessionSetup;
using nlohmann::json;
using test_helpers::configs_dir;
using test_helpers::error_kind;
using test_helpers::fixtures_dir;
using test_helpers::load_json;
using test_helpers::prompts_dir;
using test_helpers::temp_path;
using test_helpers::write_file;

namespace {

json minimal_config() {
    return json::parse(R"({
        "schema_version": 1,
        "question": "q",
        "parliament": {
            "stances": [
                {"name": "one", "weight": 0.5},
                {"name": "two", "weight": 0.5}
            ]
        },
        "scripted": {
            "defaults": {"generation": "g", "modification": "m", "score": 0.5}
        }
    })");
}

std::string write_config(const json& doc) {
    const std::string path = temp_path("config") + ".json";
    write_file(path, doc.dump(2) + "\n");
    return path;
}

}  // namespace

TEST_CASE("the shipped demo config loads and reproduces the worked session") {
    const SessionSetup setup =
        autoparl::load_session_config(configs_dir() + "/desert_island.json");
    REQUIRE(setup.parliament.size() == 3);
    CHECK(setup.parliament.stances[0].name == "deontology");
    CHECK(setup.parliament.stances[0].weight == 0.5);
    CHECK(setup.parliament.stances[1].name == "utilitarianism");
    CHECK(setup.parliament.stances[1].weight == 0.3);
    CHECK(setup.parliament.stances[2].name == "virtue ethics");
    CHECK(setup.parliament.stances[2].weight == 0.2);
    CHECK_FALSE(setup.default_question.empty());

    const autoparl::SessionTranscript t = autoparl::run_session(
        {"demo", setup.default_question}, setup.parliament, setup.backends);
    const json expected = load_json(fixtures_dir() + "/hand_session.json");
    CHECK(t.winner == expected["expected"]["winner"].get<int>());
    CHECK(t.totals == expected["expected"]["totals"].get<std::vector<double>>());
}

TEST_CASE("a minimal scripted config loads with every role bound") {
    const SessionSetup setup = autoparl::load_session_config(write_config(minimal_config()));
    REQUIRE(setup.backends.delegates.size() == 2);
    for (const auto& delegate : setup.backends.delegates) {
        CHECK(delegate.generator);
        CHECK(delegate.modifier);
        CHECK(delegate.evaluator);
    }
    CHECK(setup.default_question == "q");
    // The scripted defaults actually drive a run.
    const autoparl::SessionTranscript t =
        autoparl::run_session({"t", "q"}, setup.parliament, setup.backends);
    CHECK(t.complete);
    CHECK(t.totals == std::vector<double>{0.5, 0.5});
}

TEST_CASE("stance ids fill in by position and explicit ids are checked") {
    json node = json::parse(R"({
        "stances": [
            {"name": "a", "weight": 0.5},
            {"name": "b", "weight": 0.5}
        ]
    })");
    const ParliamentConfig config = autoparl::parliament_from_json(node);
    CHECK(config.stances[0].id == 1);
    CHECK(config.stances[1].id == 2);

    node["stances"][0]["id"] = 2;
    CHECK(error_kind([&] { autoparl::parliament_from_json(node); }) ==
          ErrorKind::invalid_parliament);
}

TEST_CASE("parliament sections parse judge and policy settings") {
    json node = json::parse(R"({
        "stances": [{"name": "a", "weight": 1.0}],
        "threshold": 0.6,
        "steepness": 12.0,
        "judge": {"mode": "proportional-chances", "seed": 7},
        "modification_policy": "amendments-only"
    })");
    const ParliamentConfig config = autoparl::parliament_from_json(node);
    CHECK(config.threshold == 0.6);
    CHECK(config.steepness == 12.0);
    CHECK(config.judge.mode == autoparl::JudgeMode::proportional_chances);
    CHECK(config.judge.seed == 7);
    CHECK(config.policy == autoparl::ModificationPolicy::amendments_only);

    node["judge"]["mode"] = "coin-flip";
    CHECK(error_kind([&] { autoparl::parliament_from_json(node); }) == ErrorKind::schema);
    node["judge"]["mode"] = "argmax";
    node["modification_policy"] = "anything-goes";
    CHECK(error_kind([&] { autoparl::parliament_from_json(node); }) == ErrorKind::schema);
}

TEST_CASE("config loading failures carry precise kinds") {
    CHECK(error_kind([] { autoparl::load_session_config("/nonexistent/c.json"); }) ==
          ErrorKind::configuration);

    const std::string bad_json = temp_path("bad") + ".json";
    write_file(bad_json, "{not json at all\n");
    CHECK(error_kind([&] { autoparl::load_session_config(bad_json); }) == ErrorKind::parse);

    json no_version = minimal_config();
    no_version.erase("schema_version");
    CHECK(error_kind([&] { autoparl::load_session_config(write_config(no_version)); }) ==
          ErrorKind::schema);

    json future = minimal_config();
    future["schema_version"] = 2;
    CHECK(error_kind([&] { autoparl::load_session_config(write_config(future)); }) ==
          ErrorKind::schema);

    json no_parliament = minimal_config();
    no_parliament.erase("parliament");
    CHECK(error_kind([&] { autoparl::load_session_config(write_config(no_parliament)); }) ==
          ErrorKind::schema);

    json bad_weights = minimal_config();
    bad_weights["parliament"]["stances"][0]["weight"] = 0.9;
    CHECK(error_kind([&] { autoparl::load_session_config(write_config(bad_weights)); }) ==
          ErrorKind::invalid_parliament);

    json bad_binding = minimal_config();
    bad_binding["backends"] = {{"default", {{"generator", "telepathy"}}}};
    CHECK(error_kind([&] { autoparl::load_session_config(write_config(bad_binding)); }) ==
          ErrorKind::schema);

    json unknown_stance = minimal_config();
    unknown_stance["scripted"]["scores"] =
        json::array({json{{"stance", "nobody"}, {"answer", "a"}, {"score", 0.5}}});
    CHECK(error_kind([&] { autoparl::load_session_config(write_config(unknown_stance)); }) ==
          ErrorKind::schema);

    // An llm binding demands an llm section.
    json llm_missing = minimal_config();
    llm_missing["backends"] = {{"default", {{"evaluator", "llm"}}}};
    CHECK(error_kind([&] { autoparl::load_session_config(write_config(llm_missing)); }) ==
          ErrorKind::schema);
}

TEST_CASE("llm roles resolve relative paths against the config directory") {
    const std::string fixture = temp_path("fixture") + ".ldjson";
    write_file(fixture, "");
    json doc = minimal_config();
    doc["backends"] = {{"default", {{"evaluator", "llm"}}}};
    doc["llm"] = {{"model", "test-model"},
                  {"templates_dir", prompts_dir()},
                  {"replay_fixture", std::filesystem::path(fixture).filename().string()}};
    // The config and the fixture share a directory, so the bare filename works.
    const std::string path =
        (std::filesystem::path(fixture).parent_path() / "llm_config.json").string();
    write_file(path, doc.dump(2) + "\n");
    const SessionSetup setup = autoparl::load_session_config(path);
    REQUIRE(setup.backends.delegates.size() == 2);
    CHECK(setup.backends.delegates[0].evaluator);
    // Scripted roles stay scripted when only the evaluator is rebound.
    CHECK(std::dynamic_pointer_cast<autoparl::ScriptedGenerator>(
        setup.backends.delegates[0].generator));
    CHECK(std::dynamic_pointer_cast<autoparl::LlmEvaluator>(
        setup.backends.delegates[0].evaluator));
}

TEST_CASE("per-stance bindings override the default binding") {
    json doc = minimal_config();
    doc["backends"] = {{"default", {{"generator", "scripted"}}},
                       {"two", {{"generator", "llm"}}}};
    doc["llm"] = {{"model", "test-model"}, {"templates_dir", prompts_dir()}};
    const SessionSetup setup = autoparl::load_session_config(write_config(doc));
    CHECK(std::dynamic_pointer_cast<autoparl::ScriptedGenerator>(
        setup.backends.delegates[0].generator));
    CHECK(std::dynamic_pointer_cast<autoparl::LlmGenerator>(
        setup.backends.delegates[1].generator));
}
