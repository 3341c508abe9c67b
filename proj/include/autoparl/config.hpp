#pragma once

// Session configuration files: versioned JSON describing the parliament
// (stances, threshold, steepness, judge, modification policy), the backend
// binding per role, and — for scripted runs — the lookup tables themselves.
// Relative paths inside a config resolve against the config file's directory.

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoparl/backends.hpp"
#include "autoparl/dataset.hpp"
#include "autoparl/engine.hpp"
#include "autoparl/errors.hpp"
#include "autoparl/llm_client.hpp"
#include "autoparl/prompts.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

struct SessionSetup {
    ParliamentConfig parliament;
    BackendSet backends;
    std::string default_question;  // optional convenience for demo configs
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& obj, const char* name,
                                           const std::string& where) {
    if (!obj.is_object() || !obj.contains(name))
        throw Error(ErrorKind::schema, where + ": missing field '" + name + "'");
    return obj.at(name);
}

template <typename T>
inline T field_or(const nlohmann::json& obj, const char* name, T fallback) {
    if (obj.is_object() && obj.contains(name)) return obj.at(name).get<T>();
    return fallback;
}

inline std::string resolve_path(const std::string& base_dir, const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace detail

inline ParliamentConfig parliament_from_json(const nlohmann::json& node) {
    ParliamentConfig config;
    const nlohmann::json& stances = detail::require_field(node, "stances", "parliament");
    if (!stances.is_array())
        throw Error(ErrorKind::schema, "parliament.stances must be an array");
    for (const auto& s : stances) {
        StanceSpec spec;
        spec.name = detail::require_field(s, "name", "stance").get<std::string>();
        spec.weight = detail::require_field(s, "weight", "stance '" + spec.name + "'").get<double>();
        spec.id = detail::field_or<int>(s, "id", static_cast<int>(config.stances.size()) + 1);
        config.stances.push_back(spec);
    }
    config.threshold = detail::field_or<double>(node, "threshold", 0.5);
    config.steepness = detail::field_or<double>(node, "steepness", 20.0);
    if (node.contains("judge")) {
        const nlohmann::json& judge = node.at("judge");
        config.judge.mode =
            parse_judge_mode(detail::field_or<std::string>(judge, "mode", "argmax"));
        config.judge.seed = detail::field_or<std::uint64_t>(judge, "seed", 42);
    }
    config.policy = parse_modification_policy(
        detail::field_or<std::string>(node, "modification_policy", "any-changes"));
    config.validate();
    return config;
}

namespace detail {

struct ScriptedTables {
    // stance name -> per-role tables
    std::map<std::string, std::shared_ptr<ScriptedGenerator>> generators;
    std::map<std::string, std::shared_ptr<ScriptedModifier>> modifiers;
    std::map<std::string, std::shared_ptr<ScriptedEvaluator>> evaluators;
};

inline ScriptedTables scripted_tables_from_json(const nlohmann::json& node,
                                                const ParliamentConfig& parliament) {
    ScriptedTables tables;
    for (const StanceSpec& stance : parliament.stances) {
        tables.generators[stance.name] = std::make_shared<ScriptedGenerator>();
        tables.modifiers[stance.name] = std::make_shared<ScriptedModifier>();
        tables.evaluators[stance.name] = std::make_shared<ScriptedEvaluator>();
    }
    auto stance_of = [&](const nlohmann::json& entry, const char* where) -> std::string {
        const std::string name = require_field(entry, "stance", where).get<std::string>();
        if (!tables.generators.count(name))
            throw Error(ErrorKind::schema,
                        std::string(where) + ": unknown stance '" + name + "'");
        return name;
    };
    if (node.contains("generations"))
        for (const auto& entry : node.at("generations")) {
            const std::string stance = stance_of(entry, "scripted generation");
            tables.generators[stance]->add(
                require_field(entry, "question", "scripted generation").get<std::string>(),
                require_field(entry, "text", "scripted generation").get<std::string>());
        }
    if (node.contains("modifications"))
        for (const auto& entry : node.at("modifications")) {
            const std::string stance = stance_of(entry, "scripted modification");
            tables.modifiers[stance]->add(
                require_field(entry, "input", "scripted modification").get<std::string>(),
                require_field(entry, "output", "scripted modification").get<std::string>(),
                field_or<std::string>(entry, "subtype", ""));
        }
    if (node.contains("scores"))
        for (const auto& entry : node.at("scores")) {
            const std::string stance = stance_of(entry, "scripted score");
            tables.evaluators[stance]->add(
                require_field(entry, "answer", "scripted score").get<std::string>(),
                require_field(entry, "score", "scripted score").get<double>());
        }
    if (node.contains("defaults")) {
        const nlohmann::json& defaults = node.at("defaults");
        for (const StanceSpec& stance : parliament.stances) {
            if (defaults.contains("generation"))
                tables.generators[stance.name]->set_fallback(
                    defaults.at("generation").get<std::string>());
            if (defaults.contains("modification"))
                tables.modifiers[stance.name]->set_fallback(
                    defaults.at("modification").get<std::string>(), "");
            if (defaults.contains("score"))
                tables.evaluators[stance.name]->set_fallback(defaults.at("score").get<double>());
        }
    }
    return tables;
}

inline EndpointProfile endpoint_from_json(const nlohmann::json& node) {
    EndpointProfile profile;
    profile.base_url = field_or<std::string>(node, "base_url", "");
    profile.model = require_field(node, "model", "llm profile").get<std::string>();
    profile.temperature = field_or<double>(node, "temperature", 0.0);
    profile.max_retries = field_or<int>(node, "max_retries", 2);
    profile.timeout_seconds = field_or<double>(node, "timeout_seconds", 30.0);
    profile.validate();
    return profile;
}

}  // namespace detail

// Loads a session config. Scripted roles draw from the inline tables; llm
// roles share one endpoint profile, the prompt templates directory, and an
// optional few-shot training dataset.
inline SessionSetup load_session_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::configuration, "cannot open config '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, path + ": " + e.what());
    }
    const int version = detail::field_or<int>(doc, "schema_version", 0);
    if (version != 1)
        throw Error(ErrorKind::schema,
                    path + ": unsupported schema_version " + std::to_string(version));

    SessionSetup setup;
    setup.parliament =
        parliament_from_json(detail::require_field(doc, "parliament", path));
    setup.default_question = detail::field_or<std::string>(doc, "question", "");

    const std::string base_dir = std::filesystem::path(path).parent_path().string();
    detail::ScriptedTables tables = detail::scripted_tables_from_json(
        doc.contains("scripted") ? doc.at("scripted") : nlohmann::json::object(),
        setup.parliament);

    std::shared_ptr<ChatTransport> transport;
    EndpointProfile profile;
    PromptTemplates templates;
    Dataset training;
    bool llm_ready = false;
    auto ensure_llm = [&]() {
        if (llm_ready) return;
        const nlohmann::json& node = detail::require_field(doc, "llm", path);
        profile = detail::endpoint_from_json(node);
        templates = PromptTemplates::load(detail::resolve_path(
            base_dir, detail::field_or<std::string>(node, "templates_dir", "prompts")));
        if (node.contains("fewshot_dataset"))
            training = load_dataset(detail::resolve_path(
                base_dir, node.at("fewshot_dataset").get<std::string>()));
        if (node.contains("replay_fixture"))
            transport = std::make_shared<ReplayTransport>(detail::resolve_path(
                base_dir, node.at("replay_fixture").get<std::string>()));
        else
            transport = std::make_shared<HttpTransport>();
        llm_ready = true;
    };

    const nlohmann::json bindings =
        doc.contains("backends") ? doc.at("backends") : nlohmann::json::object();
    auto binding_for = [&](const std::string& stance, const char* role) -> std::string {
        if (bindings.contains(stance) && bindings.at(stance).contains(role))
            return bindings.at(stance).at(role).get<std::string>();
        if (bindings.contains("default") && bindings.at("default").contains(role))
            return bindings.at("default").at(role).get<std::string>();
        return "scripted";
    };

    for (const StanceSpec& stance : setup.parliament.stances) {
        DelegateBackends delegate;
        const std::string gen = binding_for(stance.name, "generator");
        if (gen == "scripted") {
            delegate.generator = tables.generators[stance.name];
        } else if (gen == "llm") {
            ensure_llm();
            delegate.generator = std::make_shared<LlmGenerator>(profile, transport, templates);
        } else {
            throw Error(ErrorKind::schema, "unknown generator binding '" + gen + "'");
        }
        const std::string mod = binding_for(stance.name, "modifier");
        if (mod == "scripted") {
            delegate.modifier = tables.modifiers[stance.name];
        } else if (mod == "llm") {
            ensure_llm();
            delegate.modifier = std::make_shared<LlmModifier>(profile, transport, templates);
        } else {
            throw Error(ErrorKind::schema, "unknown modifier binding '" + mod + "'");
        }
        const std::string eval = binding_for(stance.name, "evaluator");
        if (eval == "scripted") {
            delegate.evaluator = tables.evaluators[stance.name];
        } else if (eval == "llm") {
            ensure_llm();
            delegate.evaluator =
                std::make_shared<LlmEvaluator>(profile, transport, templates, training);
        } else {
            throw Error(ErrorKind::schema, "unknown evaluator binding '" + eval + "'");
        }
        setup.backends.delegates.push_back(std::move(delegate));
    }
    return setup;
}

}  // namespace autoparl
