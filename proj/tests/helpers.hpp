#pragma once

// Shared test utilities: fixture paths, error-kind capture, and a family of
// fully scripted synthetic sessions with deterministic texts and scores.

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "autoparl/backends.hpp"
#include "autoparl/engine.hpp"
#include "autoparl/errors.hpp"
#include "autoparl/schedule.hpp"
#include "autoparl/types.hpp"

namespace test_helpers {

inline std::string data_dir() { return AP_TEST_DATA_DIR; }
inline std::string fixtures_dir() { return AP_TEST_FIXTURES_DIR; }
inline std::string prompts_dir() { return AP_TEST_PROMPTS_DIR; }
inline std::string configs_dir() { return AP_TEST_CONFIGS_DIR; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline nlohmann::json load_json(const std::string& path) {
    return nlohmann::json::parse(read_file(path));
}

// Runs fn, which must throw an autoparl::Error, and reports its kind.
template <typename Fn>
autoparl::ErrorKind error_kind(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const autoparl::Error& e) {
        return e.kind();
    }
    throw std::logic_error("expected an autoparl::Error, none was thrown");
}

// Fresh path under the system temp directory; unique per call.
inline std::string temp_path(const std::string& stem) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() / "autoparl-tests";
    std::filesystem::create_directories(dir);
    return (dir / (stem + "-" + std::to_string(++counter))).string();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// ---------------------------------------------------------------------------
// Synthetic scripted sessions
//
// Texts are fully determined: chain j starts as "g<j>" and after iteration k
// reads "m<k>.<i>.<j>" where i is the visiting modifier. Evaluator x scores
// any text by a fixed two-decimal pseudo-random rule over (x, j, k), so every
// quantity in the session can be recomputed outside the engine.

inline std::string chain_text(int j, int k, int n) {
    if (k == 0) return "g" + std::to_string(j);
    const int i = ((j + k - 1) % n) + 1;  // the modifier visiting chain j at k
    return "m" + std::to_string(k) + "." + std::to_string(i) + "." + std::to_string(j);
}

inline double synthetic_score(int x, int j, int k) {
    return static_cast<double>((x * 31 + j * 7 + k * 13) % 101) / 100.0;
}

inline autoparl::ParliamentConfig uniform_parliament(int n) {
    autoparl::ParliamentConfig config;
    for (int i = 1; i <= n; ++i)
        config.stances.push_back(
            {i, "stance-" + std::to_string(i), 1.0 / static_cast<double>(n)});
    return config;
}

inline autoparl::BackendSet synthetic_backends(int n) {
    autoparl::BackendSet backends;
    for (int x = 1; x <= n; ++x) {
        auto generator = std::make_shared<autoparl::ScriptedGenerator>();
        generator->add("q", chain_text(x, 0, n));
        auto modifier = std::make_shared<autoparl::ScriptedModifier>();
        for (int k = 1; k <= n - 1; ++k) {
            const int j = autoparl::modification_target(x, k, n);
            modifier->add(chain_text(j, k - 1, n), chain_text(j, k, n), "any-changes");
        }
        auto evaluator = std::make_shared<autoparl::ScriptedEvaluator>();
        for (int j = 1; j <= n; ++j)
            for (int k = 0; k <= n - 1; ++k)
                evaluator->add(chain_text(j, k, n), synthetic_score(x, j, k));
        backends.delegates.push_back({generator, modifier, evaluator});
    }
    return backends;
}

inline autoparl::SessionTranscript run_synthetic_session(int n) {
    return autoparl::run_session({"synthetic", "q"}, uniform_parliament(n),
                                 synthetic_backends(n));
}

}  // namespace test_helpers
