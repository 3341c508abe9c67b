#pragma once

// Chat-completion wire client plus record/replay machinery. One protocol is
// supported: POST {base}/v1/chat/completions with a chat-style JSON body and
// a bearer token from AP_API_KEY (AP_API_BASE overrides the profile's base
// URL). Responses can be captured to line-delimited JSON fixtures keyed by a
// request digest and replayed verbatim, so tests never touch a live service.

#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "autoparl/backends.hpp"
#include "autoparl/dataset.hpp"
#include "autoparl/errors.hpp"
#include "autoparl/prompts.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

struct EndpointProfile {
    std::string base_url;  // e.g. "http://127.0.0.1:8080"
    std::string model;
    double temperature = 0.0;
    int max_retries = 2;
    double timeout_seconds = 30.0;

    void validate() const {
        if (max_retries < 0) throw Error(ErrorKind::configuration, "max retries must be >= 0");
        if (timeout_seconds < 0.0)
            throw Error(ErrorKind::configuration, "timeout must be nonnegative");
    }
};

// Raw outcome of one request attempt, before retry/parsing policy is applied.
struct SendOutcome {
    bool network_error = false;
    int status = 0;
    std::string body;
    std::string detail;
};

class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    virtual SendOutcome send(const nlohmann::json& request, const EndpointProfile& profile) = 0;
};

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

// Stable digest of the canonical (sorted-key) request serialization.
inline std::string request_digest(const nlohmann::json& request) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(request.dump())));
    return buf;
}

namespace detail {

inline std::string env_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return (value && *value) ? value : fallback;
}

// Splits "scheme://host[:port]/prefix" into the client base and path prefix.
inline std::pair<std::string, std::string> split_base_url(const std::string& url) {
    const std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        throw Error(ErrorKind::configuration, "base URL '" + url + "' lacks a scheme");
    const std::size_t slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) return {url, ""};
    std::string prefix = url.substr(slash);
    if (prefix == "/") prefix.clear();
    return {url.substr(0, slash), prefix};
}

}  // namespace detail

class HttpTransport : public ChatTransport {
public:
    SendOutcome send(const nlohmann::json& request, const EndpointProfile& profile) override {
        const std::string base = detail::env_or("AP_API_BASE", profile.base_url);
        if (base.empty())
            throw Error(ErrorKind::configuration, "no endpoint base URL configured");
        const auto [client_base, prefix] = detail::split_base_url(base);
        httplib::Client client(client_base);
        const auto seconds = static_cast<time_t>(profile.timeout_seconds);
        const auto micros = static_cast<time_t>(
            (profile.timeout_seconds - static_cast<double>(seconds)) * 1e6);
        client.set_connection_timeout(seconds, micros);
        client.set_read_timeout(seconds, micros);
        client.set_write_timeout(seconds, micros);
        httplib::Headers headers = {
            {"Authorization", "Bearer " + detail::env_or("AP_API_KEY", "")}};
        auto result = client.Post(prefix + "/v1/chat/completions", headers, request.dump(),
                                  "application/json");
        if (!result)
            return {true, 0, "", httplib::to_string(result.error())};
        return {false, result->status, result->body, ""};
    }
};

// Serves recorded responses from a digest-keyed table; unknown digests fail
// with a pairing error so drifted prompts are caught immediately.
class ReplayTransport : public ChatTransport {
public:
    ReplayTransport() = default;

    explicit ReplayTransport(const std::string& fixture_path) {
        std::ifstream in(fixture_path);
        if (!in)
            throw Error(ErrorKind::configuration,
                        "cannot open replay fixture '" + fixture_path + "'");
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            nlohmann::json entry;
            try {
                entry = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorKind::parse, fixture_path + ":" + std::to_string(line_no) +
                                                  ": " + e.what());
            }
            if (!entry.contains("digest") || !entry.contains("response"))
                throw Error(ErrorKind::schema, fixture_path + ":" + std::to_string(line_no) +
                                                   ": entry needs digest and response fields");
            add(entry["digest"].get<std::string>(), entry["response"].get<std::string>());
        }
    }

    void add(const std::string& digest, const std::string& response_text) {
        responses_[digest] = response_text;
    }

    SendOutcome send(const nlohmann::json& request, const EndpointProfile&) override {
        const std::string digest = request_digest(request);
        auto it = responses_.find(digest);
        if (it == responses_.end())
            throw Error(ErrorKind::pairing, "no recorded response for request digest " + digest);
        const nlohmann::json message = {{"role", "assistant"}, {"content", it->second}};
        const nlohmann::json body = {
            {"choices", nlohmann::json::array({nlohmann::json{{"message", message}}})}};
        return {false, 200, body.dump(), ""};
    }

private:
    std::map<std::string, std::string> responses_;
};

// Forwards to an inner transport and appends successful exchanges to a
// replayable fixture file.
class RecordingTransport : public ChatTransport {
public:
    RecordingTransport(std::shared_ptr<ChatTransport> inner, std::string fixture_path)
        : inner_(std::move(inner)), fixture_path_(std::move(fixture_path)) {}

    SendOutcome send(const nlohmann::json& request, const EndpointProfile& profile) override {
        SendOutcome outcome = inner_->send(request, profile);
        if (!outcome.network_error && outcome.status == 200) {
            try {
                const nlohmann::json body = nlohmann::json::parse(outcome.body);
                const std::string text =
                    body.at("choices").at(0).at("message").at("content").get<std::string>();
                const nlohmann::json entry = {{"digest", request_digest(request)},
                                              {"response", text}};
                std::lock_guard<std::mutex> lock(mutex_);
                std::ofstream out(fixture_path_, std::ios::app);
                out << entry.dump() << '\n';
            } catch (const nlohmann::json::exception&) {
                // Malformed success bodies are surfaced by the caller as
                // protocol errors; nothing useful to record.
            }
        }
        return outcome;
    }

private:
    std::shared_ptr<ChatTransport> inner_;
    std::string fixture_path_;
    std::mutex mutex_;
};

// Sends one user prompt and returns the assistant text. Transient failures
// (network errors, rate limits, server errors) are retried with exponential
// backoff up to the profile's budget; anything else fails fast.
inline std::string chat_complete(const EndpointProfile& profile, const std::string& prompt,
                                 ChatTransport& transport) {
    profile.validate();
    const char* key = std::getenv("AP_API_KEY");
    if (!key || !*key)
        throw Error(ErrorKind::configuration, "AP_API_KEY is not set");
    const nlohmann::json user_message = {{"role", "user"}, {"content", prompt}};
    const nlohmann::json request = {
        {"model", profile.model},
        {"temperature", profile.temperature},
        {"messages", nlohmann::json::array({user_message})}};
    for (int attempt = 0;; ++attempt) {
        const SendOutcome outcome = transport.send(request, profile);
        const bool transient =
            outcome.network_error || outcome.status == 429 || outcome.status >= 500;
        if (transient) {
            if (attempt >= profile.max_retries)
                throw Error(ErrorKind::transport,
                            "request failed after " + std::to_string(attempt + 1) + " attempts" +
                                (outcome.network_error ? " (" + outcome.detail + ")"
                                                       : " (status " +
                                                             std::to_string(outcome.status) + ")"));
            std::this_thread::sleep_for(std::chrono::milliseconds(50ll << attempt));
            continue;
        }
        if (outcome.status != 200)
            throw Error(ErrorKind::transport,
                        "request rejected with status " + std::to_string(outcome.status));
        try {
            const nlohmann::json body = nlohmann::json::parse(outcome.body);
            return body.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::protocol, std::string("malformed response body: ") + e.what());
        }
    }
}

namespace detail {

inline std::string trim(const std::string& text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return text.substr(begin, end - begin);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Language-model-backed delegate roles

class LlmGenerator : public Generator {
public:
    LlmGenerator(EndpointProfile profile, std::shared_ptr<ChatTransport> transport,
                 PromptTemplates templates)
        : profile_(std::move(profile)), transport_(std::move(transport)),
          templates_(std::move(templates)) {}

    std::string generate(const Question& question, const StanceSpec& stance) override {
        const std::string prompt = render_template(
            templates_.generator, {{"question", question.text}, {"stance", stance.name}});
        return detail::trim(chat_complete(profile_, prompt, *transport_));
    }

private:
    EndpointProfile profile_;
    std::shared_ptr<ChatTransport> transport_;
    PromptTemplates templates_;
};

class LlmModifier : public Modifier {
public:
    LlmModifier(EndpointProfile profile, std::shared_ptr<ChatTransport> transport,
                PromptTemplates templates)
        : profile_(std::move(profile)), transport_(std::move(transport)),
          templates_(std::move(templates)) {}

    Modification modify(const Question& question, const StanceSpec& stance,
                        const std::string& current_text, ModificationPolicy policy) override {
        const bool amend = policy == ModificationPolicy::amendments_only;
        const std::string prompt =
            render_template(amend ? templates_.modifier_amend : templates_.modifier_any,
                            {{"question", question.text},
                             {"answer", current_text},
                             {"stance", stance.name}});
        const std::string response = detail::trim(chat_complete(profile_, prompt, *transport_));
        if (amend) return {current_text + " " + response, to_string(policy)};
        return {response, to_string(policy)};
    }

private:
    EndpointProfile profile_;
    std::shared_ptr<ChatTransport> transport_;
    PromptTemplates templates_;
};

class LlmEvaluator : public Evaluator {
public:
    // `training` may be empty (no rows): the evaluator then runs in zero-shot
    // single-value mode.
    LlmEvaluator(EndpointProfile profile, std::shared_ptr<ChatTransport> transport,
                 PromptTemplates templates, Dataset training = {})
        : profile_(std::move(profile)), transport_(std::move(transport)),
          templates_(std::move(templates)), training_(std::move(training)) {}

    double evaluate(const Question& question, const std::string& answer,
                    const StanceSpec& stance) override {
        const std::string prompt =
            build_fewshot_prompt(training_, stance.name, question, answer, templates_);
        const std::string response = chat_complete(profile_, prompt, *transport_);
        // Return the literal value; the engine owns clamping and warnings.
        return parse_score_detailed(response).raw;
    }

private:
    EndpointProfile profile_;
    std::shared_ptr<ChatTransport> transport_;
    PromptTemplates templates_;
    Dataset training_;
};

}  // namespace autoparl
