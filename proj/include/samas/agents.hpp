#pragma once
// The agent pool and the sequential workflow executor.
//
// A workflow is an ordered list of roles; each stage renders its prompt
// templates, calls the chat backend, and hands its output to the next stage
// as the working draft. Every stage also sees the original source text, so
// later stages can correct drift instead of compounding it.

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "samas/errors.hpp"
#include "samas/roles.hpp"
#include "samas/router.hpp"
#include "samas/sfs.hpp"
#include "samas/text_signal.hpp"

namespace samas {

// What stage 1 sees in place of a prior draft.
inline constexpr const char* kFirstStageMarker = "(none — first stage)";

struct AgentSpec {
    AgentRole role;
    std::string system_prompt;  // placeholders: {source_lang} {target_lang} {style_class}
    std::string user_template;  // placeholders: {source_text} {previous_output}
};

using AgentSpecSet = std::map<AgentRole, AgentSpec>;

struct BackendRequest {
    std::string model;
    std::string system;
    std::string user;
    double temperature = 0.0;
    int max_tokens = 1024;
};

struct TokenCounts {
    long prompt = 0;
    long completion = 0;
};

struct BackendResponse {
    std::string text;
    long latency_ms = 0;
    TokenCounts token_counts;
};

// Retryable transport-level failure (connection refused, 5xx, timeout).
// Anything else a backend throws is treated as permanent.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Chat-completion contract. Implementations must be safely callable from
// multiple pipelines at once (stateless per request or internally locked).
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual BackendResponse complete(const BackendRequest& request) = 0;
};

struct TranslationJob {
    TextSegment segment;
    StylisticFeatureSpectrum sfs;
    StyleClass style_class;
    Workflow workflow;
};

struct StageRecord {
    AgentRole role;
    std::string rendered_system;
    std::string rendered_user;
    std::string response_text;
    long latency_ms = 0;
    int attempt_count = 0;
};

struct PipelineTrace {
    std::string job_id;
    std::vector<StageRecord> stages;
    std::string final_translation;
    long total_latency_ms = 0;
};

struct RetryPolicy {
    int max_retries = 3;   // total attempts per stage
    long backoff_ms = 500; // doubles after each failed attempt
};

struct GenerationParams {
    std::string model = "mock";
    double temperature = 0.0;
    int max_tokens = 1024;
};

// Stage failure carrying the trace accumulated before the failing stage.
class WorkflowError : public Error {
public:
    WorkflowError(ErrorCode code, AgentRole role, int attempts, PipelineTrace partial,
                  const std::string& message)
        : Error(code, message), role_(role), attempts_(attempts),
          partial_(std::move(partial)) {}

    AgentRole role() const noexcept { return role_; }
    int attempts() const noexcept { return attempts_; }
    const PipelineTrace& partial_trace() const noexcept { return partial_; }

private:
    AgentRole role_;
    int attempts_;
    PipelineTrace partial_;
};

// Substitutes {placeholder} tokens in a single pass. Unknown lowercase
// placeholders are an error (the invariant is "no unresolved placeholders at
// execution time"); anything else brace-like passes through literally.
inline std::string render_template(std::string_view tmpl,
                                   const std::map<std::string, std::string, std::less<>>& values) {
    std::string out;
    out.reserve(tmpl.size() + 64);
    std::size_t i = 0;
    while (i < tmpl.size()) {
        const char ch = tmpl[i];
        if (ch != '{') {
            out += ch;
            ++i;
            continue;
        }
        const std::size_t close = tmpl.find('}', i + 1);
        if (close == std::string_view::npos) {
            out += tmpl.substr(i);
            break;
        }
        const std::string_view key = tmpl.substr(i + 1, close - i - 1);
        const bool ident = !key.empty() &&
            std::all_of(key.begin(), key.end(),
                        [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; });
        if (!ident) {
            out += ch;
            ++i;
            continue;
        }
        const auto it = values.find(key);
        if (it == values.end())
            throw Error(ErrorCode::UnresolvedPlaceholder,
                        "unresolved placeholder {" + std::string(key) + "}");
        out += it->second;
        i = close + 1;
    }
    return out;
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    auto ws = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };
    while (b < e && ws(s[b])) ++b;
    while (e > b && ws(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string user_skeleton(std::string_view task) {
    std::string t = "SOURCE:\n<<<SRC\n{source_text}\nSRC>>>\n\n"
                    "DRAFT:\n<<<DRAFT\n{previous_output}\nDRAFT>>>\n\n";
    t += task;
    return t;
}

inline std::string system_skeleton(AgentRole role, std::string_view mission) {
    std::string t = "You are the ";
    t += role_name(role);
    t += " agent in a multi-stage literary translation pipeline.\n"
         "Direction: {source_lang} -> {target_lang}. Routed style class: {style_class}.\n";
    t += mission;
    return t;
}

} // namespace detail

// The six shipped agent specs. Prompts name each role's job; the DRAFT/SRC
// sentinels give offline backends something parseable to chain on.
inline AgentSpecSet default_agent_specs() {
    AgentSpecSet specs;
    auto add = [&](AgentRole role, std::string_view mission, std::string_view task) {
        specs.emplace(role, AgentSpec{role, detail::system_skeleton(role, mission),
                                      detail::user_skeleton(task)});
    };

    add(AgentRole::CoreTranslation,
        "Your job is the fundamental semantic conversion of the segment: carry the "
        "complete meaning of the source into the target language, accurately and "
        "naturally, adding nothing and dropping nothing.",
        "If no prior draft is given, translate the source from scratch. Otherwise keep "
        "the draft's structural and stylistic decisions while completing the "
        "translation of the source. Reply with the translation only.");

    add(AgentRole::LinguisticStructure,
        "You manage complex syntax: map long, deeply nested source sentences onto "
        "target-language structures that keep the original's architecture legible. Do "
        "not flatten the sentence plan.",
        "Produce or revise a draft so the source's sentence architecture survives: "
        "subordination depth, clause order, and length contrasts stay recognizably "
        "intact. Reply with the full draft only.");

    add(AgentRole::MetaphorTranslation,
        "You handle rhetorical figures: metaphors, similes, personification, and "
        "imagery. Recreate each figure idiomatically; keep the image when it carries, "
        "substitute one of equal weight when it does not.",
        "Revise the draft so every figure of speech in the source arrives with its "
        "force intact. Reply with the full revised draft only.");

    add(AgentRole::EmotionTransfer,
        "You preserve tone: the emotional register of the source (irony, tenderness, "
        "dread, restraint) must hold at the same intensity in the draft.",
        "Revise the draft so its emotional temperature matches the source throughout. "
        "Reply with the full revised draft only.");

    add(AgentRole::RhythmProsody,
        "You reproduce the text's cadence: sentence length, stress, and "
        "punctuation-driven pacing. The translation should move at the source's tempo.",
        "Revise the draft so its rhythm follows the source: match the pattern of short "
        "and long sentences and the pauses the punctuation imposes. Reply with the "
        "full revised draft only.");

    add(AgentRole::ConsistencyFidelity,
        "You are the final pass: enforce stylistic and terminological coherence across "
        "the whole draft and fidelity to the source. Recurring terms, names, and "
        "register must resolve consistently.",
        "Check the draft against the source; fix terminology drift, naming "
        "inconsistencies, and register breaks. Reply with the final translation only.");

    return specs;
}

// Offline deterministic backend. Tags its reply with the role it detects in
// the system prompt and echoes the current draft (or the source on stage 1),
// so chained stages produce nested, order-revealing output. Ships in the
// library so the full pipeline runs without network access.
class MockBackend final : public ChatBackend {
public:
    struct Options {
        // role token -> number of TransportErrors to inject (-1 = always fail)
        std::map<std::string, int> fail_times;
        // roles that reply with whitespace only
        std::set<std::string> empty_roles;
        long latency_ms = 0;
    };

    MockBackend() = default;
    explicit MockBackend(Options options)
        : options_(std::move(options)), remaining_(options_.fail_times) {}

    BackendResponse complete(const BackendRequest& request) override {
        const std::string role = detect_role(request.system);
        maybe_fail(role);
        if (options_.empty_roles.count(role))
            return {"   ", options_.latency_ms, token_estimate(request, 3)};
        const std::string text = "[" + role + "] " + extract_payload(request.user);
        return {text, options_.latency_ms, token_estimate(request, text.size())};
    }

    static std::string detect_role(std::string_view system) {
        for (AgentRole role : kAllRoles)
            if (system.find(role_name(role)) != std::string_view::npos)
                return role_name(role);
        return "agent";
    }

    // Current draft if present and real, else the source block, else the raw
    // user message.
    static std::string extract_payload(const std::string& user) {
        if (auto draft = between(user, "<<<DRAFT\n", "\nDRAFT>>>"))
            if (*draft != kFirstStageMarker) return *draft;
        if (auto src = between(user, "<<<SRC\n", "\nSRC>>>")) return *src;
        return user;
    }

private:
    static std::optional<std::string> between(const std::string& s, std::string_view open,
                                              std::string_view close) {
        const std::size_t a = s.find(open);
        if (a == std::string::npos) return std::nullopt;
        const std::size_t b = s.find(close, a + open.size());
        if (b == std::string::npos) return std::nullopt;
        return s.substr(a + open.size(), b - a - open.size());
    }

    static TokenCounts token_estimate(const BackendRequest& request, std::size_t reply_bytes) {
        return {static_cast<long>((request.system.size() + request.user.size()) / 4),
                static_cast<long>(reply_bytes / 4)};
    }

    void maybe_fail(const std::string& role) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = remaining_.find(role);
        if (it == remaining_.end()) return;
        if (it->second == -1)
            throw TransportError("injected permanent failure for " + role);
        if (it->second > 0) {
            --it->second;
            throw TransportError("injected transient failure for " + role);
        }
    }

    Options options_;
    std::mutex mutex_;
    std::map<std::string, int> remaining_;
};

// Executes the job's workflow strictly in order. Transport errors are
// retried with exponential backoff; exhaustion or a permanent backend error
// raises WorkflowError carrying the partial trace.
inline PipelineTrace run_workflow(const TranslationJob& job, const AgentSpecSet& specs,
                                  ChatBackend& backend, const RetryPolicy& retry = {},
                                  const GenerationParams& params = {}) {
    if (job.segment.target_lang.empty())
        throw Error(ErrorCode::MissingTargetLang,
                    "segment '" + job.segment.id + "' has no target_lang");

    PipelineTrace trace;
    trace.job_id = job.segment.id;
    std::string previous = kFirstStageMarker;

    const int max_attempts = retry.max_retries < 1 ? 1 : retry.max_retries;
    for (AgentRole role : job.workflow.stages) {
        const auto it = specs.find(role);
        if (it == specs.end())
            throw Error(ErrorCode::ConfigError,
                        std::string("no agent spec for role ") + role_name(role));
        const AgentSpec& spec = it->second;

        BackendRequest request;
        request.model = params.model;
        request.temperature = params.temperature;
        request.max_tokens = params.max_tokens;
        request.system = render_template(
            spec.system_prompt, {{"source_lang", job.segment.source_lang},
                                 {"target_lang", job.segment.target_lang},
                                 {"style_class", style_name(job.style_class)}});
        request.user = render_template(spec.user_template,
                                       {{"source_text", job.segment.text},
                                        {"previous_output", previous}});

        BackendResponse response;
        int attempts = 0;
        for (;;) {
            ++attempts;
            try {
                response = backend.complete(request);
                break;
            } catch (const TransportError& e) {
                if (attempts >= max_attempts)
                    throw WorkflowError(ErrorCode::BackendFailure, role, attempts,
                                        std::move(trace),
                                        std::string(role_name(role)) + " failed after " +
                                            std::to_string(attempts) +
                                            " attempts: " + e.what());
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(retry.backoff_ms << (attempts - 1)));
            } catch (const Error& e) {
                throw WorkflowError(ErrorCode::BackendFailure, role, attempts,
                                    std::move(trace),
                                    std::string(role_name(role)) +
                                        " permanent backend error: " + e.what());
            }
        }

        if (detail::trim(response.text).empty())
            throw WorkflowError(ErrorCode::EmptyResponse, role, attempts, std::move(trace),
                                std::string(role_name(role)) +
                                    " returned a whitespace-only response");

        trace.total_latency_ms += response.latency_ms;
        previous = response.text;
        trace.stages.push_back({role, std::move(request.system), std::move(request.user),
                                std::move(response.text), response.latency_ms, attempts});
    }

    trace.final_translation = detail::trim(trace.stages.back().response_text);
    return trace;
}

struct PipelineConfig {
    std::string filter_name = "db4";
    int level = 4;
    RoutingThresholds thresholds{};
    WorkflowLibrary library = WorkflowLibrary::defaults();
    AgentSpecSet specs = default_agent_specs();
    RetryPolicy retry{};
    GenerationParams generation{};
    int concurrency_limit = 1;

    void validate() const {
        if (level < 1 || level > 4)
            throw Error(ErrorCode::ConfigError, "level must be in [1, 4]");
        if (concurrency_limit < 1)
            throw Error(ErrorCode::ConfigError, "concurrency_limit must be >= 1");
        filters::by_name(filter_name); // throws UnknownFilter
        for (StyleClass cls : {StyleClass::FaulknerEsque, StyleClass::HemingwayEsque})
            for (AgentRole role : library.workflow_for(cls).stages)
                if (!specs.count(role))
                    throw Error(ErrorCode::ConfigError,
                                std::string("workflow uses role ") + role_name(role) +
                                    " with no agent spec");
    }
};

struct SegmentError {
    ErrorCode code;
    std::string message;
    std::optional<AgentRole> role;
    int attempts = 0;
};

struct SegmentOutcome {
    std::string id;
    std::optional<StyleClass> style_class;
    double global_entropy = 0.0;
    double e_low = 0.0;
    bool analyzed = false;
    std::vector<AgentRole> workflow;
    std::optional<PipelineTrace> trace; // partial on stage failure
    std::optional<SegmentError> error;

    bool ok() const { return !error.has_value(); }
};

namespace detail {

inline SegmentOutcome process_segment(const TextSegment& segment,
                                      const PipelineConfig& config,
                                      const WaveletFilter& filter, ChatBackend& backend) {
    SegmentOutcome outcome;
    outcome.id = segment.id;
    try {
        const auto tokens = tokenize(segment);
        const auto signal = prepare_for_wpt(to_signal(tokens, segment.id), config.level);
        auto sfs = compute_sfs(signal, filter, config.level);
        outcome.global_entropy = sfs.global_entropy;
        outcome.e_low = low_frequency_energy(sfs);
        outcome.analyzed = true;

        const StyleClass cls = classify(sfs, config.thresholds);
        outcome.style_class = cls;
        Workflow workflow = allocate_workflow(cls, config.library);
        outcome.workflow = workflow.stages;

        TranslationJob job{segment, std::move(sfs), cls, std::move(workflow)};
        outcome.trace = run_workflow(job, config.specs, backend, config.retry,
                                     config.generation);
    } catch (const WorkflowError& e) {
        outcome.error = SegmentError{e.code(), e.what(), e.role(), e.attempts()};
        outcome.trace = e.partial_trace();
    } catch (const Error& e) {
        outcome.error = SegmentError{e.code(), e.what(), std::nullopt, 0};
    } catch (const std::exception& e) {
        outcome.error = SegmentError{ErrorCode::InternalError, e.what(), std::nullopt, 0};
    }
    return outcome;
}

} // namespace detail

// Batch driver: analyze -> classify -> allocate -> run, per segment, with at
// most config.concurrency_limit pipelines in flight. Per-segment failures
// are embedded; output order always matches input order.
inline std::vector<SegmentOutcome> translate_corpus(const std::vector<TextSegment>& segments,
                                                    const PipelineConfig& config,
                                                    ChatBackend& backend) {
    config.validate();
    const WaveletFilter filter = filters::by_name(config.filter_name);

    std::vector<SegmentOutcome> outcomes(segments.size());
    if (segments.empty()) return outcomes;

    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(config.concurrency_limit),
                              segments.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < segments.size(); ++i)
            outcomes[i] = detail::process_segment(segments[i], config, filter, backend);
        return outcomes;
    }

    std::atomic<std::size_t> cursor{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= segments.size()) return;
            outcomes[i] = detail::process_segment(segments[i], config, filter, backend);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
    return outcomes;
}

inline nlohmann::json trace_to_json(const PipelineTrace& trace) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : trace.stages)
        stages.push_back({{"role", role_name(s.role)},
                          {"rendered_system", s.rendered_system},
                          {"rendered_user", s.rendered_user},
                          {"response_text", s.response_text},
                          {"latency_ms", s.latency_ms},
                          {"attempt_count", s.attempt_count}});
    return nlohmann::json{{"job_id", trace.job_id},
                          {"stages", std::move(stages)},
                          {"final_translation", trace.final_translation},
                          {"total_latency_ms", trace.total_latency_ms}};
}

inline nlohmann::json outcome_to_json(const SegmentOutcome& outcome) {
    nlohmann::json j;
    j["job_id"] = outcome.id;
    if (outcome.analyzed) {
        j["H"] = outcome.global_entropy;
        j["E_low"] = outcome.e_low;
    }
    if (outcome.style_class) j["style_class"] = style_name(*outcome.style_class);
    if (!outcome.workflow.empty()) {
        nlohmann::json roles = nlohmann::json::array();
        for (AgentRole role : outcome.workflow) roles.push_back(role_name(role));
        j["workflow"] = std::move(roles);
    }
    if (outcome.trace) {
        nlohmann::json t = trace_to_json(*outcome.trace);
        for (auto& [key, value] : t.items()) j[key] = std::move(value);
    }
    if (outcome.error) {
        nlohmann::json err{{"code", error_code_name(outcome.error->code)},
                           {"message", outcome.error->message}};
        if (outcome.error->role) err["role"] = role_name(*outcome.error->role);
        if (outcome.error->attempts > 0) err["attempts"] = outcome.error->attempts;
        j["error"] = std::move(err);
    }
    return j;
}

} // namespace samas
