#pragma once
// Model configuration: family selection, per-family parameter defaults and
// requirements, JSON config files, and flag merging.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "commsim/decision.hpp"
#include "commsim/exposure.hpp"

namespace commsim {

enum class Family { null_model, social_exposure, ieb, combined };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct RandomDecisionParams {
    double p_j = 0.1;
    double p_l = 0.56;
};

struct ModelConfig {
    Family family = Family::null_model;
    std::uint32_t n_agents = 9000;
    std::uint32_t n_communities = 200;
    std::uint32_t steps = 24;
    std::uint64_t seed = 1;
    bool sequential = false; // apply each agent's decisions immediately
    bool record_per_step = false;
    ExposureConfig exposure;
    RandomDecisionParams random_decision; // null / social_exposure families
    BenefitParams benefit;                // ieb / combined families

    bool uses_ieb() const { return family == Family::ieb || family == Family::combined; }
};

// Throws ValidationError when a parameter is out of range or the exposure
// mode is illegal for the family.
void validate(const ModelConfig& cfg);

// Everything optional; unset fields fall back to family defaults at finalize
// time. Flags and sweep axes merge through the same draft.
struct ConfigDraft {
    std::optional<std::string> family;
    std::optional<std::uint32_t> n_agents;
    std::optional<std::uint32_t> n_communities;
    std::optional<std::uint32_t> steps;
    std::optional<std::uint64_t> seed;
    std::optional<bool> sequential;
    std::optional<bool> record_per_step;
    std::optional<std::string> share_mode; // "random" | "largest"
    std::optional<double> p_e;
    std::optional<double> fallback_p_e;
    std::optional<double> p_j;
    std::optional<double> p_l;
    std::optional<double> p_k;
    std::optional<double> startup_cost;
    std::optional<std::uint32_t> m;
    std::optional<std::uint32_t> horizon;
    std::optional<std::string> projection; // "linear" | "quadratic"
};

// Fields set in `over` win.
void merge_draft(ConfigDraft& base, const ConfigDraft& over);

// Parses a JSON object of draft fields; unknown keys are an error.
ConfigDraft draft_from_json_text(std::string_view text);

// Sets one named parameter from a string token ("p_e", "0.05"). Used by sweep
// axes. Throws ValidationError on an unknown name, ParseError on a bad token.
void set_draft_param(ConfigDraft& draft, std::string_view name, std::string_view token);

// Applies family defaults, checks required per-family parameters (naming the
// missing flag), and validates. `family` must be set.
ModelConfig finalize(const ConfigDraft& draft);

// JSON echo of an effective config, for run manifests. Only fields the family
// actually uses are emitted.
std::string config_json_text(const ModelConfig& cfg);

} // namespace commsim
