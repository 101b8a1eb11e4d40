#include "commsim/config.hpp"

#include <charconv>

#include <json.hpp>

#include "commsim/errors.hpp"

namespace commsim {

std::string_view family_name(Family family) {
    switch (family) {
        case Family::null_model: return "null";
        case Family::social_exposure: return "social_exposure";
        case Family::ieb: return "ieb";
        case Family::combined: return "combined";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "null") return Family::null_model;
    if (name == "social_exposure") return Family::social_exposure;
    if (name == "ieb") return Family::ieb;
    if (name == "combined") return Family::combined;
    throw ValidationError("unknown model family: " + std::string(name) +
                          " (expected null, social_exposure, ieb, or combined)");
}

namespace {

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string(name) + " must be in [0,1]");
    }
}

} // namespace

void validate(const ModelConfig& cfg) {
    if (cfg.n_agents == 0) throw ValidationError("n_agents must be positive");
    if (cfg.n_communities == 0) throw ValidationError("n_communities must be positive");
    check_prob(cfg.exposure.p_e, "p_e");
    check_prob(cfg.exposure.fallback_p_e, "fallback_p_e");
    check_prob(cfg.random_decision.p_j, "p_j");
    check_prob(cfg.random_decision.p_l, "p_l");
    if (cfg.exposure.m == 0) throw ValidationError("m must be at least 1");
    if (cfg.benefit.startup_cost < 0.0) throw ValidationError("startup_cost must be non-negative");
    if (!(cfg.benefit.p_k > 0.0 && cfg.benefit.p_k <= 1.0)) {
        throw ValidationError("p_k must be in (0,1]");
    }
    switch (cfg.family) {
        case Family::null_model:
        case Family::ieb:
            if (cfg.exposure.mode != ExposureMode::null_random) {
                throw ValidationError("family requires random exposure");
            }
            break;
        case Family::social_exposure:
            if (cfg.exposure.mode == ExposureMode::null_random) {
                throw ValidationError("social_exposure family requires a share mode");
            }
            break;
        case Family::combined:
            if (cfg.exposure.mode != ExposureMode::social_largest_share) {
                throw ValidationError("combined family requires largest-share exposure");
            }
            break;
    }
}

void merge_draft(ConfigDraft& base, const ConfigDraft& over) {
    auto take = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    take(base.family, over.family);
    take(base.n_agents, over.n_agents);
    take(base.n_communities, over.n_communities);
    take(base.steps, over.steps);
    take(base.seed, over.seed);
    take(base.sequential, over.sequential);
    take(base.record_per_step, over.record_per_step);
    take(base.share_mode, over.share_mode);
    take(base.p_e, over.p_e);
    take(base.fallback_p_e, over.fallback_p_e);
    take(base.p_j, over.p_j);
    take(base.p_l, over.p_l);
    take(base.p_k, over.p_k);
    take(base.startup_cost, over.startup_cost);
    take(base.m, over.m);
    take(base.horizon, over.horizon);
    take(base.projection, over.projection);
}

ConfigDraft draft_from_json_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object");

    ConfigDraft draft;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "family") draft.family = value.get<std::string>();
            else if (key == "n_agents") draft.n_agents = value.get<std::uint32_t>();
            else if (key == "n_communities") draft.n_communities = value.get<std::uint32_t>();
            else if (key == "steps") draft.steps = value.get<std::uint32_t>();
            else if (key == "seed") draft.seed = value.get<std::uint64_t>();
            else if (key == "sequential") draft.sequential = value.get<bool>();
            else if (key == "record_per_step") draft.record_per_step = value.get<bool>();
            else if (key == "share_mode") draft.share_mode = value.get<std::string>();
            else if (key == "p_e") draft.p_e = value.get<double>();
            else if (key == "fallback_p_e") draft.fallback_p_e = value.get<double>();
            else if (key == "p_j") draft.p_j = value.get<double>();
            else if (key == "p_l") draft.p_l = value.get<double>();
            else if (key == "p_k") draft.p_k = value.get<double>();
            else if (key == "startup_cost") draft.startup_cost = value.get<double>();
            else if (key == "m") draft.m = value.get<std::uint32_t>();
            else if (key == "horizon") draft.horizon = value.get<std::uint32_t>();
            else if (key == "projection") draft.projection = value.get<std::string>();
            else throw ValidationError("unknown config key: " + key);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad config value: ") + e.what());
    }
    return draft;
}

namespace {

template <typename T>
T parse_token(std::string_view name, std::string_view token) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("bad value for " + std::string(name) + ": \"" + std::string(token) + "\"");
    }
    return value;
}

} // namespace

void set_draft_param(ConfigDraft& draft, std::string_view name, std::string_view token) {
    if (name == "p_e") draft.p_e = parse_token<double>(name, token);
    else if (name == "fallback_p_e") draft.fallback_p_e = parse_token<double>(name, token);
    else if (name == "p_j") draft.p_j = parse_token<double>(name, token);
    else if (name == "p_l") draft.p_l = parse_token<double>(name, token);
    else if (name == "p_k") draft.p_k = parse_token<double>(name, token);
    else if (name == "startup_cost") draft.startup_cost = parse_token<double>(name, token);
    else if (name == "m") draft.m = parse_token<std::uint32_t>(name, token);
    else if (name == "horizon") draft.horizon = parse_token<std::uint32_t>(name, token);
    else if (name == "steps") draft.steps = parse_token<std::uint32_t>(name, token);
    else if (name == "n_agents") draft.n_agents = parse_token<std::uint32_t>(name, token);
    else if (name == "n_communities") draft.n_communities = parse_token<std::uint32_t>(name, token);
    else if (name == "seed") draft.seed = parse_token<std::uint64_t>(name, token);
    else if (name == "share_mode") draft.share_mode = std::string(token);
    else if (name == "projection") draft.projection = std::string(token);
    else if (name == "family") draft.family = std::string(token);
    else throw ValidationError("unknown parameter: " + std::string(name));
}

namespace {

ExposureMode parse_share_mode(std::string_view token) {
    if (token == "random") return ExposureMode::social_random_share;
    if (token == "largest") return ExposureMode::social_largest_share;
    throw ValidationError("share_mode must be \"random\" or \"largest\", got \"" +
                          std::string(token) + "\"");
}

Projection parse_projection(std::string_view token) {
    if (token == "linear") return Projection::linear;
    if (token == "quadratic") return Projection::quadratic;
    throw ValidationError("projection must be \"linear\" or \"quadratic\", got \"" +
                          std::string(token) + "\"");
}

} // namespace

ModelConfig finalize(const ConfigDraft& draft) {
    if (!draft.family) throw ValidationError("missing required parameter: family");
    ModelConfig cfg;
    cfg.family = parse_family(*draft.family);
    if (draft.n_agents) cfg.n_agents = *draft.n_agents;
    if (draft.n_communities) cfg.n_communities = *draft.n_communities;
    if (draft.steps) cfg.steps = *draft.steps;
    if (draft.seed) cfg.seed = *draft.seed;
    if (draft.sequential) cfg.sequential = *draft.sequential;
    if (draft.record_per_step) cfg.record_per_step = *draft.record_per_step;

    const std::string fam(family_name(cfg.family));
    auto require = [&](bool present, const char* flag) {
        if (!present) {
            throw ValidationError("the " + fam + " family requires " + flag);
        }
    };
    auto reject = [&](bool present, const char* flag, const char* why) {
        if (present) {
            throw ValidationError(flag + (" is not used by the " + fam + " family") +
                                  (why[0] ? std::string(": ") + why : std::string()));
        }
    };

    switch (cfg.family) {
        case Family::null_model:
            require(draft.p_e.has_value(), "p_e");
            require(draft.p_j.has_value(), "p_j");
            reject(draft.m.has_value(), "m", "");
            reject(draft.share_mode.has_value(), "share_mode", "");
            reject(draft.fallback_p_e.has_value(), "fallback_p_e", "");
            reject(draft.p_k.has_value(), "p_k", "");
            reject(draft.projection.has_value(), "projection", "");
            reject(draft.horizon.has_value(), "horizon", "");
            reject(draft.startup_cost.has_value(), "startup_cost", "");
            cfg.exposure.mode = ExposureMode::null_random;
            cfg.exposure.p_e = *draft.p_e;
            cfg.random_decision.p_j = *draft.p_j;
            cfg.random_decision.p_l = draft.p_l.value_or(0.56);
            break;
        case Family::social_exposure:
            require(draft.m.has_value(), "m");
            require(draft.share_mode.has_value(), "share_mode");
            reject(draft.p_e.has_value(), "p_e", "use fallback_p_e for agents without communities");
            reject(draft.p_k.has_value(), "p_k", "");
            reject(draft.projection.has_value(), "projection", "");
            reject(draft.horizon.has_value(), "horizon", "");
            reject(draft.startup_cost.has_value(), "startup_cost", "");
            cfg.exposure.mode = parse_share_mode(*draft.share_mode);
            cfg.exposure.m = *draft.m;
            cfg.exposure.fallback_p_e = draft.fallback_p_e.value_or(0.1);
            cfg.random_decision.p_j = draft.p_j.value_or(0.1);
            cfg.random_decision.p_l = draft.p_l.value_or(0.56);
            break;
        case Family::ieb:
            require(draft.p_e.has_value(), "p_e");
            require(draft.p_k.has_value(), "p_k");
            reject(draft.m.has_value(), "m", "");
            reject(draft.share_mode.has_value(), "share_mode", "");
            reject(draft.fallback_p_e.has_value(), "fallback_p_e", "");
            reject(draft.p_j.has_value(), "p_j", "IEB agents join by rank, not by chance");
            reject(draft.p_l.has_value(), "p_l", "IEB agents exit by rank, not by chance");
            cfg.exposure.mode = ExposureMode::null_random;
            cfg.exposure.p_e = *draft.p_e;
            cfg.benefit.p_k = *draft.p_k;
            cfg.benefit.horizon = draft.horizon.value_or(6);
            cfg.benefit.startup_cost = draft.startup_cost.value_or(0.5);
            cfg.benefit.projection =
                draft.projection ? parse_projection(*draft.projection) : Projection::linear;
            break;
        case Family::combined:
            require(draft.m.has_value(), "m");
            require(draft.p_k.has_value(), "p_k");
            reject(draft.share_mode.has_value(), "share_mode",
                   "the combined family always shares largest");
            reject(draft.p_e.has_value(), "p_e", "use fallback_p_e for agents without communities");
            reject(draft.p_j.has_value(), "p_j", "IEB agents join by rank, not by chance");
            reject(draft.p_l.has_value(), "p_l", "IEB agents exit by rank, not by chance");
            cfg.exposure.mode = ExposureMode::social_largest_share;
            cfg.exposure.m = *draft.m;
            cfg.exposure.fallback_p_e = draft.fallback_p_e.value_or(0.1);
            cfg.benefit.p_k = *draft.p_k;
            cfg.benefit.horizon = draft.horizon.value_or(6);
            cfg.benefit.startup_cost = draft.startup_cost.value_or(0.5);
            cfg.benefit.projection =
                draft.projection ? parse_projection(*draft.projection) : Projection::quadratic;
            break;
    }
    validate(cfg);
    return cfg;
}

std::string config_json_text(const ModelConfig& cfg) {
    nlohmann::json doc;
    doc["family"] = std::string(family_name(cfg.family));
    doc["n_agents"] = cfg.n_agents;
    doc["n_communities"] = cfg.n_communities;
    doc["steps"] = cfg.steps;
    doc["seed"] = cfg.seed;
    doc["sequential"] = cfg.sequential;
    const bool social = cfg.exposure.mode != ExposureMode::null_random;
    if (social) {
        doc["share_mode"] =
            cfg.exposure.mode == ExposureMode::social_random_share ? "random" : "largest";
        doc["m"] = cfg.exposure.m;
        doc["fallback_p_e"] = cfg.exposure.fallback_p_e;
    } else {
        doc["p_e"] = cfg.exposure.p_e;
    }
    if (cfg.uses_ieb()) {
        doc["p_k"] = cfg.benefit.p_k;
        doc["horizon"] = cfg.benefit.horizon;
        doc["startup_cost"] = cfg.benefit.startup_cost;
        doc["projection"] =
            cfg.benefit.projection == Projection::linear ? "linear" : "quadratic";
    } else {
        doc["p_j"] = cfg.random_decision.p_j;
        doc["p_l"] = cfg.random_decision.p_l;
    }
    return doc.dump(2);
}

} // namespace commsim
