#include <doctest.h>

#include <string>

#include "commsim/config.hpp"
#include "commsim/errors.hpp"

using namespace commsim;

namespace {

std::string finalize_error(const ConfigDraft& draft) {
    try {
        finalize(draft);
        return {};
    } catch (const ValidationError& e) {
        return e.what();
    }
}

} // namespace

TEST_CASE("family names round-trip") {
    for (Family family : {Family::null_model, Family::social_exposure, Family::ieb,
                          Family::combined}) {
        CHECK(parse_family(family_name(family)) == family);
    }
    CHECK_THROWS_AS(parse_family("social"), ValidationError);
}

TEST_CASE("null family takes p_e and p_j, defaults the rest") {
    ConfigDraft draft;
    draft.family = "null";
    draft.p_e = 0.05;
    draft.p_j = 0.2;
    const ModelConfig cfg = finalize(draft);
    CHECK(cfg.family == Family::null_model);
    CHECK(cfg.n_agents == 9000);
    CHECK(cfg.n_communities == 200);
    CHECK(cfg.steps == 24);
    CHECK(cfg.seed == 1);
    CHECK(cfg.exposure.mode == ExposureMode::null_random);
    CHECK(cfg.exposure.p_e == 0.05);
    CHECK(cfg.random_decision.p_j == 0.2);
    CHECK(cfg.random_decision.p_l == 0.56);
    CHECK_FALSE(cfg.sequential);
    CHECK_FALSE(cfg.uses_ieb());
}

TEST_CASE("missing required parameters are named") {
    ConfigDraft draft;
    CHECK(finalize_error(draft).find("family") != std::string::npos);

    draft.family = "null";
    draft.p_j = 0.1;
    CHECK(finalize_error(draft).find("p_e") != std::string::npos);

    ConfigDraft social;
    social.family = "social_exposure";
    social.m = 2;
    CHECK(finalize_error(social).find("share_mode") != std::string::npos);

    ConfigDraft ieb;
    ieb.family = "ieb";
    ieb.p_e = 0.1;
    CHECK(finalize_error(ieb).find("p_k") != std::string::npos);

    ConfigDraft combined;
    combined.family = "combined";
    combined.p_k = 0.1;
    CHECK(finalize_error(combined).find("m") != std::string::npos);
}

TEST_CASE("parameters foreign to the family are rejected with a reason") {
    ConfigDraft social;
    social.family = "social_exposure";
    social.m = 1;
    social.share_mode = "random";
    social.p_e = 0.1;
    CHECK(finalize_error(social).find("fallback_p_e") != std::string::npos);

    ConfigDraft ieb;
    ieb.family = "ieb";
    ieb.p_e = 0.1;
    ieb.p_k = 0.1;
    ieb.p_l = 0.56;
    CHECK(finalize_error(ieb).find("rank") != std::string::npos);

    ConfigDraft combined;
    combined.family = "combined";
    combined.m = 2;
    combined.p_k = 0.1;
    combined.share_mode = "largest";
    CHECK(finalize_error(combined).find("always shares largest") != std::string::npos);

    ConfigDraft null_draft;
    null_draft.family = "null";
    null_draft.p_e = 0.1;
    null_draft.p_j = 0.1;
    null_draft.projection = "linear";
    CHECK(finalize_error(null_draft).find("projection") != std::string::npos);
}

TEST_CASE("social family resolves share modes and optional knobs") {
    ConfigDraft draft;
    draft.family = "social_exposure";
    draft.m = 3;
    draft.share_mode = "largest";
    const ModelConfig cfg = finalize(draft);
    CHECK(cfg.exposure.mode == ExposureMode::social_largest_share);
    CHECK(cfg.exposure.m == 3);
    CHECK(cfg.exposure.fallback_p_e == 0.1);
    CHECK(cfg.random_decision.p_j == 0.1);

    draft.share_mode = "random";
    draft.fallback_p_e = 0.05;
    draft.p_j = 0.05;
    const ModelConfig cfg2 = finalize(draft);
    CHECK(cfg2.exposure.mode == ExposureMode::social_random_share);
    CHECK(cfg2.exposure.fallback_p_e == 0.05);
    CHECK(cfg2.random_decision.p_j == 0.05);

    draft.share_mode = "biggest";
    CHECK_THROWS_AS(finalize(draft), ValidationError);
}

TEST_CASE("ieb and combined families default their projections") {
    ConfigDraft ieb;
    ieb.family = "ieb";
    ieb.p_e = 0.1;
    ieb.p_k = 0.2;
    const ModelConfig cfg = finalize(ieb);
    CHECK(cfg.benefit.projection == Projection::linear);
    CHECK(cfg.benefit.horizon == 6);
    CHECK(cfg.benefit.startup_cost == 0.5);
    CHECK(cfg.uses_ieb());

    ConfigDraft combined;
    combined.family = "combined";
    combined.m = 2;
    combined.p_k = 0.1;
    const ModelConfig cfg2 = finalize(combined);
    CHECK(cfg2.benefit.projection == Projection::quadratic);
    CHECK(cfg2.exposure.mode == ExposureMode::social_largest_share);

    combined.projection = "linear";
    CHECK(finalize(combined).benefit.projection == Projection::linear);
    combined.projection = "cubic";
    CHECK_THROWS_AS(finalize(combined), ValidationError);
}

TEST_CASE("validation rejects out-of-range values") {
    ConfigDraft draft;
    draft.family = "null";
    draft.p_e = 1.5;
    draft.p_j = 0.1;
    CHECK_THROWS_AS(finalize(draft), ValidationError);

    draft.p_e = 0.1;
    draft.p_j = -0.01;
    CHECK_THROWS_AS(finalize(draft), ValidationError);

    draft.p_j = 0.1;
    draft.n_agents = 0;
    CHECK_THROWS_AS(finalize(draft), ValidationError);

    ConfigDraft ieb;
    ieb.family = "ieb";
    ieb.p_e = 0.1;
    ieb.p_k = 0.0; // keep fraction must be positive
    CHECK_THROWS_AS(finalize(ieb), ValidationError);
    ieb.p_k = 1.0;
    CHECK_NOTHROW(finalize(ieb));
}

TEST_CASE("json drafts merge under explicit overrides") {
    ConfigDraft base = draft_from_json_text(
        R"({"family":"null","p_e":0.05,"p_j":0.1,"steps":10,"seed":7})");
    CHECK(base.family == "null");
    CHECK(base.p_e == 0.05);
    CHECK(base.steps == 10);

    ConfigDraft over;
    over.p_e = 0.2;
    over.sequential = true;
    merge_draft(base, over);
    const ModelConfig cfg = finalize(base);
    CHECK(cfg.exposure.p_e == 0.2);  // flag wins over file
    CHECK(cfg.random_decision.p_j == 0.1); // untouched file value survives
    CHECK(cfg.steps == 10);
    CHECK(cfg.seed == 7);
    CHECK(cfg.sequential);
}

TEST_CASE("json draft errors distinguish syntax from content") {
    CHECK_THROWS_AS(draft_from_json_text("{family:"), ParseError);
    CHECK_THROWS_AS(draft_from_json_text("[1,2]"), ParseError);
    CHECK_THROWS_AS(draft_from_json_text(R"({"p_e":"high"})"), ParseError);
    try {
        draft_from_json_text(R"({"family":"null","pe":0.1})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("pe") != std::string::npos);
    }
}

TEST_CASE("sweep tokens set draft fields") {
    ConfigDraft draft;
    set_draft_param(draft, "p_e", "0.05");
    set_draft_param(draft, "m", "3");
    set_draft_param(draft, "share_mode", "largest");
    set_draft_param(draft, "seed", "42");
    CHECK(draft.p_e == 0.05);
    CHECK(draft.m == 3);
    CHECK(draft.share_mode == "largest");
    CHECK(draft.seed == 42);

    CHECK_THROWS_AS(set_draft_param(draft, "p_e", "fast"), ParseError);
    CHECK_THROWS_AS(set_draft_param(draft, "m", "2.5"), ParseError);
    CHECK_THROWS_AS(set_draft_param(draft, "mystery", "1"), ValidationError);
}

TEST_CASE("config echo emits only the fields in play") {
    ConfigDraft draft;
    draft.family = "null";
    draft.p_e = 0.1;
    draft.p_j = 0.2;
    const std::string null_json = config_json_text(finalize(draft));
    CHECK(null_json.find("\"p_e\"") != std::string::npos);
    CHECK(null_json.find("\"p_j\"") != std::string::npos);
    CHECK(null_json.find("\"p_k\"") == std::string::npos);
    CHECK(null_json.find("\"m\"") == std::string::npos);

    ConfigDraft combined;
    combined.family = "combined";
    combined.m = 2;
    combined.p_k = 0.1;
    const std::string combined_json = config_json_text(finalize(combined));
    CHECK(combined_json.find("\"share_mode\"") != std::string::npos);
    CHECK(combined_json.find("\"projection\"") != std::string::npos);
    CHECK(combined_json.find("quadratic") != std::string::npos);
    CHECK(combined_json.find("\"p_j\"") == std::string::npos);

    // a social echo re-parses to the same effective config
    ConfigDraft social;
    social.family = "social_exposure";
    social.m = 4;
    social.share_mode = "random";
    social.fallback_p_e = 0.05;
    social.seed = 99;
    const ModelConfig cfg = finalize(social);
    const ModelConfig round = finalize(draft_from_json_text(config_json_text(cfg)));
    CHECK(round.exposure.mode == cfg.exposure.mode);
    CHECK(round.exposure.m == cfg.exposure.m);
    CHECK(round.exposure.fallback_p_e == cfg.exposure.fallback_p_e);
    CHECK(round.random_decision.p_j == cfg.random_decision.p_j);
    CHECK(round.seed == cfg.seed);
}
