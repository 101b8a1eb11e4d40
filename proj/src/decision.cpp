#include "commsim/decision.hpp"

#include <algorithm>
#include <cmath>

#include "commsim/errors.hpp"
#include "commsim/sampling.hpp"

namespace commsim {

double project_size(std::uint32_t s_c, std::uint32_t age, std::uint32_t horizon,
                    Projection projection) {
    if (age == 0) throw ValidationError("community age must be at least 1");
    const double sc = static_cast<double>(s_c);
    const double a = static_cast<double>(age);
    const double h = static_cast<double>(horizon);
    if (projection == Projection::linear) {
        return sc + h * (sc / a);
    }
    const double growth = (a + h) / a;
    return sc * growth * growth;
}

double participation_benefit(double s_f) {
    if (s_f < 0.0) throw ValidationError("projected size must be non-negative");
    return std::log(s_f + 1.0);
}

double early_adopter_benefit(double s_f, double s_c) {
    return std::log(s_f + 1.0) / std::log(s_c + 2.0);
}

BenefitEstimate total_benefit(const Population& pop, AgentId a, CommunityId c,
                              const BenefitParams& params) {
    BenefitEstimate est;
    est.community = c;
    est.s_c = pop.community_size(c);
    est.is_member = pop.is_member(a, c);
    est.s_f = project_size(est.s_c, pop.community_age(c), params.horizon, params.projection);
    est.b_p = participation_benefit(est.s_f);
    est.b_ea = early_adopter_benefit(est.s_f, static_cast<double>(est.s_c));
    est.total = est.b_p + est.b_ea - (est.is_member ? 0.0 : params.startup_cost);
    return est;
}

void random_exits(const Population& pop, AgentId a, double p_l, Rng& rng,
                  std::vector<CommunityId>& leaves) {
    leaves.clear();
    for (CommunityId c : pop.communities(a)) { // ascending by id
        if (rng.bernoulli(p_l)) leaves.push_back(c);
    }
}

void random_joins(const ExposureSet& exposure, double p_j, Rng& rng,
                  std::vector<CommunityId>& joins) {
    joins.clear();
    for (CommunityId c : exposure) {
        if (rng.bernoulli(p_j)) joins.push_back(c);
    }
}

Decision random_decide(const Population& pop, AgentId a, const ExposureSet& exposure,
                       double p_j, double p_l, Rng& rng) {
    Decision d;
    random_exits(pop, a, p_l, rng, d.leaves);
    random_joins(exposure, p_j, rng, d.joins);
    return d;
}

void BenefitTable::build(const Population& pop, const BenefitParams& params) {
    totals_.resize(pop.n_communities());
    for (CommunityId c = 0; c < pop.n_communities(); ++c) {
        const std::uint32_t s_c = pop.community_size(c);
        const double s_f =
            project_size(s_c, pop.community_age(c), params.horizon, params.projection);
        totals_[c] = participation_benefit(s_f) +
                     early_adopter_benefit(s_f, static_cast<double>(s_c));
    }
}

void ieb_decide_into(const Population& pop, AgentId a, const ExposureSet& exposure,
                     const BenefitParams& params, const BenefitTable& table, Rng& rng,
                     Decision& out, DecisionScratch& scratch) {
    out.joins.clear();
    out.leaves.clear();

    // Candidates: current communities merged with the exposure set, ascending.
    const auto& current = pop.communities(a);
    auto& cand = scratch.candidates;
    cand.clear();
    std::set_union(current.begin(), current.end(), exposure.begin(), exposure.end(),
                   std::back_inserter(cand));
    if (cand.empty()) return;

    auto& keys = scratch.keys;
    keys.clear();
    for (CommunityId c : cand) {
        const bool member = pop.is_member(a, c);
        keys.push_back(table.member_total(c) - (member ? 0.0 : params.startup_cost));
    }

    const auto keep = static_cast<std::uint32_t>(
        std::ceil(static_cast<double>(cand.size()) * params.p_k));
    top_k_indices(keys, keep, rng, scratch.fy, scratch.kept);

    auto& kept_mark = scratch.kept_mark;
    kept_mark.assign(cand.size(), 0);
    for (std::uint32_t i : scratch.kept) kept_mark[i] = 1;

    for (std::uint32_t i = 0; i < cand.size(); ++i) {
        const CommunityId c = cand[i];
        const bool member = pop.is_member(a, c);
        if (kept_mark[i] && !member) out.joins.push_back(c);
        if (!kept_mark[i] && member) out.leaves.push_back(c);
    }
}

Decision ieb_decide(const Population& pop, AgentId a, const ExposureSet& exposure,
                    const BenefitParams& params, Rng& rng) {
    BenefitTable table;
    table.build(pop, params);
    Decision d;
    DecisionScratch scratch;
    ieb_decide_into(pop, a, exposure, params, table, rng, d, scratch);
    return d;
}

std::vector<UtilityCell> utility_grid(const std::vector<double>& s_c_values,
                                      const std::vector<double>& s_f_values,
                                      double startup_cost) {
    if (s_c_values.empty() || s_f_values.empty()) {
        throw ValidationError("utility grid ranges must be non-empty");
    }
    for (double v : s_c_values) {
        if (v < 0.0) throw ValidationError("utility grid s_c values must be non-negative");
    }
    for (double v : s_f_values) {
        if (v < 0.0) throw ValidationError("utility grid s_f values must be non-negative");
    }
    std::vector<UtilityCell> cells;
    cells.reserve(s_c_values.size() * s_f_values.size());
    for (double s_f : s_f_values) {
        for (double s_c : s_c_values) {
            const double total =
                participation_benefit(s_f) + early_adopter_benefit(s_f, s_c) - startup_cost;
            cells.push_back({s_c, s_f, total});
        }
    }
    return cells;
}

} // namespace commsim
