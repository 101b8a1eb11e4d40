#pragma once

#include <cstdint>
#include <vector>

#include "commsim/exposure.hpp"
#include "commsim/population.hpp"
#include "commsim/rng.hpp"

namespace commsim {

enum class Projection { linear, quadratic };

struct BenefitParams {
    std::uint32_t horizon = 6;    // steps of projected growth
    double startup_cost = 0.5;    // paid only when joining a new community
    Projection projection = Projection::linear;
    double p_k = 0.1;             // proportion of candidates kept, (0, 1]
};

// Per-community benefit breakdown for one agent's decision.
struct BenefitEstimate {
    CommunityId community = 0;
    std::uint32_t s_c = 0;  // observed current size
    double s_f = 0.0;       // projected size horizon steps ahead
    double b_p = 0.0;       // participation benefit
    double b_ea = 0.0;      // early adopter benefit
    double total = 0.0;     // b_p + b_ea - (member ? 0 : startup_cost)
    bool is_member = false;
};

struct Decision {
    std::vector<CommunityId> joins;
    std::vector<CommunityId> leaves;
};

// Projected community size `horizon` steps ahead.
//   linear:    s_c + horizon * (s_c / age)
//   quadratic: s_c * ((age + horizon) / age)^2
// Zero stays zero under both. age must be >= 1.
double project_size(std::uint32_t s_c, std::uint32_t age, std::uint32_t horizon,
                    Projection projection);

// ln(s_f + 1); zero iff s_f is zero.
double participation_benefit(double s_f);

// ln(s_f + 1) / ln(s_c + 2); rewards joining communities that are small now
// but projected to grow.
double early_adopter_benefit(double s_f, double s_c);

// Full benefit breakdown for agent a considering community c, using the
// community's observed current size and age.
BenefitEstimate total_benefit(const Population& pop, AgentId a, CommunityId c,
                              const BenefitParams& params);

// Random rule: leave each current community with probability p_l, then join
// each exposed community with probability p_j. Leave draws come first in the
// RNG stream, both in ascending community order.
Decision random_decide(const Population& pop, AgentId a, const ExposureSet& exposure,
                       double p_j, double p_l, Rng& rng);

// The two halves of random_decide, used by the engine to keep the per-agent
// RNG stream order (exits, then exposure, then joins).
void random_exits(const Population& pop, AgentId a, double p_l, Rng& rng,
                  std::vector<CommunityId>& leaves);
void random_joins(const ExposureSet& exposure, double p_j, Rng& rng,
                  std::vector<CommunityId>& joins);

// IEB rule: rank current-union-exposure candidates by total benefit and keep
// the top ceil(p_k * |candidates|), ties broken uniformly at random. Joins
// are kept non-members; leaves are current communities that fell out.
Decision ieb_decide(const Population& pop, AgentId a, const ExposureSet& exposure,
                    const BenefitParams& params, Rng& rng);

// Member-basis benefit (b_p + b_ea) per community, computed once per step in
// synchronous mode so candidate ranking is table lookups.
class BenefitTable {
public:
    void build(const Population& pop, const BenefitParams& params);
    double member_total(CommunityId c) const { return totals_[c]; }

private:
    std::vector<double> totals_;
};

struct DecisionScratch {
    std::vector<CommunityId> candidates;
    std::vector<double> keys;
    std::vector<std::uint32_t> kept;
    std::vector<std::uint32_t> fy;
    std::vector<std::uint8_t> kept_mark;
};

// Allocation-free IEB path used by the engine; equivalent to ieb_decide with
// benefits served from the table (which must have been built with the same
// params against the same population state).
void ieb_decide_into(const Population& pop, AgentId a, const ExposureSet& exposure,
                     const BenefitParams& params, const BenefitTable& table, Rng& rng,
                     Decision& out, DecisionScratch& scratch);

// total = b_p(s_f) + b_ea(s_f, s_c) - startup_cost, evaluated over a grid of
// (s_c, s_f) values with the joiner treated as a non-member throughout.
struct UtilityCell {
    double s_c;
    double s_f;
    double total;
};
std::vector<UtilityCell> utility_grid(const std::vector<double>& s_c_values,
                                      const std::vector<double>& s_f_values,
                                      double startup_cost);

} // namespace commsim
