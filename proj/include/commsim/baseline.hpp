#pragma once
// Empirical community-size ingestion: aggregates per-user comment counts into
// active-member tallies, or loads pre-aggregated size tables, applying the
// activity threshold and the large-community cap.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "commsim/population.hpp"

namespace commsim {

struct CommentEvent {
    std::string community;
    std::string user;
    std::uint64_t count = 0; // comments by that user in that community
};

struct BaselineConfig {
    std::uint32_t min_comments = 5;
    std::uint32_t size_cap = 9000;
    bool exclude_above_cap = true;
};

// Size table keyed by community; `excluded` lists communities dropped by the
// cap rule, with the size they would have had.
struct BaselineTable {
    std::vector<std::string> communities;
    SizeDistribution sizes;
    std::vector<std::pair<std::string, std::uint64_t>> excluded;
};

// Counts, per community, the distinct users whose summed comment count meets
// min_comments. Duplicate (community,user) rows are summed before the
// threshold is applied. Output is sorted by community key, so the result is
// independent of event order.
BaselineTable aggregate_members(std::vector<CommentEvent> events, const BaselineConfig& cfg);

// Parses a (community,user,count) CSV into events. With per_comment set the
// expected header is (community,user) and every row counts as one comment.
std::vector<CommentEvent> parse_events_csv(std::string_view text, bool per_comment = false);

// Parses a pre-aggregated (community,size) CSV, applying the cap rule.
// Duplicate community keys are an error; row order is preserved.
BaselineTable parse_sizes_csv(std::string_view text, const BaselineConfig& cfg);

// Renders a table back to (community,size) CSV.
std::string baseline_csv(const BaselineTable& table);

} // namespace commsim
