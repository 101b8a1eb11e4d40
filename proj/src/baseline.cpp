#include "commsim/baseline.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "commsim/errors.hpp"
#include "commsim/io.hpp"

namespace commsim {

BaselineTable aggregate_members(std::vector<CommentEvent> events, const BaselineConfig& cfg) {
    if (cfg.min_comments < 1) throw ValidationError("min_comments must be at least 1");
    // Sum duplicate (community,user) pairs before thresholding; std::map keeps
    // communities in key order so the result ignores event order.
    std::map<std::string, std::map<std::string, std::uint64_t>> per_user;
    for (auto& e : events) {
        per_user[std::move(e.community)][std::move(e.user)] += e.count;
    }
    BaselineTable table;
    for (auto& [community, users] : per_user) {
        std::uint64_t members = 0;
        for (const auto& [user, count] : users) {
            if (count >= cfg.min_comments) ++members;
        }
        if (cfg.exclude_above_cap && members > cfg.size_cap) {
            table.excluded.emplace_back(community, members);
            continue;
        }
        table.communities.push_back(community);
        table.sizes.push_back(static_cast<std::uint32_t>(members));
    }
    return table;
}

std::vector<CommentEvent> parse_events_csv(std::string_view text, bool per_comment) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw ParseError("empty file: expected a header row");
    const auto& header = rows.front().fields;
    const std::size_t want = per_comment ? 2 : 3;
    const bool header_ok =
        header.size() == want && header[0] == "community" && header[1] == "user" &&
        (per_comment || header[2] == "count");
    if (!header_ok) {
        throw ParseError(per_comment ? "expected header community,user"
                                     : "expected header community,user,count");
    }
    std::vector<CommentEvent> events;
    events.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.fields.size() != want) {
            std::string msg = "line ";
            append_u64(msg, row.line);
            msg += ": expected ";
            append_u64(msg, want);
            msg += " fields, got ";
            append_u64(msg, row.fields.size());
            throw ParseError(msg);
        }
        CommentEvent e;
        e.community = row.fields[0];
        e.user = row.fields[1];
        e.count = per_comment ? 1 : parse_count(row.fields[2], row.line);
        if (e.count == 0) {
            std::string msg = "line ";
            append_u64(msg, row.line);
            msg += ": count must be positive";
            throw ValidationError(msg);
        }
        events.push_back(std::move(e));
    }
    return events;
}

BaselineTable parse_sizes_csv(std::string_view text, const BaselineConfig& cfg) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw ParseError("empty file: expected a header row");
    const auto& header = rows.front().fields;
    if (header.size() != 2 || header[0] != "community" || header[1] != "size") {
        throw ParseError("expected header community,size");
    }
    BaselineTable table;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.fields.size() != 2) {
            std::string msg = "line ";
            append_u64(msg, row.line);
            msg += ": expected 2 fields, got ";
            append_u64(msg, row.fields.size());
            throw ParseError(msg);
        }
        const std::string& community = row.fields[0];
        const std::uint64_t size = parse_count(row.fields[1], row.line);
        if (!seen.insert(community).second) {
            throw ValidationError("duplicate community key: " + community);
        }
        if (cfg.exclude_above_cap && size > cfg.size_cap) {
            table.excluded.emplace_back(community, size);
            continue;
        }
        table.communities.push_back(community);
        table.sizes.push_back(static_cast<std::uint32_t>(size));
    }
    return table;
}

std::string baseline_csv(const BaselineTable& table) {
    std::string out = "community,size\n";
    for (std::size_t i = 0; i < table.communities.size(); ++i) {
        out += table.communities[i];
        out.push_back(',');
        append_u64(out, table.sizes[i]);
        out.push_back('\n');
    }
    return out;
}

} // namespace commsim
