#pragma once
// CSV serialization/parsing and number formatting shared by the tools and
// tests. Writers return strings so callers can diff outputs byte-for-byte.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "commsim/decision.hpp"
#include "commsim/metrics.hpp"
#include "commsim/population.hpp"

namespace commsim {

// Shortest decimal form that round-trips through a double.
std::string format_double(double value);

void append_double(std::string& out, double value);
void append_u64(std::string& out, std::uint64_t value);

// (community,size) table; community ids are 0-based indices.
std::string sizes_csv(const SizeDistribution& sizes);

std::string ecdf_csv(const EcdfCurve& curve, std::string_view series);
std::string overlay_csv(const std::vector<OverlayRow>& rows);

// (s_c,s_f,total) rows of a utility surface.
std::string utility_csv(const std::vector<UtilityCell>& cells);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

// Comma-delimited, no quoting, CRLF tolerated, blank lines skipped. Each row
// carries its 1-based line number for error messages.
struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};
std::vector<CsvRow> parse_csv(std::string_view text);

// Field parsers that throw ParseError naming the line on bad input.
std::uint64_t parse_count(std::string_view field, std::size_t line);
double parse_real(std::string_view field, std::size_t line);

} // namespace commsim
