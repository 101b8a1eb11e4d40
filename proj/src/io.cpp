#include "commsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "commsim/errors.hpp"

namespace commsim {

std::string format_double(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw ValidationError("unformattable number");
    return std::string(buf, ptr);
}

void append_double(std::string& out, double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw ValidationError("unformattable number");
    out.append(buf, ptr);
}

void append_u64(std::string& out, std::uint64_t value) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    out.append(buf, ptr);
}

std::string sizes_csv(const SizeDistribution& sizes) {
    std::string out = "community,size\n";
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        append_u64(out, c);
        out.push_back(',');
        append_u64(out, sizes[c]);
        out.push_back('\n');
    }
    return out;
}

std::string ecdf_csv(const EcdfCurve& curve, std::string_view series) {
    std::string out = "series,size,frac_at_least\n";
    for (const auto& p : curve) {
        out.append(series);
        out.push_back(',');
        append_u64(out, p.size);
        out.push_back(',');
        append_double(out, p.frac_at_least);
        out.push_back('\n');
    }
    return out;
}

std::string overlay_csv(const std::vector<OverlayRow>& rows) {
    std::string out = "series,size,frac_at_least\n";
    for (const auto& r : rows) {
        out.append(r.series);
        out.push_back(',');
        append_u64(out, r.size);
        out.push_back(',');
        append_double(out, r.frac_at_least);
        out.push_back('\n');
    }
    return out;
}

std::string utility_csv(const std::vector<UtilityCell>& cells) {
    std::string out = "s_c,s_f,total\n";
    for (const auto& c : cells) {
        append_double(out, c.s_c);
        out.push_back(',');
        append_double(out, c.s_f);
        out.push_back(',');
        append_double(out, c.total);
        out.push_back('\n');
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ValidationError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        if (pos == text.size()) break;
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        CsvRow row;
        row.line = line_no;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                row.fields.emplace_back(line.substr(start));
                break;
            }
            row.fields.emplace_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

[[noreturn]] void bad_field(std::string_view what, std::string_view field, std::size_t line) {
    std::string msg = "line ";
    append_u64(msg, line);
    msg += ": expected ";
    msg += what;
    msg += ", got \"";
    msg += field;
    msg += "\"";
    throw ParseError(msg);
}

} // namespace

std::uint64_t parse_count(std::string_view field, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        bad_field("a non-negative integer", field, line);
    }
    return value;
}

double parse_real(std::string_view field, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        bad_field("a number", field, line);
    }
    return value;
}

} // namespace commsim
