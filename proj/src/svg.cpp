#include "commsim/svg.hpp"

#include <algorithm>
#include <cmath>

#include "commsim/errors.hpp"
#include "commsim/io.hpp"

namespace commsim {

namespace {

constexpr double kPanelW = 220.0;
constexpr double kPanelH = 170.0;
constexpr double kPadLeft = 46.0;
constexpr double kPadBottom = 34.0;
constexpr double kPadTop = 22.0;
constexpr double kPadRight = 10.0;
constexpr double kMargin = 14.0;
constexpr double kHeader = 30.0;

struct LogRange {
    double lo = 0.0; // ln scale
    double hi = 1.0;

    double place(double ln_value, double extent) const {
        if (hi <= lo) return extent / 2.0;
        return (ln_value - lo) / (hi - lo) * extent;
    }
};

void expand(LogRange& r, double ln_value, bool& seeded) {
    if (!seeded) {
        r.lo = r.hi = ln_value;
        seeded = true;
        return;
    }
    r.lo = std::min(r.lo, ln_value);
    r.hi = std::max(r.hi, ln_value);
}

void append_num(std::string& out, double v) {
    // Plot coordinates: two decimals keep the file small.
    char buf[32];
    const int n = std::snprintf(buf, sizeof(buf), "%.2f", v);
    out.append(buf, buf + n);
}

void polyline(std::string& out, const EcdfCurve& curve, const LogRange& xr,
              const LogRange& yr, double ox, double oy, double w, double h,
              const char* color) {
    if (curve.empty()) return;
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.4\" points=\"";
    for (const auto& p : curve) {
        const double x = ox + xr.place(std::log(static_cast<double>(p.size)), w);
        const double y = oy + h - yr.place(std::log(p.frac_at_least), h);
        append_num(out, x);
        out.push_back(',');
        append_num(out, y);
        out.push_back(' ');
    }
    out += "\"/>\n";
}

void text(std::string& out, double x, double y, std::string_view s, int px,
          const char* anchor, const char* color = "#333") {
    out += "<text x=\"";
    append_num(out, x);
    out += "\" y=\"";
    append_num(out, y);
    out += "\" font-size=\"";
    out += std::to_string(px);
    out += "\" font-family=\"sans-serif\" fill=\"";
    out += color;
    out += "\" text-anchor=\"";
    out += anchor;
    out += "\">";
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out.push_back(c);
        }
    }
    out += "</text>\n";
}

std::string pow10_label(int exp) {
    if (exp == 0) return "1";
    double v = std::pow(10.0, exp);
    if (exp > 0 && exp < 7) return format_double(v);
    return "1e" + std::to_string(exp);
}

} // namespace

std::string render_grid_svg(const std::vector<Panel>& panels, std::size_t n_cols,
                            std::string_view title) {
    if (panels.empty()) throw ValidationError("nothing to render");
    if (n_cols == 0) throw ValidationError("n_cols must be positive");
    const std::size_t n_rows = (panels.size() + n_cols - 1) / n_cols;

    LogRange xr, yr;
    bool x_seeded = false, y_seeded = false;
    for (const auto& panel : panels) {
        for (const EcdfCurve* curve : {&panel.sim, &panel.baseline}) {
            for (const auto& p : *curve) {
                expand(xr, std::log(static_cast<double>(p.size)), x_seeded);
                expand(yr, std::log(p.frac_at_least), y_seeded);
            }
        }
    }
    if (!x_seeded) throw ValidationError("all panels are empty");

    const double cell_w = kPadLeft + kPanelW + kPadRight;
    const double cell_h = kPadTop + kPanelH + kPadBottom;
    const double width = kMargin * 2 + cell_w * static_cast<double>(n_cols);
    const double height = kHeader + kMargin * 2 + cell_h * static_cast<double>(n_rows);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    append_num(out, width);
    out += "\" height=\"";
    append_num(out, height);
    out += "\" viewBox=\"0 0 ";
    append_num(out, width);
    out.push_back(' ');
    append_num(out, height);
    out += "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(out, width / 2.0, 20.0, title, 14, "middle", "#111");

    const int x_exp_lo = static_cast<int>(std::ceil(xr.lo / std::log(10.0) - 1e-9));
    const int x_exp_hi = static_cast<int>(std::floor(xr.hi / std::log(10.0) + 1e-9));
    const int y_exp_lo = static_cast<int>(std::ceil(yr.lo / std::log(10.0) - 1e-9));
    const int y_exp_hi = static_cast<int>(std::floor(yr.hi / std::log(10.0) + 1e-9));

    for (std::size_t i = 0; i < panels.size(); ++i) {
        const std::size_t row = i / n_cols;
        const std::size_t col = i % n_cols;
        const double ox = kMargin + cell_w * static_cast<double>(col) + kPadLeft;
        const double oy = kHeader + kMargin + cell_h * static_cast<double>(row) + kPadTop;

        out += "<rect x=\"";
        append_num(out, ox);
        out += "\" y=\"";
        append_num(out, oy);
        out += "\" width=\"";
        append_num(out, kPanelW);
        out += "\" height=\"";
        append_num(out, kPanelH);
        out += "\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.8\"/>\n";

        text(out, ox + kPanelW / 2.0, oy - 7.0, panels[i].title, 11, "middle", "#111");

        for (int e = x_exp_lo; e <= x_exp_hi; ++e) {
            const double x = ox + xr.place(e * std::log(10.0), kPanelW);
            out += "<line x1=\"";
            append_num(out, x);
            out += "\" y1=\"";
            append_num(out, oy);
            out += "\" x2=\"";
            append_num(out, x);
            out += "\" y2=\"";
            append_num(out, oy + kPanelH);
            out += "\" stroke=\"#eee\" stroke-width=\"0.8\"/>\n";
            text(out, x, oy + kPanelH + 14.0, pow10_label(e), 9, "middle", "#666");
        }
        for (int e = y_exp_lo; e <= y_exp_hi; ++e) {
            const double y = oy + kPanelH - yr.place(e * std::log(10.0), kPanelH);
            out += "<line x1=\"";
            append_num(out, ox);
            out += "\" y1=\"";
            append_num(out, y);
            out += "\" x2=\"";
            append_num(out, ox + kPanelW);
            out += "\" y2=\"";
            append_num(out, y);
            out += "\" stroke=\"#eee\" stroke-width=\"0.8\"/>\n";
            text(out, ox - 4.0, y + 3.0, pow10_label(e), 9, "end", "#666");
        }

        polyline(out, panels[i].baseline, xr, yr, ox, oy, kPanelW, kPanelH, "#e06030");
        polyline(out, panels[i].sim, xr, yr, ox, oy, kPanelW, kPanelH, "#3366cc");
    }

    text(out, width / 2.0, height - 6.0, "community size (log)", 11, "middle");
    out += "</svg>\n";
    return out;
}

} // namespace commsim
