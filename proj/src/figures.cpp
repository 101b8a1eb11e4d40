#include "commsim/figures.hpp"

#include "commsim/errors.hpp"

namespace commsim {

namespace {

const std::vector<std::string> kProbLevels = {"0.01", "0.05", "0.1", "0.2"};
const std::vector<std::string> kKeepLevels = {"0.05", "0.1", "0.2"};
const std::vector<std::string> kShareLevels = {"random", "largest"};
const std::vector<std::string> kMLevels = {"1", "2", "3", "4"};

FigureSpec with_layout(FigureSpec spec) {
    spec.n_rows = spec.grid.axes[0].values.size();
    spec.n_cols = spec.grid.axes[1].values.size();
    spec.n_cells = spec.n_rows * spec.n_cols;
    return spec;
}

FigureSpec null_grid() {
    FigureSpec spec;
    spec.id = "fig3";
    spec.summary = "null model: rows p_e, columns p_j";
    spec.grid.base.family = "null";
    spec.grid.axes = {{"p_e", kProbLevels}, {"p_j", kProbLevels}};
    return with_layout(std::move(spec));
}

FigureSpec social_grid(std::string id, double p_j, double fallback) {
    FigureSpec spec;
    spec.id = std::move(id);
    spec.summary = "social exposure: rows share_mode, columns m";
    spec.grid.base.family = "social_exposure";
    spec.grid.base.p_j = p_j;
    spec.grid.base.fallback_p_e = fallback;
    spec.grid.axes = {{"share_mode", kShareLevels}, {"m", kMLevels}};
    return with_layout(std::move(spec));
}

FigureSpec ieb_grid(std::string id, const char* projection) {
    FigureSpec spec;
    spec.id = std::move(id);
    spec.summary = std::string("IEB ") + projection + ": rows p_e, columns p_k";
    spec.grid.base.family = "ieb";
    spec.grid.base.projection = projection;
    spec.grid.axes = {{"p_e", kProbLevels}, {"p_k", kKeepLevels}};
    return with_layout(std::move(spec));
}

FigureSpec combined_grid(std::string id, double fallback) {
    FigureSpec spec;
    spec.id = std::move(id);
    spec.summary = "combined model: rows p_k, columns m";
    spec.grid.base.family = "combined";
    spec.grid.base.fallback_p_e = fallback;
    spec.grid.axes = {{"p_k", kKeepLevels}, {"m", kMLevels}};
    return with_layout(std::move(spec));
}

} // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig3", "fig4", "fig5", "fig6",
                                                 "fig7", "figA1", "figB1", "figB2"};
    return ids;
}

FigureSpec figure_spec(std::string_view id) {
    if (id == "fig3") return null_grid();
    if (id == "fig4") return social_grid("fig4", 0.1, 0.1);
    if (id == "fig5") return ieb_grid("fig5", "linear");
    if (id == "fig6") return combined_grid("fig6", 0.1);
    if (id == "fig7" || id == "figA1") return ieb_grid(std::string(id), "quadratic");
    if (id == "figB1") return social_grid("figB1", 0.05, 0.05);
    if (id == "figB2") return combined_grid("figB2", 0.05);
    throw ValidationError("unknown figure id: " + std::string(id) +
                          " (expected fig3, fig4, fig5, fig6, fig7, figA1, figB1, or figB2)");
}

} // namespace commsim
