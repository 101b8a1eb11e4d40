#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commsim/baseline.hpp"
#include "commsim/config.hpp"
#include "commsim/engine.hpp"
#include "commsim/errors.hpp"
#include "commsim/figures.hpp"
#include "commsim/io.hpp"
#include "commsim/metrics.hpp"
#include "commsim/report.hpp"
#include "commsim/svg.hpp"

namespace fs = std::filesystem;
using namespace commsim;

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("COMMSIM_OUT_DIR")) return env;
    return ".";
}

// Model parameter flags shared by simulate and sweep. Each maps straight onto
// a ConfigDraft field; unset flags leave the field alone so config-file values
// survive.
struct ModelFlags {
    ConfigDraft draft;
    bool sequential = false;
    bool per_step = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", draft.family,
                        "Model family: null, social_exposure, ieb, combined");
        cmd->add_option("--agents", draft.n_agents, "Number of agents [9000]");
        cmd->add_option("--communities", draft.n_communities, "Number of communities [200]");
        cmd->add_option("--steps", draft.steps, "Time steps [24]");
        cmd->add_option("--seed", draft.seed, "RNG seed [1]");
        cmd->add_option("--p-e", draft.p_e, "Exposure probability per community");
        cmd->add_option("--p-j", draft.p_j, "Join probability per exposed community");
        cmd->add_option("--p-l", draft.p_l, "Leave probability per membership [0.56]");
        cmd->add_option("--p-k", draft.p_k, "Proportion of candidate communities kept");
        cmd->add_option("--m", draft.m, "Communities shared per sampled neighbor");
        cmd->add_option("--share-mode", draft.share_mode, "Neighbor sharing: random or largest");
        cmd->add_option("--projection", draft.projection, "Size projection: linear or quadratic");
        cmd->add_option("--horizon", draft.horizon, "Projection horizon in steps [6]");
        cmd->add_option("--startup-cost", draft.startup_cost, "Cost of joining anew [0.5]");
        cmd->add_option("--fallback-p-e", draft.fallback_p_e,
                        "Random exposure for agents without communities [0.1]");
        cmd->add_flag("--sequential", sequential,
                      "Apply each agent's decisions immediately instead of end-of-step");
        cmd->add_flag("--per-step", per_step, "Record sizes after every step");
    }

    ConfigDraft resolve(const std::string& config_path) const {
        ConfigDraft merged;
        if (!config_path.empty()) {
            merged = draft_from_json_text(read_text_file(config_path));
        }
        merge_draft(merged, draft);
        if (sequential) merged.sequential = true;
        if (per_step) merged.record_per_step = true;
        return merged;
    }
};

void print_skew_line(const SizeDistribution& sizes) {
    try {
        const SkewSummary s = skew_summary(sizes);
        std::cout << "gini=" << format_double(s.gini) << " max=" << s.max_size
                  << " median=" << format_double(s.median_size) << "\n";
    } catch (const ValidationError&) {
        std::cout << "degenerate size distribution (all sizes zero)\n";
    }
}

void write_manifest(const fs::path& path, const nlohmann::json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

nlohmann::json stats_json(const ExposureStats& stats) {
    return {{"exposure_sets_checked", stats.sets_checked},
            {"exposure_bound_violations", stats.bound_violations}};
}

int do_simulate(const ModelFlags& flags, const std::string& config_path,
                const std::string& out_dir) {
    const ModelConfig cfg = finalize(flags.resolve(config_path));
    const RunResult result = run(cfg);

    fs::create_directories(out_dir);
    const fs::path sizes_path = fs::path(out_dir) / "sizes.csv";
    write_text_file(sizes_path, sizes_csv(result.final_sizes));
    std::vector<std::string> outputs = {sizes_path.string()};
    if (cfg.record_per_step) {
        const fs::path steps_path = fs::path(out_dir) / "per_step.csv";
        write_text_file(steps_path, per_step_csv(result.per_step_sizes));
        outputs.push_back(steps_path.string());
    }

    nlohmann::json manifest = {{"command", "simulate"},
                               {"config", nlohmann::json::parse(config_json_text(cfg))},
                               {"seed", cfg.seed},
                               {"outputs", outputs},
                               {"wall_seconds", result.wall_seconds}};
    manifest.update(stats_json(result.exposure_stats));
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);

    print_skew_line(result.final_sizes);
    return 0;
}

int report_cell_errors(const std::vector<CellResult>& cells) {
    int failures = 0;
    for (const auto& cell : cells) {
        if (!cell.error.empty()) {
            std::cerr << "error: " << cell.error << "\n";
            ++failures;
        }
    }
    return failures;
}

nlohmann::json cells_json(const std::vector<CellResult>& cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cell : cells) {
        nlohmann::json entry = {{"cell_id", cell.cell_id},
                                {"replicate", cell.replicate},
                                {"seed", cell.seed}};
        for (const auto& [name, token] : cell.params) entry["params"][name] = token;
        if (!cell.error.empty()) entry["error"] = cell.error;
        arr.push_back(std::move(entry));
    }
    return arr;
}

int do_sweep(const ModelFlags& flags, const std::string& config_path,
             const std::vector<std::string>& axis_flags, std::optional<std::uint32_t> replicates,
             unsigned jobs, const std::string& out_dir) {
    if (config_path.empty() && axis_flags.empty()) {
        throw ValidationError("a sweep needs --config or at least one --axis");
    }
    SweepGrid grid;
    if (!config_path.empty()) {
        grid = sweep_grid_from_json_text(read_text_file(config_path));
    }
    merge_draft(grid.base, flags.draft);
    if (flags.sequential) grid.base.sequential = true;
    if (flags.per_step) grid.base.record_per_step = true;
    for (const std::string& spec : axis_flags) {
        const std::size_t eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
            throw ValidationError("--axis expects name=v1,v2,..., got \"" + spec + "\"");
        }
        SweepAxis axis;
        axis.name = spec.substr(0, eq);
        std::size_t start = eq + 1;
        while (start <= spec.size()) {
            const std::size_t comma = spec.find(',', start);
            const std::size_t end = comma == std::string::npos ? spec.size() : comma;
            axis.values.push_back(spec.substr(start, end - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        std::erase_if(grid.axes, [&](const SweepAxis& a) { return a.name == axis.name; });
        grid.axes.push_back(std::move(axis));
    }
    if (replicates) grid.replicates = *replicates;

    const std::vector<CellResult> cells = sweep(grid, jobs);

    fs::create_directories(out_dir);
    const fs::path sweep_path = fs::path(out_dir) / "sweep.csv";
    const fs::path summary_path = fs::path(out_dir) / "summary.csv";
    write_text_file(sweep_path, sweep_csv(cells));
    write_text_file(summary_path, summary_csv(cells));

    nlohmann::json manifest = {{"command", "sweep"},
                               {"base_seed", grid.base.seed.value_or(1)},
                               {"replicates", grid.replicates},
                               {"cells", cells_json(cells)},
                               {"outputs", {sweep_path.string(), summary_path.string()}}};
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);

    return report_cell_errors(cells) == 0 ? 0 : 1;
}

int do_ingest(const std::string& input, std::string output, const std::string& format,
              std::uint32_t min_comments, std::uint32_t size_cap, bool keep_above_cap,
              const std::string& out_dir) {
    BaselineConfig cfg;
    cfg.min_comments = min_comments;
    cfg.size_cap = size_cap;
    cfg.exclude_above_cap = !keep_above_cap;

    const std::string text = read_text_file(input);
    BaselineTable table;
    if (format == "events" || format == "per-comment") {
        table = aggregate_members(parse_events_csv(text, format == "per-comment"), cfg);
    } else if (format == "sizes") {
        table = parse_sizes_csv(text, cfg);
    } else {
        throw ValidationError("--format must be events, per-comment, or sizes");
    }

    fs::create_directories(out_dir);
    if (output.empty()) output = (fs::path(out_dir) / "baseline_sizes.csv").string();
    write_text_file(output, baseline_csv(table));

    for (const auto& [community, size] : table.excluded) {
        std::cerr << "excluded " << community << " (size " << size << " above cap "
                  << size_cap << ")\n";
    }
    std::cout << table.communities.size() << " communities written to " << output << "\n";

    nlohmann::json manifest = {{"command", "ingest"},
                               {"input", input},
                               {"format", format},
                               {"min_comments", cfg.min_comments},
                               {"size_cap", cfg.size_cap},
                               {"exclude_above_cap", cfg.exclude_above_cap},
                               {"excluded", nlohmann::json::array()},
                               {"outputs", {output}}};
    for (const auto& [community, size] : table.excluded) {
        manifest["excluded"].push_back({{"community", community}, {"size", size}});
    }
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);
    return 0;
}

SizeDistribution read_sizes_file(const std::string& path) {
    BaselineConfig no_cap;
    no_cap.exclude_above_cap = false;
    return parse_sizes_csv(read_text_file(path), no_cap).sizes;
}

int do_ecdf(const std::string& input, const std::string& series, bool keep_zeros,
            const std::string& out_dir) {
    const EcdfCurve curve = complementary_ecdf(read_sizes_file(input), !keep_zeros);
    fs::create_directories(out_dir);
    const fs::path out_path = fs::path(out_dir) / "ecdf.csv";
    write_text_file(out_path, ecdf_csv(curve, series));

    write_manifest(fs::path(out_dir) / "manifest.json",
                   {{"command", "ecdf"},
                    {"input", input},
                    {"series", series},
                    {"drop_zeros", !keep_zeros},
                    {"outputs", {out_path.string()}}});
    return 0;
}

int do_compare(const std::string& sim_path, const std::string& baseline_path,
               bool render_svg, const std::string& out_dir) {
    const EcdfCurve sim_curve = complementary_ecdf(read_sizes_file(sim_path), true);
    const EcdfCurve base_curve = complementary_ecdf(read_sizes_file(baseline_path), true);

    fs::create_directories(out_dir);
    const fs::path overlay_path = fs::path(out_dir) / "overlay.csv";
    write_text_file(overlay_path, overlay_csv(overlay(sim_curve, base_curve)));
    std::vector<std::string> outputs = {overlay_path.string()};

    if (render_svg) {
        const fs::path svg_path = fs::path(out_dir) / "overlay.svg";
        std::vector<Panel> panels(1);
        panels[0].title = "sim vs baseline";
        panels[0].sim = sim_curve;
        panels[0].baseline = base_curve;
        write_text_file(svg_path, render_grid_svg(panels, 1, "community size eCDF"));
        outputs.push_back(svg_path.string());
    }

    write_manifest(fs::path(out_dir) / "manifest.json",
                   {{"command", "compare"},
                    {"sim", sim_path},
                    {"baseline", baseline_path},
                    {"outputs", outputs}});
    return 0;
}

int do_utility_grid(std::uint32_t s_c_max, std::uint32_t s_f_max, double startup_cost,
                    const std::string& out_dir) {
    std::vector<double> s_c_values, s_f_values;
    for (std::uint32_t v = 1; v <= s_c_max; ++v) s_c_values.push_back(v);
    for (std::uint32_t v = 1; v <= s_f_max; ++v) s_f_values.push_back(v);
    const auto cells = utility_grid(s_c_values, s_f_values, startup_cost);

    fs::create_directories(out_dir);
    const fs::path out_path = fs::path(out_dir) / "utility.csv";
    write_text_file(out_path, utility_csv(cells));
    write_manifest(fs::path(out_dir) / "manifest.json",
                   {{"command", "utility-grid"},
                    {"s_c_max", s_c_max},
                    {"s_f_max", s_f_max},
                    {"startup_cost", startup_cost},
                    {"outputs", {out_path.string()}}});
    return 0;
}

std::string panel_title(const CellResult& cell) {
    std::string title;
    for (const auto& [name, token] : cell.params) {
        if (!title.empty()) title += ", ";
        title += name + "=" + token;
    }
    return title;
}

int do_reproduce(const std::string& figure_id, const std::string& baseline_path,
                 std::optional<std::uint64_t> seed, std::optional<std::uint32_t> replicates,
                 unsigned jobs, const std::string& out_dir) {
    FigureSpec spec = figure_spec(figure_id);
    if (seed) spec.grid.base.seed = *seed;
    if (replicates) spec.grid.replicates = *replicates;

    EcdfCurve base_curve;
    if (!baseline_path.empty()) {
        base_curve = complementary_ecdf(read_sizes_file(baseline_path), true);
    }

    const std::vector<CellResult> cells = sweep(spec.grid, jobs);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    const fs::path sweep_path = dir / (spec.id + "_sweep.csv");
    const fs::path summary_path = dir / (spec.id + "_summary.csv");
    write_text_file(sweep_path, sweep_csv(cells));
    write_text_file(summary_path, summary_csv(cells));
    std::vector<std::string> outputs = {sweep_path.string(), summary_path.string()};

    // Per-cell overlay tables, concatenated long-format. The baseline curve,
    // when given, repeats in every cell the way the published grids repeat it
    // in every panel.
    std::string overlay_out = "cell_id,replicate,series,size,frac_at_least\n";
    std::vector<Panel> panels;
    for (const auto& cell : cells) {
        if (!cell.error.empty()) continue;
        EcdfCurve sim_curve;
        try {
            sim_curve = complementary_ecdf(cell.run.final_sizes, true);
        } catch (const ValidationError&) {
            // all-zero cell: nothing to plot
        }
        std::string prefix;
        append_u64(prefix, cell.cell_id);
        prefix.push_back(',');
        append_u64(prefix, cell.replicate);
        prefix.push_back(',');
        auto emit = [&](const EcdfCurve& curve, const char* series) {
            for (const auto& p : curve) {
                overlay_out += prefix;
                overlay_out += series;
                overlay_out.push_back(',');
                append_u64(overlay_out, p.size);
                overlay_out.push_back(',');
                append_double(overlay_out, p.frac_at_least);
                overlay_out.push_back('\n');
            }
        };
        emit(sim_curve, "sim");
        emit(base_curve, "baseline");
        if (cell.replicate == 0) {
            panels.push_back({panel_title(cell), std::move(sim_curve), base_curve});
        }
    }
    const fs::path overlay_path = dir / (spec.id + "_overlay.csv");
    write_text_file(overlay_path, overlay_out);
    outputs.push_back(overlay_path.string());

    if (!panels.empty()) {
        const fs::path svg_path = dir / (spec.id + ".svg");
        write_text_file(svg_path,
                        render_grid_svg(panels, spec.n_cols, spec.id + ": " + spec.summary));
        outputs.push_back(svg_path.string());
    }

    nlohmann::json manifest = {{"command", "reproduce"},
                               {"figure", spec.id},
                               {"layout", {{"rows", spec.n_rows}, {"cols", spec.n_cols}}},
                               {"base_seed", spec.grid.base.seed.value_or(1)},
                               {"replicates", spec.grid.replicates},
                               {"baseline", baseline_path},
                               {"cells", cells_json(cells)},
                               {"outputs", outputs}};
    write_manifest(dir / (spec.id + "_manifest.json"), manifest);

    return report_cell_errors(cells) == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based community-size simulation toolkit"};
    app.require_subcommand(1);
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

    auto* sim_cmd = app.add_subcommand("simulate", "Run one simulation and write final sizes");
    ModelFlags sim_flags;
    std::string sim_config, sim_out = default_out_dir();
    sim_cmd->add_option("--config", sim_config, "JSON config file (flags override it)");
    sim_flags.attach(sim_cmd);
    sim_cmd->add_option("--out-dir", sim_out, "Output directory [$COMMSIM_OUT_DIR or .]");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter-grid sweep");
    ModelFlags sweep_flags;
    std::string sweep_config, sweep_out = default_out_dir();
    std::vector<std::string> axis_flags;
    std::optional<std::uint32_t> sweep_replicates;
    sweep_cmd->add_option("--config", sweep_config, "JSON sweep config (base/axes/replicates)");
    sweep_flags.attach(sweep_cmd);
    sweep_cmd->add_option("--axis", axis_flags, "Sweep axis as name=v1,v2,... (repeatable)");
    sweep_cmd->add_option("--replicates", sweep_replicates, "Seeds per cell [1]");
    sweep_cmd->add_option("--jobs", jobs, "Parallel workers [cores]");
    sweep_cmd->add_option("--out-dir", sweep_out, "Output directory [$COMMSIM_OUT_DIR or .]");

    auto* ingest_cmd = app.add_subcommand("ingest", "Build baseline sizes from empirical data");
    std::string ingest_input, ingest_output, ingest_format = "events";
    std::string ingest_out = default_out_dir();
    std::uint32_t min_comments = 5, size_cap = 9000;
    bool keep_above_cap = false;
    ingest_cmd->add_option("--input", ingest_input, "Input CSV")->required();
    ingest_cmd->add_option("--output", ingest_output, "Output CSV [<out-dir>/baseline_sizes.csv]");
    ingest_cmd->add_option("--format", ingest_format,
                           "Input format: events (community,user,count), per-comment "
                           "(community,user; one row per comment), or sizes (community,size)");
    ingest_cmd->add_option("--min-comments", min_comments,
                           "Comments needed to count as an active member [5]");
    ingest_cmd->add_option("--size-cap", size_cap, "Largest community kept [9000]");
    ingest_cmd->add_flag("--keep-above-cap", keep_above_cap, "Keep communities above the cap");
    ingest_cmd->add_option("--out-dir", ingest_out, "Output directory [$COMMSIM_OUT_DIR or .]");

    auto* ecdf_cmd = app.add_subcommand("ecdf", "Complementary eCDF of a sizes file");
    std::string ecdf_input, ecdf_series = "sim", ecdf_out = default_out_dir();
    bool keep_zeros = false;
    ecdf_cmd->add_option("--input", ecdf_input, "Sizes CSV (community,size)")->required();
    ecdf_cmd->add_option("--series", ecdf_series, "Series label [sim]");
    ecdf_cmd->add_flag("--keep-zeros", keep_zeros, "Keep zero-size communities");
    ecdf_cmd->add_option("--out-dir", ecdf_out, "Output directory [$COMMSIM_OUT_DIR or .]");

    auto* compare_cmd = app.add_subcommand("compare", "Overlay simulated vs baseline eCDFs");
    std::string cmp_sim, cmp_base, cmp_out = default_out_dir();
    bool cmp_svg = false;
    compare_cmd->add_option("--sim", cmp_sim, "Simulated sizes CSV")->required();
    compare_cmd->add_option("--baseline", cmp_base, "Baseline sizes CSV")->required();
    compare_cmd->add_flag("--svg", cmp_svg, "Also render an SVG overlay");
    compare_cmd->add_option("--out-dir", cmp_out, "Output directory [$COMMSIM_OUT_DIR or .]");

    auto* util_cmd = app.add_subcommand("utility-grid", "Benefit surface over (s_c, s_f)");
    std::uint32_t s_c_max = 100, s_f_max = 100;
    double util_startup = 0.5;
    std::string util_out = default_out_dir();
    util_cmd->add_option("--s-c-max", s_c_max, "Current sizes 1..N [100]");
    util_cmd->add_option("--s-f-max", s_f_max, "Projected sizes 1..N [100]");
    util_cmd->add_option("--startup-cost", util_startup, "Joining cost [0.5]");
    util_cmd->add_option("--out-dir", util_out, "Output directory [$COMMSIM_OUT_DIR or .]");

    auto* repro_cmd = app.add_subcommand("reproduce", "Run a published figure grid");
    std::string fig_id, fig_baseline, fig_out = default_out_dir();
    std::optional<std::uint64_t> fig_seed;
    std::optional<std::uint32_t> fig_replicates;
    repro_cmd
        ->add_option("--figure", fig_id,
                     "One of fig3, fig4, fig5, fig6, fig7, figA1, figB1, figB2")
        ->required();
    repro_cmd->add_option("--baseline", fig_baseline, "Baseline sizes CSV to overlay");
    repro_cmd->add_option("--seed", fig_seed, "Base seed [1]");
    repro_cmd->add_option("--replicates", fig_replicates, "Seeds per cell [1]");
    repro_cmd->add_option("--jobs", jobs, "Parallel workers [cores]");
    repro_cmd->add_option("--out-dir", fig_out, "Output directory [$COMMSIM_OUT_DIR or .]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim_cmd->parsed()) return do_simulate(sim_flags, sim_config, sim_out);
        if (sweep_cmd->parsed()) {
            return do_sweep(sweep_flags, sweep_config, axis_flags, sweep_replicates, jobs,
                            sweep_out);
        }
        if (ingest_cmd->parsed()) {
            return do_ingest(ingest_input, ingest_output, ingest_format, min_comments,
                             size_cap, keep_above_cap, ingest_out);
        }
        if (ecdf_cmd->parsed()) return do_ecdf(ecdf_input, ecdf_series, keep_zeros, ecdf_out);
        if (compare_cmd->parsed()) return do_compare(cmp_sim, cmp_base, cmp_svg, cmp_out);
        if (util_cmd->parsed()) return do_utility_grid(s_c_max, s_f_max, util_startup, util_out);
        if (repro_cmd->parsed()) {
            return do_reproduce(fig_id, fig_baseline, fig_seed, fig_replicates, jobs, fig_out);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
