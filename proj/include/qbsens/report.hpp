#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "qbsens/dataset.hpp"
#include "qbsens/error.hpp"
#include "qbsens/inference.hpp"
#include "qbsens/perturb.hpp"
#include "qbsens/ratings.hpp"
#include "qbsens/sensitivity.hpp"

namespace qbsens {

enum class ReportFormat { Csv, Markdown };

namespace detail {

/// Fixed-point decimal, locale-independent ("17.9", "0.0500", "inf").
inline std::string format_fixed(double v, int precision) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    return std::string(buf, ptr);
}

struct MarkdownTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const {
        std::string out = "|";
        for (const auto& h : header) out += " " + h + " |";
        out += "\n|";
        for (const auto& h : header) out += std::string(h.size() + 2, '-') + "|";
        out += "\n";
        for (const auto& row : rows) {
            out += "|";
            for (const auto& cell : row) out += " " + cell + " |";
            out += "\n";
        }
        return out;
    }
};

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open " + path.string() + " for writing");
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!file) throw Error("failed writing " + path.string());
}

}  // namespace detail

struct SensitivityOptions {
    std::vector<RatingSystem> systems{kTraditional, kBurke, kWagesOfWins};
    std::vector<Scenario> scenarios = standard_scenarios();
};

/// One (season, team, scenario, system) cell of the long-format rank-change
/// data behind the per-team figures.
struct RankChangeCell {
    int season = 0;
    std::string team;
    Scenario scenario;
    RatingSystem system;
    std::optional<int> change;  // nullopt = infeasible for this team
};

struct SensitivityReport {
    std::vector<RatingSystem> systems;
    std::vector<Scenario> table_scenarios;          // rows of tables 1-3
    std::vector<Scenario> all_scenarios;            // rows of the long-format file
    std::vector<SensitivitySummary> summaries;      // table_scenarios x systems
    std::vector<SystemComparison> comparisons;      // table_scenarios x system pairs
    std::vector<RankChangeCell> cells;              // all_scenarios, long format
    std::vector<TeamExclusion> warnings;            // deduped (season, team, scenario)
};

/// Computes every number behind the three summary tables and the long-format
/// file. The renderers below only format; they add no arithmetic.
///
/// When the requested scenario list is exactly the standard 20-element sweep,
/// the summary tables display the conventional 12-row subset (magnitudes
/// 1, 3, 5); the long-format data always covers the full request.
inline SensitivityReport build_sensitivity_report(const Dataset& ds,
                                                  const SensitivityOptions& options) {
    if (options.systems.empty()) throw InputError("sensitivity report: no rating systems selected");
    if (options.scenarios.empty()) throw InputError("sensitivity report: no scenarios selected");
    if (ds.seasons().size() < 2)
        throw InsufficientDataError("sensitivity report: needs at least 2 seasons");

    const double fallback = average_sack_yards(ds);
    SensitivityReport report;
    report.systems = options.systems;
    report.all_scenarios = options.scenarios;
    report.table_scenarios =
        options.scenarios == standard_scenarios() ? displayed_scenarios() : options.scenarios;

    for (const Scenario& sc : report.table_scenarios) {
        for (const RatingSystem& sys : report.systems) {
            report.summaries.push_back(aggregate(ds, sc, sys, fallback));
        }
        for (std::size_t i = 0; i < report.systems.size(); ++i) {
            for (std::size_t j = i + 1; j < report.systems.size(); ++j) {
                report.comparisons.push_back(
                    compare_systems(ds, sc, report.systems[i], report.systems[j], fallback));
            }
        }
    }

    auto warn_once = [&report](int season, const std::string& team, const Scenario& sc,
                               const std::string& reason) {
        for (const auto& w : report.warnings)
            if (w.season == season && w.team == team && w.scenario == sc) return;
        report.warnings.push_back({season, team, sc, reason});
    };
    for (int season : ds.seasons()) {
        auto lines = ds.season_lines(season);
        for (const StatLine& line : lines) {
            for (const Scenario& sc : report.all_scenarios) {
                for (const RatingSystem& sys : report.systems) {
                    RankChangeCell cell{season, line.team, sc, sys, std::nullopt};
                    try {
                        cell.change = perturbed_rank_change(lines, line.team, sc, sys, fallback);
                    } catch (const InfeasibleScenarioError& e) {
                        warn_once(season, line.team, sc, e.what());
                    }
                    report.cells.push_back(std::move(cell));
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// CSV renderers (fixed column order, UTF-8, LF, header row)
// ---------------------------------------------------------------------------

inline std::string render_table1_csv(const SensitivityReport& report) {
    std::string out = "scenario,system,mean,std\n";
    for (const auto& s : report.summaries) {
        out += label(s.scenario) + "," + display_name(s.system) + "," +
               detail::format_fixed(s.mean, 1) + "," + detail::format_fixed(s.stdev, 1) + "\n";
    }
    return out;
}

inline std::string render_table2_csv(const SensitivityReport& report) {
    std::string out = "scenario,system,max_all,max_top8\n";
    for (const auto& s : report.summaries) {
        out += label(s.scenario) + "," + display_name(s.system) + "," +
               std::to_string(s.max_all) + "," + std::to_string(s.max_top8) + "\n";
    }
    return out;
}

inline std::string render_table3_csv(const SensitivityReport& report) {
    std::string out = "scenario,pair,verdict,t_stat,p_value\n";
    for (const auto& c : report.comparisons) {
        out += label(c.scenario) + "," + display_name(c.system_a) + " vs " +
               display_name(c.system_b) + "," + c.verdict + "," +
               detail::format_fixed(c.test.t_stat, 4) + "," +
               detail::format_fixed(c.test.p_one_sided, 4) + "\n";
    }
    return out;
}

inline std::string render_rank_changes_csv(const SensitivityReport& report) {
    std::string out = "season,team,scenario,system,rank_change\n";
    for (const auto& cell : report.cells) {
        out += std::to_string(cell.season) + "," + cell.team + "," + label(cell.scenario) + "," +
               display_name(cell.system) + "," +
               (cell.change ? std::to_string(*cell.change) : std::string("NA")) + "\n";
    }
    return out;
}

inline std::string render_warnings_csv(const SensitivityReport& report) {
    std::string out = "season,team,scenario,reason\n";
    for (const auto& w : report.warnings) {
        std::string reason = w.reason;
        for (char& c : reason)
            if (c == ',' || c == '\n' || c == '\r') c = ';';
        out += std::to_string(w.season) + "," + w.team + "," + label(w.scenario) + "," + reason + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Markdown renderers (wide, human-shaped mirrors of the CSV data)
// ---------------------------------------------------------------------------

namespace detail {

inline const SensitivitySummary& summary_at(const SensitivityReport& report, std::size_t scenario_idx,
                                            std::size_t system_idx) {
    return report.summaries[scenario_idx * report.systems.size() + system_idx];
}

}  // namespace detail

inline std::string render_table1_markdown(const SensitivityReport& report) {
    detail::MarkdownTable t;
    t.header.push_back("Sensitivity");
    for (const auto& sys : report.systems) t.header.push_back(display_name(sys));
    for (std::size_t i = 0; i < report.table_scenarios.size(); ++i) {
        std::vector<std::string> row{label(report.table_scenarios[i])};
        for (std::size_t j = 0; j < report.systems.size(); ++j) {
            const auto& s = detail::summary_at(report, i, j);
            row.push_back(detail::format_fixed(s.mean, 1) + " (" +
                          detail::format_fixed(s.stdev, 1) + ")");
        }
        t.rows.push_back(std::move(row));
    }
    return t.render();
}

inline std::string render_table2_markdown(const SensitivityReport& report) {
    detail::MarkdownTable t;
    t.header.push_back("Sensitivity");
    for (const auto& sys : report.systems) t.header.push_back(display_name(sys) + " (all)");
    for (const auto& sys : report.systems) t.header.push_back(display_name(sys) + " (top 8)");
    for (std::size_t i = 0; i < report.table_scenarios.size(); ++i) {
        std::vector<std::string> row{label(report.table_scenarios[i])};
        for (std::size_t j = 0; j < report.systems.size(); ++j)
            row.push_back(std::to_string(detail::summary_at(report, i, j).max_all));
        for (std::size_t j = 0; j < report.systems.size(); ++j)
            row.push_back(std::to_string(detail::summary_at(report, i, j).max_top8));
        t.rows.push_back(std::move(row));
    }
    return t.render();
}

inline std::string render_table3_markdown(const SensitivityReport& report) {
    const std::size_t pairs =
        report.systems.size() * (report.systems.size() - 1) / 2;
    detail::MarkdownTable t;
    t.header.push_back("Sensitivity");
    for (std::size_t i = 0; i < report.systems.size(); ++i)
        for (std::size_t j = i + 1; j < report.systems.size(); ++j)
            t.header.push_back(display_name(report.systems[i]) + " vs. " +
                               display_name(report.systems[j]));
    for (std::size_t i = 0; i < report.table_scenarios.size(); ++i) {
        std::vector<std::string> row{label(report.table_scenarios[i])};
        for (std::size_t p = 0; p < pairs; ++p) {
            const auto& c = report.comparisons[i * pairs + p];
            row.push_back(c.verdict == "none" ? "-" : c.verdict);
        }
        t.rows.push_back(std::move(row));
    }
    return t.render();
}

inline std::string render_rank_changes_markdown(const SensitivityReport& report) {
    detail::MarkdownTable t;
    t.header = {"Season", "Team", "Scenario", "System", "Rank change"};
    for (const auto& cell : report.cells) {
        t.rows.push_back({std::to_string(cell.season), cell.team, label(cell.scenario),
                          display_name(cell.system),
                          cell.change ? std::to_string(*cell.change) : std::string("NA")});
    }
    return t.render();
}

inline std::string render_warnings_markdown(const SensitivityReport& report) {
    detail::MarkdownTable t;
    t.header = {"Season", "Team", "Scenario", "Reason"};
    for (const auto& w : report.warnings) {
        std::string reason = w.reason;
        for (char& c : reason)
            if (c == '|' || c == '\n' || c == '\r') c = ';';
        t.rows.push_back({std::to_string(w.season), w.team, label(w.scenario), reason});
    }
    return t.render();
}

/// Writes table1/table2/table3/rankchanges/warnings files into out_dir.
/// Byte-deterministic for a given report.
inline std::vector<std::filesystem::path> write_sensitivity_report(
    const SensitivityReport& report, const std::filesystem::path& out_dir, ReportFormat format) {
    const bool csv = format == ReportFormat::Csv;
    const std::string ext = csv ? ".csv" : ".md";
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& stem, const std::string& content) {
        auto path = out_dir / (stem + ext);
        detail::write_file(path, content);
        written.push_back(path);
    };
    emit("table1", csv ? render_table1_csv(report) : render_table1_markdown(report));
    emit("table2", csv ? render_table2_csv(report) : render_table2_markdown(report));
    emit("table3", csv ? render_table3_csv(report) : render_table3_markdown(report));
    emit("rankchanges", csv ? render_rank_changes_csv(report) : render_rank_changes_markdown(report));
    emit("warnings", csv ? render_warnings_csv(report) : render_warnings_markdown(report));
    return written;
}

// ---------------------------------------------------------------------------
// Case study (rank tables under explicit scenarios, elite annotation)
// ---------------------------------------------------------------------------

struct CaseStudySpec {
    std::vector<int> seasons;
    std::vector<std::string> teams;  // empty = top_k of the first system's base table, per season
    int top_k = 9;
    std::vector<Scenario> scenarios{{ScenarioKind::InterceptionDelta, -3},
                                    {ScenarioKind::InterceptionDelta, 3}};
    int elite_threshold = 6;  // ranks above this are annotated as non-elite
};

struct CaseStudyCell {
    int season = 0;
    std::string team;
    RatingSystem system;
    std::string scenario_label;  // "Base" or a scenario label
    std::optional<int> rank;     // nullopt = infeasible
};

struct CaseStudyReport {
    std::vector<RatingSystem> systems;
    int elite_threshold = 6;
    std::vector<std::string> scenario_labels;  // "Base" first, then the spec's scenarios
    std::vector<CaseStudyCell> cells;
    std::vector<TeamExclusion> warnings;
};

/// Base rank plus the rank under each scenario, per (season, team, system).
/// Perturbed ranks are computed one team at a time against base peers,
/// identical to perturbed_rank_change's ranking rule.
inline CaseStudyReport run_case_study(const Dataset& ds, const CaseStudySpec& spec,
                                      const std::vector<RatingSystem>& systems) {
    if (systems.empty()) throw InputError("case study: no rating systems selected");
    if (spec.seasons.empty()) throw InputError("case study: no seasons selected");
    if (spec.top_k < 1) throw InputError("case study: top_k must be >= 1");
    if (spec.elite_threshold < 1) throw InputError("case study: elite_threshold must be >= 1");
    if (spec.scenarios.empty()) throw InputError("case study: no scenarios selected");

    const double fallback = average_sack_yards(ds);
    CaseStudyReport report;
    report.systems = systems;
    report.elite_threshold = spec.elite_threshold;
    report.scenario_labels.push_back("Base");
    for (const Scenario& sc : spec.scenarios) report.scenario_labels.push_back(label(sc));

    for (int season : spec.seasons) {
        auto lines = ds.season_lines(season);
        if (lines.empty())
            throw InputError("case study: season " + std::to_string(season) + " not in dataset");

        std::vector<std::string> teams = spec.teams;
        if (teams.empty()) {
            // top_k by the first requested system's base ranking
            const RankTable base = rank_table(lines, systems.front());
            const int k = std::min<int>(spec.top_k, static_cast<int>(base.entries.size()));
            for (int i = 0; i < k; ++i) teams.push_back(base.entries[i].team);
        } else {
            for (const auto& team : teams)
                if (!ds.find(season, team))
                    throw InputError("case study: team '" + team + "' not in season " +
                                     std::to_string(season));
        }

        std::vector<RankTable> base_tables;
        base_tables.reserve(systems.size());
        for (const RatingSystem& sys : systems) base_tables.push_back(rank_table(lines, sys));

        for (const auto& team : teams) {
            for (std::size_t s = 0; s < systems.size(); ++s) {
                const RatingSystem& sys = systems[s];
                report.cells.push_back({season, team, sys, "Base", base_tables[s].rank_of(team)});
                for (const Scenario& sc : spec.scenarios) {
                    CaseStudyCell cell{season, team, sys, label(sc), std::nullopt};
                    try {
                        cell.rank = perturbed_rank(lines, team, sc, sys, fallback);
                    } catch (const InfeasibleScenarioError& e) {
                        bool seen = false;
                        for (const auto& w : report.warnings)
                            if (w.season == season && w.team == team && w.scenario == sc) seen = true;
                        if (!seen) report.warnings.push_back({season, team, sc, e.what()});
                    }
                    report.cells.push_back(std::move(cell));
                }
            }
        }
    }
    return report;
}

inline std::string render_case_study_csv(const CaseStudyReport& report) {
    std::string out = "season,team,system,scenario_label,rank,elite_flag\n";
    for (const auto& cell : report.cells) {
        const bool non_elite = cell.rank && *cell.rank > report.elite_threshold;
        out += std::to_string(cell.season) + "," + cell.team + "," + display_name(cell.system) +
               "," + cell.scenario_label + "," +
               (cell.rank ? std::to_string(*cell.rank) : std::string("NA")) + "," +
               (non_elite ? "*" : "") + "\n";
    }
    return out;
}

inline std::string render_case_study_markdown(const CaseStudyReport& report) {
    detail::MarkdownTable t;
    t.header = {"Season", "Team"};
    for (const auto& sys : report.systems)
        for (const auto& lbl : report.scenario_labels)
            t.header.push_back(display_name(sys) + " " + lbl);

    const std::size_t cells_per_row = report.systems.size() * report.scenario_labels.size();
    for (std::size_t i = 0; i < report.cells.size(); i += cells_per_row) {
        std::vector<std::string> row{std::to_string(report.cells[i].season),
                                     report.cells[i].team};
        for (std::size_t j = 0; j < cells_per_row; ++j) {
            const auto& cell = report.cells[i + j];
            if (!cell.rank) {
                row.push_back("NA");
            } else {
                row.push_back(std::to_string(*cell.rank) +
                              (*cell.rank > report.elite_threshold ? "*" : ""));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t.render();
}

// ---------------------------------------------------------------------------
// Season rank table (the `rate` verb)
// ---------------------------------------------------------------------------

inline std::string render_rank_tables_csv(const std::vector<RankTable>& tables) {
    std::string out = "season,system,team,rating,rank\n";
    for (const auto& table : tables) {
        for (const auto& e : table.entries) {
            out += std::to_string(table.season) + "," + display_name(table.system) + "," + e.team +
                   "," + detail::format_fixed(e.rating, 1) + "," + std::to_string(e.rank) + "\n";
        }
    }
    return out;
}

inline std::string render_rank_tables_markdown(const std::vector<RankTable>& tables) {
    detail::MarkdownTable t;
    t.header = {"Season", "System", "Team", "Rating", "Rank"};
    for (const auto& table : tables) {
        for (const auto& e : table.entries) {
            t.rows.push_back({std::to_string(table.season), display_name(table.system), e.team,
                              detail::format_fixed(e.rating, 1), std::to_string(e.rank)});
        }
    }
    return t.render();
}

}  // namespace qbsens
