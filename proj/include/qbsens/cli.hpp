#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qbsens/dataset.hpp"
#include "qbsens/error.hpp"
#include "qbsens/fixture.hpp"
#include "qbsens/report.hpp"

namespace qbsens {

/// Exit codes: 0 success, 1 data/validation error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

namespace cli_detail {

inline std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(text.substr(pos));
            break;
        }
        out.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

inline std::vector<RatingSystem> parse_systems(const std::string& spec, BurkeIntSign burke_sign) {
    std::vector<RatingSystem> out;
    for (const auto& token : split_commas(spec)) {
        std::string t;
        for (char c : token) t += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
        if (t == "trad" || t == "traditional") {
            out.push_back(kTraditional);
        } else if (t == "burke") {
            out.push_back({RatingKind::Burke, burke_sign});
        } else if (t == "wow" || t == "wages" || t == "wagesofwins") {
            out.push_back(kWagesOfWins);
        } else {
            throw UsageError("unknown rating system '" + token + "' (use trad, burke, wow)");
        }
    }
    if (out.empty()) throw UsageError("no rating systems selected");
    return out;
}

inline std::vector<Scenario> parse_scenarios(const std::string& spec) {
    std::vector<Scenario> out;
    for (const auto& token : split_commas(spec)) {
        if (token.empty()) throw UsageError("empty scenario in list '" + spec + "'");
        try {
            out.push_back(parse_scenario(token));
        } catch (const InputError& e) {
            throw UsageError(e.what());
        }
    }
    if (out.empty()) throw UsageError("no scenarios selected");
    return out;
}

/// "2005-2010,2012" -> 2005..2010, 2012.
inline std::vector<int> parse_seasons(const std::string& spec) {
    std::vector<int> out;
    for (const auto& token : split_commas(spec)) {
        std::size_t dash = token.find('-', 1);  // allow (unlikely) negative years
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoi(token));
            } else {
                int lo = std::stoi(token.substr(0, dash));
                int hi = std::stoi(token.substr(dash + 1));
                if (hi < lo) throw UsageError("season range '" + token + "' is reversed");
                for (int y = lo; y <= hi; ++y) out.push_back(y);
            }
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("bad season '" + token + "'");
        }
    }
    if (out.empty()) throw UsageError("no seasons selected");
    return out;
}

inline Dataset load_dataset(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open data file '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return parse_dataset(buf.str());
}

}  // namespace cli_detail

/// Full command-line surface; `main` is a thin wrapper around this.
/// args excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Team passing-season rating and rank-sensitivity toolkit"};
    app.name("qbsens");

    std::string seed_fixture_path;
    app.add_option("--seed-fixture", seed_fixture_path,
                   "Write the bundled synthetic dataset to this path and exit "
                   "(unless a subcommand is also given)");

    struct CommonFlags {
        std::string data;
        std::string systems = "trad,burke,wow";
        std::string burke_sign = "corrected";
        std::string format = "csv";
        std::string out_dir = ".";
    };

    auto add_common = [](CLI::App* cmd, CommonFlags& flags, bool with_out) {
        cmd->add_option("--data", flags.data, "Input CSV (schema: " + std::string(kDatasetHeader) + ")")
            ->required();
        cmd->add_option("--systems", flags.systems, "Comma list of trad, burke, wow");
        cmd->add_option("--burke-sign", flags.burke_sign,
                        "Burke interception term sign: corrected | as-written")
            ->check(CLI::IsMember({"corrected", "as-written"}));
        cmd->add_option("--format", flags.format, "Output format: csv | markdown")
            ->check(CLI::IsMember({"csv", "markdown"}));
        if (with_out) cmd->add_option("--out", flags.out_dir, "Output directory");
    };

    // rate
    auto* rate_cmd = app.add_subcommand("rate", "Print a season's rank table");
    CommonFlags rate_flags;
    int rate_season = 0;
    add_common(rate_cmd, rate_flags, false);
    rate_cmd->add_option("--season", rate_season, "Season to rank")->required();

    // sensitivity
    auto* sens_cmd = app.add_subcommand(
        "sensitivity", "Emit summary tables and long-format rank-change data");
    CommonFlags sens_flags;
    std::string sens_scenarios;
    add_common(sens_cmd, sens_flags, true);
    sens_cmd->add_option("--scenarios", sens_scenarios,
                         "Comma list of scenario labels (default: the standard 20-element sweep)");

    // case-study
    auto* case_cmd = app.add_subcommand("case-study", "Rank tables under explicit scenarios");
    CommonFlags case_flags;
    std::string case_seasons, case_teams, case_scenarios;
    int case_top_k = 9, case_elite = 6;
    add_common(case_cmd, case_flags, true);
    case_cmd->add_option("--seasons", case_seasons, "Seasons, e.g. 2009 or 2005-2010,2012")
        ->required();
    case_cmd->add_option("--teams", case_teams,
                         "Comma list of team codes (default: top K of the first system's table)");
    case_cmd->add_option("--top-k", case_top_k, "Teams to select when --teams is omitted");
    case_cmd->add_option("--elite-threshold", case_elite, "Ranks above this are flagged non-elite");
    case_cmd->add_option("--scenarios", case_scenarios, "Scenario labels (default INT-3,INT+3)");

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Schema-check a data file");
    CommonFlags validate_flags;
    validate_cmd->add_option("--data", validate_flags.data, "Input CSV to check")->required();

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    }

    try {
        if (!seed_fixture_path.empty()) {
            detail::write_file(seed_fixture_path, kSyntheticFixture);
            out << "wrote " << seed_fixture_path << "\n";
            if (app.get_subcommands().empty()) return kExitOk;
        }
        if (app.get_subcommands().empty()) {
            err << app.help();
            return kExitUsageError;
        }

        auto burke_sign = [](const CommonFlags& f) {
            return f.burke_sign == "as-written" ? BurkeIntSign::AsWritten : BurkeIntSign::Corrected;
        };
        auto format_of = [](const CommonFlags& f) {
            return f.format == "markdown" ? ReportFormat::Markdown : ReportFormat::Csv;
        };

        if (rate_cmd->parsed()) {
            const Dataset ds = cli_detail::load_dataset(rate_flags.data);
            auto systems = cli_detail::parse_systems(rate_flags.systems, burke_sign(rate_flags));
            auto lines = ds.season_lines(rate_season);
            if (lines.empty())
                throw InputError("season " + std::to_string(rate_season) + " not in dataset");
            std::vector<RankTable> tables;
            for (const auto& sys : systems) tables.push_back(rank_table(lines, sys));
            out << (format_of(rate_flags) == ReportFormat::Csv
                        ? render_rank_tables_csv(tables)
                        : render_rank_tables_markdown(tables));
            return kExitOk;
        }

        if (sens_cmd->parsed()) {
            const Dataset ds = cli_detail::load_dataset(sens_flags.data);
            SensitivityOptions options;
            options.systems = cli_detail::parse_systems(sens_flags.systems, burke_sign(sens_flags));
            if (sens_cmd->count("--scenarios") > 0)
                options.scenarios = cli_detail::parse_scenarios(sens_scenarios);
            const auto report = build_sensitivity_report(ds, options);
            const auto written =
                write_sensitivity_report(report, sens_flags.out_dir, format_of(sens_flags));
            for (const auto& path : written) out << "wrote " << path.string() << "\n";
            if (!report.warnings.empty())
                err << report.warnings.size()
                    << " infeasible perturbation(s) excluded; see the warnings file\n";
            return kExitOk;
        }

        if (case_cmd->parsed()) {
            const Dataset ds = cli_detail::load_dataset(case_flags.data);
            auto systems = cli_detail::parse_systems(case_flags.systems, burke_sign(case_flags));
            CaseStudySpec spec;
            spec.seasons = cli_detail::parse_seasons(case_seasons);
            if (case_cmd->count("--teams") > 0) spec.teams = cli_detail::split_commas(case_teams);
            spec.top_k = case_top_k;
            spec.elite_threshold = case_elite;
            if (case_cmd->count("--scenarios") > 0)
                spec.scenarios = cli_detail::parse_scenarios(case_scenarios);
            const auto report = run_case_study(ds, spec, systems);
            const bool csv = format_of(case_flags) == ReportFormat::Csv;
            const auto path =
                std::filesystem::path(case_flags.out_dir) / (csv ? "case_study.csv" : "case_study.md");
            detail::write_file(path, csv ? render_case_study_csv(report)
                                         : render_case_study_markdown(report));
            out << "wrote " << path.string() << "\n";
            if (!report.warnings.empty())
                err << report.warnings.size() << " infeasible perturbation(s) marked NA\n";
            return kExitOk;
        }

        if (validate_cmd->parsed()) {
            const Dataset ds = cli_detail::load_dataset(validate_flags.data);
            out << "ok: " << ds.size() << " line(s), " << ds.seasons().size() << " season(s)\n";
            return kExitOk;
        }

        err << app.help();
        return kExitUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
}

}  // namespace qbsens
