#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbsens/dataset.hpp"
#include "qbsens/error.hpp"
#include "qbsens/perturb.hpp"
#include "qbsens/ratings.hpp"

namespace qbsens {

struct TeamRating {
    std::string team;
    double rating = 0.0;
};

struct RankedTeam {
    std::string team;
    double rating = 0.0;
    int rank = 0;  // 1 = best
};

/// Per-season, per-system ordering of teams. Ranks are 1..N with no gaps;
/// exact rating ties are broken by ascending team code.
struct RankTable {
    int season = 0;
    RatingSystem system;
    std::vector<RankedTeam> entries;  // sorted by rank

    int rank_of(std::string_view team) const {
        for (const auto& e : entries)
            if (e.team == team) return e.rank;
        throw InputError("rank_of: team '" + std::string(team) + "' not in table");
    }
};

/// Orders (team, rating) pairs by descending rating, ties by ascending team
/// code, and assigns ranks 1..N.
inline std::vector<RankedTeam> rank_ratings(std::vector<TeamRating> ratings) {
    std::sort(ratings.begin(), ratings.end(), [](const TeamRating& a, const TeamRating& b) {
        if (a.rating != b.rating) return a.rating > b.rating;
        return a.team < b.team;
    });
    std::vector<RankedTeam> out;
    out.reserve(ratings.size());
    int rank = 1;
    for (auto& r : ratings) out.push_back({std::move(r.team), r.rating, rank++});
    return out;
}

/// Rank the candidate would take among `peers` (which must not contain it):
/// one plus the number of peers strictly better under the table ordering.
inline int rank_among(std::span<const TeamRating> peers, std::string_view team, double rating) {
    int rank = 1;
    for (const auto& p : peers) {
        if (p.rating > rating || (p.rating == rating && p.team < team)) ++rank;
    }
    return rank;
}

namespace detail {

inline std::vector<TeamRating> rate_season(std::span<const StatLine> lines,
                                           const RatingSystem& system) {
    std::vector<TeamRating> ratings;
    ratings.reserve(lines.size());
    for (const StatLine& l : lines) ratings.push_back({l.team, rate(l, system)});
    return ratings;
}

inline void check_one_season(std::span<const StatLine> lines) {
    if (lines.empty()) throw InputError("rank_table: no lines");
    for (const StatLine& l : lines)
        if (l.season != lines.front().season)
            throw InputError("rank_table: mixed seasons " + std::to_string(lines.front().season) +
                             " and " + std::to_string(l.season));
}

/// A line that only became degenerate through the perturbation (e.g. SK+5
/// pushing att - sk to zero under Burke) counts as an infeasible scenario,
/// not a degenerate input.
inline double rate_perturbed(const StatLine& perturbed, const RatingSystem& system,
                             const Scenario& scenario) {
    try {
        return rate(perturbed, system);
    } catch (const DegenerateLineError& e) {
        throw InfeasibleScenarioError("team " + perturbed.team + ", " + label(scenario) +
                                      ": perturbed line is degenerate: " + e.what());
    }
}

}  // namespace detail

inline RankTable rank_table(std::span<const StatLine> lines, const RatingSystem& system) {
    detail::check_one_season(lines);
    RankTable table;
    table.season = lines.front().season;
    table.system = system;
    table.entries = rank_ratings(detail::rate_season(lines, system));
    return table;
}

/// Rank the named team takes when only its line is perturbed and everyone
/// else stays at base stats.
inline int perturbed_rank(std::span<const StatLine> season_lines, std::string_view team,
                          const Scenario& scenario, const RatingSystem& system,
                          double sack_fallback) {
    detail::check_one_season(season_lines);
    const StatLine* target = nullptr;
    std::vector<TeamRating> peers;
    peers.reserve(season_lines.size() - 1);
    for (const StatLine& l : season_lines) {
        if (l.team == team) {
            target = &l;
        } else {
            peers.push_back({l.team, rate(l, system)});
        }
    }
    if (!target)
        throw InputError("perturbed_rank: team '" + std::string(team) + "' not in season " +
                         std::to_string(season_lines.front().season));
    const StatLine perturbed = apply_scenario(*target, scenario, sack_fallback);
    return rank_among(peers, team, detail::rate_perturbed(perturbed, system, scenario));
}

/// |perturbed rank - base rank| of the named team.
inline int perturbed_rank_change(std::span<const StatLine> season_lines, std::string_view team,
                                 const Scenario& scenario, const RatingSystem& system,
                                 double sack_fallback) {
    detail::check_one_season(season_lines);
    const StatLine* target = nullptr;
    std::vector<TeamRating> peers;
    peers.reserve(season_lines.size() - 1);
    for (const StatLine& l : season_lines) {
        if (l.team == team) {
            target = &l;
        } else {
            peers.push_back({l.team, rate(l, system)});
        }
    }
    if (!target)
        throw InputError("perturbed_rank_change: team '" + std::string(team) + "' not in season " +
                         std::to_string(season_lines.front().season));
    const int base_rank = rank_among(peers, team, rate(*target, system));
    const StatLine perturbed = apply_scenario(*target, scenario, sack_fallback);
    const int new_rank = rank_among(peers, team, detail::rate_perturbed(perturbed, system, scenario));
    return new_rank > base_rank ? new_rank - base_rank : base_rank - new_rank;
}

/// A (season, team) cell skipped because its perturbation was infeasible.
struct TeamExclusion {
    int season = 0;
    std::string team;
    Scenario scenario;
    std::string reason;

    friend bool operator==(const TeamExclusion&, const TeamExclusion&) = default;
};

struct YearlyRankChanges {
    int season = 0;
    int sum = 0;
    std::vector<TeamExclusion> exclusions;
};

/// Sum of perturbed_rank_change over every team in the season. Teams whose
/// perturbation is infeasible are excluded from the sum and flagged.
inline YearlyRankChanges yearly_rank_change_sum(const Dataset& ds, int season,
                                                const Scenario& scenario,
                                                const RatingSystem& system,
                                                double sack_fallback) {
    auto lines = ds.season_lines(season);
    if (lines.empty()) throw InputError("season " + std::to_string(season) + " not in dataset");
    YearlyRankChanges result;
    result.season = season;
    for (const StatLine& l : lines) {
        try {
            result.sum += perturbed_rank_change(lines, l.team, scenario, system, sack_fallback);
        } catch (const InfeasibleScenarioError& e) {
            result.exclusions.push_back({season, l.team, scenario, e.what()});
        }
    }
    return result;
}

/// Mean and sample (n-1) standard deviation.
inline std::pair<double, double> sample_mean_std(std::span<const double> values) {
    if (values.size() < 2)
        throw InsufficientDataError("sample_mean_std: needs at least 2 values");
    double total = 0.0;
    for (double v : values) total += v;
    const double mean = total / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / static_cast<double>(values.size() - 1))};
}

/// Cross-year aggregation for one (scenario, system): mean/std of the yearly
/// rank-change sums plus the largest single-team change, league-wide and
/// among each season's top-8 teams.
struct SensitivitySummary {
    Scenario scenario;
    RatingSystem system;
    std::map<int, int> yearly_sums;  // season -> sum of rank changes
    double mean = 0.0;
    double stdev = 0.0;  // sample, n-1
    int max_all = 0;     // max per-team rank change over every (season, team)
    int max_top8 = 0;    // same, restricted to teams base-ranked 1..8
    std::vector<TeamExclusion> exclusions;
};

inline SensitivitySummary aggregate(const Dataset& ds, const Scenario& scenario,
                                    const RatingSystem& system, double sack_fallback) {
    if (ds.seasons().size() < 2)
        throw InsufficientDataError("aggregate: needs at least 2 seasons, have " +
                                    std::to_string(ds.seasons().size()));
    SensitivitySummary summary;
    summary.scenario = scenario;
    summary.system = system;
    for (int season : ds.seasons()) {
        auto lines = ds.season_lines(season);
        const RankTable base = rank_table(lines, system);
        int sum = 0;
        for (const StatLine& l : lines) {
            int change = 0;
            try {
                change = perturbed_rank_change(lines, l.team, scenario, system, sack_fallback);
            } catch (const InfeasibleScenarioError& e) {
                summary.exclusions.push_back({season, l.team, scenario, e.what()});
                continue;
            }
            sum += change;
            summary.max_all = std::max(summary.max_all, change);
            if (base.rank_of(l.team) <= 8) summary.max_top8 = std::max(summary.max_top8, change);
        }
        summary.yearly_sums.emplace(season, sum);
    }
    std::vector<double> sums;
    sums.reserve(summary.yearly_sums.size());
    for (const auto& [season, sum] : summary.yearly_sums) sums.push_back(sum);
    std::tie(summary.mean, summary.stdev) = sample_mean_std(sums);
    return summary;
}

}  // namespace qbsens
