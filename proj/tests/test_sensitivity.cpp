#include <catch2/catch.hpp>

#include <vector>

#include "qbsens/fixture.hpp"
#include "qbsens/sensitivity.hpp"
#include "test_support.hpp"

using namespace qbsens;

namespace {

StatLine wow_line(std::string team, int att, int comp, double yds) {
    StatLine line;
    line.team = std::move(team);
    line.season = 2009;
    line.att = att;
    line.comp = comp;
    line.yds = yds;
    line.td = 5;
    line.ints = 0;
    line.sk = 0;
    line.skyd = 0;
    return line;
}

Dataset fixture() { return parse_dataset(std::string(kSyntheticFixture)); }

}  // namespace

TEST_CASE("rank_table orders by descending rating") {
    // wow ratings: A = 10, B = 8, C = 9
    std::vector<StatLine> lines{wow_line("A", 100, 50, 310), wow_line("B", 100, 50, 308),
                                wow_line("C", 100, 50, 309)};
    const auto table = rank_table(lines, kWagesOfWins);
    REQUIRE(table.entries.size() == 3);
    CHECK(table.entries[0].team == "A");
    CHECK(table.entries[1].team == "C");
    CHECK(table.entries[2].team == "B");
    CHECK(table.rank_of("A") == 1);
    CHECK(table.rank_of("C") == 2);
    CHECK(table.rank_of("B") == 3);
    CHECK_THROWS_AS(table.rank_of("Z"), InputError);
}

TEST_CASE("exact rating ties break by ascending team code") {
    std::vector<StatLine> lines{wow_line("NYG", 100, 50, 310), wow_line("DAL", 100, 50, 310)};
    const auto table = rank_table(lines, kWagesOfWins);
    CHECK(table.rank_of("DAL") == 1);
    CHECK(table.rank_of("NYG") == 2);
}

TEST_CASE("single line ranks first") {
    std::vector<StatLine> lines{wow_line("A", 100, 50, 310)};
    CHECK(rank_table(lines, kWagesOfWins).rank_of("A") == 1);
}

TEST_CASE("rank_table input errors") {
    std::vector<StatLine> lines{wow_line("A", 100, 50, 310), wow_line("B", 100, 50, 308)};
    lines[1].season = 2010;
    CHECK_THROWS_AS(rank_table(lines, kWagesOfWins), InputError);
    CHECK_THROWS_AS(rank_table(std::vector<StatLine>{}, kWagesOfWins), InputError);

    SECTION("degenerate line names the team") {
        StatLine empty;
        empty.team = "ZZZ";
        empty.season = 2009;
        std::vector<StatLine> bad{wow_line("A", 100, 50, 310), empty};
        CHECK_THROWS_WITH(rank_table(bad, kTraditional), Catch::Contains("ZZZ"));
    }
}

TEST_CASE("ranks are invariant under positive rescaling of all ratings") {
    qbtest::Rng rng(321);
    for (double scale : {0.5, 2.0, 1000.0, 1e-6}) {
        std::vector<TeamRating> ratings;
        for (int i = 0; i < 12; ++i)
            ratings.push_back({"T" + std::to_string(i), rng.real(-50.0, 50.0)});
        std::vector<TeamRating> scaled = ratings;
        for (auto& r : scaled) r.rating *= scale;

        const auto base = rank_ratings(ratings);
        const auto after = rank_ratings(scaled);
        REQUIRE(base.size() == after.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(base[i].team == after[i].team);
            CHECK(base[i].rank == after[i].rank);
        }
        for (const auto& r : ratings) {
            CHECK(rank_among(ratings, "ME", r.rating) ==
                  rank_among(scaled, "ME", r.rating * scale));
        }
    }
}

TEST_CASE("perturbed_rank_change on engineered seasons") {
    SECTION("a clear leader cannot rise above rank 1") {
        std::vector<StatLine> lines{wow_line("A", 100, 50, 800), wow_line("B", 100, 50, 400),
                                    wow_line("C", 100, 50, 350)};
        CHECK(perturbed_rank_change(lines, "A", {ScenarioKind::TouchdownDelta, 5}, kWagesOfWins,
                                    6.75) == 0);
    }

    SECTION("a perturbation that lands between two rivals moves one spot") {
        // wow: A = 35, B = 34.5, C = 30; TD+1 on C adds ypc - 3 = 4.8 -> 34.8
        std::vector<StatLine> lines{wow_line("A", 100, 50, 335), wow_line("B", 100, 50, 334.5),
                                    wow_line("C", 120, 50, 390)};
        const Scenario td1{ScenarioKind::TouchdownDelta, 1};
        CHECK(rank_table(lines, kWagesOfWins).rank_of("C") == 3);
        CHECK(perturbed_rank(lines, "C", td1, kWagesOfWins, 6.75) == 2);
        CHECK(perturbed_rank_change(lines, "C", td1, kWagesOfWins, 6.75) == 1);
        CHECK(qbtest::oracle_rank_change(lines, "C", td1, kWagesOfWins, 6.75) == 1);
    }

    SECTION("magnitude zero never moves anyone") {
        qbtest::Rng rng(111);
        const auto lines = qbtest::random_season(rng, 6, 2009);
        for (auto kind : {ScenarioKind::TouchdownDelta, ScenarioKind::InterceptionDelta,
                          ScenarioKind::SackDelta, ScenarioKind::CompletionPctDelta}) {
            for (const auto& l : lines) {
                for (const auto& system : {kTraditional, kBurke, kWagesOfWins}) {
                    CHECK(perturbed_rank_change(lines, l.team, {kind, 0}, system, 6.75) == 0);
                }
            }
        }
    }

    SECTION("unknown team is an input error") {
        std::vector<StatLine> lines{wow_line("A", 100, 50, 310)};
        CHECK_THROWS_AS(perturbed_rank_change(lines, "NOPE", {ScenarioKind::SackDelta, 1},
                                              kWagesOfWins, 6.75),
                        InputError);
    }
}

TEST_CASE("perturbed_rank_change equals the full re-sort oracle") {
    qbtest::Rng rng(12345);
    const auto scenarios = standard_scenarios();
    const std::vector<RatingSystem> systems{kTraditional, kBurke, kWagesOfWins};
    for (int trial = 0; trial < 100; ++trial) {
        const auto lines = qbtest::random_season(rng, rng.uniform(5, 8), 2009);
        for (const auto& sc : scenarios) {
            for (const auto& system : systems) {
                for (const auto& l : lines) {
                    const int got = perturbed_rank_change(lines, l.team, sc, system, 6.75);
                    const int want = qbtest::oracle_rank_change(lines, l.team, sc, system, 6.75);
                    REQUIRE(got == want);
                }
            }
        }
    }
}

TEST_CASE("rank_table agrees with the re-sort oracle") {
    qbtest::Rng rng(54321);
    for (int trial = 0; trial < 50; ++trial) {
        const auto lines = qbtest::random_season(rng, rng.uniform(2, 8), 2009);
        for (const auto& system : {kTraditional, kBurke, kWagesOfWins}) {
            const auto table = rank_table(lines, system);
            std::vector<std::pair<std::string, double>> rated;
            for (const auto& l : lines) rated.emplace_back(l.team, rate(l, system));
            for (const auto& l : lines)
                CHECK(table.rank_of(l.team) == qbtest::oracle_rank(rated, l.team));
        }
    }
}

TEST_CASE("rating-improving perturbations never worsen rank") {
    qbtest::Rng rng(2468);
    const auto scenarios = standard_scenarios();
    for (int trial = 0; trial < 50; ++trial) {
        const auto lines = qbtest::random_season(rng, rng.uniform(4, 8), 2009);
        const auto& sc = scenarios[static_cast<std::size_t>(rng.uniform(0, 19))];
        for (const auto& system : {kTraditional, kBurke, kWagesOfWins}) {
            const auto table = rank_table(lines, system);
            for (const auto& l : lines) {
                const auto moved = apply_scenario(l, sc, 6.75);
                if (rate(moved, system) > rate(l, system)) {
                    CHECK(perturbed_rank(lines, l.team, sc, system, 6.75) <=
                          table.rank_of(l.team));
                }
                const int change = perturbed_rank_change(lines, l.team, sc, system, 6.75);
                CHECK(change <= static_cast<int>(lines.size()) - 1);
            }
        }
    }
}

TEST_CASE("yearly_rank_change_sum") {
    const auto ds = fixture();

    SECTION("traditional is exactly insensitive to sacks") {
        for (int k : {1, 3, 5}) {
            const auto result = yearly_rank_change_sum(ds, 2009, {ScenarioKind::SackDelta, k},
                                                       kTraditional, average_sack_yards(ds));
            CHECK(result.sum == 0);
            CHECK(result.exclusions.empty());
        }
    }

    SECTION("magnitude zero sums to zero") {
        CHECK(yearly_rank_change_sum(ds, 2009, {ScenarioKind::TouchdownDelta, 0}, kWagesOfWins,
                                     6.75)
                  .sum == 0);
    }

    SECTION("matches the oracle on a synthetic season") {
        qbtest::Rng rng(1357);
        const auto lines = qbtest::random_season(rng, 4, 2009);
        const auto season_ds = Dataset::from_lines(lines);
        const Scenario td1{ScenarioKind::TouchdownDelta, 1};
        for (const auto& system : {kTraditional, kBurke, kWagesOfWins}) {
            int want = 0;
            for (const auto& l : lines)
                want += qbtest::oracle_rank_change(lines, l.team, td1, system, 6.75);
            CHECK(yearly_rank_change_sum(season_ds, 2009, td1, system, 6.75).sum == want);
        }
    }

    SECTION("infeasible teams are excluded and flagged") {
        qbtest::Rng rng(7531);
        auto lines = qbtest::random_season(rng, 4, 2009);
        StatLine few_ints = lines[0];
        few_ints.team = "FEW";
        few_ints.ints = 2;
        lines.push_back(few_ints);
        const auto ds2 = Dataset::from_lines(lines);
        const Scenario int5{ScenarioKind::InterceptionDelta, -5};

        const auto result = yearly_rank_change_sum(ds2, 2009, int5, kWagesOfWins, 6.75);
        REQUIRE(result.exclusions.size() == 1);
        CHECK(result.exclusions[0].team == "FEW");
        CHECK(result.exclusions[0].season == 2009);

        int want = 0;
        for (const auto& l : lines)
            if (l.team != "FEW") want += qbtest::oracle_rank_change(lines, l.team, int5,
                                                                    kWagesOfWins, 6.75);
        CHECK(result.sum == want);
    }

    SECTION("missing season is an input error") {
        CHECK_THROWS_AS(yearly_rank_change_sum(ds, 1999, {ScenarioKind::SackDelta, 1},
                                               kWagesOfWins, 6.75),
                        InputError);
    }
}

TEST_CASE("sample_mean_std") {
    const std::vector<double> two{10.0, 14.0};
    const auto [mean, stdev] = sample_mean_std(two);
    CHECK(mean == 12.0);
    CHECK(stdev == Approx(2.8284271247461903).margin(1e-12));

    const std::vector<double> flat{7.0, 7.0, 7.0};
    CHECK(sample_mean_std(flat).second == 0.0);

    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(sample_mean_std(one), InsufficientDataError);
}

TEST_CASE("aggregate") {
    const auto ds = fixture();
    const double fallback = average_sack_yards(ds);

    SECTION("mean and std are recomputable from the yearly sums") {
        for (const auto& sc : {Scenario{ScenarioKind::TouchdownDelta, 3},
                               Scenario{ScenarioKind::InterceptionDelta, -3},
                               Scenario{ScenarioKind::CompletionPctDelta, 5}}) {
            for (const auto& system : {kTraditional, kBurke, kWagesOfWins}) {
                const auto summary = aggregate(ds, sc, system, fallback);
                REQUIRE(summary.yearly_sums.size() == 3);
                std::vector<double> sums;
                for (const auto& [season, sum] : summary.yearly_sums) {
                    CHECK(sum == yearly_rank_change_sum(ds, season, sc, system, fallback).sum);
                    sums.push_back(sum);
                }
                const auto [mean, stdev] = sample_mean_std(sums);
                CHECK(summary.mean == mean);
                CHECK(summary.stdev == stdev);
                CHECK(summary.max_top8 <= summary.max_all);
            }
        }
    }

    SECTION("traditional sack rows are identically zero") {
        for (int k : {1, 3, 5}) {
            const auto summary = aggregate(ds, {ScenarioKind::SackDelta, k}, kTraditional, fallback);
            CHECK(summary.mean == 0.0);
            CHECK(summary.stdev == 0.0);
            CHECK(summary.max_all == 0);
            CHECK(summary.max_top8 == 0);
        }
    }

    SECTION("max_all bounds every per-team change") {
        const Scenario sc{ScenarioKind::InterceptionDelta, -5};
        const auto summary = aggregate(ds, sc, kBurke, fallback);
        int observed_max = 0;
        for (int season : ds.seasons()) {
            const auto lines = ds.season_lines(season);
            for (const auto& l : lines) {
                observed_max = std::max(
                    observed_max, perturbed_rank_change(lines, l.team, sc, kBurke, fallback));
            }
        }
        CHECK(summary.max_all == observed_max);
    }

    SECTION("fewer than two seasons is insufficient") {
        const auto one_season = Dataset::from_lines(
            {ds.season_lines(2009).begin(), ds.season_lines(2009).end()});
        CHECK_THROWS_AS(aggregate(one_season, {ScenarioKind::SackDelta, 1}, kBurke, fallback),
                        InsufficientDataError);
    }
}

TEST_CASE("top-8 maxima are computed against the base table") {
    // Top 8 teams spaced 100 wow points apart (immovable by TD+5); a 9th
    // team with very high yards per completion jumps two spots.
    std::vector<StatLine> lines;
    for (int i = 0; i < 8; ++i)
        lines.push_back(wow_line("T" + std::to_string(i), 200, 100, 1600.0 - 100.0 * i));
    lines.push_back(wow_line("T8", 200, 25, 895));  // rating 295, ypc 35.8

    std::vector<StatLine> season2 = lines;
    for (auto& l : season2) l.season = 2010;
    auto all = lines;
    all.insert(all.end(), season2.begin(), season2.end());
    const auto ds = Dataset::from_lines(all);

    const Scenario td5{ScenarioKind::TouchdownDelta, 5};
    CHECK(perturbed_rank_change(lines, "T8", td5, kWagesOfWins, 6.75) == 2);
    const auto summary = aggregate(ds, td5, kWagesOfWins, 6.75);
    CHECK(summary.max_all == 2);
    CHECK(summary.max_top8 == 0);
}
