#pragma once

#include <string>

#include "qbsens/error.hpp"

namespace qbsens {

/// One team-season passing record.
///
/// yds and skyd are real-valued: source data carries integers, but
/// perturbations add fractional average-yard increments.
struct StatLine {
    std::string team;   // short code, e.g. "DAL"
    int season = 0;
    int att = 0;        // pass attempts
    int comp = 0;       // completions
    double yds = 0.0;   // passing yards
    int td = 0;         // touchdown passes
    int ints = 0;       // interceptions
    int sk = 0;         // sacks taken
    double skyd = 0.0;  // sack yards lost

    friend bool operator==(const StatLine&, const StatLine&) = default;
};

/// Checks every StatLine invariant; throws ValidationError naming the field.
///
/// Team codes must survive the unquoted comma-delimited interchange format,
/// so commas and line breaks are rejected along with the empty string.
inline void validate(const StatLine& line) {
    auto fail = [&](const std::string& what) {
        throw ValidationError("team " + (line.team.empty() ? std::string("<empty>") : line.team) +
                              ", season " + std::to_string(line.season) + ": " + what);
    };
    if (line.team.empty()) fail("team: must be nonempty");
    if (line.team.find_first_of(",\r\n") != std::string::npos)
        fail("team: must not contain commas or line breaks");
    if (line.att < 0) fail("att: must be nonnegative");
    if (line.comp < 0) fail("comp: must be nonnegative");
    if (line.td < 0) fail("td: must be nonnegative");
    if (line.ints < 0) fail("int: must be nonnegative");
    if (line.sk < 0) fail("sk: must be nonnegative");
    if (line.skyd < 0.0) fail("skyd: must be nonnegative");
    if (line.comp > line.att) fail("comp: exceeds att");
    if (line.td > line.comp) fail("td: exceeds comp");
    // An intercepted pass is an incompletion.
    if (line.ints > line.att - line.comp) fail("int: exceeds att - comp");
    if (line.sk == 0 && line.skyd != 0.0) fail("skyd: nonzero with sk = 0");
}

/// YDS / COMP of the line, exact real division.
inline double yards_per_completion(const StatLine& line) {
    if (line.comp < 1)
        throw DegenerateLineError("team " + line.team + ": yards per completion undefined with comp = 0");
    return line.yds / static_cast<double>(line.comp);
}

/// SKYD / SK of the line, or `fallback` (a dataset-wide average) when sk = 0.
inline double yards_per_sack(const StatLine& line, double fallback) {
    if (!(fallback > 0.0))
        throw InputError("yards_per_sack: fallback must be positive");
    if (line.sk == 0) return fallback;
    return line.skyd / static_cast<double>(line.sk);
}

}  // namespace qbsens
