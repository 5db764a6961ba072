#pragma once

#include <string>
#include <vector>

#include "qbsens/error.hpp"
#include "qbsens/stat_line.hpp"

namespace qbsens {

/// League-average yards lost per sack (2011), the fallback price of a sack
/// when neither the team nor the dataset has any.
inline constexpr double kFallbackSackYards = 6.75;

enum class ScenarioKind { TouchdownDelta, InterceptionDelta, SackDelta, CompletionPctDelta };

/// A signed one-dimensional perturbation of a stat line.
/// magnitude is a count for the first three kinds and percentage points
/// of the completion rate for CompletionPctDelta; 0 means "no change".
struct Scenario {
    ScenarioKind kind = ScenarioKind::TouchdownDelta;
    int magnitude = 0;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// "TD+1", "INT-3", "SK+5", "Comp+1%".
inline std::string label(const Scenario& sc) {
    std::string out;
    switch (sc.kind) {
        case ScenarioKind::TouchdownDelta: out = "TD"; break;
        case ScenarioKind::InterceptionDelta: out = "INT"; break;
        case ScenarioKind::SackDelta: out = "SK"; break;
        case ScenarioKind::CompletionPctDelta: out = "Comp"; break;
    }
    out += (sc.magnitude < 0 ? "-" : "+") + std::to_string(sc.magnitude < 0 ? -sc.magnitude : sc.magnitude);
    if (sc.kind == ScenarioKind::CompletionPctDelta) out += "%";
    return out;
}

/// Parses a scenario label ("TD+1", "int-3", "Comp+5%", trailing % optional).
inline Scenario parse_scenario(std::string_view text) {
    auto starts_with_ci = [](std::string_view s, std::string_view prefix) {
        if (s.size() < prefix.size()) return false;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            char a = s[i], b = prefix[i];
            if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
            if (b >= 'A' && b <= 'Z') b = static_cast<char>(b - 'A' + 'a');
            if (a != b) return false;
        }
        return true;
    };
    Scenario sc;
    std::size_t off = 0;
    if (starts_with_ci(text, "comp")) {
        sc.kind = ScenarioKind::CompletionPctDelta;
        off = 4;
    } else if (starts_with_ci(text, "td")) {
        sc.kind = ScenarioKind::TouchdownDelta;
        off = 2;
    } else if (starts_with_ci(text, "int")) {
        sc.kind = ScenarioKind::InterceptionDelta;
        off = 3;
    } else if (starts_with_ci(text, "sk")) {
        sc.kind = ScenarioKind::SackDelta;
        off = 2;
    } else {
        throw InputError("unknown scenario '" + std::string(text) + "'");
    }
    std::string_view rest = text.substr(off);
    if (!rest.empty() && rest.back() == '%') {
        if (sc.kind != ScenarioKind::CompletionPctDelta)
            throw InputError("unknown scenario '" + std::string(text) + "': % only applies to Comp");
        rest.remove_suffix(1);
    }
    if (rest.empty() || (rest[0] != '+' && rest[0] != '-'))
        throw InputError("scenario '" + std::string(text) + "': expected a signed magnitude");
    bool negative = rest[0] == '-';
    rest.remove_prefix(1);
    if (rest.empty()) throw InputError("scenario '" + std::string(text) + "': missing magnitude");
    int mag = 0;
    for (char c : rest) {
        if (c < '0' || c > '9')
            throw InputError("scenario '" + std::string(text) + "': bad magnitude digit");
        mag = mag * 10 + (c - '0');
    }
    sc.magnitude = negative ? -mag : mag;
    return sc;
}

namespace detail {

// floor division by a positive divisor (C++ '/' truncates toward zero)
inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

}  // namespace detail

/// Round-half-up of p% of att, in exact integer arithmetic:
/// floor(p*att/100 + 1/2) = floor((p*att + 50) / 100).
inline int completion_delta(int pct_points, int att) {
    return static_cast<int>(detail::floor_div(static_cast<long long>(pct_points) * att + 50, 100));
}

/// Applies one scenario to a line, producing the counterfactual line.
///
/// All derived averages come from the original line, never the partially
/// perturbed one. The result either satisfies every StatLine invariant or
/// the call throws. sack_fallback is accepted for call-site uniformity with
/// the dataset-level sack statistics; the sack rule itself moves no yardage.
inline StatLine apply_scenario(const StatLine& line, const Scenario& sc,
                               [[maybe_unused]] double sack_fallback) {
    StatLine out = line;
    switch (sc.kind) {
        case ScenarioKind::TouchdownDelta: {
            // one extra completed pass and attempt that is a touchdown,
            // priced at the team's average yards per completion
            const double ypc = yards_per_completion(line);
            out.att += sc.magnitude;
            out.comp += sc.magnitude;
            out.td += sc.magnitude;
            out.yds += sc.magnitude * ypc;
            break;
        }
        case ScenarioKind::InterceptionDelta: {
            // one fewer interception is one fewer attempted pass; no yardage change
            out.ints += sc.magnitude;
            out.att += sc.magnitude;
            break;
        }
        case ScenarioKind::SackDelta: {
            // a sack is one offensive play, not a pass attempt: completed and
            // attempted passes are unaffected and no yardage moves with it
            out.sk += sc.magnitude;
            break;
        }
        case ScenarioKind::CompletionPctDelta: {
            const double ypc = yards_per_completion(line);
            const int dcomp = completion_delta(sc.magnitude, line.att);
            if (line.comp + dcomp + line.ints > line.att) {
                const int shortfall = line.comp + dcomp + line.ints - line.att;
                throw InfeasibleScenarioError(
                    "team " + line.team + ", " + label(sc) + ": needs " + std::to_string(dcomp) +
                    " more completions but is short " + std::to_string(shortfall) +
                    " incompletions");
            }
            out.comp += dcomp;
            out.yds += dcomp * ypc;
            break;
        }
    }
    try {
        validate(out);
    } catch (const ValidationError& e) {
        throw InfeasibleScenarioError("team " + line.team + ", " + label(sc) +
                                      ": result violates stat-line invariants: " + e.what());
    }
    return out;
}

/// The full 20-element sweep in sweep order:
/// TD+1..+5, INT-1..-5, SK+1..+5, Comp+1%..+5%.
inline std::vector<Scenario> standard_scenarios() {
    std::vector<Scenario> out;
    out.reserve(20);
    for (int k = 1; k <= 5; ++k) out.push_back({ScenarioKind::TouchdownDelta, k});
    for (int k = 1; k <= 5; ++k) out.push_back({ScenarioKind::InterceptionDelta, -k});
    for (int k = 1; k <= 5; ++k) out.push_back({ScenarioKind::SackDelta, k});
    for (int k = 1; k <= 5; ++k) out.push_back({ScenarioKind::CompletionPctDelta, k});
    return out;
}

/// The 12 rows the summary tables display: magnitudes 1, 3, 5 of each kind.
inline std::vector<Scenario> displayed_scenarios() {
    std::vector<Scenario> out;
    out.reserve(12);
    for (int k : {1, 3, 5}) out.push_back({ScenarioKind::TouchdownDelta, k});
    for (int k : {1, 3, 5}) out.push_back({ScenarioKind::InterceptionDelta, -k});
    for (int k : {1, 3, 5}) out.push_back({ScenarioKind::SackDelta, k});
    for (int k : {1, 3, 5}) out.push_back({ScenarioKind::CompletionPctDelta, k});
    return out;
}

}  // namespace qbsens
