#pragma once

#include <string>

#include "qbsens/error.hpp"
#include "qbsens/stat_line.hpp"

namespace qbsens {

enum class RatingKind { Traditional, Burke, WagesOfWins };

/// Sign of the Burke interception term. The formula is usually printed with
/// +50.0957 (INT/ATT), but every published ranking behaves as if the term were
/// negative (more interceptions -> worse rating), so Corrected is the default.
enum class BurkeIntSign { Corrected, AsWritten };

struct RatingSystem {
    RatingKind kind = RatingKind::Traditional;
    BurkeIntSign burke_sign = BurkeIntSign::Corrected;  // only affects Burke

    friend bool operator==(const RatingSystem&, const RatingSystem&) = default;
};

inline constexpr RatingSystem kTraditional{RatingKind::Traditional, BurkeIntSign::Corrected};
inline constexpr RatingSystem kBurke{RatingKind::Burke, BurkeIntSign::Corrected};
inline constexpr RatingSystem kBurkeAsWritten{RatingKind::Burke, BurkeIntSign::AsWritten};
inline constexpr RatingSystem kWagesOfWins{RatingKind::WagesOfWins, BurkeIntSign::Corrected};

/// Every coefficient of the three formulas, compile-time fixed.
struct RatingConstants {
    static constexpr double trad_scale = 100.0 / 6.0;
    static constexpr double trad_comp_coeff = 5.0;
    static constexpr double trad_comp_offset = 0.3;
    static constexpr double trad_td_coeff = 20.0;
    static constexpr double trad_int_base = 2.375;
    static constexpr double trad_int_coeff = 25.0;
    static constexpr double trad_yds_coeff = 0.25;
    static constexpr double trad_yds_offset = 3.0;
    static constexpr double burke_ypa_coeff = 1.543;
    static constexpr double burke_int_coeff_mag = 50.0957;
    static constexpr double wow_play_coeff = 3.0;
    static constexpr double wow_int_coeff = 30.0;
};

/// The 1971 passer rating, as printed: no per-component clamping.
/// (100/6) * [5(COMP/ATT - 0.3) + 20(TD/ATT) + (2.375 - 25(INT/ATT)) + 0.25(YDS/ATT - 3)]
inline double traditional_rating(const StatLine& line) {
    if (line.att < 1)
        throw DegenerateLineError("team " + line.team + ": traditional rating undefined with att = 0");
    const double att = static_cast<double>(line.att);
    const double comp_term = RatingConstants::trad_comp_coeff *
                             (line.comp / att - RatingConstants::trad_comp_offset);
    const double td_term = RatingConstants::trad_td_coeff * (line.td / att);
    const double int_term = RatingConstants::trad_int_base -
                            RatingConstants::trad_int_coeff * (line.ints / att);
    const double yds_term = RatingConstants::trad_yds_coeff *
                            (line.yds / att - RatingConstants::trad_yds_offset);
    return RatingConstants::trad_scale * (comp_term + td_term + int_term + yds_term);
}

/// Net yards per dropback with an interception penalty:
/// 1.543 (YDS - SKYD) / (ATT - SK) + s * 50.0957 (INT/ATT), s = -1 in Corrected mode.
inline double burke_rating(const StatLine& line, BurkeIntSign sign_mode = BurkeIntSign::Corrected) {
    if (line.att < 1)
        throw DegenerateLineError("team " + line.team + ": burke rating undefined with att = 0");
    if (line.att - line.sk < 1)
        throw DegenerateLineError("team " + line.team + ": burke rating undefined with att - sk <= 0");
    const double dropback_term = RatingConstants::burke_ypa_coeff * (line.yds - line.skyd) /
                                 static_cast<double>(line.att - line.sk);
    const double int_term = RatingConstants::burke_int_coeff_mag *
                            (line.ints / static_cast<double>(line.att));
    return sign_mode == BurkeIntSign::Corrected ? dropback_term - int_term
                                                : dropback_term + int_term;
}

/// Linear net production (QB Score): YDS - 3(ATT + SK) - 30(INT).
inline double wow_rating(const StatLine& line) {
    return line.yds - RatingConstants::wow_play_coeff * (line.att + line.sk) -
           RatingConstants::wow_int_coeff * line.ints;
}

/// Dispatch over the three systems.
inline double rate(const StatLine& line, const RatingSystem& system) {
    switch (system.kind) {
        case RatingKind::Traditional: return traditional_rating(line);
        case RatingKind::Burke: return burke_rating(line, system.burke_sign);
        case RatingKind::WagesOfWins: return wow_rating(line);
    }
    throw InputError("rate: unknown rating system");
}

inline std::string display_name(RatingKind kind) {
    switch (kind) {
        case RatingKind::Traditional: return "Traditional";
        case RatingKind::Burke: return "Burke";
        case RatingKind::WagesOfWins: return "Wages of Wins";
    }
    return "?";
}

inline std::string display_name(const RatingSystem& system) { return display_name(system.kind); }

}  // namespace qbsens
