#pragma once

#include <string_view>

namespace qbsens {

/// Synthetic three-season, eight-team dataset in the interchange schema.
/// Values are fabricated at realistic magnitudes; every team supports the
/// full standard scenario sweep (at least 5 interceptions to remove, enough
/// incompletions for Comp+5%).
inline constexpr std::string_view kSyntheticFixture =
    "season,team,att,comp,yds,td,int,sk,skyd\n"
    "2009,DAL,550,347,4483,26,9,34,224\n"
    "2009,GB,541,350,4328,30,7,51,380\n"
    "2009,IND,513,340,4078,33,16,13,91\n"
    "2009,MIN,533,363,4149,34,8,36,247\n"
    "2009,NE,565,371,4398,28,13,18,128\n"
    "2009,NO,514,363,4388,34,12,20,135\n"
    "2009,PIT,546,358,4344,26,14,50,348\n"
    "2009,SD,486,317,4337,28,9,25,181\n"
    "2010,DAL,519,331,3998,27,12,31,210\n"
    "2010,GB,502,324,3977,31,11,38,258\n"
    "2010,IND,525,357,4187,32,17,16,102\n"
    "2010,MIN,561,342,3832,19,20,44,312\n"
    "2010,NE,497,331,3900,36,5,25,156\n"
    "2010,NO,522,346,4110,33,22,26,175\n"
    "2010,PIT,471,290,3887,24,10,43,301\n"
    "2010,SD,549,365,4710,30,15,38,241\n"
    "2011,DAL,554,361,4226,31,13,39,262\n"
    "2011,GB,552,371,4643,45,6,41,277\n"
    "2011,IND,560,334,3631,17,15,35,243\n"
    "2011,MIN,483,300,3474,21,14,49,334\n"
    "2011,NE,612,401,5084,39,12,32,203\n"
    "2011,NO,662,468,5347,46,14,24,161\n"
    "2011,PIT,513,324,4077,21,14,42,290\n"
    "2011,SD,583,366,4624,27,20,30,196\n";

}  // namespace qbsens
