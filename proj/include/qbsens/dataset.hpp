#pragma once

#include <algorithm>
#include <charconv>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "qbsens/error.hpp"
#include "qbsens/stat_line.hpp"

namespace qbsens {

inline constexpr std::string_view kDatasetHeader = "season,team,att,comp,yds,td,int,sk,skyd";

/// Immutable collection of StatLines, at most one per (season, team).
/// Lines are held sorted by (season, team), so one season is a contiguous span.
class Dataset {
public:
    Dataset() = default;

    /// Validates every line, sorts, and rejects duplicate (season, team) keys.
    static Dataset from_lines(std::vector<StatLine> lines) {
        for (const auto& line : lines) validate(line);
        std::sort(lines.begin(), lines.end(), [](const StatLine& a, const StatLine& b) {
            return std::tie(a.season, a.team) < std::tie(b.season, b.team);
        });
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].season == lines[i - 1].season && lines[i].team == lines[i - 1].team)
                throw DuplicateKeyError("duplicate record for (" + std::to_string(lines[i].season) +
                                        ", " + lines[i].team + ")");
        }
        Dataset ds;
        ds.lines_ = std::move(lines);
        for (const auto& line : ds.lines_) {
            if (ds.seasons_.empty() || ds.seasons_.back() != line.season)
                ds.seasons_.push_back(line.season);
        }
        return ds;
    }

    const std::vector<StatLine>& lines() const { return lines_; }
    const std::vector<int>& seasons() const { return seasons_; }
    bool empty() const { return lines_.empty(); }
    std::size_t size() const { return lines_.size(); }

    /// All lines of one season (empty span when the season is absent).
    std::span<const StatLine> season_lines(int season) const {
        auto lo = std::partition_point(lines_.begin(), lines_.end(),
                                       [&](const StatLine& l) { return l.season < season; });
        auto hi = std::partition_point(lo, lines_.end(),
                                       [&](const StatLine& l) { return l.season == season; });
        return {lines_.data() + (lo - lines_.begin()), static_cast<std::size_t>(hi - lo)};
    }

    const StatLine* find(int season, std::string_view team) const {
        for (const StatLine& l : season_lines(season))
            if (l.team == team) return &l;
        return nullptr;
    }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<StatLine> lines_;
    std::vector<int> seasons_;
};

namespace detail {

/// Shortest decimal form that parses back to the same double ("4483", "12.5").
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline long long parse_int_field(std::string_view field, std::string_view name, std::size_t row) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError("row " + std::to_string(row) + ", field '" + std::string(name) +
                         "': not an integer: '" + std::string(field) + "'");
    return value;
}

inline double parse_real_field(std::string_view field, std::string_view name, std::size_t row) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError("row " + std::to_string(row) + ", field '" + std::string(name) +
                         "': not a number: '" + std::string(field) + "'");
    return value;
}

}  // namespace detail

/// Parses comma-delimited text with the fixed header into a Dataset.
///
/// LF and CRLF line endings are accepted; fields are bare (no quoting).
/// Row indices in error messages are 1-based over data rows.
inline Dataset parse_dataset(std::string_view text) {
    std::vector<StatLine> lines;
    std::size_t pos = 0;
    std::size_t row = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = (eol == std::string_view::npos) ? text.substr(pos)
                                                               : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (raw.empty()) continue;

        if (!saw_header) {
            if (raw != kDatasetHeader)
                throw ParseError("header mismatch: expected '" + std::string(kDatasetHeader) +
                                 "', got '" + std::string(raw) + "'");
            saw_header = true;
            continue;
        }

        ++row;
        std::vector<std::string_view> fields;
        std::size_t fpos = 0;
        while (true) {
            std::size_t comma = raw.find(',', fpos);
            if (comma == std::string_view::npos) {
                fields.push_back(raw.substr(fpos));
                break;
            }
            fields.push_back(raw.substr(fpos, comma - fpos));
            fpos = comma + 1;
        }
        if (fields.size() != 9)
            throw ParseError("row " + std::to_string(row) + ": expected 9 fields, got " +
                             std::to_string(fields.size()));

        StatLine line;
        line.season = static_cast<int>(detail::parse_int_field(fields[0], "season", row));
        line.team = std::string(fields[1]);
        line.att = static_cast<int>(detail::parse_int_field(fields[2], "att", row));
        line.comp = static_cast<int>(detail::parse_int_field(fields[3], "comp", row));
        line.yds = detail::parse_real_field(fields[4], "yds", row);
        line.td = static_cast<int>(detail::parse_int_field(fields[5], "td", row));
        line.ints = static_cast<int>(detail::parse_int_field(fields[6], "int", row));
        line.sk = static_cast<int>(detail::parse_int_field(fields[7], "sk", row));
        line.skyd = detail::parse_real_field(fields[8], "skyd", row);
        try {
            validate(line);
        } catch (const ValidationError& e) {
            throw ValidationError("row " + std::to_string(row) + ": " + e.what());
        }
        lines.push_back(std::move(line));
    }
    if (!saw_header) throw ParseError("missing header row");
    return Dataset::from_lines(std::move(lines));
}

/// Inverse of parse_dataset: header plus one row per line, sorted, LF endings.
inline std::string serialize_dataset(const Dataset& ds) {
    std::string out{kDatasetHeader};
    out.push_back('\n');
    for (const StatLine& l : ds.lines()) {
        out += std::to_string(l.season);
        out.push_back(',');
        out += l.team;
        out.push_back(',');
        out += std::to_string(l.att);
        out.push_back(',');
        out += std::to_string(l.comp);
        out.push_back(',');
        out += detail::format_double(l.yds);
        out.push_back(',');
        out += std::to_string(l.td);
        out.push_back(',');
        out += std::to_string(l.ints);
        out.push_back(',');
        out += std::to_string(l.sk);
        out.push_back(',');
        out += detail::format_double(l.skyd);
        out.push_back('\n');
    }
    return out;
}

/// Dataset-wide average yards lost per sack: total SKYD / total SK.
/// Falls back to 6.75 (the 2011 league average) when the dataset has no sacks.
inline double average_sack_yards(const Dataset& ds) {
    double total_skyd = 0.0;
    long long total_sk = 0;
    for (const StatLine& l : ds.lines()) {
        total_skyd += l.skyd;
        total_sk += l.sk;
    }
    if (total_sk == 0) return 6.75;
    return total_skyd / static_cast<double>(total_sk);
}

}  // namespace qbsens
