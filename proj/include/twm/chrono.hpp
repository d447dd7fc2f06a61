// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_CHRONO_HPP
#define TWM_CHRONO_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace twm {

// Calendar date in the proleptic Gregorian calendar.
struct CivilDate {
    int year = 0;
    int month = 0; // 1..12
    int day = 0;   // 1..31

    auto operator<=>(const CivilDate&) const = default;
};

// Days since 1970-01-01 (Howard Hinnant's algorithm).
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t days);

bool valid_civil(const CivilDate& d);

// UTC calendar date of a unix timestamp (seconds).
CivilDate civil_from_unix(std::int64_t seconds);

// Parses an RFC-3339 timestamp ("2020-01-05T00:00:00Z",
// "2020-01-05 10:30:00.25+05:30") into unix seconds, UTC-normalized.
// Fractional seconds are accepted and discarded. Throws InputError.
std::int64_t parse_rfc3339(const std::string& text);

// "YYYY-MM-DDTHH:MM:SSZ" for a unix timestamp.
std::string format_rfc3339_utc(std::int64_t seconds);

// "YYYY-MM-DD"
std::string format_civil(const CivilDate& d);
CivilDate parse_civil(const std::string& text);

} // namespace twm

#endif
