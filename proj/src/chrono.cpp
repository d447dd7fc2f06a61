// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/chrono.hpp"

#include "twm/errors.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace twm {

std::int64_t days_from_civil(const CivilDate& cd) {
    int y = cd.year;
    const unsigned m = static_cast<unsigned>(cd.month);
    const unsigned d = static_cast<unsigned>(cd.day);
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                     static_cast<int>(d)};
}

bool valid_civil(const CivilDate& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    int max_day = lengths[static_cast<std::size_t>(d.month - 1)];
    const bool leap =
        d.year % 4 == 0 && (d.year % 100 != 0 || d.year % 400 == 0);
    if (d.month == 2 && leap) max_day = 29;
    return d.day <= max_day;
}

CivilDate civil_from_unix(std::int64_t seconds) {
    std::int64_t days = seconds / 86400;
    if (seconds % 86400 < 0) --days; // floor division for pre-epoch instants
    return civil_from_days(days);
}

namespace {

bool read_digits(const std::string& s, std::size_t pos, std::size_t count,
                 int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

[[noreturn]] void bad_timestamp(const std::string& text) {
    throw InputError("malformed RFC-3339 timestamp: '" + text + "'");
}

} // namespace

std::int64_t parse_rfc3339(const std::string& text) {
    // YYYY-MM-DD[Tt ]HH:MM:SS[.frac](Z|±HH:MM)
    int year, month, day, hour, minute, second;
    if (!read_digits(text, 0, 4, year) || text.size() < 20 || text[4] != '-' ||
        !read_digits(text, 5, 2, month) || text[7] != '-' ||
        !read_digits(text, 8, 2, day))
        bad_timestamp(text);
    const char sep = text[10];
    if (sep != 'T' && sep != 't' && sep != ' ') bad_timestamp(text);
    if (!read_digits(text, 11, 2, hour) || text[13] != ':' ||
        !read_digits(text, 14, 2, minute) || text[16] != ':' ||
        !read_digits(text, 17, 2, second))
        bad_timestamp(text);

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) bad_timestamp(text);
    }

    if (pos >= text.size()) bad_timestamp(text);
    std::int64_t offset = 0;
    const char tz = text[pos];
    if (tz == 'Z' || tz == 'z') {
        ++pos;
    } else if (tz == '+' || tz == '-') {
        int oh, om;
        if (!read_digits(text, pos + 1, 2, oh) || pos + 3 >= text.size() ||
            text[pos + 3] != ':' || !read_digits(text, pos + 4, 2, om))
            bad_timestamp(text);
        if (oh > 23 || om > 59) bad_timestamp(text);
        offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
        if (tz == '-') offset = -offset;
        pos += 6;
    } else {
        bad_timestamp(text);
    }
    if (pos != text.size()) bad_timestamp(text);

    const CivilDate date{year, month, day};
    if (!valid_civil(date) || hour > 23 || minute > 59 || second > 60)
        bad_timestamp(text);
    if (second == 60) second = 59; // fold leap seconds

    return days_from_civil(date) * 86400 + hour * 3600 + minute * 60 + second -
           offset;
}

std::string format_rfc3339_utc(std::int64_t seconds) {
    const CivilDate d = civil_from_unix(seconds);
    std::int64_t rem = seconds - days_from_civil(d) * 86400;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year,
                  d.month, d.day, static_cast<int>(rem / 3600),
                  static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
    return buf;
}

std::string format_civil(const CivilDate& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

CivilDate parse_civil(const std::string& text) {
    int y, m, d;
    if (text.size() != 10 || !read_digits(text, 0, 4, y) || text[4] != '-' ||
        !read_digits(text, 5, 2, m) || text[7] != '-' ||
        !read_digits(text, 8, 2, d))
        throw InputError("malformed date: '" + text + "'");
    const CivilDate date{y, m, d};
    if (!valid_civil(date)) throw InputError("invalid date: '" + text + "'");
    return date;
}

} // namespace twm
