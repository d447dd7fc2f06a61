// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_CSV_HPP
#define TWM_CSV_HPP

#include <string>
#include <vector>

namespace twm {

// Minimal RFC-4180-style CSV. Every table this project renders satisfies
// parse_csv(render_csv(rows)) == rows.

std::string csv_escape(const std::string& field);
std::string render_csv(const std::vector<std::vector<std::string>>& rows);
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

} // namespace twm

#endif
