// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/csv.hpp"

namespace twm {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out.push_back(',');
            out += csv_escape(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool field_started = false;

    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field.push_back('"');
                i += 2;
            } else if (c == '"') {
                quoted = false;
                ++i;
            } else {
                field.push_back(c);
                ++i;
            }
        } else if (c == '"' && field.empty() && !field_started) {
            quoted = true;
            field_started = true;
            ++i;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            field_started = false;
            ++i;
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            field_started = false;
            rows.push_back(std::move(row));
            row.clear();
            ++i;
        } else if (c == '\r') {
            ++i;
        } else {
            field.push_back(c);
            field_started = true;
            ++i;
        }
    }
    if (field_started || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace twm
