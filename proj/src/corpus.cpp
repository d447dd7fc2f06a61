// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/corpus.hpp"

#include "twm/csv.hpp"
#include "twm/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace twm {

namespace {

bool is_tag_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

} // namespace

const char* category_name(Category c) {
    switch (c) {
    case Category::Stigmatization: return "stigmatization";
    case Category::Offensiveness: return "offensiveness";
    case Category::Blame: return "blame";
    case Category::Exclusion: return "exclusion";
    case Category::NonRacist: return "non_racist";
    }
    return "unknown";
}

std::optional<Category> category_from_code(int code) {
    if (code < 0 || code >= kNumCategories) return std::nullopt;
    return static_cast<Category>(code);
}

const char* stage_name(Stage s) {
    switch (s) {
    case Stage::S1: return "S1";
    case Stage::S2: return "S2";
    case Stage::S3: return "S3";
    }
    return "unknown";
}

DateWindow stage_window(Stage s) {
    switch (s) {
    case Stage::S1: return {{2020, 1, 1}, {2020, 1, 31}};
    case Stage::S2: return {{2020, 2, 1}, {2020, 3, 11}};
    case Stage::S3: return {{2020, 3, 12}, {2020, 4, 30}};
    }
    return {};
}

DateWindow study_range() { return {{2020, 1, 1}, {2020, 4, 30}}; }

std::optional<Stage> try_assign_stage(std::int64_t utc_seconds) {
    const CivilDate date = civil_from_unix(utc_seconds);
    for (int s = 0; s < kNumStages; ++s) {
        const DateWindow w = stage_window(static_cast<Stage>(s));
        if (date >= w.first && date <= w.last) return static_cast<Stage>(s);
    }
    return std::nullopt;
}

Stage assign_stage(std::int64_t utc_seconds) {
    const auto stage = try_assign_stage(utc_seconds);
    if (!stage)
        throw InputError("date " + format_civil(civil_from_unix(utc_seconds)) +
                         " is outside the study range " +
                         format_civil(study_range().first) + ".." +
                         format_civil(study_range().last));
    return *stage;
}

const Tweet* Corpus::find(const std::string& id) const {
    const auto it = index_by_id.find(id);
    return it == index_by_id.end() ? nullptr : &tweets[it->second];
}

std::vector<std::string> extract_hashtags(const std::string& text) {
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '#') continue;
        std::size_t j = i + 1;
        while (j < text.size() && is_tag_char(text[j])) ++j;
        if (j > i + 1) tags.push_back(to_lower(text.substr(i + 1, j - i - 1)));
        i = j - 1;
    }
    return tags;
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open corpus file: " + path.string());

    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("corpus line " + std::to_string(line_no) +
                             ": invalid JSON (" + e.what() + ")");
        }

        Tweet tweet;
        try {
            tweet.id = obj.at("id").get<std::string>();
            tweet.text = obj.at("text").get<std::string>();
            tweet.created_at =
                parse_rfc3339(obj.at("created_at").get<std::string>());
            if (obj.contains("hashtags")) {
                for (const auto& h : obj.at("hashtags")) {
                    std::string tag = h.get<std::string>();
                    tag.erase(0, tag.find_first_not_of('#'));
                    if (!tag.empty())
                        tweet.hashtags.push_back(to_lower(std::move(tag)));
                }
            } else {
                tweet.hashtags = extract_hashtags(tweet.text);
            }
        } catch (const InputError& e) {
            throw InputError("corpus line " + std::to_string(line_no) + ": " +
                             e.what());
        } catch (const nlohmann::json::exception& e) {
            throw InputError("corpus line " + std::to_string(line_no) +
                             ": missing or mistyped field (" + e.what() + ")");
        }
        if (tweet.id.empty())
            throw InputError("corpus line " + std::to_string(line_no) +
                             ": empty id");

        const auto [it, inserted] =
            corpus.index_by_id.emplace(tweet.id, corpus.tweets.size());
        if (!inserted)
            throw InputError("duplicate tweet id '" + tweet.id + "' at line " +
                             std::to_string(line_no));
        corpus.tweets.push_back(std::move(tweet));
    }
    return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write corpus file: " + path.string());
    for (const Tweet& t : corpus.tweets) {
        nlohmann::json obj{{"id", t.id},
                           {"text", t.text},
                           {"created_at", format_rfc3339_utc(t.created_at)},
                           {"hashtags", t.hashtags}};
        out << obj.dump() << '\n';
    }
}

LabelMap load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open labels file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();

    LabelMap labels;
    const auto rows = parse_csv(buffer.str());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.empty() || (row.size() == 1 && row[0].empty())) continue;
        if (r == 0 && row == std::vector<std::string>{"id", "label"})
            continue;
        if (row.size() != 2)
            throw InputError("labels line " + std::to_string(r + 1) +
                             ": expected `id,label`");
        int code = -1;
        try {
            std::size_t used = 0;
            code = std::stoi(row[1], &used);
            if (used != row[1].size()) code = -1;
        } catch (const std::exception&) {
            code = -1;
        }
        const auto category = category_from_code(code);
        if (!category)
            throw InputError("labels line " + std::to_string(r + 1) +
                             ": label '" + row[1] + "' outside 0..4");
        if (!labels.emplace(row[0], *category).second)
            throw InputError("labels line " + std::to_string(r + 1) +
                             ": repeated id '" + row[0] + "'");
    }
    return labels;
}

void save_labels(const LabelMap& labels, const std::filesystem::path& path) {
    std::vector<std::pair<std::string, Category>> sorted(labels.begin(),
                                                         labels.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"id", "label"});
    for (const auto& [id, cat] : sorted)
        rows.push_back({id, std::to_string(static_cast<int>(cat))});

    std::ofstream out(path);
    if (!out) throw InputError("cannot write labels file: " + path.string());
    out << render_csv(rows);
}

StageCategoryCounts stage_category_counts(const Corpus& corpus,
                                          const LabelMap& labels) {
    StageCategoryCounts counts;
    for (const Tweet& t : corpus.tweets) {
        const auto it = labels.find(t.id);
        if (it == labels.end()) {
            ++counts.skipped_unlabeled;
            continue;
        }
        const auto stage = try_assign_stage(t.created_at);
        if (!stage) {
            ++counts.skipped_out_of_range;
            continue;
        }
        if (it->second == Category::NonRacist) {
            ++counts.non_racist;
            continue;
        }
        ++counts.cells[static_cast<std::size_t>(it->second)]
                      [static_cast<std::size_t>(*stage)];
    }
    for (int c = 0; c < kNumRacistCategories; ++c) {
        long total = 0;
        for (int s = 0; s < kNumStages; ++s)
            total += counts.cells[static_cast<std::size_t>(c)]
                                 [static_cast<std::size_t>(s)];
        counts.totals[static_cast<std::size_t>(c)] = total;
    }
    return counts;
}

std::map<CivilDate, long> daily_counts(const Corpus& corpus) {
    std::map<CivilDate, long> counts;
    const DateWindow range = study_range();
    for (std::int64_t day = days_from_civil(range.first);
         day <= days_from_civil(range.last); ++day)
        counts[civil_from_days(day)] = 0;
    for (const Tweet& t : corpus.tweets) ++counts[civil_from_unix(t.created_at)];
    return counts;
}

} // namespace twm
