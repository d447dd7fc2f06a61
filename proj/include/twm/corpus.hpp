// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_CORPUS_HPP
#define TWM_CORPUS_HPP

#include "twm/chrono.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace twm {

struct Tweet {
    std::string id;
    std::string text;
    std::int64_t created_at = 0; // unix seconds, UTC
    std::vector<std::string> hashtags; // lowercase, without '#'
};

enum class Category : int {
    Stigmatization = 0,
    Offensiveness = 1,
    Blame = 2,
    Exclusion = 3,
    NonRacist = 4,
};

inline constexpr int kNumCategories = 5;
inline constexpr int kNumRacistCategories = 4;

const char* category_name(Category c);
std::optional<Category> category_from_code(int code);

enum class Stage : int { S1 = 0, S2 = 1, S3 = 2 };

inline constexpr int kNumStages = 3;

const char* stage_name(Stage s);

// Inclusive calendar-date window of a stage, and the overall study range.
struct DateWindow {
    CivilDate first;
    CivilDate last;
};

DateWindow stage_window(Stage s);
DateWindow study_range(); // 2020-01-01 .. 2020-04-30

// Stage whose window contains the UTC calendar date of the timestamp.
// Throws InputError when the date falls outside the study range.
Stage assign_stage(std::int64_t utc_seconds);
std::optional<Stage> try_assign_stage(std::int64_t utc_seconds);

struct Corpus {
    std::vector<Tweet> tweets; // input order preserved
    std::unordered_map<std::string, std::size_t> index_by_id;

    std::size_t size() const { return tweets.size(); }
    const Tweet* find(const std::string& id) const;
};

// '#' followed by a maximal run of [A-Za-z0-9_], lowercased.
std::vector<std::string> extract_hashtags(const std::string& text);

// JSONL, one object per line: id, text, created_at, optional hashtags.
// Missing hashtags are extracted from the text. Throws InputError with the
// offending line number or duplicate id.
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

using LabelMap = std::unordered_map<std::string, Category>;

// CSV with header `id,label`, label in 0..4. Throws InputError on a label
// outside the range or a repeated id.
LabelMap load_labels(const std::filesystem::path& path);
void save_labels(const LabelMap& labels, const std::filesystem::path& path);

struct StageCategoryCounts {
    // cells[c][s]: tweets labeled with racist category c in stage s.
    std::array<std::array<long, kNumStages>, kNumRacistCategories> cells{};
    std::array<long, kNumRacistCategories> totals{}; // row sums
    long non_racist = 0;          // labeled NonRacist, in-range
    long skipped_unlabeled = 0;   // tweets with no label
    long skipped_out_of_range = 0; // labeled but dated outside the study range
};

StageCategoryCounts stage_category_counts(const Corpus& corpus,
                                          const LabelMap& labels);

// Tweets per UTC calendar date. Every date of the study range is present
// (zero-filled); dates outside the range appear only when tweets exist there,
// so the values always sum to the corpus size.
std::map<CivilDate, long> daily_counts(const Corpus& corpus);

} // namespace twm

#endif
