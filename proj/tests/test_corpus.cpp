// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/corpus.hpp"

#include "twm/errors.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <set>

using namespace twm;
using twm::test::TempDir;
using twm::test::make_corpus;
using twm::test::make_tweet;

TEST_CASE("rfc3339 parsing and formatting") {
    CHECK(parse_rfc3339("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_rfc3339("2020-01-05T00:00:00Z") == 1578182400);
    CHECK(parse_rfc3339("2020-01-05T00:00:00.123Z") == 1578182400);
    // offset timestamps normalize to the same instant
    CHECK(parse_rfc3339("2020-01-05T05:30:00+05:30") ==
          parse_rfc3339("2020-01-05T00:00:00Z"));
    CHECK(parse_rfc3339("2020-01-04T19:00:00-05:00") ==
          parse_rfc3339("2020-01-05T00:00:00Z"));
    CHECK(format_rfc3339_utc(1578182400) == "2020-01-05T00:00:00Z");

    CHECK_THROWS_AS(parse_rfc3339("2020-13-01T00:00:00Z"), InputError);
    CHECK_THROWS_AS(parse_rfc3339("2020-02-30T00:00:00Z"), InputError);
    CHECK_THROWS_AS(parse_rfc3339("not a date"), InputError);
    CHECK_THROWS_AS(parse_rfc3339("2020-01-05T00:00:00"), InputError);

    // leap year respected
    CHECK_NOTHROW(parse_rfc3339("2020-02-29T12:00:00Z"));
    CHECK_THROWS_AS(parse_rfc3339("2019-02-29T12:00:00Z"), InputError);
}

TEST_CASE("civil date round trip") {
    for (std::int64_t day = -1000; day <= 40000; day += 97) {
        const CivilDate d = civil_from_days(day);
        CHECK(days_from_civil(d) == day);
        CHECK(valid_civil(d));
    }
}

TEST_CASE("hashtag extraction lowercases and splits on non-word chars") {
    CHECK(extract_hashtags("x #ChinaVirus") ==
          std::vector<std::string>{"chinavirus"});
    CHECK(extract_hashtags("#A #b_C2 plain #d!tail") ==
          std::vector<std::string>{"a", "b_c2", "d"});
    CHECK(extract_hashtags("no tags here").empty());
    CHECK(extract_hashtags("## #").empty());
}

TEST_CASE("load_corpus parses JSONL and extracts hashtags") {
    TempDir dir;
    const auto path = dir.file(
        "corpus.jsonl",
        R"({"id":"1","text":"x #ChinaVirus","created_at":"2020-01-05T00:00:00Z"})"
        "\n"
        R"({"id":"2","text":"y","created_at":"2020-02-01T08:00:00Z","hashtags":["KungFlu"]})"
        "\n");
    const Corpus corpus = load_corpus(path);
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.tweets[0].hashtags == std::vector<std::string>{"chinavirus"});
    CHECK(corpus.tweets[1].hashtags == std::vector<std::string>{"kungflu"});

    // explicit hashtag arrays lose any leading '#'
    TempDir dir2;
    const Corpus marked = load_corpus(dir2.file(
        "marked.jsonl",
        R"({"id":"1","text":"y","created_at":"2020-01-05T00:00:00Z","hashtags":["#WuFlu","##x",""]})"
        "\n"));
    CHECK(marked.tweets[0].hashtags == std::vector<std::string>{"wuflu", "x"});
    CHECK(corpus.find("1") != nullptr);
    CHECK(corpus.find("nope") == nullptr);
}

TEST_CASE("load_corpus empty file gives empty corpus") {
    TempDir dir;
    CHECK(load_corpus(dir.file("empty.jsonl", "")).size() == 0);
}

TEST_CASE("load_corpus rejects duplicate ids naming the id") {
    TempDir dir;
    const auto path = dir.file(
        "dup.jsonl",
        R"({"id":"7","text":"a","created_at":"2020-01-05T00:00:00Z"})"
        "\n"
        R"({"id":"7","text":"b","created_at":"2020-01-06T00:00:00Z"})"
        "\n");
    CHECK_THROWS_WITH_AS(load_corpus(path),
                         doctest::Contains("duplicate tweet id '7'"),
                         InputError);
}

TEST_CASE("load_corpus reports the offending line number") {
    TempDir dir;
    const auto path = dir.file(
        "bad.jsonl",
        R"({"id":"1","text":"a","created_at":"2020-01-05T00:00:00Z"})"
        "\n"
        "{not json}\n");
    CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("line 2"),
                         InputError);
}

TEST_CASE("corpus round trip preserves id, text, created_at, hashtags") {
    TempDir dir;
    const Corpus original = make_corpus({
        make_tweet("a", "Hello #World", "2020-01-03T10:11:12Z"),
        make_tweet("b", "unicode \xc3\xa9 text", "2020-03-12T23:59:59Z"),
    });
    const auto path = dir.path / "round.jsonl";
    save_corpus(original, path);
    const Corpus reloaded = load_corpus(path);

    REQUIRE(reloaded.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(reloaded.tweets[i].id == original.tweets[i].id);
        CHECK(reloaded.tweets[i].text == original.tweets[i].text);
        CHECK(reloaded.tweets[i].created_at == original.tweets[i].created_at);
        CHECK(reloaded.tweets[i].hashtags == original.tweets[i].hashtags);
    }
}

TEST_CASE("assign_stage boundaries follow the WHO phase dates") {
    CHECK(assign_stage(parse_rfc3339("2020-01-15T12:00:00Z")) == Stage::S1);
    CHECK(assign_stage(parse_rfc3339("2020-01-01T00:00:00Z")) == Stage::S1);
    CHECK(assign_stage(parse_rfc3339("2020-01-31T23:59:59Z")) == Stage::S1);
    CHECK(assign_stage(parse_rfc3339("2020-02-01T00:00:00Z")) == Stage::S2);
    CHECK(assign_stage(parse_rfc3339("2020-03-11T23:59:59Z")) == Stage::S2);
    CHECK(assign_stage(parse_rfc3339("2020-03-12T00:00:00Z")) == Stage::S3);
    CHECK(assign_stage(parse_rfc3339("2020-04-30T23:59:59Z")) == Stage::S3);

    CHECK_THROWS_AS(assign_stage(parse_rfc3339("2019-12-31T23:59:59Z")),
                    InputError);
    CHECK_THROWS_AS(assign_stage(parse_rfc3339("2020-05-01T00:00:00Z")),
                    InputError);
}

TEST_CASE("stage windows partition the study range") {
    const DateWindow range = study_range();
    for (std::int64_t day = days_from_civil(range.first);
         day <= days_from_civil(range.last); ++day) {
        int matches = 0;
        const CivilDate date = civil_from_days(day);
        for (int s = 0; s < kNumStages; ++s) {
            const DateWindow w = stage_window(static_cast<Stage>(s));
            matches += date >= w.first && date <= w.last;
        }
        CHECK(matches == 1);
    }
}

TEST_CASE("load_labels maps codes, rejects bad rows") {
    TempDir dir;
    SUBCASE("valid rows") {
        const auto map = load_labels(dir.file("l.csv", "id,label\n42,0\n7,4\n"));
        REQUIRE(map.size() == 2);
        CHECK(map.at("42") == Category::Stigmatization);
        CHECK(map.at("7") == Category::NonRacist);
    }
    SUBCASE("label outside 0..4") {
        CHECK_THROWS_AS(load_labels(dir.file("l.csv", "id,label\n42,5\n")),
                        InputError);
    }
    SUBCASE("repeated id") {
        CHECK_THROWS_AS(load_labels(dir.file("l.csv", "id,label\n1,0\n1,1\n")),
                        InputError);
    }
    SUBCASE("empty body") {
        CHECK(load_labels(dir.file("l.csv", "id,label\n")).empty());
    }
    SUBCASE("ids with csv metacharacters round-trip") {
        const LabelMap original{{"plain", Category::Blame},
                                {"with,comma", Category::Exclusion},
                                {"with\"quote", Category::NonRacist}};
        const auto path = dir.path / "odd.csv";
        save_labels(original, path);
        CHECK(load_labels(path) == original);
    }
}

TEST_CASE("stage_category_counts fills the 4x3 grid") {
    const Corpus corpus = make_corpus({
        make_tweet("1", "x", "2020-02-10T00:00:00Z"),
        make_tweet("2", "y", "2020-01-10T00:00:00Z"),
        make_tweet("3", "z", "2020-04-01T00:00:00Z"),
        make_tweet("4", "unlabeled", "2020-04-02T00:00:00Z"),
        make_tweet("5", "outside", "2019-06-01T00:00:00Z"),
    });
    const LabelMap labels{{"1", Category::Blame},
                          {"2", Category::NonRacist},
                          {"3", Category::Blame},
                          {"5", Category::Exclusion}};
    const StageCategoryCounts counts = stage_category_counts(corpus, labels);

    const auto blame = static_cast<std::size_t>(Category::Blame);
    CHECK(counts.cells[blame][0] == 0);
    CHECK(counts.cells[blame][1] == 1);
    CHECK(counts.cells[blame][2] == 1);
    CHECK(counts.totals[blame] == 2);
    CHECK(counts.non_racist == 1);
    CHECK(counts.skipped_unlabeled == 1);
    CHECK(counts.skipped_out_of_range == 1);

    // totals are row sums, and cells account for every labeled racist
    // tweet with an in-range date
    long cell_sum = 0;
    for (int c = 0; c < kNumRacistCategories; ++c) {
        long row = 0;
        for (int s = 0; s < kNumStages; ++s)
            row += counts.cells[static_cast<std::size_t>(c)]
                               [static_cast<std::size_t>(s)];
        CHECK(row == counts.totals[static_cast<std::size_t>(c)]);
        cell_sum += row;
    }
    CHECK(cell_sum == 2);
}

TEST_CASE("daily_counts zero-fills the study range and sums to corpus size") {
    SUBCASE("empty corpus") {
        const auto counts = daily_counts(make_corpus({}));
        CHECK(counts.size() == 121); // Jan..Apr 2020
        for (const auto& [date, n] : counts) CHECK(n == 0);
    }
    SUBCASE("three tweets on one day") {
        const Corpus corpus = make_corpus({
            make_tweet("1", "a", "2020-01-02T01:00:00Z"),
            make_tweet("2", "b", "2020-01-02T02:00:00Z"),
            make_tweet("3", "c", "2020-01-02T23:00:00Z"),
        });
        const auto counts = daily_counts(corpus);
        CHECK(counts.at(CivilDate{2020, 1, 2}) == 3);
        long total = 0;
        for (const auto& [date, n] : counts) {
            total += n;
            if (date != CivilDate{2020, 1, 2}) CHECK(n == 0);
        }
        CHECK(total == 3);
    }
    SUBCASE("out-of-range tweets still counted on their date") {
        const auto counts = daily_counts(
            make_corpus({make_tweet("1", "a", "2019-12-31T00:00:00Z")}));
        CHECK(counts.at(CivilDate{2019, 12, 31}) == 1);
        long total = 0;
        for (const auto& [date, n] : counts) total += n;
        CHECK(total == 1);
    }
}
