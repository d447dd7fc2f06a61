// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/preprocess.hpp"

#include "twm/errors.hpp"
#include "twm/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cctype>

using namespace twm;
using twm::test::TempDir;

TEST_CASE("clean_for_classification removes urls then punctuation") {
    CHECK(clean_for_classification("Check https://t.co/x NOW!!") ==
          "check now");
    CHECK(clean_for_classification("") == "");
    // hashtag mark is punctuation; the word survives for classification
    CHECK(clean_for_classification("#ChinaVirus spread") ==
          "chinavirus spread");
    CHECK(clean_for_classification("  a   B\t\nc  ") == "a b c");
    CHECK(clean_for_classification("www.example.com gone") == "gone");
}

TEST_CASE("clean_for_classification is idempotent") {
    const std::vector<std::string> samples = {
        "Check https://t.co/x NOW!!",
        "#Tag @user MIXED case..  ",
        "plain text",
        "!!!",
        "w!ww.odd http!x",
    };
    for (const auto& s : samples) {
        const std::string once = clean_for_classification(s);
        CHECK(clean_for_classification(once) == once);
    }
    // randomized: printable-ASCII strings
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        std::string s;
        const std::size_t len = rng.next_below(60);
        for (std::size_t j = 0; j < len; ++j)
            s.push_back(static_cast<char>(32 + rng.next_below(95)));
        const std::string once = clean_for_classification(s);
        CHECK(clean_for_classification(once) == once);
    }
}

TEST_CASE("clean_for_topics applies the full removal sequence") {
    Lexicon lex;
    lex.stopwords = {"the"};
    lex.lemma_map = {{"spreads", "spread"}, {"virus", "virus"}};

    const TokenizedDoc doc =
        clean_for_topics("The virus\nspreads @user #ChinaVirus", lex, "t1");
    CHECK(doc.source_id == "t1");
    CHECK(doc.tokens == std::vector<std::string>{"virus", "spread"});
}

TEST_CASE("clean_for_topics drops mention-only and hashtag-only text") {
    Lexicon lex;
    CHECK(clean_for_topics("@a @b #c #d", lex).tokens.empty());
}

TEST_CASE("clean_for_topics keeps duplicate tokens") {
    Lexicon lex;
    lex.lemma_map = {{"china", "china"}};
    CHECK(clean_for_topics("china china china", lex).tokens ==
          std::vector<std::string>{"china", "china", "china"});
}

TEST_CASE("clean_for_topics output has no stopwords, tags, or uppercase") {
    Lexicon lex;
    lex.stopwords = {"the", "and", "of"};
    const char* samples[] = {
        "The Quick @Brown #Fox AND the dog http://x.y",
        "OF COURSE!!! the @end #tag",
        "Mixed\nLINES and\rmore",
    };
    for (const char* s : samples) {
        for (const auto& token : clean_for_topics(s, lex).tokens) {
            CHECK(!lex.stopwords.contains(token));
            CHECK(token.find('@') == std::string::npos);
            CHECK(token.find('#') == std::string::npos);
            CHECK(token.size() >= 2);
            for (char c : token)
                CHECK(!std::isupper(static_cast<unsigned char>(c)));
        }
    }
}

TEST_CASE("lemmatize suffix fallback and lexicon override") {
    Lexicon lex;
    lex.lemma_map = {{"virus", "virus"}};

    CHECK(lemmatize("confirmed", lex) == "confirm");
    CHECK(lemmatize("virus", lex) == "virus"); // s-drop blocked by the map
    CHECK(lemmatize("china", lex) == "china");
    CHECK(lemmatize("countries", lex) == "country");
    CHECK(lemmatize("classes", lex) == "class");
    CHECK(lemmatize("spreads", lex) == "spread");
    CHECK(lemmatize("spreading", lex) == "spread");
    CHECK(lemmatize("gas", lex) == "gas");     // too short for s-drop
    CHECK(lemmatize("king", lex) == "king");   // stem would be too short
    CHECK(lemmatize("red", lex) == "red");
    CHECK(lemmatize("ies", lex) == "y");
}

TEST_CASE("lemmatize never returns an empty string") {
    Lexicon lex;
    Rng rng(7);
    const std::string alphabet = "abcdefgs";
    for (int i = 0; i < 500; ++i) {
        std::string token;
        const std::size_t len = 1 + rng.next_below(8);
        for (std::size_t j = 0; j < len; ++j)
            token.push_back(alphabet[rng.next_below(alphabet.size())]);
        // sprinkle the suffixes the fallback targets
        if (i % 3 == 0) token += "ies";
        if (i % 5 == 0) token += "ing";
        if (i % 7 == 0) token += "ed";
        if (i % 2 == 0) token += "s";
        CHECK(!lemmatize(token, lex).empty());
    }
}

TEST_CASE("shipped lexicon loads and covers the basics") {
    const Lexicon lex =
        load_lexicon(TWM_DATA_DIR "/stopwords.txt", TWM_DATA_DIR "/lemmas.tsv");
    CHECK(lex.stopwords.size() == 179);
    CHECK(lex.stopwords.contains("the"));
    CHECK(lex.lemma_map.at("virus") == "virus");
    CHECK(lex.lemma_map.at("lies") == "lie");
    CHECK(lex.lemma_map.at("made") == "make");
    for (const auto& [surface, lemma] : lex.lemma_map) CHECK(!lemma.empty());
}

TEST_CASE("detect_bigrams merges frequent adjacent pairs") {
    // 100 docs "hong kong", plus filler giving the words other contexts
    std::vector<TokenizedDoc> docs;
    for (int i = 0; i < 100; ++i)
        docs.push_back({{"hong", "kong", "protest"}, ""});
    for (int i = 0; i < 20; ++i)
        docs.push_back({{"free", "press", "now"}, ""});

    // count(hong,kong)=100, count(hong)=100, count(kong)=100, V=6
    // score = (100-5)*6/(100*100) = 0.057
    BigramPolicy policy{5, 0.05};
    const auto merged = detect_bigrams(docs, policy);
    CHECK(merged[0].tokens ==
          std::vector<std::string>{"hong_kong", "protest"});

    SUBCASE("huge threshold leaves docs unchanged") {
        BigramPolicy strict{5, 1e18};
        const auto unchanged = detect_bigrams(docs, strict);
        for (std::size_t i = 0; i < docs.size(); ++i)
            CHECK(unchanged[i].tokens == docs[i].tokens);
    }
    SUBCASE("single-token docs unchanged") {
        std::vector<TokenizedDoc> singles = {{{"one"}, ""}, {{"two"}, ""}};
        const auto out = detect_bigrams(singles, policy);
        CHECK(out[0].tokens == std::vector<std::string>{"one"});
        CHECK(out[1].tokens == std::vector<std::string>{"two"});
    }
    SUBCASE("token count drops by exactly one per merge") {
        // (free,press) also clears the bar: (20-5)*6/(20*20) = 0.225
        CHECK(merged[100].tokens ==
              std::vector<std::string>{"free_press", "now"});
        std::size_t before = 0, after = 0, merges = 0;
        for (const auto& d : docs) before += d.tokens.size();
        for (const auto& d : merged) {
            after += d.tokens.size();
            for (const auto& t : d.tokens)
                merges += t.find('_') != std::string::npos;
        }
        CHECK(after == before - merges);
        CHECK(merges == 120);
    }
}

TEST_CASE("detect_bigrams merges left to right without overlap") {
    // both (a,b) and (b,c) qualify; leftmost wins, non-overlapping
    std::vector<TokenizedDoc> docs;
    for (int i = 0; i < 50; ++i) docs.push_back({{"a", "b", "c"}, ""});
    BigramPolicy policy{2, 0.0};
    const auto merged = detect_bigrams(docs, policy);
    CHECK(merged[0].tokens == std::vector<std::string>{"a_b", "c"});
}

TEST_CASE("token_length_stats") {
    SUBCASE("reference corpus shape") {
        const TokenLengthStats s = token_length_stats({8, 37, 130});
        CHECK(s.min == 8);
        CHECK(s.max == 130);
        CHECK(s.median == 37);
        CHECK(s.mean == doctest::Approx((8.0 + 37.0 + 130.0) / 3.0));
    }
    SUBCASE("single doc") {
        const TokenLengthStats s = token_length_stats({5});
        CHECK(s.min == 5);
        CHECK(s.max == 5);
        CHECK(s.median == 5);
        CHECK(s.mean == doctest::Approx(5.0));
    }
    SUBCASE("even count takes the lower middle") {
        CHECK(token_length_stats({1, 2, 3, 4}).median == 2);
        CHECK(token_length_stats({4, 3, 2, 1}).median == 2);
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(token_length_stats({}), InputError);
    }
}
