// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_TESTS_HELPERS_HPP
#define TWM_TESTS_HELPERS_HPP

#include "twm/chrono.hpp"
#include "twm/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace twm::test {

// Scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static std::mt19937_64 rng(std::random_device{}());
        path = std::filesystem::temp_directory_path() /
               ("twm-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name,
                               const std::string& content) const {
        const std::filesystem::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p;
    }
};

inline Tweet make_tweet(std::string id, std::string text,
                        const std::string& timestamp) {
    Tweet t;
    t.id = std::move(id);
    t.text = std::move(text);
    t.created_at = parse_rfc3339(timestamp);
    t.hashtags = extract_hashtags(t.text);
    return t;
}

inline Corpus make_corpus(std::vector<Tweet> tweets) {
    Corpus corpus;
    corpus.tweets = std::move(tweets);
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i)
        corpus.index_by_id.emplace(corpus.tweets[i].id, i);
    return corpus;
}

} // namespace twm::test

#endif
