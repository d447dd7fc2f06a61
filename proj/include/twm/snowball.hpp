// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_SNOWBALL_HPP
#define TWM_SNOWBALL_HPP

#include "twm/corpus.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace twm {

struct SnowballConfig {
    std::vector<std::string> seeds;
    std::size_t sample_size = 500;
    std::size_t top_k = 5;
    std::size_t min_occurrences = 50; // floor, applied from round 2 on
    std::size_t rounds = 2;
};

// Source of tweet samples for one hashtag. Implementations must return only
// tweets that carry the queried hashtag.
class TweetProvider {
public:
    virtual ~TweetProvider() = default;
    virtual std::vector<Tweet> sample(const std::string& hashtag,
                                      std::size_t n) const = 0;
};

// Offline provider replaying a loaded corpus in input order.
class CorpusProvider final : public TweetProvider {
public:
    explicit CorpusProvider(const Corpus& corpus) : corpus_(&corpus) {}
    std::vector<Tweet> sample(const std::string& hashtag,
                              std::size_t n) const override;

private:
    const Corpus* corpus_;
};

// Ordered so that audit output and iteration are deterministic.
using FrequencyTable = std::map<std::string, std::size_t>;

// Occurrence counts of hashtags across a sample, excluded tags skipped.
// A hashtag appearing twice in one tweet counts twice.
FrequencyTable count_hashtags(std::span<const Tweet> sample,
                              const std::set<std::string>& exclude);

// The k highest-count hashtags with count >= floor, count descending,
// ties lexicographic ascending.
std::vector<std::string> top_hashtags(const FrequencyTable& table,
                                      std::size_t k, std::size_t floor);

struct SampleAudit {
    std::string hashtag;
    std::size_t sample_size = 0;
    FrequencyTable counts; // already excludes known hashtags
};

struct RoundAudit {
    std::size_t round = 0; // 1-based
    std::size_t floor = 1;
    std::vector<SampleAudit> samples;
    FrequencyTable merged;
    std::vector<std::string> selected;
};

struct SnowballResult {
    std::vector<std::string> hashtags; // seeds then discoveries, in order
    std::vector<RoundAudit> rounds;
    std::vector<std::string> skipped; // hashtags whose sample came back empty
};

// Iterative hashtag discovery: each round samples the previous round's
// selections, counts co-occurring hashtags (never ones already known), and
// keeps the top_k above the round's floor. Stops after `rounds` rounds or
// as soon as a round discovers nothing.
SnowballResult run_snowball(const TweetProvider& provider,
                            const SnowballConfig& config);

std::string audit_to_json(const SnowballResult& result);

} // namespace twm

#endif
