// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/snowball.hpp"

#include "twm/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace twm {

std::vector<Tweet> CorpusProvider::sample(const std::string& hashtag,
                                          std::size_t n) const {
    std::vector<Tweet> out;
    for (const Tweet& t : corpus_->tweets) {
        if (out.size() >= n) break;
        if (std::find(t.hashtags.begin(), t.hashtags.end(), hashtag) !=
            t.hashtags.end())
            out.push_back(t);
    }
    return out;
}

FrequencyTable count_hashtags(std::span<const Tweet> sample,
                              const std::set<std::string>& exclude) {
    FrequencyTable table;
    for (const Tweet& t : sample)
        for (const std::string& tag : t.hashtags)
            if (!exclude.contains(tag)) ++table[tag];
    return table;
}

std::vector<std::string> top_hashtags(const FrequencyTable& table,
                                      std::size_t k, std::size_t floor) {
    std::vector<std::pair<std::string, std::size_t>> rows;
    for (const auto& [tag, count] : table)
        if (count >= floor) rows.emplace_back(tag, count);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (rows.size() > k) rows.resize(k);

    std::vector<std::string> out;
    out.reserve(rows.size());
    for (auto& [tag, count] : rows) out.push_back(std::move(tag));
    return out;
}

SnowballResult run_snowball(const TweetProvider& provider,
                            const SnowballConfig& config) {
    if (config.seeds.empty())
        throw InputError("run_snowball: seeds must be non-empty");
    if (config.sample_size < 1 || config.top_k < 1 ||
        config.min_occurrences < 1)
        throw InputError("run_snowball: sample_size, top_k and "
                         "min_occurrences must all be >= 1");

    SnowballResult result;
    std::set<std::string> known;
    for (const std::string& seed : config.seeds) {
        if (known.insert(seed).second) result.hashtags.push_back(seed);
    }

    std::vector<std::string> frontier = result.hashtags;
    for (std::size_t round = 1; round <= config.rounds && !frontier.empty();
         ++round) {
        RoundAudit audit;
        audit.round = round;
        // the occurrence floor only applies to re-sampled rounds
        audit.floor = round == 1 ? 1 : config.min_occurrences;

        FrequencyTable merged;
        for (const std::string& tag : frontier) {
            std::vector<Tweet> sample;
            try {
                sample = provider.sample(tag, config.sample_size);
            } catch (const std::exception& e) {
                throw InputError("snowball: provider failed for hashtag '" +
                                 tag + "': " + e.what());
            }
            SampleAudit entry;
            entry.hashtag = tag;
            entry.sample_size = sample.size();
            if (sample.empty()) {
                result.skipped.push_back(tag);
                audit.samples.push_back(std::move(entry));
                continue;
            }
            entry.counts = count_hashtags(sample, known);
            for (const auto& [t, c] : entry.counts) merged[t] += c;
            audit.samples.push_back(std::move(entry));
        }

        audit.merged = merged;
        audit.selected = top_hashtags(merged, config.top_k, audit.floor);
        frontier = audit.selected;
        for (const std::string& tag : audit.selected) {
            known.insert(tag);
            result.hashtags.push_back(tag);
        }
        result.rounds.push_back(std::move(audit));
        // a round that surfaces nothing ends the crawl
    }
    return result;
}

std::string audit_to_json(const SnowballResult& result) {
    nlohmann::json doc;
    doc["hashtags"] = result.hashtags;
    doc["skipped"] = result.skipped;
    nlohmann::json rounds = nlohmann::json::array();
    for (const RoundAudit& round : result.rounds) {
        nlohmann::json r;
        r["round"] = round.round;
        r["floor"] = round.floor;
        r["selected"] = round.selected;
        r["merged"] = round.merged;
        nlohmann::json samples = nlohmann::json::array();
        for (const SampleAudit& s : round.samples) {
            samples.push_back({{"hashtag", s.hashtag},
                               {"sample_size", s.sample_size},
                               {"counts", s.counts}});
        }
        r["samples"] = std::move(samples);
        rounds.push_back(std::move(r));
    }
    doc["rounds"] = std::move(rounds);
    return doc.dump(2);
}

} // namespace twm
