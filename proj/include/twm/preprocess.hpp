// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_PREPROCESS_HPP
#define TWM_PREPROCESS_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace twm {

struct TokenizedDoc {
    std::vector<std::string> tokens; // lowercase, non-empty, no whitespace
    std::string source_id;
};

struct BigramPolicy {
    std::size_t min_count = 5;
    double score_threshold = 10.0;
};

struct Lexicon {
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, std::string> lemma_map;
};

// stopwords: one token per line. lemmas: `surface<TAB>lemma` per line.
Lexicon load_lexicon(const std::filesystem::path& stopwords_path,
                     const std::filesystem::path& lemma_path);

// Classification cleaning: URLs out, punctuation out ('#' included, the word
// survives), lowercased, whitespace collapsed. Idempotent.
std::string clean_for_classification(std::string_view text);

// Topic-modeling cleaning: newlines, URLs, @mentions and whole #hashtags
// removed, punctuation stripped, lowercased, tokenized, stopwords and
// single-character tokens dropped, lemmatized.
TokenizedDoc clean_for_topics(std::string_view text, const Lexicon& lexicon,
                              std::string source_id = {});

// Merges adjacent pairs scoring
//   (count(a,b) - min_count) * V / (count(a) * count(b)) >= threshold
// into "a_b" tokens, left to right, non-overlapping. V is the number of
// distinct tokens across docs.
std::vector<TokenizedDoc> detect_bigrams(const std::vector<TokenizedDoc>& docs,
                                         const BigramPolicy& policy);

// Lemma table lookup with a small suffix fallback (ies->y, sses->ss, s-drop,
// ing/ed strip). Exceptions belong in the lemma file, not here.
std::string lemmatize(const std::string& token, const Lexicon& lexicon);

struct TokenLengthStats {
    std::size_t min = 0;
    std::size_t max = 0;
    std::size_t median = 0; // lower middle for even counts
    double mean = 0.0;
};

// Statistics over per-document token counts. Throws InputError when empty.
TokenLengthStats token_length_stats(const std::vector<std::size_t>& counts);

inline std::vector<std::size_t>
doc_token_counts(const std::vector<TokenizedDoc>& docs) {
    std::vector<std::size_t> counts;
    counts.reserve(docs.size());
    for (const auto& d : docs) counts.push_back(d.tokens.size());
    return counts;
}

} // namespace twm

#endif
