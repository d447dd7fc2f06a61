// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_FEATURES_HPP
#define TWM_FEATURES_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twm {

// Unigram + adjacent-bigram vocabulary over whitespace-tokenized cleaned
// text. Indices are dense and assigned in lexicographic term order, so a
// rebuild over the same documents is identical.
struct Vocabulary {
    std::vector<std::string> terms;                     // index -> term
    std::unordered_map<std::string, std::size_t> index; // term -> index
    std::vector<std::size_t> df;                        // per retained term
    std::size_t n_docs = 0;
    std::size_t min_df = 1;

    std::size_t size() const { return terms.size(); }
};

// Sparse document vector; indices strictly increasing, no stored zeros.
struct FeatureVector {
    std::vector<std::pair<std::size_t, double>> entries;
};

Vocabulary build_vocab(std::span<const std::string> docs, std::size_t min_df);

FeatureVector bow_vector(const std::string& doc, const Vocabulary& vocab);

// tf * (ln((1+N)/(1+df)) + 1), L2-normalized.
FeatureVector tfidf_vector(const std::string& doc, const Vocabulary& vocab);

double idf(const Vocabulary& vocab, std::size_t term_index);

struct EmbeddingTable {
    std::size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;
};

// Text format: word followed by `dim` reals per line; dimension fixed by the
// first line. Throws InputError with the line number on inconsistency.
EmbeddingTable load_embeddings(const std::filesystem::path& path);

// Unweighted mean of in-table token vectors; zero vector when nothing hits.
std::vector<double> embed_average(const std::string& doc,
                                  const EmbeddingTable& table);

// `term<TAB>index<TAB>df` per line, plus a header carrying n_docs/min_df.
void save_vocabulary(const Vocabulary& vocab,
                     const std::filesystem::path& path);
Vocabulary load_vocabulary(const std::filesystem::path& path);

std::vector<std::string> whitespace_tokens(const std::string& doc);

} // namespace twm

#endif
