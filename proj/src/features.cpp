// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/features.hpp"

#include "twm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace twm {

std::vector<std::string> whitespace_tokens(const std::string& doc) {
    std::vector<std::string> tokens;
    std::istringstream in(doc);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

namespace {

// Unigrams plus adjacent space-joined bigrams.
std::vector<std::string> doc_terms(const std::string& doc) {
    std::vector<std::string> terms = whitespace_tokens(doc);
    const std::size_t n_unigrams = terms.size();
    for (std::size_t i = 0; i + 1 < n_unigrams; ++i)
        terms.push_back(terms[i] + ' ' + terms[i + 1]);
    return terms;
}

} // namespace

Vocabulary build_vocab(std::span<const std::string> docs, std::size_t min_df) {
    if (docs.empty()) throw InputError("build_vocab: no documents");

    std::map<std::string, std::size_t> df; // ordered: indices lexicographic
    for (const std::string& doc : docs) {
        std::vector<std::string> terms = doc_terms(doc);
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        for (const std::string& t : terms) ++df[t];
    }

    Vocabulary vocab;
    vocab.n_docs = docs.size();
    vocab.min_df = min_df;
    for (const auto& [term, count] : df) {
        if (count < min_df) continue;
        vocab.index.emplace(term, vocab.terms.size());
        vocab.terms.push_back(term);
        vocab.df.push_back(count);
    }
    if (vocab.terms.empty())
        throw InputError("build_vocab: vocabulary empty after min_df=" +
                         std::to_string(min_df) + " filtering");
    return vocab;
}

namespace {

// index -> raw count of in-vocabulary terms, ordered by index.
std::map<std::size_t, double> term_counts(const std::string& doc,
                                          const Vocabulary& vocab) {
    std::map<std::size_t, double> counts;
    for (const std::string& term : doc_terms(doc)) {
        const auto it = vocab.index.find(term);
        if (it != vocab.index.end()) counts[it->second] += 1.0;
    }
    return counts;
}

} // namespace

FeatureVector bow_vector(const std::string& doc, const Vocabulary& vocab) {
    FeatureVector vec;
    for (const auto& [idx, count] : term_counts(doc, vocab))
        vec.entries.emplace_back(idx, count);
    return vec;
}

double idf(const Vocabulary& vocab, std::size_t term_index) {
    return std::log(static_cast<double>(1 + vocab.n_docs) /
                    static_cast<double>(1 + vocab.df[term_index])) +
           1.0;
}

FeatureVector tfidf_vector(const std::string& doc, const Vocabulary& vocab) {
    FeatureVector vec;
    double norm_sq = 0.0;
    for (const auto& [idx, count] : term_counts(doc, vocab)) {
        const double w = count * idf(vocab, idx);
        vec.entries.emplace_back(idx, w);
        norm_sq += w * w;
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& [idx, w] : vec.entries) w *= inv;
    }
    return vec;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open embedding file: " + path.string());

    EmbeddingTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string word;
        row >> word;
        std::vector<double> vec;
        double value;
        while (row >> value) vec.push_back(value);
        if (word.empty() || vec.empty())
            throw InputError("embedding file line " + std::to_string(line_no) +
                             ": expected `word v1 .. vd`");
        if (table.dim == 0) table.dim = vec.size();
        if (vec.size() != table.dim)
            throw InputError("embedding file line " + std::to_string(line_no) +
                             ": dimension " + std::to_string(vec.size()) +
                             " does not match established " +
                             std::to_string(table.dim));
        table.vectors[word] = std::move(vec);
    }
    if (table.vectors.empty())
        throw InputError("embedding file is empty: " + path.string());
    return table;
}

std::vector<double> embed_average(const std::string& doc,
                                  const EmbeddingTable& table) {
    std::vector<double> mean(table.dim, 0.0);
    std::size_t hits = 0;
    for (const std::string& token : whitespace_tokens(doc)) {
        const auto it = table.vectors.find(token);
        if (it == table.vectors.end()) continue;
        ++hits;
        for (std::size_t i = 0; i < table.dim; ++i) mean[i] += it->second[i];
    }
    if (hits > 0)
        for (double& v : mean) v /= static_cast<double>(hits);
    return mean;
}

void save_vocabulary(const Vocabulary& vocab,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write vocabulary file: " + path.string());
    out << "#n_docs\t" << vocab.n_docs << "\tmin_df\t" << vocab.min_df << '\n';
    for (std::size_t i = 0; i < vocab.terms.size(); ++i)
        out << vocab.terms[i] << '\t' << i << '\t' << vocab.df[i] << '\n';
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open vocabulary file: " + path.string());

    Vocabulary vocab;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        if (line_no == 1 && line.front() == '#') {
            std::string tag;
            row >> tag >> vocab.n_docs >> tag >> vocab.min_df;
            continue;
        }
        const auto tab1 = line.find('\t');
        const auto tab2 = line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos)
            throw InputError("vocabulary file line " +
                             std::to_string(line_no) +
                             ": expected `term<TAB>index<TAB>df`");
        const std::string term = line.substr(0, tab1);
        const std::size_t index = std::stoul(line.substr(tab1 + 1, tab2 - tab1 - 1));
        const std::size_t df = std::stoul(line.substr(tab2 + 1));
        if (index != vocab.terms.size())
            throw InputError("vocabulary file line " +
                             std::to_string(line_no) +
                             ": indices must be dense and ordered");
        vocab.index.emplace(term, index);
        vocab.terms.push_back(term);
        vocab.df.push_back(df);
    }
    return vocab;
}

} // namespace twm
