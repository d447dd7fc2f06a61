// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/preprocess.hpp"

#include "twm/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>

namespace twm {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }

char lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool is_url_token(std::string_view token) {
    return token.starts_with("http://") || token.starts_with("https://") ||
           token.starts_with("www.");
}

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_space(text[j])) ++j;
        if (j > i) tokens.push_back(text.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::string strip_punct_lower(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    for (char c : token)
        if (!is_punct(c)) out.push_back(lower(c));
    return out;
}

} // namespace

Lexicon load_lexicon(const std::filesystem::path& stopwords_path,
                     const std::filesystem::path& lemma_path) {
    Lexicon lex;

    std::ifstream stops(stopwords_path);
    if (!stops)
        throw InputError("cannot open stopword file: " +
                         stopwords_path.string());
    std::string line;
    while (std::getline(stops, line)) {
        while (!line.empty() && is_space(line.back())) line.pop_back();
        if (line.empty()) continue;
        std::transform(line.begin(), line.end(), line.begin(), lower);
        lex.stopwords.insert(line);
    }

    std::ifstream lemmas(lemma_path);
    if (!lemmas)
        throw InputError("cannot open lemma file: " + lemma_path.string());
    std::size_t line_no = 0;
    while (std::getline(lemmas, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw InputError("lemma file line " + std::to_string(line_no) +
                             ": expected `surface<TAB>lemma`");
        lex.lemma_map.emplace(line.substr(0, tab), line.substr(tab + 1));
    }
    return lex;
}

std::string clean_for_classification(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::string_view token : split_ws(text)) {
        if (is_url_token(token)) continue;
        std::string word = strip_punct_lower(token);
        if (word.empty()) continue;
        if (!out.empty()) out.push_back(' ');
        out += word;
    }
    return out;
}

TokenizedDoc clean_for_topics(std::string_view text, const Lexicon& lexicon,
                              std::string source_id) {
    TokenizedDoc doc;
    doc.source_id = std::move(source_id);
    for (std::string_view token : split_ws(text)) {
        if (is_url_token(token)) continue;
        if (token.front() == '@' || token.front() == '#') continue;
        std::string word = strip_punct_lower(token);
        if (word.size() < 2) continue;
        if (lexicon.stopwords.contains(word)) continue;
        doc.tokens.push_back(lemmatize(word, lexicon));
    }
    return doc;
}

std::vector<TokenizedDoc> detect_bigrams(const std::vector<TokenizedDoc>& docs,
                                         const BigramPolicy& policy) {
    std::unordered_map<std::string, std::size_t> unigram;
    std::unordered_map<std::string, std::size_t> pair;
    for (const auto& doc : docs) {
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            ++unigram[doc.tokens[i]];
            if (i + 1 < doc.tokens.size())
                ++pair[doc.tokens[i] + ' ' + doc.tokens[i + 1]];
        }
    }
    const double vocab_size = static_cast<double>(unigram.size());

    const auto qualifies = [&](const std::string& a, const std::string& b) {
        const auto it = pair.find(a + ' ' + b);
        if (it == pair.end() || it->second < policy.min_count) return false;
        const double score =
            static_cast<double>(it->second - policy.min_count) * vocab_size /
            (static_cast<double>(unigram.at(a)) *
             static_cast<double>(unigram.at(b)));
        return score >= policy.score_threshold;
    };

    std::vector<TokenizedDoc> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) {
        TokenizedDoc merged;
        merged.source_id = doc.source_id;
        merged.tokens.reserve(doc.tokens.size());
        std::size_t i = 0;
        while (i < doc.tokens.size()) {
            if (i + 1 < doc.tokens.size() &&
                qualifies(doc.tokens[i], doc.tokens[i + 1])) {
                merged.tokens.push_back(doc.tokens[i] + '_' +
                                        doc.tokens[i + 1]);
                i += 2;
            } else {
                merged.tokens.push_back(doc.tokens[i]);
                ++i;
            }
        }
        out.push_back(std::move(merged));
    }
    return out;
}

std::string lemmatize(const std::string& token, const Lexicon& lexicon) {
    const auto it = lexicon.lemma_map.find(token);
    if (it != lexicon.lemma_map.end()) return it->second;

    const std::size_t n = token.size();
    if (n >= 3 && token.ends_with("ies"))
        return token.substr(0, n - 3) + 'y';
    if (n >= 4 && token.ends_with("sses"))
        return token.substr(0, n - 2);
    if (n > 3 && token.ends_with('s'))
        return token.substr(0, n - 1);
    if (n >= 6 && token.ends_with("ing"))
        return token.substr(0, n - 3);
    if (n >= 5 && token.ends_with("ed"))
        return token.substr(0, n - 2);
    return token;
}

TokenLengthStats token_length_stats(const std::vector<std::size_t>& counts) {
    if (counts.empty())
        throw InputError("token_length_stats: no documents");
    std::vector<std::size_t> sorted = counts;
    std::sort(sorted.begin(), sorted.end());

    TokenLengthStats stats;
    stats.min = sorted.front();
    stats.max = sorted.back();
    stats.median = sorted[(sorted.size() - 1) / 2];
    double sum = 0.0;
    for (std::size_t c : sorted) sum += static_cast<double>(c);
    stats.mean = sum / static_cast<double>(sorted.size());
    return stats;
}

} // namespace twm
