// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

// Independent brute-force oracles. These stay deliberately naive (dense
// maps, per-definition formulas) and never call into the code paths they
// check.

#ifndef TWM_TESTS_ORACLES_HPP
#define TWM_TESTS_ORACLES_HPP

#include "twm/corpus.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace twm::test {

// Dense TF-IDF computed straight from the definition: collect unigrams and
// adjacent bigrams per doc, document frequencies over the whole corpus,
// weight = tf * (ln((1+N)/(1+df)) + 1), then L2-normalize.
inline std::vector<std::map<std::string, double>>
dense_tfidf_oracle(const std::vector<std::string>& docs, std::size_t min_df) {
    auto tokens_of = [](const std::string& doc) {
        std::vector<std::string> tokens;
        std::istringstream in(doc);
        std::string t;
        while (in >> t) tokens.push_back(t);
        return tokens;
    };
    auto terms_of = [&](const std::string& doc) {
        std::vector<std::string> terms = tokens_of(doc);
        const std::size_t n = terms.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            terms.push_back(terms[i] + " " + terms[i + 1]);
        return terms;
    };

    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::map<std::string, bool> seen;
        for (const auto& term : terms_of(doc)) seen[term] = true;
        for (const auto& [term, _] : seen) ++df[term];
    }
    for (auto it = df.begin(); it != df.end();)
        it = it->second < min_df ? df.erase(it) : std::next(it);

    const double n_docs = static_cast<double>(docs.size());
    std::vector<std::map<std::string, double>> result;
    for (const auto& doc : docs) {
        std::map<std::string, double> tf;
        for (const auto& term : terms_of(doc))
            if (df.count(term)) tf[term] += 1.0;
        double norm_sq = 0.0;
        for (auto& [term, value] : tf) {
            value *= std::log((1.0 + n_docs) /
                              (1.0 + static_cast<double>(df.at(term)))) +
                     1.0;
            norm_sq += value * value;
        }
        if (norm_sq > 0.0)
            for (auto& [term, value] : tf) value /= std::sqrt(norm_sq);
        result.push_back(std::move(tf));
    }
    return result;
}

// Multiclass perceptron on dense vectors; proof of linear separability when
// it converges to zero training errors.
inline bool perceptron_separable(const std::vector<std::vector<double>>& X,
                                 const std::vector<int>& y, int n_classes,
                                 std::size_t max_epochs = 200) {
    const std::size_t dim = X.empty() ? 0 : X[0].size();
    std::vector<std::vector<double>> w(
        static_cast<std::size_t>(n_classes), std::vector<double>(dim + 1, 0.0));
    auto score = [&](int c, const std::vector<double>& x) {
        double s = w[static_cast<std::size_t>(c)][dim];
        for (std::size_t j = 0; j < dim; ++j)
            s += w[static_cast<std::size_t>(c)][j] * x[j];
        return s;
    };
    for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
        std::size_t errors = 0;
        for (std::size_t i = 0; i < X.size(); ++i) {
            int best = 0;
            for (int c = 1; c < n_classes; ++c)
                if (score(c, X[i]) > score(best, X[i])) best = c;
            if (best == y[i]) continue;
            ++errors;
            for (std::size_t j = 0; j < dim; ++j) {
                w[static_cast<std::size_t>(y[i])][j] += X[i][j];
                w[static_cast<std::size_t>(best)][j] -= X[i][j];
            }
            w[static_cast<std::size_t>(y[i])][dim] += 1.0;
            w[static_cast<std::size_t>(best)][dim] -= 1.0;
        }
        if (errors == 0) return true;
    }
    return false;
}

// Nearest-centroid accuracy with leave-one-out centroids, on token-count
// vectors; a floor for what any sane classifier should reach.
inline double nearest_centroid_accuracy(
    const std::vector<std::map<std::string, double>>& X,
    const std::vector<int>& y, int n_classes) {
    std::vector<std::map<std::string, double>> centroid(
        static_cast<std::size_t>(n_classes));
    std::vector<double> count(static_cast<std::size_t>(n_classes), 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        count[static_cast<std::size_t>(y[i])] += 1.0;
        for (const auto& [term, v] : X[i])
            centroid[static_cast<std::size_t>(y[i])][term] += v;
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        int best = -1;
        double best_sim = -1.0;
        for (int c = 0; c < n_classes; ++c) {
            const auto ci = static_cast<std::size_t>(c);
            // leave-one-out: remove this doc from its own centroid
            std::map<std::string, double> mean = centroid[ci];
            double n = count[ci];
            if (c == y[i]) {
                for (const auto& [term, v] : X[i]) mean[term] -= v;
                n -= 1.0;
            }
            if (n <= 0.0) continue;
            double dot = 0.0, na = 0.0, nb = 0.0;
            for (const auto& [term, v] : mean) na += v * v;
            for (const auto& [term, v] : X[i]) {
                nb += v * v;
                const auto it = mean.find(term);
                if (it != mean.end()) dot += v * it->second;
            }
            const double sim =
                na > 0.0 && nb > 0.0 ? dot / std::sqrt(na * nb) : -1.0;
            if (sim > best_sim) {
                best_sim = sim;
                best = c;
            }
        }
        correct += best == y[i];
    }
    return static_cast<double>(correct) / static_cast<double>(X.size());
}

// Average per-word probability over chosen rows, straight from definition.
inline std::vector<double>
average_rows_oracle(const std::vector<std::vector<double>>& rows,
                    const std::vector<std::size_t>& members) {
    std::vector<double> mean(rows[0].size(), 0.0);
    for (std::size_t m : members)
        for (std::size_t w = 0; w < mean.size(); ++w) mean[w] += rows[m][w];
    for (double& v : mean) v /= static_cast<double>(members.size());
    return mean;
}

} // namespace twm::test

#endif
