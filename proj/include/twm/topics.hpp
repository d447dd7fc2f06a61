// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_TOPICS_HPP
#define TWM_TOPICS_HPP

#include "twm/corpus.hpp"
#include "twm/preprocess.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace twm {

struct LdaConfig {
    std::size_t num_topics = 10;
    double alpha = 0.0; // <= 0 means 1/K
    double beta = 0.0;  // <= 0 means 1/K
    std::size_t iterations = 1000;
    std::size_t burn_in = 100;
    std::size_t optimize_interval = 10; // alpha re-estimation cadence
    std::uint64_t seed = 1;
};

struct LdaModel {
    std::size_t num_topics = 0;
    std::vector<std::string> vocab; // word id -> word, lexicographic
    std::vector<std::vector<double>> phi;   // K x V, rows sum to 1
    std::vector<std::vector<double>> theta; // D x K, rows sum to 1
    std::vector<std::vector<int>> assignments; // final token topics per doc
    std::vector<double> alpha; // per-topic prior after optimization
    double beta = 0.0;
    LdaConfig config;
};

// Collapsed Gibbs sampling:
//   p(z=k) ~ (n_dk + alpha_k) * (n_kw + beta) / (n_k + V*beta)
// Runs `iterations` full passes. After burn_in, every optimize_interval
// passes alpha is re-estimated by Minka's fixed point on the current
// doc-topic counts (beta stays fixed). phi/theta come from the final counts.
LdaModel fit_lda_gibbs(std::span<const TokenizedDoc> docs,
                       const LdaConfig& cfg);

struct CoherenceResult {
    std::vector<double> per_topic;
    double mean = 0.0;
    std::vector<std::string> excluded_words; // zero document frequency
};

// UMass coherence over each topic's top_n words (phi-descending, ties
// lexicographic): sum over i<j of ln((D(w_i,w_j)+1)/D(w_j)).
CoherenceResult coherence_umass(const LdaModel& model,
                                std::span<const TokenizedDoc> docs,
                                std::size_t top_n = 10);

struct KSelection {
    std::size_t best_k = 0;
    std::vector<std::pair<std::size_t, double>> scores; // per candidate K
};

// Fits one model per candidate K and keeps the best mean coherence,
// smaller K on ties.
KSelection select_k(std::span<const TokenizedDoc> docs,
                    std::span<const std::size_t> ks, const LdaConfig& tmpl);

inline const std::vector<std::size_t>& default_topic_counts() {
    static const std::vector<std::size_t> ks = {5, 10, 15, 20, 25};
    return ks;
}

struct TopicCluster {
    std::vector<std::size_t> members;  // original topic ids
    std::vector<double> distribution;  // per-word mean of member phi rows
};

// Agglomerative average-linkage merging of phi rows under cosine similarity
// until exactly `target` clusters remain. Each cluster's distribution is the
// arithmetic per-word mean of its member rows.
std::vector<TopicCluster> cluster_topics(const LdaModel& model,
                                         std::size_t target = 5);

// The n highest-probability words of a cluster, ties lexicographic.
std::vector<std::string> top_words(const TopicCluster& cluster,
                                   const std::vector<std::string>& vocab,
                                   std::size_t n = 10);

struct PipelineConfig {
    LdaConfig lda;                     // template; num_topics overridden
    std::vector<std::size_t> ks = default_topic_counts();
    std::size_t target_clusters = 5;
    std::size_t words_per_topic = 10;
    std::size_t min_docs = 50; // cells below this are marked insufficient
    BigramPolicy bigrams;
};

struct ClusterSummary {
    std::vector<std::size_t> members;
    std::vector<std::string> words;
    std::vector<double> probabilities; // of the listed words
};

struct CellResult {
    Category category = Category::Stigmatization;
    Stage stage = Stage::S1;
    std::size_t doc_count = 0;
    bool sufficient = false;
    std::size_t chosen_k = 0;
    std::vector<std::pair<std::size_t, double>> coherence_by_k;
    std::vector<ClusterSummary> clusters;
};

struct PipelineResult {
    std::vector<CellResult> cells; // 4 racist categories x 3 stages
};

// Per (racist category, stage) cell: topic-path cleaning + bigrams, K
// selection, Gibbs fit at the chosen K, merge to target_clusters, top words.
// Cells with too few cleaned documents become placeholders, not failures.
PipelineResult run_topic_pipeline(const Corpus& corpus,
                                  const LabelMap& predictions,
                                  const Lexicon& lexicon,
                                  const PipelineConfig& cfg);

std::string cell_to_json(const CellResult& cell);
std::string pipeline_to_json(const PipelineResult& result);
PipelineResult pipeline_from_json_text(const std::string& text);

// Minka fixed-point re-estimation of a Dirichlet concentration vector from
// count rows (exposed for direct testing).
void minka_update_alpha(std::vector<double>& alpha,
                        const std::vector<std::vector<int>>& doc_topic_counts,
                        const std::vector<int>& doc_lengths);

double digamma(double x);

} // namespace twm

#endif
