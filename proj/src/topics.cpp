// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/topics.hpp"

#include "twm/errors.hpp"
#include "twm/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace twm {

double digamma(double x) {
    if (x <= 0.0) throw InputError("digamma: argument must be positive");
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 -
                              inv2 * (1.0 / 252.0 - inv2 / 240.0)));
    return result;
}

void minka_update_alpha(std::vector<double>& alpha,
                        const std::vector<std::vector<int>>& doc_topic_counts,
                        const std::vector<int>& doc_lengths) {
    constexpr double kFloor = 1e-8;
    constexpr double kTol = 1e-7;
    constexpr int kMaxRounds = 200;

    const std::size_t n_topics = alpha.size();
    const std::size_t n_docs = doc_topic_counts.size();

    for (int round = 0; round < kMaxRounds; ++round) {
        const double alpha_sum =
            std::accumulate(alpha.begin(), alpha.end(), 0.0);
        double denom = 0.0;
        for (std::size_t d = 0; d < n_docs; ++d)
            denom += digamma(doc_lengths[d] + alpha_sum) - digamma(alpha_sum);
        if (denom <= 0.0) return; // all documents empty

        double max_delta = 0.0;
        for (std::size_t k = 0; k < n_topics; ++k) {
            double numer = 0.0;
            for (std::size_t d = 0; d < n_docs; ++d)
                numer += digamma(doc_topic_counts[d][k] + alpha[k]) -
                         digamma(alpha[k]);
            const double updated = std::max(alpha[k] * numer / denom, kFloor);
            max_delta = std::max(max_delta, std::abs(updated - alpha[k]));
            alpha[k] = updated;
        }
        if (max_delta < kTol) return;
    }
}

namespace {

struct EncodedCorpus {
    std::vector<std::string> vocab; // lexicographic
    std::vector<std::vector<int>> docs; // word ids
};

EncodedCorpus encode(std::span<const TokenizedDoc> docs) {
    std::map<std::string, int> ids; // ordered: ids follow lexicographic order
    for (const TokenizedDoc& doc : docs)
        for (const std::string& token : doc.tokens) ids.emplace(token, 0);
    EncodedCorpus enc;
    enc.vocab.reserve(ids.size());
    for (auto& [word, id] : ids) {
        id = static_cast<int>(enc.vocab.size());
        enc.vocab.push_back(word);
    }
    enc.docs.reserve(docs.size());
    for (const TokenizedDoc& doc : docs) {
        std::vector<int> encoded;
        encoded.reserve(doc.tokens.size());
        for (const std::string& token : doc.tokens)
            encoded.push_back(ids.at(token));
        enc.docs.push_back(std::move(encoded));
    }
    return enc;
}

} // namespace

LdaModel fit_lda_gibbs(std::span<const TokenizedDoc> docs,
                       const LdaConfig& cfg) {
    if (cfg.num_topics < 1)
        throw InputError("fit_lda_gibbs: need at least 1 topic");
    if (cfg.iterations < cfg.burn_in)
        throw InputError("fit_lda_gibbs: iterations must be >= burn_in");
    std::size_t non_empty = 0;
    for (const TokenizedDoc& d : docs) non_empty += !d.tokens.empty();
    if (non_empty < 2)
        throw InputError("fit_lda_gibbs: need at least 2 non-empty documents");

    const EncodedCorpus enc = encode(docs);
    const std::size_t n_words = enc.vocab.size();
    if (n_words == 0) throw InputError("fit_lda_gibbs: empty vocabulary");

    const std::size_t K = cfg.num_topics;
    const std::size_t D = enc.docs.size();
    std::vector<double> alpha(
        K, cfg.alpha > 0.0 ? cfg.alpha : 1.0 / static_cast<double>(K));
    const double beta = cfg.beta > 0.0 ? cfg.beta : 1.0 / static_cast<double>(K);
    const double v_beta = static_cast<double>(n_words) * beta;

    std::vector<std::vector<int>> doc_topic(D, std::vector<int>(K, 0));
    std::vector<std::vector<int>> topic_word(K,
                                             std::vector<int>(n_words, 0));
    std::vector<int> topic_total(K, 0);
    std::vector<int> doc_lengths(D, 0);
    std::vector<std::vector<int>> z(D);

    Rng rng(cfg.seed);
    for (std::size_t d = 0; d < D; ++d) {
        doc_lengths[d] = static_cast<int>(enc.docs[d].size());
        z[d].resize(enc.docs[d].size());
        for (std::size_t i = 0; i < enc.docs[d].size(); ++i) {
            const int w = enc.docs[d][i];
            const int k = static_cast<int>(rng.next_below(K));
            z[d][i] = k;
            ++doc_topic[d][static_cast<std::size_t>(k)];
            ++topic_word[static_cast<std::size_t>(k)]
                        [static_cast<std::size_t>(w)];
            ++topic_total[static_cast<std::size_t>(k)];
        }
    }

    std::vector<double> cumulative(K);
    for (std::size_t pass = 1; pass <= cfg.iterations; ++pass) {
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t i = 0; i < enc.docs[d].size(); ++i) {
                const auto w = static_cast<std::size_t>(enc.docs[d][i]);
                const auto old_k = static_cast<std::size_t>(z[d][i]);
                --doc_topic[d][old_k];
                --topic_word[old_k][w];
                --topic_total[old_k];

                double total = 0.0;
                for (std::size_t k = 0; k < K; ++k) {
                    total += (doc_topic[d][k] + alpha[k]) *
                             (topic_word[k][w] + beta) /
                             (topic_total[k] + v_beta);
                    cumulative[k] = total;
                }
                const double u = rng.next_double() * total;
                std::size_t new_k = 0;
                while (new_k + 1 < K && u >= cumulative[new_k]) ++new_k;

                z[d][i] = static_cast<int>(new_k);
                ++doc_topic[d][new_k];
                ++topic_word[new_k][w];
                ++topic_total[new_k];
            }
        }
        if (pass > cfg.burn_in && cfg.optimize_interval > 0 &&
            (pass - cfg.burn_in) % cfg.optimize_interval == 0)
            minka_update_alpha(alpha, doc_topic, doc_lengths);
    }

    LdaModel model;
    model.num_topics = K;
    model.vocab = enc.vocab;
    model.alpha = alpha;
    model.beta = beta;
    model.config = cfg;
    model.assignments = std::move(z);

    const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
    model.phi.assign(K, std::vector<double>(n_words, 0.0));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t w = 0; w < n_words; ++w)
            model.phi[k][w] =
                (topic_word[k][w] + beta) / (topic_total[k] + v_beta);
    model.theta.assign(D, std::vector<double>(K, 0.0));
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t k = 0; k < K; ++k)
            model.theta[d][k] = (doc_topic[d][k] + alpha[k]) /
                                (doc_lengths[d] + alpha_sum);
    return model;
}

namespace {

// Word ranks for one topic: probability descending, lexicographic on ties.
// The vocabulary is stored lexicographically, so index order settles ties.
std::vector<std::size_t> ranked_words(const std::vector<double>& phi_row,
                                      std::size_t top_n) {
    std::vector<std::size_t> order(phi_row.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return phi_row[a] > phi_row[b];
                     });
    if (order.size() > top_n) order.resize(top_n);
    return order;
}

} // namespace

CoherenceResult coherence_umass(const LdaModel& model,
                                std::span<const TokenizedDoc> docs,
                                std::size_t top_n) {
    std::unordered_map<std::string, std::size_t> word_id;
    for (std::size_t w = 0; w < model.vocab.size(); ++w)
        word_id.emplace(model.vocab[w], w);

    // Document frequencies restricted to the model vocabulary.
    std::vector<std::vector<std::size_t>> doc_words(docs.size());
    std::vector<long> df(model.vocab.size(), 0);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        std::unordered_set<std::size_t> present;
        for (const std::string& token : docs[d].tokens) {
            const auto it = word_id.find(token);
            if (it != word_id.end()) present.insert(it->second);
        }
        doc_words[d].assign(present.begin(), present.end());
        std::sort(doc_words[d].begin(), doc_words[d].end());
        for (std::size_t w : doc_words[d]) ++df[w];
    }

    const auto co_df = [&](std::size_t a, std::size_t b) {
        long count = 0;
        for (const auto& words : doc_words)
            if (std::binary_search(words.begin(), words.end(), a) &&
                std::binary_search(words.begin(), words.end(), b))
                ++count;
        return count;
    };

    CoherenceResult result;
    std::unordered_set<std::string> excluded;
    for (std::size_t k = 0; k < model.num_topics; ++k) {
        std::vector<std::size_t> top;
        for (std::size_t w : ranked_words(model.phi[k], top_n)) {
            if (df[w] == 0) {
                excluded.insert(model.vocab[w]);
                continue;
            }
            top.push_back(w);
        }
        double score = 0.0;
        for (std::size_t i = 0; i < top.size(); ++i)
            for (std::size_t j = i + 1; j < top.size(); ++j)
                score += std::log(
                    static_cast<double>(co_df(top[i], top[j]) + 1) /
                    static_cast<double>(df[top[j]]));
        result.per_topic.push_back(score);
    }
    result.excluded_words.assign(excluded.begin(), excluded.end());
    std::sort(result.excluded_words.begin(), result.excluded_words.end());
    result.mean = result.per_topic.empty()
                      ? 0.0
                      : std::accumulate(result.per_topic.begin(),
                                        result.per_topic.end(), 0.0) /
                            static_cast<double>(result.per_topic.size());
    return result;
}

KSelection select_k(std::span<const TokenizedDoc> docs,
                    std::span<const std::size_t> ks, const LdaConfig& tmpl) {
    if (ks.empty()) throw InputError("select_k: no candidate topic counts");

    std::vector<std::size_t> candidates(ks.begin(), ks.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    KSelection selection;
    double best_score = 0.0;
    for (std::size_t k : candidates) {
        LdaConfig cfg = tmpl;
        cfg.num_topics = k;
        cfg.seed = derive_seed(tmpl.seed, k);
        const LdaModel model = fit_lda_gibbs(docs, cfg);
        const double score = coherence_umass(model, docs).mean;
        selection.scores.emplace_back(k, score);
        // strict comparison + ascending order: ties fall to the smaller K
        if (selection.best_k == 0 || score > best_score) {
            selection.best_k = k;
            best_score = score;
        }
    }
    return selection;
}

namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

} // namespace

std::vector<TopicCluster> cluster_topics(const LdaModel& model,
                                         std::size_t target) {
    const std::size_t K = model.num_topics;
    if (target < 1) throw InputError("cluster_topics: target must be >= 1");
    if (K < target)
        throw InputError("cluster_topics: model has " + std::to_string(K) +
                         " topics, fewer than target " +
                         std::to_string(target));

    std::vector<std::vector<double>> sim(K, std::vector<double>(K, 1.0));
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j)
            sim[i][j] = sim[j][i] = cosine(model.phi[i], model.phi[j]);

    std::vector<std::vector<std::size_t>> clusters(K);
    for (std::size_t k = 0; k < K; ++k) clusters[k] = {k};

    while (clusters.size() > target) {
        std::size_t best_i = 0, best_j = 1;
        double best_sim = -2.0;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double total = 0.0;
                for (std::size_t a : clusters[i])
                    for (std::size_t b : clusters[j]) total += sim[a][b];
                const double linkage =
                    total / static_cast<double>(clusters[i].size() *
                                                clusters[j].size());
                if (linkage > best_sim) {
                    best_sim = linkage;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        auto& into = clusters[best_i];
        into.insert(into.end(), clusters[best_j].begin(),
                    clusters[best_j].end());
        std::sort(into.begin(), into.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_j));
    }

    std::vector<TopicCluster> result;
    result.reserve(clusters.size());
    const std::size_t n_words = model.vocab.size();
    for (auto& members : clusters) {
        TopicCluster cluster;
        cluster.members = std::move(members);
        cluster.distribution.assign(n_words, 0.0);
        for (std::size_t topic : cluster.members)
            for (std::size_t w = 0; w < n_words; ++w)
                cluster.distribution[w] += model.phi[topic][w];
        const double n = static_cast<double>(cluster.members.size());
        for (double& p : cluster.distribution) p /= n;
        result.push_back(std::move(cluster));
    }
    return result;
}

std::vector<std::string> top_words(const TopicCluster& cluster,
                                   const std::vector<std::string>& vocab,
                                   std::size_t n) {
    std::vector<std::string> words;
    for (std::size_t w : ranked_words(cluster.distribution, n))
        words.push_back(vocab[w]);
    return words;
}

PipelineResult run_topic_pipeline(const Corpus& corpus,
                                  const LabelMap& predictions,
                                  const Lexicon& lexicon,
                                  const PipelineConfig& cfg) {
    PipelineResult result;
    for (int c = 0; c < kNumRacistCategories; ++c) {
        for (int s = 0; s < kNumStages; ++s) {
            const auto category = static_cast<Category>(c);
            const auto stage = static_cast<Stage>(s);

            std::vector<TokenizedDoc> docs;
            for (const Tweet& tweet : corpus.tweets) {
                const auto it = predictions.find(tweet.id);
                if (it == predictions.end() || it->second != category)
                    continue;
                if (try_assign_stage(tweet.created_at) != stage) continue;
                TokenizedDoc doc =
                    clean_for_topics(tweet.text, lexicon, tweet.id);
                if (!doc.tokens.empty()) docs.push_back(std::move(doc));
            }
            docs = detect_bigrams(docs, cfg.bigrams);

            CellResult cell;
            cell.category = category;
            cell.stage = stage;
            cell.doc_count = docs.size();
            if (docs.size() < cfg.min_docs) {
                result.cells.push_back(std::move(cell));
                continue;
            }

            LdaConfig tmpl = cfg.lda;
            tmpl.seed = derive_seed(
                cfg.lda.seed,
                static_cast<std::uint64_t>(c * kNumStages + s));
            const KSelection selection = select_k(docs, cfg.ks, tmpl);
            cell.coherence_by_k = selection.scores;
            cell.chosen_k = selection.best_k;

            LdaConfig fit_cfg = tmpl;
            fit_cfg.num_topics = selection.best_k;
            fit_cfg.seed = derive_seed(tmpl.seed, selection.best_k);
            const LdaModel model = fit_lda_gibbs(docs, fit_cfg);

            const std::size_t target =
                std::min(cfg.target_clusters, model.num_topics);
            for (const TopicCluster& cluster : cluster_topics(model, target)) {
                ClusterSummary summary;
                summary.members = cluster.members;
                const std::size_t n_words =
                    std::min(cfg.words_per_topic, model.vocab.size());
                for (std::size_t w :
                     ranked_words(cluster.distribution, n_words)) {
                    summary.words.push_back(model.vocab[w]);
                    summary.probabilities.push_back(cluster.distribution[w]);
                }
                cell.clusters.push_back(std::move(summary));
            }
            cell.sufficient = true;
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

namespace {

nlohmann::json cell_json(const CellResult& cell) {
    nlohmann::json doc;
    doc["category"] = category_name(cell.category);
    doc["stage"] = stage_name(cell.stage);
    doc["doc_count"] = cell.doc_count;
    doc["sufficient"] = cell.sufficient;
    doc["K"] = cell.chosen_k;
    nlohmann::json coherence = nlohmann::json::array();
    for (const auto& [k, score] : cell.coherence_by_k)
        coherence.push_back({{"K", k}, {"coherence", score}});
    doc["coherence_by_K"] = std::move(coherence);
    nlohmann::json clusters = nlohmann::json::array();
    for (const ClusterSummary& cluster : cell.clusters) {
        clusters.push_back({{"members", cluster.members},
                            {"top_words", cluster.words},
                            {"probabilities", cluster.probabilities}});
    }
    doc["clusters"] = std::move(clusters);
    return doc;
}

Category category_by_name(const std::string& name) {
    for (int c = 0; c < kNumCategories; ++c)
        if (name == category_name(static_cast<Category>(c)))
            return static_cast<Category>(c);
    throw InputError("unknown category name: '" + name + "'");
}

Stage stage_by_name(const std::string& name) {
    for (int s = 0; s < kNumStages; ++s)
        if (name == stage_name(static_cast<Stage>(s)))
            return static_cast<Stage>(s);
    throw InputError("unknown stage name: '" + name + "'");
}

} // namespace

std::string cell_to_json(const CellResult& cell) {
    return cell_json(cell).dump(2);
}

std::string pipeline_to_json(const PipelineResult& result) {
    nlohmann::json doc;
    nlohmann::json cells = nlohmann::json::array();
    for (const CellResult& cell : result.cells) cells.push_back(cell_json(cell));
    doc["cells"] = std::move(cells);
    return doc.dump(2);
}

PipelineResult pipeline_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("topic result: invalid JSON (") +
                         e.what() + ")");
    }
    PipelineResult result;
    try {
        for (const auto& c : doc.at("cells")) {
            CellResult cell;
            cell.category = category_by_name(c.at("category"));
            cell.stage = stage_by_name(c.at("stage"));
            cell.doc_count = c.at("doc_count").get<std::size_t>();
            cell.sufficient = c.at("sufficient").get<bool>();
            cell.chosen_k = c.at("K").get<std::size_t>();
            for (const auto& row : c.at("coherence_by_K"))
                cell.coherence_by_k.emplace_back(
                    row.at("K").get<std::size_t>(),
                    row.at("coherence").get<double>());
            for (const auto& cl : c.at("clusters")) {
                ClusterSummary cluster;
                cluster.members =
                    cl.at("members").get<std::vector<std::size_t>>();
                cluster.words =
                    cl.at("top_words").get<std::vector<std::string>>();
                cluster.probabilities =
                    cl.at("probabilities").get<std::vector<double>>();
                cell.clusters.push_back(std::move(cluster));
            }
            result.cells.push_back(std::move(cell));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("topic result: missing field (") +
                         e.what() + ")");
    }
    return result;
}

} // namespace twm
