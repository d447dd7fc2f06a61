// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_CLASSIFY_HPP
#define TWM_CLASSIFY_HPP

#include "twm/corpus.hpp"
#include "twm/features.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace twm {

enum class FeatureKind { Bow, Tfidf, Embedding };

const char* feature_kind_name(FeatureKind k);
std::optional<FeatureKind> feature_kind_from_name(const std::string& name);

struct LinearModel {
    std::size_t dim = 0;
    FeatureKind kind = FeatureKind::Tfidf;
    std::array<std::vector<double>, kNumCategories> weights; // rows, size dim
    std::array<double, kNumCategories> bias{};
};

struct TrainConfig {
    double lambda = 1e-4;
    std::size_t epochs = 10;
    std::uint64_t seed = 1;
};

// One-vs-rest hinge-loss linear classifier trained by Pegasos stochastic
// subgradient descent (step 1/(lambda*t), per-epoch reshuffle, bias not
// regularized). Bit-deterministic given the seed.
LinearModel train_ovr_svm(std::span<const FeatureVector> X,
                          std::span<const Category> y, const TrainConfig& cfg);

struct Prediction {
    Category category;
    std::array<double, kNumCategories> scores{};
};

// argmax of w_c.x + b_c; ties go to the lowest category code.
Prediction predict(const LinearModel& model, const FeatureVector& x);

// Regularized hinge objective of one binary (class-vs-rest) problem; the
// value at zero weights is exactly 1.
double class_objective(const LinearModel& model, Category c,
                       std::span<const FeatureVector> X,
                       std::span<const Category> y, double lambda);

// Fold id per sample. Per-class counts across folds differ by at most 1.
std::vector<int> stratified_kfold(std::span<const Category> y, std::size_t k,
                                  std::uint64_t seed);

struct EvalResult {
    double accuracy = 0.0;
    double weighted_f1 = 0.0;
    std::array<std::array<long, kNumCategories>, kNumCategories> confusion{};
    std::array<double, kNumCategories> per_class_f1{};
};

// confusion[i][j] = count(gold = i, pred = j). Per-class F1 is 0 when
// undefined; weighted F1 is the support-weighted mean.
EvalResult evaluate(std::span<const Category> pred,
                    std::span<const Category> gold);

struct CVReport {
    std::vector<double> fold_accuracy;
    std::vector<double> fold_weighted_f1;
    double mean_accuracy = 0.0;
    double mean_weighted_f1 = 0.0;
    // Row-normalized per fold, averaged over folds with support.
    std::array<std::array<double, kNumCategories>, kNumCategories> confusion{};
};

// Stratified k-fold CV over cleaned documents. The vocabulary (and idf) is
// fit on each fold's training part only. `embeddings` is required for
// FeatureKind::Embedding and ignored otherwise.
CVReport cross_validate(std::span<const std::string> docs,
                        std::span<const Category> labels, FeatureKind kind,
                        const TrainConfig& cfg, std::size_t k = 5,
                        std::size_t min_df = 2,
                        const EmbeddingTable* embeddings = nullptr);

struct GridResult {
    TrainConfig best;
    CVReport best_report;
    std::vector<std::pair<TrainConfig, double>> scores; // mean weighted F1
};

// Evaluates each config by CV mean weighted F1; ties keep grid order.
GridResult grid_search(std::span<const std::string> docs,
                       std::span<const Category> labels, FeatureKind kind,
                       std::span<const TrainConfig> grid, std::size_t k = 5,
                       std::size_t min_df = 2,
                       const EmbeddingTable* embeddings = nullptr);

inline std::vector<TrainConfig> default_grid(std::uint64_t seed) {
    std::vector<TrainConfig> grid;
    for (double lambda : {1e-5, 1e-4, 1e-3})
        for (std::size_t epochs : {std::size_t{10}, std::size_t{30}})
            grid.push_back({lambda, epochs, seed});
    return grid;
}

struct ImportResult {
    LabelMap predictions;             // ids present in the corpus
    std::vector<std::string> unknown_ids; // rows referencing no tweet
};

// Predictions produced outside this pipeline (`id,label` CSV); they flow
// through counting and topic analysis exactly like model output.
ImportResult import_external_predictions(const std::filesystem::path& path,
                                         const Corpus& corpus);

// Dense vector -> sparse feature vector (zeros dropped).
FeatureVector to_feature_vector(const std::vector<double>& dense);

void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

} // namespace twm

#endif
