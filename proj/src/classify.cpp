// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/classify.hpp"

#include "twm/errors.hpp"
#include "twm/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

namespace twm {

const char* feature_kind_name(FeatureKind k) {
    switch (k) {
    case FeatureKind::Bow: return "bow";
    case FeatureKind::Tfidf: return "tfidf";
    case FeatureKind::Embedding: return "embed";
    }
    return "unknown";
}

std::optional<FeatureKind> feature_kind_from_name(const std::string& name) {
    if (name == "bow") return FeatureKind::Bow;
    if (name == "tfidf") return FeatureKind::Tfidf;
    if (name == "embed" || name == "embedding") return FeatureKind::Embedding;
    return std::nullopt;
}

namespace {

double sparse_dot(const std::vector<double>& w, const FeatureVector& x) {
    double dot = 0.0;
    for (const auto& [idx, value] : x.entries) dot += w[idx] * value;
    return dot;
}

// Pegasos on one binary class-vs-rest problem. The weight vector is kept as
// scale * v so the per-step shrink is O(1) and only margin violations touch
// the (sparse) features.
void train_binary(std::span<const FeatureVector> X, std::span<const int> sign,
                  double lambda, std::size_t epochs, Rng& rng,
                  std::vector<double>& w_out, double& b_out) {
    const std::size_t n = X.size();
    std::vector<double> v(w_out.size(), 0.0);
    double scale = 1.0;
    double bias = 0.0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double s = static_cast<double>(sign[i]);
            const double margin = s * (scale * sparse_dot(v, X[i]) + bias);

            const double shrink = 1.0 - eta * lambda; // = 1 - 1/t
            if (shrink == 0.0) {
                std::fill(v.begin(), v.end(), 0.0);
                scale = 1.0;
            } else {
                scale *= shrink;
                if (scale < 1e-100) { // fold before underflow
                    for (double& value : v) value *= scale;
                    scale = 1.0;
                }
            }
            // the intercept shrinks with the weights; leaving it
            // unregularized lets the t=1 step (eta = 1/lambda) stick forever
            bias *= shrink;
            if (margin < 1.0) {
                const double step = eta * s / scale;
                for (const auto& [idx, value] : X[i].entries)
                    v[idx] += step * value;
                bias += eta * s;
            }
        }
    }
    for (std::size_t j = 0; j < v.size(); ++j) w_out[j] = scale * v[j];
    b_out = bias;
}

std::size_t feature_dim(std::span<const FeatureVector> X) {
    std::size_t dim = 0;
    for (const FeatureVector& x : X)
        if (!x.entries.empty()) dim = std::max(dim, x.entries.back().first + 1);
    return dim;
}

} // namespace

LinearModel train_ovr_svm(std::span<const FeatureVector> X,
                          std::span<const Category> y, const TrainConfig& cfg) {
    if (X.size() != y.size())
        throw InputError("train_ovr_svm: feature/label count mismatch");
    if (X.size() < 2) throw InputError("train_ovr_svm: need at least 2 samples");
    if (cfg.lambda <= 0.0) throw InputError("train_ovr_svm: lambda must be > 0");
    if (cfg.epochs < 1) throw InputError("train_ovr_svm: epochs must be >= 1");
    const std::set<Category> distinct(y.begin(), y.end());
    if (distinct.size() < 2)
        throw InputError("train_ovr_svm: degenerate single-class input");

    LinearModel model;
    model.dim = feature_dim(X);
    for (int c = 0; c < kNumCategories; ++c) {
        std::vector<int> sign(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            sign[i] = y[i] == static_cast<Category>(c) ? 1 : -1;
        auto& row = model.weights[static_cast<std::size_t>(c)];
        row.assign(model.dim, 0.0);
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(c)));
        train_binary(X, sign, cfg.lambda, cfg.epochs, rng, row,
                     model.bias[static_cast<std::size_t>(c)]);
    }
    return model;
}

Prediction predict(const LinearModel& model, const FeatureVector& x) {
    if (!x.entries.empty() && x.entries.back().first >= model.dim)
        throw InputError("predict: feature index exceeds model dimension");
    Prediction p;
    for (int c = 0; c < kNumCategories; ++c) {
        const auto ci = static_cast<std::size_t>(c);
        p.scores[ci] = sparse_dot(model.weights[ci], x) + model.bias[ci];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumCategories; ++c)
        if (p.scores[c] > p.scores[best]) best = c;
    p.category = static_cast<Category>(best);
    return p;
}

double class_objective(const LinearModel& model, Category c,
                       std::span<const FeatureVector> X,
                       std::span<const Category> y, double lambda) {
    const auto& w = model.weights[static_cast<std::size_t>(c)];
    const double b = model.bias[static_cast<std::size_t>(c)];
    double norm_sq = 0.0;
    for (double value : w) norm_sq += value * value;
    double hinge = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double s = y[i] == c ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - s * (sparse_dot(w, X[i]) + b));
    }
    return lambda / 2.0 * norm_sq + hinge / static_cast<double>(X.size());
}

std::vector<int> stratified_kfold(std::span<const Category> y, std::size_t k,
                                  std::uint64_t seed) {
    if (k < 2) throw InputError("stratified_kfold: k must be >= 2");
    if (k > y.size())
        throw InputError("stratified_kfold: k=" + std::to_string(k) +
                         " exceeds sample count " + std::to_string(y.size()));

    std::vector<int> fold(y.size(), -1);
    for (int c = 0; c < kNumCategories; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] == static_cast<Category>(c)) members.push_back(i);
        if (members.empty()) continue;
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        rng.shuffle(members);
        for (std::size_t pos = 0; pos < members.size(); ++pos)
            fold[members[pos]] = static_cast<int>(pos % k);
    }
    return fold;
}

EvalResult evaluate(std::span<const Category> pred,
                    std::span<const Category> gold) {
    if (pred.size() != gold.size())
        throw InputError("evaluate: prediction/gold length mismatch");
    if (pred.empty()) throw InputError("evaluate: empty input");

    EvalResult result;
    long correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ++result.confusion[static_cast<std::size_t>(gold[i])]
                          [static_cast<std::size_t>(pred[i])];
        if (pred[i] == gold[i]) ++correct;
    }
    const double n = static_cast<double>(pred.size());
    result.accuracy = static_cast<double>(correct) / n;

    double weighted = 0.0;
    for (std::size_t c = 0; c < kNumCategories; ++c) {
        long support = 0, predicted = 0;
        for (std::size_t j = 0; j < kNumCategories; ++j) {
            support += result.confusion[c][j];
            predicted += result.confusion[j][c];
        }
        const long tp = result.confusion[c][c];
        const double precision =
            predicted > 0 ? static_cast<double>(tp) / predicted : 0.0;
        const double recall =
            support > 0 ? static_cast<double>(tp) / support : 0.0;
        const double f1 = precision + recall > 0.0
                              ? 2.0 * precision * recall / (precision + recall)
                              : 0.0;
        result.per_class_f1[c] = f1;
        weighted += static_cast<double>(support) / n * f1;
    }
    result.weighted_f1 = weighted;
    return result;
}

namespace {

std::vector<FeatureVector> vectorize(std::span<const std::string> docs,
                                     std::span<const std::size_t> indices,
                                     FeatureKind kind, const Vocabulary* vocab,
                                     const EmbeddingTable* embeddings) {
    std::vector<FeatureVector> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        switch (kind) {
        case FeatureKind::Bow:
            out.push_back(bow_vector(docs[i], *vocab));
            break;
        case FeatureKind::Tfidf:
            out.push_back(tfidf_vector(docs[i], *vocab));
            break;
        case FeatureKind::Embedding:
            out.push_back(to_feature_vector(embed_average(docs[i], *embeddings)));
            break;
        }
    }
    return out;
}

} // namespace

FeatureVector to_feature_vector(const std::vector<double>& dense) {
    FeatureVector vec;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0.0) vec.entries.emplace_back(i, dense[i]);
    return vec;
}

CVReport cross_validate(std::span<const std::string> docs,
                        std::span<const Category> labels, FeatureKind kind,
                        const TrainConfig& cfg, std::size_t k,
                        std::size_t min_df, const EmbeddingTable* embeddings) {
    if (docs.size() != labels.size())
        throw InputError("cross_validate: docs/labels length mismatch");
    if (kind == FeatureKind::Embedding && embeddings == nullptr)
        throw InputError("cross_validate: embedding features need a table");

    const std::vector<int> fold = stratified_kfold(labels, k, cfg.seed);

    CVReport report;
    std::array<std::array<double, kNumCategories>, kNumCategories> conf_sum{};
    std::array<long, kNumCategories> folds_with_support{};

    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train_idx, test_idx;
        for (std::size_t i = 0; i < docs.size(); ++i)
            (fold[i] == static_cast<int>(f) ? test_idx : train_idx).push_back(i);
        if (train_idx.empty() || test_idx.empty())
            throw InputError("cross_validate: empty fold " + std::to_string(f));

        // Vocabulary and idf come from the training part only.
        Vocabulary vocab;
        const Vocabulary* vocab_ptr = nullptr;
        if (kind != FeatureKind::Embedding) {
            std::vector<std::string> train_docs;
            train_docs.reserve(train_idx.size());
            for (std::size_t i : train_idx) train_docs.push_back(docs[i]);
            vocab = build_vocab(train_docs, min_df);
            vocab_ptr = &vocab;
        }

        const auto X_train = vectorize(docs, train_idx, kind, vocab_ptr, embeddings);
        auto X_test = vectorize(docs, test_idx, kind, vocab_ptr, embeddings);

        std::vector<Category> y_train, y_test;
        for (std::size_t i : train_idx) y_train.push_back(labels[i]);
        for (std::size_t i : test_idx) y_test.push_back(labels[i]);

        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = derive_seed(cfg.seed, 1000 + f);
        const LinearModel model = train_ovr_svm(X_train, y_train, fold_cfg);

        std::vector<Category> y_pred;
        y_pred.reserve(y_test.size());
        for (auto& x : X_test) {
            // Test docs may carry out-of-vocabulary indices wider than the
            // training dimension; clip them (they carry zero weight anyway).
            while (!x.entries.empty() && x.entries.back().first >= model.dim)
                x.entries.pop_back();
            y_pred.push_back(predict(model, x).category);
        }

        const EvalResult eval = evaluate(y_pred, y_test);
        report.fold_accuracy.push_back(eval.accuracy);
        report.fold_weighted_f1.push_back(eval.weighted_f1);

        for (std::size_t c = 0; c < kNumCategories; ++c) {
            long support = 0;
            for (std::size_t j = 0; j < kNumCategories; ++j)
                support += eval.confusion[c][j];
            if (support == 0) continue;
            ++folds_with_support[c];
            for (std::size_t j = 0; j < kNumCategories; ++j)
                conf_sum[c][j] += static_cast<double>(eval.confusion[c][j]) /
                                  static_cast<double>(support);
        }
    }

    for (std::size_t c = 0; c < kNumCategories; ++c)
        if (folds_with_support[c] > 0)
            for (std::size_t j = 0; j < kNumCategories; ++j)
                report.confusion[c][j] =
                    conf_sum[c][j] / static_cast<double>(folds_with_support[c]);

    const double nf = static_cast<double>(k);
    report.mean_accuracy =
        std::accumulate(report.fold_accuracy.begin(),
                        report.fold_accuracy.end(), 0.0) / nf;
    report.mean_weighted_f1 =
        std::accumulate(report.fold_weighted_f1.begin(),
                        report.fold_weighted_f1.end(), 0.0) / nf;
    return report;
}

GridResult grid_search(std::span<const std::string> docs,
                       std::span<const Category> labels, FeatureKind kind,
                       std::span<const TrainConfig> grid, std::size_t k,
                       std::size_t min_df, const EmbeddingTable* embeddings) {
    if (grid.empty()) throw InputError("grid_search: empty grid");

    GridResult result;
    bool have_best = false;
    CVReport best_report;
    for (const TrainConfig& cfg : grid) {
        CVReport report =
            cross_validate(docs, labels, kind, cfg, k, min_df, embeddings);
        result.scores.emplace_back(cfg, report.mean_weighted_f1);
        if (!have_best ||
            report.mean_weighted_f1 > best_report.mean_weighted_f1) {
            have_best = true;
            best_report = report;
            result.best = cfg;
        }
    }
    result.best_report = best_report;
    return result;
}

ImportResult import_external_predictions(const std::filesystem::path& path,
                                         const Corpus& corpus) {
    ImportResult result;
    const LabelMap raw = load_labels(path);
    for (const auto& [id, category] : raw) {
        if (corpus.index_by_id.contains(id))
            result.predictions.emplace(id, category);
        else
            result.unknown_ids.push_back(id);
    }
    std::sort(result.unknown_ids.begin(), result.unknown_ids.end());
    return result;
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["format"] = "twm-linear-model";
    doc["version"] = 1;
    doc["feature_kind"] = feature_kind_name(model.kind);
    doc["dim"] = model.dim;
    doc["classes"] = kNumCategories;
    doc["bias"] = model.bias;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& w : model.weights) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] != 0.0) row.push_back({i, w[i]});
        rows.push_back(std::move(row));
    }
    doc["weights"] = std::move(rows);

    std::ofstream out(path);
    if (!out) throw InputError("cannot write model file: " + path.string());
    out << doc.dump(2) << '\n';
}

LinearModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("model file " + path.string() + ": invalid JSON (" +
                         e.what() + ")");
    }
    try {
        if (doc.at("format") != "twm-linear-model" || doc.at("version") != 1 ||
            doc.at("classes") != kNumCategories)
            throw InputError("model file " + path.string() +
                             ": unsupported format or version");
        LinearModel model;
        model.dim = doc.at("dim").get<std::size_t>();
        const auto kind = feature_kind_from_name(doc.at("feature_kind"));
        if (!kind)
            throw InputError("model file " + path.string() +
                             ": unknown feature kind");
        model.kind = *kind;
        const auto& bias = doc.at("bias");
        const auto& rows = doc.at("weights");
        if (bias.size() != kNumCategories || rows.size() != kNumCategories)
            throw InputError("model file " + path.string() +
                             ": wrong class count");
        for (std::size_t c = 0; c < kNumCategories; ++c) {
            model.bias[c] = bias[c].get<double>();
            model.weights[c].assign(model.dim, 0.0);
            for (const auto& entry : rows[c]) {
                const auto idx = entry.at(0).get<std::size_t>();
                if (idx >= model.dim)
                    throw InputError("model file " + path.string() +
                                     ": weight index out of range");
                model.weights[c][idx] = entry.at(1).get<double>();
            }
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("model file " + path.string() +
                         ": missing or mistyped field (" + e.what() + ")");
    }
}

} // namespace twm
