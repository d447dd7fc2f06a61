// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

// tweetmine: stage-wise tweet classification and topic mining pipeline.
//
// Subcommands: ingest, snowball, reliability, cv, grid, train, predict,
// import-preds, topics, report. Every run writes a manifest.json next to
// its outputs. Exit codes: 0 ok, 2 usage, 3 input error, 4 internal.

#include "twm/classify.hpp"
#include "twm/corpus.hpp"
#include "twm/errors.hpp"
#include "twm/features.hpp"
#include "twm/preprocess.hpp"
#include "twm/report.hpp"
#include "twm/snowball.hpp"
#include "twm/topics.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using twm::InputError;

// Collects manifest bookkeeping for one run: inputs get digested, outputs
// listed, phases timed.
class Run {
public:
    Run(std::string command, std::filesystem::path out_dir, std::uint64_t seed)
        : out_dir_(std::move(out_dir)), start_(clock::now()) {
        manifest_.command = std::move(command);
        manifest_.seed = seed;
        std::filesystem::create_directories(out_dir_);
    }

    const std::filesystem::path& dir() const { return out_dir_; }

    std::filesystem::path subdir(const std::string& name) const {
        const auto p = out_dir_ / name;
        std::filesystem::create_directories(p);
        return p;
    }

    void config(const std::string& key, const std::string& value) {
        manifest_.config[key] = value;
    }
    void config(const std::string& key, double value) {
        config(key, std::to_string(value));
    }
    void config(const std::string& key, std::size_t value) {
        config(key, std::to_string(value));
    }

    std::filesystem::path input(const std::filesystem::path& path) {
        manifest_.input_digests[path.string()] = twm::file_digest(path);
        return path;
    }

    void write(const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path);
        if (!out) throw InputError("cannot write output: " + path.string());
        out << content;
        manifest_.outputs.push_back(path.string());
    }

    void note_output(const std::filesystem::path& path) {
        manifest_.outputs.push_back(path.string());
    }

    void finish() {
        using std::chrono::duration;
        manifest_.timings_ms["total"] =
            duration<double, std::milli>(clock::now() - start_).count();
        manifest_.created_at = twm::format_rfc3339_utc(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
        twm::write_manifest(manifest_, out_dir_ / "manifest.json");
    }

private:
    using clock = std::chrono::steady_clock;
    std::filesystem::path out_dir_;
    clock::time_point start_;
    twm::RunManifest manifest_;
};

twm::FeatureKind parse_feature_kind(const std::string& name) {
    const auto kind = twm::feature_kind_from_name(name);
    if (!kind)
        throw InputError("unknown feature kind '" + name +
                         "' (expected bow, tfidf, or embed)");
    return *kind;
}

// Labeled slice of a corpus: classification-cleaned texts in corpus order.
struct LabeledDocs {
    std::vector<std::string> docs;
    std::vector<twm::Category> labels;
    std::vector<std::string> ids;
};

LabeledDocs labeled_docs(const twm::Corpus& corpus,
                         const twm::LabelMap& labels) {
    LabeledDocs out;
    for (const twm::Tweet& t : corpus.tweets) {
        const auto it = labels.find(t.id);
        if (it == labels.end()) continue;
        out.docs.push_back(twm::clean_for_classification(t.text));
        out.labels.push_back(it->second);
        out.ids.push_back(t.id);
    }
    if (out.docs.empty())
        throw InputError("no labeled tweets found in the corpus");
    return out;
}

nlohmann::json cv_report_json(const twm::CVReport& report) {
    nlohmann::json doc;
    doc["fold_accuracy"] = report.fold_accuracy;
    doc["fold_weighted_f1"] = report.fold_weighted_f1;
    doc["mean_accuracy"] = report.mean_accuracy;
    doc["mean_weighted_f1"] = report.mean_weighted_f1;
    doc["confusion"] = report.confusion;
    return doc;
}

twm::Lexicon load_optional_lexicon(const std::string& stopwords,
                                   const std::string& lemmas, Run& run) {
    twm::Lexicon lexicon;
    if (!stopwords.empty() || !lemmas.empty()) {
        if (stopwords.empty() || lemmas.empty())
            throw InputError(
                "--stopwords and --lemmas must be given together");
        lexicon = twm::load_lexicon(run.input(stopwords), run.input(lemmas));
    }
    return lexicon;
}

void cmd_ingest(Run& run, const std::string& corpus_path) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));

    std::array<long, twm::kNumStages> stage_counts{};
    long out_of_range = 0;
    std::int64_t min_ts = 0, max_ts = 0;
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
        const auto ts = corpus.tweets[i].created_at;
        if (i == 0) min_ts = max_ts = ts;
        min_ts = std::min(min_ts, ts);
        max_ts = std::max(max_ts, ts);
        const auto stage = twm::try_assign_stage(ts);
        if (stage)
            ++stage_counts[static_cast<std::size_t>(*stage)];
        else
            ++out_of_range;
    }

    nlohmann::json summary;
    summary["tweets"] = corpus.size();
    if (corpus.size() > 0) {
        summary["first_created_at"] = twm::format_rfc3339_utc(min_ts);
        summary["last_created_at"] = twm::format_rfc3339_utc(max_ts);
    }
    summary["stage_counts"] = {{"S1", stage_counts[0]},
                               {"S2", stage_counts[1]},
                               {"S3", stage_counts[2]},
                               {"out_of_range", out_of_range}};

    run.write(run.dir() / "corpus_summary.json", summary.dump(2) + "\n");
    run.write(run.subdir("tables") / "daily_counts.csv",
              twm::daily_counts_csv(twm::daily_counts(corpus)));
    std::cout << "ingested " << corpus.size() << " tweets\n";
}

void cmd_snowball(Run& run, const std::string& corpus_path,
                  const twm::SnowballConfig& config) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const twm::CorpusProvider provider(corpus);
    const twm::SnowballResult result = twm::run_snowball(provider, config);
    run.write(run.dir() / "snowball.json", twm::audit_to_json(result) + "\n");
    std::cout << "snowball accumulated " << result.hashtags.size()
              << " hashtags over " << result.rounds.size() << " round(s)\n";
}

void cmd_reliability(Run& run, const std::string& annotations_path) {
    const twm::AnnotationSet annotations =
        twm::load_annotations(run.input(annotations_path));
    const twm::ReliabilityReport report =
        twm::intercoder_reliability(annotations);

    nlohmann::json doc;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.pairwise)
        pairs.push_back({{"first", p.first},
                         {"second", p.second},
                         {"shared_items", p.shared_items},
                         {"agreement", p.agreement}});
    doc["pairwise"] = std::move(pairs);
    doc["overall"] = report.overall;
    run.write(run.dir() / "reliability.json", doc.dump(2) + "\n");
    std::cout << "overall inter-coder agreement: " << report.overall << "\n";
}

struct FeatureOptions {
    std::string features = "tfidf";
    std::size_t min_df = 2;
    std::string embeddings;
};

// Loads the embedding table when the feature kind needs one.
std::optional<twm::EmbeddingTable>
maybe_embeddings(const FeatureOptions& opt, twm::FeatureKind kind, Run& run) {
    if (kind != twm::FeatureKind::Embedding) return std::nullopt;
    if (opt.embeddings.empty())
        throw InputError("--features embed requires --embeddings FILE");
    return twm::load_embeddings(run.input(opt.embeddings));
}

void cmd_cv(Run& run, const std::string& corpus_path,
            const std::string& labels_path, const FeatureOptions& fopt,
            const twm::TrainConfig& cfg, std::size_t folds) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const twm::LabelMap labels = twm::load_labels(run.input(labels_path));
    const LabeledDocs data = labeled_docs(corpus, labels);
    const twm::FeatureKind kind = parse_feature_kind(fopt.features);
    const auto table = maybe_embeddings(fopt, kind, run);

    const twm::CVReport report =
        twm::cross_validate(data.docs, data.labels, kind, cfg, folds,
                            fopt.min_df, table ? &*table : nullptr);

    nlohmann::json doc = cv_report_json(report);
    doc["features"] = fopt.features;
    doc["folds"] = folds;
    doc["lambda"] = cfg.lambda;
    doc["epochs"] = cfg.epochs;
    doc["seed"] = cfg.seed;
    run.write(run.dir() / "cv_report.json", doc.dump(2) + "\n");
    std::cout << "cv mean accuracy " << report.mean_accuracy
              << ", mean weighted F1 " << report.mean_weighted_f1 << "\n";
}

void cmd_grid(Run& run, const std::string& corpus_path,
              const std::string& labels_path, const FeatureOptions& fopt,
              std::uint64_t seed, std::size_t folds,
              const std::vector<double>& lambdas,
              const std::vector<std::size_t>& epoch_choices) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const twm::LabelMap labels = twm::load_labels(run.input(labels_path));
    const LabeledDocs data = labeled_docs(corpus, labels);
    const twm::FeatureKind kind = parse_feature_kind(fopt.features);
    const auto table = maybe_embeddings(fopt, kind, run);

    std::vector<twm::TrainConfig> grid;
    for (double lambda : lambdas)
        for (std::size_t epochs : epoch_choices)
            grid.push_back({lambda, epochs, seed});

    const twm::GridResult result =
        twm::grid_search(data.docs, data.labels, kind, grid, folds,
                         fopt.min_df, table ? &*table : nullptr);

    nlohmann::json doc;
    nlohmann::json scores = nlohmann::json::array();
    for (const auto& [cfg, f1] : result.scores)
        scores.push_back({{"lambda", cfg.lambda},
                          {"epochs", cfg.epochs},
                          {"mean_weighted_f1", f1}});
    doc["scores"] = std::move(scores);
    doc["best"] = {{"lambda", result.best.lambda},
                   {"epochs", result.best.epochs}};
    doc["best_report"] = cv_report_json(result.best_report);
    doc["features"] = fopt.features;
    run.write(run.dir() / "grid_report.json", doc.dump(2) + "\n");
    std::cout << "grid best lambda " << result.best.lambda << ", epochs "
              << result.best.epochs << " (weighted F1 "
              << result.best_report.mean_weighted_f1 << ")\n";
}

void cmd_train(Run& run, const std::string& corpus_path,
               const std::string& labels_path, const FeatureOptions& fopt,
               const twm::TrainConfig& cfg) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const twm::LabelMap labels = twm::load_labels(run.input(labels_path));
    const LabeledDocs data = labeled_docs(corpus, labels);
    const twm::FeatureKind kind = parse_feature_kind(fopt.features);
    const auto table = maybe_embeddings(fopt, kind, run);

    std::vector<twm::FeatureVector> X;
    twm::Vocabulary vocab;
    if (kind == twm::FeatureKind::Embedding) {
        for (const auto& doc : data.docs)
            X.push_back(twm::to_feature_vector(twm::embed_average(doc, *table)));
    } else {
        vocab = twm::build_vocab(data.docs, fopt.min_df);
        for (const auto& doc : data.docs)
            X.push_back(kind == twm::FeatureKind::Bow
                            ? twm::bow_vector(doc, vocab)
                            : twm::tfidf_vector(doc, vocab));
    }

    twm::LinearModel model = twm::train_ovr_svm(X, data.labels, cfg);
    model.kind = kind;

    const auto models = run.subdir("models");
    twm::save_model(model, models / "model.json");
    run.note_output(models / "model.json");
    if (kind != twm::FeatureKind::Embedding) {
        twm::save_vocabulary(vocab, models / "vocab.tsv");
        run.note_output(models / "vocab.tsv");
    }
    std::cout << "trained " << fopt.features << " model on "
              << data.docs.size() << " labeled tweets (dim " << model.dim
              << ")\n";
}

void cmd_predict(Run& run, const std::string& corpus_path,
                 const std::string& model_path, std::string vocab_path,
                 const std::string& embeddings_path) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const twm::LinearModel model = twm::load_model(run.input(model_path));

    twm::Vocabulary vocab;
    std::optional<twm::EmbeddingTable> table;
    if (model.kind == twm::FeatureKind::Embedding) {
        if (embeddings_path.empty())
            throw InputError("embedding model requires --embeddings FILE");
        table = twm::load_embeddings(run.input(embeddings_path));
    } else {
        if (vocab_path.empty())
            vocab_path = (std::filesystem::path(model_path).parent_path() /
                          "vocab.tsv")
                             .string();
        vocab = twm::load_vocabulary(run.input(vocab_path));
        if (vocab.size() != model.dim)
            throw InputError("vocabulary size " +
                             std::to_string(vocab.size()) +
                             " does not match model dimension " +
                             std::to_string(model.dim));
    }

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"id", "label"});
    for (const twm::Tweet& t : corpus.tweets) {
        const std::string doc = twm::clean_for_classification(t.text);
        twm::FeatureVector x;
        switch (model.kind) {
        case twm::FeatureKind::Bow: x = twm::bow_vector(doc, vocab); break;
        case twm::FeatureKind::Tfidf: x = twm::tfidf_vector(doc, vocab); break;
        case twm::FeatureKind::Embedding:
            x = twm::to_feature_vector(twm::embed_average(doc, *table));
            break;
        }
        while (!x.entries.empty() && x.entries.back().first >= model.dim)
            x.entries.pop_back();
        const twm::Prediction p = twm::predict(model, x);
        rows.push_back(
            {t.id, std::to_string(static_cast<int>(p.category))});
    }
    run.write(run.dir() / "predictions.csv", twm::render_csv(rows));
    std::cout << "predicted " << corpus.size() << " tweets\n";
}

void cmd_import_preds(Run& run, const std::string& corpus_path,
                      const std::string& preds_path) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const twm::ImportResult result =
        twm::import_external_predictions(run.input(preds_path), corpus);

    twm::save_labels(result.predictions, run.dir() / "predictions.csv");
    run.note_output(run.dir() / "predictions.csv");
    nlohmann::json warnings;
    warnings["unknown_ids"] = result.unknown_ids;
    warnings["imported"] = result.predictions.size();
    run.write(run.dir() / "import_warnings.json", warnings.dump(2) + "\n");

    std::cout << "imported " << result.predictions.size() << " predictions";
    if (!result.unknown_ids.empty())
        std::cout << " (" << result.unknown_ids.size() << " unknown ids)";
    std::cout << "\n";
}

void cmd_topics(Run& run, const std::string& corpus_path,
                const std::string& preds_path, const std::string& stopwords,
                const std::string& lemmas, const twm::PipelineConfig& cfg) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const twm::ImportResult preds =
        twm::import_external_predictions(run.input(preds_path), corpus);
    const twm::Lexicon lexicon = load_optional_lexicon(stopwords, lemmas, run);

    const twm::PipelineResult result =
        twm::run_topic_pipeline(corpus, preds.predictions, lexicon, cfg);

    const auto topics_dir = run.subdir("topics");
    run.write(topics_dir / "topics.json", twm::pipeline_to_json(result) + "\n");
    for (const twm::CellResult& cell : result.cells) {
        const std::string name = std::string("cell_") +
                                 twm::category_name(cell.category) + "_" +
                                 twm::stage_name(cell.stage) + ".json";
        run.write(topics_dir / name, twm::cell_to_json(cell) + "\n");
    }

    const auto tables = run.subdir("tables");
    for (int c = 0; c < twm::kNumRacistCategories; ++c) {
        const auto category = static_cast<twm::Category>(c);
        const std::string base =
            std::string("topics_") + twm::category_name(category);
        run.write(tables / (base + ".md"),
                  twm::topic_grid_markdown(result, category));
        run.write(tables / (base + ".csv"),
                  twm::topic_grid_csv(result, category));
    }

    std::size_t sufficient = 0;
    for (const auto& cell : result.cells) sufficient += cell.sufficient;
    std::cout << "topics written for " << sufficient << "/"
              << result.cells.size() << " cells\n";
}

void cmd_report(Run& run, const std::string& corpus_path,
                const std::string& labels_path, const std::string& preds_path,
                const std::vector<std::string>& cv_specs,
                const std::string& topics_json_path) {
    const twm::Corpus corpus = twm::load_corpus(run.input(corpus_path));
    const auto tables = run.subdir("tables");

    // corpus-derived tables
    run.write(tables / "daily_counts.csv",
              twm::daily_counts_csv(twm::daily_counts(corpus)));
    std::vector<std::size_t> token_counts;
    for (const twm::Tweet& t : corpus.tweets)
        token_counts.push_back(
            twm::whitespace_tokens(twm::clean_for_classification(t.text))
                .size());
    run.write(
        tables / "token_length_stats.csv",
        twm::token_length_stats_csv(twm::token_length_stats(token_counts)));

    // category x stage counts need labels or predictions
    if (labels_path.empty() && preds_path.empty())
        throw InputError("missing upstream artifact: counts table needs "
                         "--labels or --preds");
    twm::LabelMap labels;
    if (!preds_path.empty())
        labels =
            twm::import_external_predictions(run.input(preds_path), corpus)
                .predictions;
    else
        labels = twm::load_labels(run.input(labels_path));
    const twm::StageCategoryCounts counts =
        twm::stage_category_counts(corpus, labels);
    run.write(tables / "counts.csv", twm::counts_table_csv(counts));
    run.write(tables / "counts.md", twm::counts_table_markdown(counts));

    // model comparison from prior cv/grid runs
    if (cv_specs.empty())
        throw InputError("missing upstream artifact: model comparison needs "
                         "--cv NAME=cv_report.json (repeatable)");
    std::vector<twm::ModelComparisonRow> comparison;
    for (const std::string& spec : cv_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size())
            throw InputError("bad --cv spec '" + spec +
                             "' (expected NAME=path)");
        const std::string name = spec.substr(0, eq);
        const std::string path = spec.substr(eq + 1);
        std::ifstream in(run.input(path));
        nlohmann::json doc;
        try {
            in >> doc;
            comparison.push_back(
                {name, doc.at("mean_accuracy").get<double>() * 100.0,
                 doc.at("mean_weighted_f1").get<double>()});
        } catch (const nlohmann::json::exception& e) {
            throw InputError("cv report " + path + ": " + e.what());
        }
    }
    run.write(tables / "model_comparison.csv",
              twm::model_comparison_csv(comparison));
    run.write(tables / "model_comparison.md",
              twm::model_comparison_markdown(comparison));

    // topic grids from a prior topics run
    if (topics_json_path.empty())
        throw InputError(
            "missing upstream artifact: topic grids need --topics-json");
    std::ifstream topics_in(run.input(topics_json_path));
    std::stringstream buffer;
    buffer << topics_in.rdbuf();
    const twm::PipelineResult topics =
        twm::pipeline_from_json_text(buffer.str());
    for (int c = 0; c < twm::kNumRacistCategories; ++c) {
        const auto category = static_cast<twm::Category>(c);
        const std::string base =
            std::string("topics_") + twm::category_name(category);
        run.write(tables / (base + ".md"),
                  twm::topic_grid_markdown(topics, category));
        run.write(tables / (base + ".csv"),
                  twm::topic_grid_csv(topics, category));
    }
    std::cout << "report tables written to " << tables.string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stage-wise tweet classification and topic mining"};
    app.fallthrough();
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", seed, "Base random seed")->capture_default_str();
    app.set_config("--config", "", "INI config file ([subcommand] sections)");
    app.require_subcommand(1);

    // ingest
    auto* ingest =
        app.add_subcommand("ingest", "Validate and summarize a corpus");
    std::string corpus_path;
    ingest->add_option("corpus", corpus_path, "Corpus JSONL file")->required();

    // snowball
    auto* snowball =
        app.add_subcommand("snowball", "Dynamic hashtag discovery");
    std::string sb_corpus;
    twm::SnowballConfig sb_config;
    snowball->add_option("--corpus", sb_corpus, "Corpus JSONL file")
        ->required();
    snowball->add_option("--seeds", sb_config.seeds, "Seed hashtags")
        ->required()
        ->delimiter(',');
    snowball
        ->add_option("--sample-size", sb_config.sample_size,
                     "Tweets sampled per hashtag")
        ->capture_default_str();
    snowball->add_option("--top-k", sb_config.top_k, "Hashtags kept per round")
        ->capture_default_str();
    snowball
        ->add_option("--min-occurrences", sb_config.min_occurrences,
                     "Occurrence floor from round 2 on")
        ->capture_default_str();
    snowball->add_option("--rounds", sb_config.rounds, "Sampling rounds")
        ->capture_default_str();

    // reliability
    auto* reliability =
        app.add_subcommand("reliability", "Inter-annotator agreement");
    std::string annotations_path;
    reliability
        ->add_option("--annotations", annotations_path,
                     "CSV annotator,id,label")
        ->required();

    // shared classifier options
    const auto add_feature_options = [](CLI::App* cmd, FeatureOptions& opt) {
        cmd->add_option("--features", opt.features,
                        "Feature kind: bow, tfidf, embed")
            ->capture_default_str();
        cmd->add_option("--min-df", opt.min_df,
                        "Minimum document frequency for vocabulary terms")
            ->capture_default_str();
        cmd->add_option("--embeddings", opt.embeddings,
                        "Embedding table (word v1..vd per line)");
    };

    // cv
    auto* cv = app.add_subcommand("cv", "Stratified cross-validation");
    std::string cv_corpus, cv_labels;
    FeatureOptions cv_fopt;
    double cv_lambda = 1e-4;
    std::size_t cv_epochs = 10, cv_folds = 5;
    cv->add_option("--corpus", cv_corpus, "Corpus JSONL file")->required();
    cv->add_option("--labels", cv_labels, "Labels CSV (id,label)")->required();
    add_feature_options(cv, cv_fopt);
    cv->add_option("--lambda", cv_lambda, "Regularization strength")
        ->capture_default_str();
    cv->add_option("--epochs", cv_epochs, "Training epochs")
        ->capture_default_str();
    cv->add_option("--folds", cv_folds, "Fold count")->capture_default_str();

    // grid
    auto* grid = app.add_subcommand("grid", "Grid search over lambda/epochs");
    std::string grid_corpus, grid_labels;
    FeatureOptions grid_fopt;
    std::size_t grid_folds = 5;
    std::vector<double> grid_lambdas = {1e-5, 1e-4, 1e-3};
    std::vector<std::size_t> grid_epochs = {10, 30};
    grid->add_option("--corpus", grid_corpus, "Corpus JSONL file")->required();
    grid->add_option("--labels", grid_labels, "Labels CSV")->required();
    add_feature_options(grid, grid_fopt);
    grid->add_option("--folds", grid_folds, "Fold count")
        ->capture_default_str();
    grid->add_option("--lambdas", grid_lambdas, "Lambda grid")->delimiter(',');
    grid->add_option("--epoch-grid", grid_epochs, "Epoch grid")
        ->delimiter(',');

    // train
    auto* train = app.add_subcommand("train", "Train on all labeled tweets");
    std::string train_corpus, train_labels;
    FeatureOptions train_fopt;
    double train_lambda = 1e-4;
    std::size_t train_epochs = 10;
    train->add_option("--corpus", train_corpus, "Corpus JSONL file")
        ->required();
    train->add_option("--labels", train_labels, "Labels CSV")->required();
    add_feature_options(train, train_fopt);
    train->add_option("--lambda", train_lambda, "Regularization strength")
        ->capture_default_str();
    train->add_option("--epochs", train_epochs, "Training epochs")
        ->capture_default_str();

    // predict
    auto* predict =
        app.add_subcommand("predict", "Label a corpus with a model");
    std::string pr_corpus, pr_model, pr_vocab, pr_embeddings;
    predict->add_option("--corpus", pr_corpus, "Corpus JSONL file")
        ->required();
    predict->add_option("--model", pr_model, "Model JSON file")->required();
    predict->add_option("--vocab", pr_vocab,
                        "Vocabulary TSV (defaults next to the model)");
    predict->add_option("--embeddings", pr_embeddings,
                        "Embedding table for embed models");

    // import-preds
    auto* import_preds =
        app.add_subcommand("import-preds", "Import external predictions");
    std::string ip_corpus, ip_preds;
    import_preds->add_option("--corpus", ip_corpus, "Corpus JSONL file")
        ->required();
    import_preds
        ->add_option("--preds", ip_preds, "Predictions CSV (id,label)")
        ->required();

    // topics
    auto* topics =
        app.add_subcommand("topics", "Per category x stage topic models");
    std::string tp_corpus, tp_preds, tp_stopwords, tp_lemmas;
    twm::PipelineConfig tp_cfg;
    topics->add_option("--corpus", tp_corpus, "Corpus JSONL file")->required();
    topics->add_option("--preds", tp_preds, "Predictions CSV (id,label)")
        ->required();
    topics->add_option("--stopwords", tp_stopwords, "Stopword file");
    topics->add_option("--lemmas", tp_lemmas, "Lemma TSV file");
    topics->add_option("--ks", tp_cfg.ks, "Candidate topic counts")
        ->delimiter(',');
    topics->add_option("--iterations", tp_cfg.lda.iterations, "Gibbs passes")
        ->capture_default_str();
    topics->add_option("--burn-in", tp_cfg.lda.burn_in, "Burn-in passes")
        ->capture_default_str();
    topics
        ->add_option("--optimize-interval", tp_cfg.lda.optimize_interval,
                     "Alpha re-estimation cadence after burn-in")
        ->capture_default_str();
    topics->add_option("--alpha", tp_cfg.lda.alpha,
                       "Doc-topic prior (<=0 means 1/K)");
    topics->add_option("--beta", tp_cfg.lda.beta,
                       "Topic-word prior (<=0 means 1/K)");
    topics->add_option("--min-docs", tp_cfg.min_docs, "Docs needed per cell")
        ->capture_default_str();
    topics
        ->add_option("--clusters", tp_cfg.target_clusters,
                     "Merged clusters per cell")
        ->capture_default_str();
    topics
        ->add_option("--words", tp_cfg.words_per_topic,
                     "Keywords per cluster")
        ->capture_default_str();
    topics
        ->add_option("--bigram-min-count", tp_cfg.bigrams.min_count,
                     "Bigram count floor")
        ->capture_default_str();
    topics
        ->add_option("--bigram-threshold", tp_cfg.bigrams.score_threshold,
                     "Bigram score threshold")
        ->capture_default_str();

    // report
    auto* report = app.add_subcommand("report", "Render all result tables");
    std::string rp_corpus, rp_labels, rp_preds, rp_topics;
    std::vector<std::string> rp_cv;
    report->add_option("--corpus", rp_corpus, "Corpus JSONL file")->required();
    report->add_option("--labels", rp_labels, "Gold labels CSV");
    report->add_option("--preds", rp_preds, "Predictions CSV");
    report->add_option("--cv", rp_cv,
                       "NAME=cv_report.json for the comparison table");
    report->add_option("--topics-json", rp_topics,
                       "topics.json from a topics run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(ingest)) {
            Run run("ingest", out_dir, seed);
            run.config("corpus", corpus_path);
            cmd_ingest(run, corpus_path);
            run.finish();
        } else if (app.got_subcommand(snowball)) {
            Run run("snowball", out_dir, seed);
            run.config("sample_size", sb_config.sample_size);
            run.config("top_k", sb_config.top_k);
            run.config("min_occurrences", sb_config.min_occurrences);
            run.config("rounds", sb_config.rounds);
            cmd_snowball(run, sb_corpus, sb_config);
            run.finish();
        } else if (app.got_subcommand(reliability)) {
            Run run("reliability", out_dir, seed);
            cmd_reliability(run, annotations_path);
            run.finish();
        } else if (app.got_subcommand(cv)) {
            Run run("cv", out_dir, seed);
            run.config("features", cv_fopt.features);
            run.config("lambda", cv_lambda);
            run.config("epochs", cv_epochs);
            run.config("folds", cv_folds);
            run.config("min_df", cv_fopt.min_df);
            cmd_cv(run, cv_corpus, cv_labels, cv_fopt,
                   {cv_lambda, cv_epochs, seed}, cv_folds);
            run.finish();
        } else if (app.got_subcommand(grid)) {
            Run run("grid", out_dir, seed);
            run.config("features", grid_fopt.features);
            run.config("folds", grid_folds);
            cmd_grid(run, grid_corpus, grid_labels, grid_fopt, seed,
                     grid_folds, grid_lambdas, grid_epochs);
            run.finish();
        } else if (app.got_subcommand(train)) {
            Run run("train", out_dir, seed);
            run.config("features", train_fopt.features);
            run.config("lambda", train_lambda);
            run.config("epochs", train_epochs);
            run.config("min_df", train_fopt.min_df);
            cmd_train(run, train_corpus, train_labels, train_fopt,
                      {train_lambda, train_epochs, seed});
            run.finish();
        } else if (app.got_subcommand(predict)) {
            Run run("predict", out_dir, seed);
            cmd_predict(run, pr_corpus, pr_model, pr_vocab, pr_embeddings);
            run.finish();
        } else if (app.got_subcommand(import_preds)) {
            Run run("import-preds", out_dir, seed);
            cmd_import_preds(run, ip_corpus, ip_preds);
            run.finish();
        } else if (app.got_subcommand(topics)) {
            tp_cfg.lda.seed = seed;
            Run run("topics", out_dir, seed);
            run.config("iterations", tp_cfg.lda.iterations);
            run.config("burn_in", tp_cfg.lda.burn_in);
            run.config("optimize_interval", tp_cfg.lda.optimize_interval);
            run.config("min_docs", tp_cfg.min_docs);
            run.config("clusters", tp_cfg.target_clusters);
            run.config("words", tp_cfg.words_per_topic);
            cmd_topics(run, tp_corpus, tp_preds, tp_stopwords, tp_lemmas,
                       tp_cfg);
            run.finish();
        } else if (app.got_subcommand(report)) {
            Run run("report", out_dir, seed);
            cmd_report(run, rp_corpus, rp_labels, rp_preds, rp_cv, rp_topics);
            run.finish();
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
