// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_REPORT_HPP
#define TWM_REPORT_HPP

#include "twm/classify.hpp"
#include "twm/corpus.hpp"
#include "twm/csv.hpp"
#include "twm/preprocess.hpp"
#include "twm/topics.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twm {

// annotator -> (tweet id -> label), for a shared tweet set.
using AnnotationSet = std::map<std::string, std::map<std::string, Category>>;

// CSV with header `annotator,id,label`.
AnnotationSet load_annotations(const std::filesystem::path& path);

struct ReliabilityReport {
    struct Pair {
        std::string first;
        std::string second;
        std::size_t shared_items = 0;
        double agreement = 0.0;
    };
    std::vector<Pair> pairwise;
    double overall = 0.0; // mean over pairs
};

// Pairwise raw percentage agreement on shared items, mean over annotator
// pairs. Throws InputError with fewer than two annotators or a pair sharing
// no items.
ReliabilityReport intercoder_reliability(const AnnotationSet& annotations);

std::string render_markdown_table(
    const std::vector<std::string>& header,
    const std::vector<std::vector<std::string>>& rows);

// --- table renderers -------------------------------------------------------

std::vector<std::vector<std::string>>
counts_table_rows(const StageCategoryCounts& counts);

std::string counts_table_csv(const StageCategoryCounts& counts);
std::string counts_table_markdown(const StageCategoryCounts& counts);

struct ModelComparisonRow {
    std::string technique;
    double accuracy_percent = 0.0;
    double weighted_f1 = 0.0;
};

std::string model_comparison_csv(const std::vector<ModelComparisonRow>& rows);
std::string
model_comparison_markdown(const std::vector<ModelComparisonRow>& rows);

// One grid per category: stages x clusters x keywords.
std::string topic_grid_csv(const PipelineResult& result, Category category);
std::string topic_grid_markdown(const PipelineResult& result,
                                Category category);

std::string daily_counts_csv(const std::map<CivilDate, long>& counts);
std::string token_length_stats_csv(const TokenLengthStats& stats);

// --- run manifest ----------------------------------------------------------

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> config; // effective option values
    std::uint64_t seed = 1;
    std::map<std::string, std::string> input_digests; // path -> fnv1a64 hex
    std::vector<std::string> outputs;
    std::map<std::string, double> timings_ms;
    std::string created_at; // RFC-3339; lives only here, never in results
};

// FNV-1a 64-bit digest of a file's bytes, hex-encoded.
std::string file_digest(const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path);

} // namespace twm

#endif
