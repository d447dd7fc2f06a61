// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#include "twm/report.hpp"

#include "twm/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace twm {

AnnotationSet load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open annotations file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();

    AnnotationSet annotations;
    const auto rows = parse_csv(buffer.str());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.empty() || (row.size() == 1 && row[0].empty())) continue;
        if (r == 0 && row == std::vector<std::string>{"annotator", "id",
                                                      "label"})
            continue;
        if (row.size() != 3)
            throw InputError("annotations line " + std::to_string(r + 1) +
                             ": expected `annotator,id,label`");
        int code = -1;
        try {
            std::size_t used = 0;
            code = std::stoi(row[2], &used);
            if (used != row[2].size()) code = -1;
        } catch (const std::exception&) {
            code = -1;
        }
        const auto category = category_from_code(code);
        if (!category)
            throw InputError("annotations line " + std::to_string(r + 1) +
                             ": label outside 0..4");
        annotations[row[0]][row[1]] = *category;
    }
    return annotations;
}

ReliabilityReport intercoder_reliability(const AnnotationSet& annotations) {
    if (annotations.size() < 2)
        throw InputError("intercoder_reliability: need at least 2 annotators");

    ReliabilityReport report;
    double total = 0.0;
    for (auto a = annotations.begin(); a != annotations.end(); ++a) {
        for (auto b = std::next(a); b != annotations.end(); ++b) {
            std::size_t shared = 0, agreed = 0;
            for (const auto& [id, label] : a->second) {
                const auto it = b->second.find(id);
                if (it == b->second.end()) continue;
                ++shared;
                agreed += label == it->second;
            }
            if (shared == 0)
                throw InputError("intercoder_reliability: annotators '" +
                                 a->first + "' and '" + b->first +
                                 "' share no items");
            ReliabilityReport::Pair pair;
            pair.first = a->first;
            pair.second = b->first;
            pair.shared_items = shared;
            pair.agreement =
                static_cast<double>(agreed) / static_cast<double>(shared);
            total += pair.agreement;
            report.pairwise.push_back(std::move(pair));
        }
    }
    report.overall = total / static_cast<double>(report.pairwise.size());
    return report;
}

std::string render_markdown_table(
    const std::vector<std::string>& header,
    const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    out << '|';
    for (const auto& h : header) out << ' ' << h << " |";
    out << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : rows) {
        out << '|';
        for (const auto& cell : row) out << ' ' << cell << " |";
        out << '\n';
    }
    return out.str();
}

namespace {

const char* display_category(Category c) {
    switch (c) {
    case Category::Stigmatization: return "Stigmatization";
    case Category::Offensiveness: return "Offensiveness";
    case Category::Blame: return "Blame";
    case Category::Exclusion: return "Exclusion";
    case Category::NonRacist: return "Non-racist";
    }
    return "Unknown";
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

} // namespace

std::vector<std::vector<std::string>>
counts_table_rows(const StageCategoryCounts& counts) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Category", "Total", "S1", "S2", "S3"});
    for (int c = 0; c < kNumRacistCategories; ++c) {
        const auto ci = static_cast<std::size_t>(c);
        rows.push_back({display_category(static_cast<Category>(c)),
                        std::to_string(counts.totals[ci]),
                        std::to_string(counts.cells[ci][0]),
                        std::to_string(counts.cells[ci][1]),
                        std::to_string(counts.cells[ci][2])});
    }
    return rows;
}

std::string counts_table_csv(const StageCategoryCounts& counts) {
    return render_csv(counts_table_rows(counts));
}

std::string counts_table_markdown(const StageCategoryCounts& counts) {
    auto rows = counts_table_rows(counts);
    const std::vector<std::string> header = rows.front();
    rows.erase(rows.begin());
    return render_markdown_table(header, rows);
}

std::string model_comparison_csv(const std::vector<ModelComparisonRow>& rows) {
    std::vector<std::vector<std::string>> table;
    table.push_back({"Technique", "Accuracy(%)", "F1-score"});
    for (const auto& row : rows)
        table.push_back({row.technique, format_double(row.accuracy_percent),
                         format_double(row.weighted_f1)});
    return render_csv(table);
}

std::string
model_comparison_markdown(const std::vector<ModelComparisonRow>& rows) {
    std::vector<std::vector<std::string>> body;
    for (const auto& row : rows)
        body.push_back({row.technique, format_double(row.accuracy_percent),
                        format_double(row.weighted_f1)});
    return render_markdown_table({"Technique", "Accuracy(%)", "F1-score"},
                                 body);
}

namespace {

const CellResult* find_cell(const PipelineResult& result, Category category,
                            Stage stage) {
    for (const CellResult& cell : result.cells)
        if (cell.category == category && cell.stage == stage) return &cell;
    return nullptr;
}

} // namespace

std::string topic_grid_csv(const PipelineResult& result, Category category) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header = {"Stage", "Topic"};
    for (std::size_t i = 1; i <= 10; ++i)
        header.push_back("w" + std::to_string(i));
    rows.push_back(header);

    for (int s = 0; s < kNumStages; ++s) {
        const auto stage = static_cast<Stage>(s);
        const CellResult* cell = find_cell(result, category, stage);
        if (cell == nullptr)
            throw InputError(std::string("topic grid: missing cell for ") +
                             display_category(category) + " stage " +
                             stage_name(stage));
        if (!cell->sufficient) {
            rows.push_back({stage_name(stage), "insufficient"});
            continue;
        }
        for (std::size_t t = 0; t < cell->clusters.size(); ++t) {
            std::vector<std::string> row = {stage_name(stage),
                                            "T" + std::to_string(t + 1)};
            for (const std::string& word : cell->clusters[t].words)
                row.push_back(word);
            rows.push_back(std::move(row));
        }
    }
    return render_csv(rows);
}

std::string topic_grid_markdown(const PipelineResult& result,
                                Category category) {
    std::vector<std::string> header = {"Stage", "Topic"};
    for (std::size_t i = 1; i <= 10; ++i)
        header.push_back("w" + std::to_string(i));

    std::vector<std::vector<std::string>> body;
    for (int s = 0; s < kNumStages; ++s) {
        const auto stage = static_cast<Stage>(s);
        const CellResult* cell = find_cell(result, category, stage);
        if (cell == nullptr)
            throw InputError(std::string("topic grid: missing cell for ") +
                             display_category(category) + " stage " +
                             stage_name(stage));
        if (!cell->sufficient) {
            std::vector<std::string> row = {stage_name(stage),
                                            "insufficient"};
            row.resize(header.size());
            body.push_back(std::move(row));
            continue;
        }
        for (std::size_t t = 0; t < cell->clusters.size(); ++t) {
            std::vector<std::string> row = {stage_name(stage),
                                            "T" + std::to_string(t + 1)};
            for (const std::string& word : cell->clusters[t].words)
                row.push_back(word);
            row.resize(header.size());
            body.push_back(std::move(row));
        }
    }
    std::ostringstream out;
    out << "### " << display_category(category) << "\n\n"
        << render_markdown_table(header, body);
    return out.str();
}

std::string daily_counts_csv(const std::map<CivilDate, long>& counts) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"date", "count"});
    for (const auto& [date, count] : counts)
        rows.push_back({format_civil(date), std::to_string(count)});
    return render_csv(rows);
}

std::string token_length_stats_csv(const TokenLengthStats& stats) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"min", "max", "median", "mean"});
    rows.push_back({std::to_string(stats.min), std::to_string(stats.max),
                    std::to_string(stats.median), format_double(stats.mean)});
    return render_csv(rows);
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file for digest: " + path.string());
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[4096];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(hash));
    return hex;
}

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["command"] = manifest.command;
    doc["config"] = manifest.config;
    doc["seed"] = manifest.seed;
    doc["inputs"] = manifest.input_digests;
    doc["outputs"] = manifest.outputs;
    doc["timings_ms"] = manifest.timings_ms;
    doc["created_at"] = manifest.created_at;

    std::ofstream out(path);
    if (!out) throw InputError("cannot write manifest: " + path.string());
    out << doc.dump(2) << '\n';
}

} // namespace twm
