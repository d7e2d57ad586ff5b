#include "lexborrow/artifacts.hpp"

#include "lexborrow/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>

namespace lexborrow {

namespace {

void expect_header(const TsvTable& table, const std::vector<std::string>& expected,
                   const std::string& path) {
    if (table.header != expected) {
        std::string want;
        for (const auto& col : expected) {
            if (!want.empty()) want += '\t';
            want += col;
        }
        throw DataError(path + ": expected header '" + want + "'");
    }
}

uint64_t parse_u64(const std::string& s, const std::string& path) {
    try {
        size_t pos = 0;
        const uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(path + ": bad integer '" + s + "'");
    }
}

void expect_fields(const std::vector<std::string>& row, size_t n, const std::string& path) {
    if (row.size() != n) {
        throw DataError(path + ": expected " + std::to_string(n) + " fields, got " +
                        std::to_string(row.size()));
    }
}

} // namespace

void write_stats_tsv(const std::string& path, const UsageStatsMap& stats) {
    TsvTable table;
    table.header = {"word", "u_hi", "u_cmh", "u_en", "t_hi", "t_cmh", "t_en", "p_hi", "p_en"};
    for (const auto& [word, s] : stats) {
        table.rows.push_back({word, std::to_string(s.u_hi), std::to_string(s.u_cmh),
                              std::to_string(s.u_en), std::to_string(s.t_hi),
                              std::to_string(s.t_cmh), std::to_string(s.t_en),
                              std::to_string(s.p_hi), std::to_string(s.p_en)});
    }
    write_file_atomic(path, format_tsv(table));
}

UsageStatsMap read_stats_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"word", "u_hi", "u_cmh", "u_en", "t_hi", "t_cmh", "t_en", "p_hi", "p_en"},
                  path);
    UsageStatsMap stats;
    for (const auto& row : table.rows) {
        expect_fields(row, 9, path);
        WordUsageStats s;
        s.word = row[0];
        s.u_hi = parse_u64(row[1], path);
        s.u_cmh = parse_u64(row[2], path);
        s.u_en = parse_u64(row[3], path);
        s.t_hi = parse_u64(row[4], path);
        s.t_cmh = parse_u64(row[5], path);
        s.t_en = parse_u64(row[6], path);
        s.p_hi = parse_u64(row[7], path);
        s.p_en = parse_u64(row[8], path);
        stats.emplace(s.word, std::move(s));
    }
    return stats;
}

void write_scores_tsv(const std::string& path, const ScoredWords& scored) {
    std::vector<Score> sorted = scored.scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const Score& a, const Score& b) { return a.word < b.word; });
    std::vector<std::string> excluded = scored.excluded;
    std::sort(excluded.begin(), excluded.end());

    TsvTable table;
    table.header = {"word", "metric", "score"};
    for (const auto& s : sorted) {
        table.rows.push_back({s.word, to_string(s.metric), fmt_double(s.value)});
    }
    // Excluded words (0/0 ratios, missing table entries) keep a row with an
    // empty score so downstream stages can tell "excluded" from "absent".
    for (const auto& word : excluded) {
        table.rows.push_back({word, "excluded", ""});
    }
    write_file_atomic(path, format_tsv(table));
}

ScoredWords read_scores_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"word", "metric", "score"}, path);
    ScoredWords out;
    for (const auto& row : table.rows) {
        expect_fields(row, 3, path);
        if (row[1] == "excluded") {
            out.excluded.push_back(row[0]);
            continue;
        }
        out.scores.push_back(Score{row[0], metric_id_from_string(row[1]), parse_double(row[2])});
    }
    return out;
}

void write_ranklist_tsv(const std::string& path, const RankList& list) {
    TsvTable table;
    table.header = {"rank", "word", "metric", "score"};
    for (const auto& entry : list.entries) {
        table.rows.push_back(
            {fmt_double(entry.rank), entry.word, to_string(list.metric), fmt_double(entry.score)});
    }
    write_file_atomic(path, format_tsv(table));
}

RankList read_ranklist_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"rank", "word", "metric", "score"}, path);
    RankList list;
    for (const auto& row : table.rows) {
        expect_fields(row, 4, path);
        list.metric = metric_id_from_string(row[2]);
        list.entries.push_back(RankEntry{row[1], parse_double(row[3]), parse_double(row[0])});
    }
    return list;
}

void write_candidates_tsv(const std::string& path, const std::vector<std::string>& words,
                          const std::map<std::string, uint64_t>& freqs) {
    TsvTable table;
    table.header = {"word", "count"};
    for (const auto& word : words) {
        const auto it = freqs.find(word);
        table.rows.push_back({word, std::to_string(it == freqs.end() ? 0 : it->second)});
    }
    write_file_atomic(path, format_tsv(table));
}

std::vector<std::string> read_candidates_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"word", "count"}, path);
    std::vector<std::string> words;
    words.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        expect_fields(row, 2, path);
        words.push_back(row[0]);
    }
    return words;
}

void write_features_tsv(const std::string& path, const std::vector<ContextFeatureVector>& table) {
    TsvTable out;
    out.header.push_back("word");
    for (const auto& name : feature_column_names()) out.header.push_back(name);
    for (const auto& fv : table) {
        std::vector<std::string> row;
        row.reserve(1 + kFeatureDim);
        row.push_back(fv.word);
        for (double v : fv.values) row.push_back(fmt_double(v));
        out.rows.push_back(std::move(row));
    }
    write_file_atomic(path, format_tsv(out));
}

std::vector<ContextFeatureVector> read_features_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    std::vector<std::string> expected = {"word"};
    for (const auto& name : feature_column_names()) expected.push_back(name);
    expect_header(table, expected, path);

    std::vector<ContextFeatureVector> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        expect_fields(row, 1 + kFeatureDim, path);
        ContextFeatureVector fv;
        fv.word = row[0];
        for (size_t i = 0; i < kFeatureDim; ++i) fv.values[i] = parse_double(row[1 + i]);
        out.push_back(std::move(fv));
    }
    return out;
}

void write_clusters_tsv(const std::string& path, const ClusterModel& model) {
    TsvTable table;
    table.header = {"word", "cluster"};
    for (const auto& [word, cluster] : model.assignment) {
        table.rows.push_back({word, std::to_string(cluster)});
    }
    write_file_atomic(path, format_tsv(table));
}

ClusterModel read_clusters_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"word", "cluster"}, path);
    ClusterModel model;
    for (const auto& row : table.rows) {
        expect_fields(row, 2, path);
        const size_t cluster = parse_u64(row[1], path);
        model.assignment[row[0]] = cluster;
        model.k = std::max(model.k, cluster + 1);
    }
    return model;
}

void write_elbow_json(const std::string& path, const ElbowResult& elbow) {
    nlohmann::json doc;
    doc["chosen_k"] = elbow.chosen_k;
    doc["inertia_curve"] = nlohmann::json::array();
    for (const auto& [k, inertia] : elbow.inertia_curve) {
        doc["inertia_curve"].push_back({{"k", k}, {"inertia", inertia}});
    }
    write_file_atomic(path, doc.dump(2) + "\n");
}

ElbowResult read_elbow_json(const std::string& path) {
    ElbowResult elbow;
    try {
        const nlohmann::json doc = nlohmann::json::parse(read_file(path));
        elbow.chosen_k = doc.at("chosen_k").get<size_t>();
        for (const auto& point : doc.at("inertia_curve")) {
            elbow.inertia_curve.emplace_back(point.at("k").get<size_t>(),
                                             point.at("inertia").get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return elbow;
}

void write_targets_tsv(const std::string& path, const TargetWordSets& targets) {
    TsvTable table;
    table.header = {"word", "set"};
    for (const auto& word : targets.bbw) table.rows.push_back({word, "bbw"});
    for (const auto& word : targets.ran) table.rows.push_back({word, "ran"});
    write_file_atomic(path, format_tsv(table));
}

TargetWordSets read_targets_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"word", "set"}, path);
    TargetWordSets targets;
    for (const auto& row : table.rows) {
        expect_fields(row, 2, path);
        if (row[1] == "bbw") targets.bbw.push_back(row[0]);
        else if (row[1] == "ran") targets.ran.push_back(row[0]);
        else throw DataError(path + ": unknown target set '" + row[1] + "'");
    }
    return targets;
}

void write_lpf_tsv(const std::string& path, const std::vector<LPFScore>& scores) {
    std::vector<LPFScore> sorted = scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const LPFScore& a, const LPFScore& b) { return a.word < b.word; });
    TsvTable table;
    table.header = {"word", "count_en", "count_hi", "count_none", "lpf"};
    for (const auto& s : sorted) {
        table.rows.push_back({s.word, std::to_string(s.count_en), std::to_string(s.count_hi),
                              std::to_string(s.count_none), std::to_string(s.lpf)});
    }
    write_file_atomic(path, format_tsv(table));
}

std::vector<LPFScore> read_lpf_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"word", "count_en", "count_hi", "count_none", "lpf"}, path);
    std::vector<LPFScore> scores;
    for (const auto& row : table.rows) {
        expect_fields(row, 5, path);
        LPFScore s;
        s.word = row[0];
        s.count_en = parse_u64(row[1], path);
        s.count_hi = parse_u64(row[2], path);
        s.count_none = parse_u64(row[3], path);
        try {
            s.lpf = std::stoll(row[4]);
        } catch (const std::exception&) {
            throw DataError(path + ": bad integer '" + row[4] + "'");
        }
        scores.push_back(std::move(s));
    }
    return scores;
}

void write_truth_tsv(const std::string& path, const PlantedTruth& truth) {
    TsvTable table;
    table.header = {"word", "p", "rank"};
    for (const auto& entry : truth.ranking.entries) {
        table.rows.push_back({entry.word, fmt_double(entry.score), fmt_double(entry.rank)});
    }
    write_file_atomic(path, format_tsv(table));
}

RankList read_truth_tsv(const std::string& path) {
    const TsvTable table = read_tsv(path, true);
    expect_header(table, {"word", "p", "rank"}, path);
    RankList list;
    list.metric = MetricId::Planted;
    for (const auto& row : table.rows) {
        expect_fields(row, 3, path);
        list.entries.push_back(RankEntry{row[0], parse_double(row[1]), parse_double(row[2])});
    }
    return list;
}

void write_histogram_json(const std::string& path, const std::map<std::string, uint64_t>& hist) {
    const nlohmann::json doc(hist);
    write_file_atomic(path, doc.dump(2) + "\n");
}

std::map<std::string, uint64_t> read_histogram_json(const std::string& path) {
    try {
        const nlohmann::json doc = nlohmann::json::parse(read_file(path));
        return doc.get<std::map<std::string, uint64_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

void write_baseline_tsv(const std::string& path, const BaselineTable& table) {
    TsvTable out;
    out.header = {"word", "f_e", "f_h"};
    for (const auto& [word, counts] : table) {
        out.rows.push_back({word, std::to_string(counts.first), std::to_string(counts.second)});
    }
    write_file_atomic(path, format_tsv(out));
}

void write_wordlist(const std::string& path, const std::vector<std::string>& words) {
    std::string content;
    for (const auto& word : words) {
        content += word;
        content += '\n';
    }
    write_file_atomic(path, content);
}

void write_eval_json(const std::string& path, const EvalReport& report) {
    nlohmann::json doc;
    doc["metric"] = report.metric;
    doc["cohort"] = report.cohort;
    doc["n"] = report.n;
    doc["spearman"] = report.rho;
    doc["buckets"] = nlohmann::json::array();
    for (size_t i = 0; i < report.buckets.buckets.size(); ++i) {
        const BucketCounts& b = report.buckets.buckets[i];
        doc["buckets"].push_back({{"label", to_string(kRangeLabels[i])},
                                  {"tp", b.tp},
                                  {"fp", b.fp},
                                  {"tn", b.tn},
                                  {"precision", b.precision},
                                  {"recall", b.recall}});
    }
    doc["macro_precision"] = report.buckets.macro_precision;
    doc["macro_recall"] = report.buckets.macro_recall;
    doc["micro_precision"] = report.buckets.micro_precision;
    doc["micro_recall"] = report.buckets.micro_recall;
    write_file_atomic(path, doc.dump(2) + "\n");
}

EvalReport read_eval_json(const std::string& path) {
    EvalReport report;
    try {
        const nlohmann::json doc = nlohmann::json::parse(read_file(path));
        report.metric = doc.at("metric").get<std::string>();
        report.cohort = doc.at("cohort").get<std::string>();
        report.n = doc.at("n").get<uint64_t>();
        report.rho = doc.at("spearman").get<double>();
        const auto& buckets = doc.at("buckets");
        if (buckets.size() != report.buckets.buckets.size()) {
            throw DataError(path + ": expected 5 buckets");
        }
        for (size_t i = 0; i < report.buckets.buckets.size(); ++i) {
            BucketCounts& b = report.buckets.buckets[i];
            b.tp = buckets[i].at("tp").get<uint64_t>();
            b.fp = buckets[i].at("fp").get<uint64_t>();
            b.tn = buckets[i].at("tn").get<uint64_t>();
            b.precision = buckets[i].at("precision").get<double>();
            b.recall = buckets[i].at("recall").get<double>();
        }
        report.buckets.macro_precision = doc.at("macro_precision").get<double>();
        report.buckets.macro_recall = doc.at("macro_recall").get<double>();
        report.buckets.micro_precision = doc.at("micro_precision").get<double>();
        report.buckets.micro_recall = doc.at("micro_recall").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return report;
}

} // namespace lexborrow
