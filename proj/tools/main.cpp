#include "lexborrow/artifacts.hpp"
#include "lexborrow/candidates.hpp"
#include "lexborrow/corpus.hpp"
#include "lexborrow/evaluation.hpp"
#include "lexborrow/ground_truth.hpp"
#include "lexborrow/io.hpp"
#include "lexborrow/metrics.hpp"
#include "lexborrow/synth.hpp"
#include "lexborrow/tagging.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lb = lexborrow;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Configuration

struct PipelineConfig {
    std::string corpus;
    std::string corpus_format = "jsonl";
    std::string en_lexicon, hi_lexicon, ne_lexicon;
    std::string stoplist, noun_lexicon, baseline_table, survey;
    std::string out_dir = "out";
    std::string lexicon_priority = "ne,hi,en";
    double romanization_threshold = 0.95;
    double category_threshold = 0.90;
    double mix_low = 0.07;
    double mix_high = 0.20;
    unsigned age_threshold = 30;
    uint64_t top_n = 1000;
    uint64_t smoothing_k = 1;
    uint64_t k_min = 2;
    uint64_t k_max = 20;
    uint64_t n_random_targets = 27;
    uint64_t seed = 1;

    void validate() const {
        auto in_unit = [](double v, const char* what) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw lb::DataError(std::string(what) + " must lie in [0, 1]");
            }
        };
        in_unit(romanization_threshold, "romanization_threshold");
        in_unit(mix_low, "mix_low");
        in_unit(mix_high, "mix_high");
        if (mix_low > mix_high) throw lb::DataError("mix_low exceeds mix_high");
        if (!(category_threshold >= 0.5 && category_threshold <= 1.0)) {
            throw lb::DataError("category_threshold must lie in [0.5, 1]");
        }
        if (top_n == 0) throw lb::DataError("top_n must be positive");
        if (k_min == 0 || k_min > k_max) throw lb::DataError("need 1 <= k_min <= k_max");
    }
};

PipelineConfig load_pipeline_config(const std::string& path) {
    lb::require_file(path, "pipeline config");
    json doc;
    try {
        doc = json::parse(lb::read_file(path));
    } catch (const json::exception& e) {
        throw lb::DataError(path + ": " + e.what());
    }
    PipelineConfig cfg;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "corpus") cfg.corpus = value.get<std::string>();
            else if (key == "corpus_format") cfg.corpus_format = value.get<std::string>();
            else if (key == "en_lexicon") cfg.en_lexicon = value.get<std::string>();
            else if (key == "hi_lexicon") cfg.hi_lexicon = value.get<std::string>();
            else if (key == "ne_lexicon") cfg.ne_lexicon = value.get<std::string>();
            else if (key == "stoplist") cfg.stoplist = value.get<std::string>();
            else if (key == "noun_lexicon") cfg.noun_lexicon = value.get<std::string>();
            else if (key == "baseline_table") cfg.baseline_table = value.get<std::string>();
            else if (key == "survey") cfg.survey = value.get<std::string>();
            else if (key == "out_dir") cfg.out_dir = value.get<std::string>();
            else if (key == "lexicon_priority") cfg.lexicon_priority = value.get<std::string>();
            else if (key == "romanization_threshold") cfg.romanization_threshold = value.get<double>();
            else if (key == "category_threshold") cfg.category_threshold = value.get<double>();
            else if (key == "mix_low") cfg.mix_low = value.get<double>();
            else if (key == "mix_high") cfg.mix_high = value.get<double>();
            else if (key == "age_threshold") cfg.age_threshold = value.get<unsigned>();
            else if (key == "top_n") cfg.top_n = value.get<uint64_t>();
            else if (key == "smoothing_k") cfg.smoothing_k = value.get<uint64_t>();
            else if (key == "k_min") cfg.k_min = value.get<uint64_t>();
            else if (key == "k_max") cfg.k_max = value.get<uint64_t>();
            else if (key == "n_random_targets") cfg.n_random_targets = value.get<uint64_t>();
            else if (key == "seed") cfg.seed = value.get<uint64_t>();
            else throw lb::DataError(path + ": unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw lb::DataError(path + ": " + e.what());
    }
    return cfg;
}

/// Canonical digest of every setting that can influence artifact content.
/// out_dir and --threads are deliberately left out: neither may change a
/// single output byte.
std::string config_fingerprint(const PipelineConfig& cfg) {
    json doc;
    doc["corpus"] = cfg.corpus;
    doc["corpus_format"] = cfg.corpus_format;
    doc["en_lexicon"] = cfg.en_lexicon;
    doc["hi_lexicon"] = cfg.hi_lexicon;
    doc["ne_lexicon"] = cfg.ne_lexicon;
    doc["stoplist"] = cfg.stoplist;
    doc["noun_lexicon"] = cfg.noun_lexicon;
    doc["baseline_table"] = cfg.baseline_table;
    doc["survey"] = cfg.survey;
    doc["lexicon_priority"] = cfg.lexicon_priority;
    doc["romanization_threshold"] = cfg.romanization_threshold;
    doc["category_threshold"] = cfg.category_threshold;
    doc["mix_low"] = cfg.mix_low;
    doc["mix_high"] = cfg.mix_high;
    doc["age_threshold"] = cfg.age_threshold;
    doc["top_n"] = cfg.top_n;
    doc["smoothing_k"] = cfg.smoothing_k;
    doc["k_min"] = cfg.k_min;
    doc["k_max"] = cfg.k_max;
    doc["n_random_targets"] = cfg.n_random_targets;
    doc["seed"] = cfg.seed;
    return lb::fnv1a_hex(doc.dump());
}

// ---------------------------------------------------------------------------
// Flags

struct Flags {
    std::string config_path;
    uint64_t seed = 0;
    unsigned threads = 1;
    std::string out;
    double romanization = 0, category = 0, mix_low = 0, mix_high = 0;
    unsigned age_threshold = 0;
    uint64_t top_n = 0, smoothing_k = 0, k_min = 0, k_max = 0, n_random = 0, fixed_k = 0;
    std::string priority;
    std::string words_path;
    std::string mix_bucket; // "", "high", "mid", "low"
    std::string metric;
    std::string truth_path;
    unsigned age_lt = 0, age_ge = 0;
    std::string synth_spec_path;
};

void add_common_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "pipeline config JSON");
    cmd->add_option("--seed", f.seed, "seed override");
    cmd->add_option("--threads", f.threads, "worker cap (never changes results)");
    cmd->add_option("--out", f.out, "output directory override");
    cmd->add_option("--romanization-threshold", f.romanization, "minimum Latin fraction");
    cmd->add_option("--category-threshold", f.category, "monolingual majority threshold");
    cmd->add_option("--mix-low", f.mix_low, "Low bucket upper mix fraction");
    cmd->add_option("--mix-high", f.mix_high, "High bucket lower mix fraction");
    cmd->add_option("--age-threshold", f.age_threshold, "young/elder split age");
    cmd->add_option("--top-n", f.top_n, "candidate list size");
    cmd->add_option("--smoothing-k", f.smoothing_k, "baseline add-k smoothing");
    cmd->add_option("--k-min", f.k_min, "elbow scan lower bound");
    cmd->add_option("--k-max", f.k_max, "elbow scan upper bound");
    cmd->add_option("--n-random", f.n_random, "random target sample size");
    cmd->add_option("--priority", f.priority, "lexicon priority, e.g. ne,hi,en");
}

void apply_overrides(PipelineConfig& cfg, const CLI::App* sub, const Flags& f) {
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--out")) cfg.out_dir = f.out;
    if (sub->count("--romanization-threshold")) cfg.romanization_threshold = f.romanization;
    if (sub->count("--category-threshold")) cfg.category_threshold = f.category;
    if (sub->count("--mix-low")) cfg.mix_low = f.mix_low;
    if (sub->count("--mix-high")) cfg.mix_high = f.mix_high;
    if (sub->count("--age-threshold")) cfg.age_threshold = f.age_threshold;
    if (sub->count("--top-n")) cfg.top_n = f.top_n;
    if (sub->count("--smoothing-k")) cfg.smoothing_k = f.smoothing_k;
    if (sub->count("--k-min")) cfg.k_min = f.k_min;
    if (sub->count("--k-max")) cfg.k_max = f.k_max;
    if (sub->count("--n-random")) cfg.n_random_targets = f.n_random;
    if (sub->count("--priority")) cfg.lexicon_priority = f.priority;
    cfg.validate();
}

// ---------------------------------------------------------------------------
// Manifests

struct StageManifest {
    std::string stage;
    std::string config_hash;
    uint64_t seed = 0;
    std::map<std::string, std::string> inputs;  // name or path -> content hash
    std::vector<std::string> outputs;           // artifact names inside out_dir
};

std::string artifact_path(const std::string& out_dir, const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
}

void track_input(StageManifest& mf, const std::string& key, const std::string& path) {
    mf.inputs[key] = lb::hash_file(path);
}

void write_manifest(const StageManifest& mf, const std::string& out_dir) {
    json doc;
    doc["stage"] = mf.stage;
    doc["config_hash"] = mf.config_hash;
    doc["seed"] = mf.seed;
    doc["inputs"] = json::object();
    for (const auto& [key, hash] : mf.inputs) doc["inputs"][key] = hash;
    doc["outputs"] = json::object();
    for (const auto& name : mf.outputs) {
        doc["outputs"][name] = lb::hash_file(artifact_path(out_dir, name));
    }
    lb::write_file_atomic(artifact_path(out_dir, mf.stage + ".manifest.json"),
                          doc.dump(2) + "\n");
}

StageManifest make_manifest(const std::string& stage, const PipelineConfig& cfg) {
    StageManifest mf;
    mf.stage = stage;
    mf.config_hash = config_fingerprint(cfg);
    mf.seed = cfg.seed;
    return mf;
}

void ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw lb::DataError("cannot create " + out_dir + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Shared stage plumbing

lb::Corpus load_artifact_corpus(const std::string& out_dir, const std::string& name,
                                const char* producer, StageManifest& mf) {
    const std::string path = artifact_path(out_dir, name);
    if (!lb::file_exists(path)) {
        throw lb::DataError("missing " + path + " (run the " + std::string(producer) +
                            " stage first)");
    }
    track_input(mf, name, path);
    return lb::load_corpus(path, lb::CorpusFormat::PreTaggedJsonl);
}

std::vector<std::string> read_wordlist_lines(const std::string& path) {
    std::vector<std::string> words;
    for (const auto& line : lb::read_lines(path)) {
        if (!line.empty()) words.push_back(line);
    }
    return words;
}

/// Word list for stats/scoring: --words wins, then sampled targets, then
/// the candidate list.
std::vector<std::string> resolve_word_list(const PipelineConfig& cfg, const Flags& f,
                                           StageManifest& mf) {
    if (!f.words_path.empty()) {
        lb::require_file(f.words_path, "word list");
        track_input(mf, f.words_path, f.words_path);
        return read_wordlist_lines(f.words_path);
    }
    const std::string targets = artifact_path(cfg.out_dir, "targets.tsv");
    if (lb::file_exists(targets)) {
        track_input(mf, "targets.tsv", targets);
        return lb::read_targets_tsv(targets).full();
    }
    const std::string candidates = artifact_path(cfg.out_dir, "candidates.tsv");
    if (lb::file_exists(candidates)) {
        track_input(mf, "candidates.tsv", candidates);
        return lb::read_candidates_tsv(candidates);
    }
    throw lb::DataError("missing " + targets +
                        " (run the sample stage, or pass --words <file>)");
}

std::string mix_suffix(const Flags& f) {
    return f.mix_bucket.empty() ? "" : "_mix_" + f.mix_bucket;
}

lb::MixBucketLabel mix_label_from_flag(const std::string& s) {
    if (s == "high") return lb::MixBucketLabel::High;
    if (s == "mid") return lb::MixBucketLabel::Mid;
    if (s == "low") return lb::MixBucketLabel::Low;
    throw lb::DataError("unknown mix bucket '" + s + "' (expected high, mid or low)");
}

lb::Corpus restrict_to_mix_bucket(const lb::Corpus& corpus, const PipelineConfig& cfg,
                                  const std::string& bucket) {
    const lb::MixBucketThresholds thresholds{cfg.mix_low, cfg.mix_high};
    const auto buckets = lb::bucket_users(corpus, thresholds);
    const lb::MixBucketLabel want = mix_label_from_flag(bucket);
    for (const auto& b : buckets) {
        if (b.label == want) return lb::restrict_to_users(corpus, b.user_ids);
    }
    throw lb::DataError("mix bucket not found"); // unreachable
}

std::string cohort_suffix(const CLI::App* sub, const Flags& f) {
    if (sub->count("--age-lt")) return "_age_lt_" + std::to_string(f.age_lt);
    if (sub->count("--age-ge")) return "_age_ge_" + std::to_string(f.age_ge);
    return "";
}

lb::Cohort cohort_from_flags(const lb::SurveyResponseSet& survey, const CLI::App* sub,
                             const Flags& f) {
    const bool lt = sub->count("--age-lt") > 0;
    const bool ge = sub->count("--age-ge") > 0;
    if (lt && ge) throw lb::DataError("give at most one of --age-lt / --age-ge");
    if (!lt && !ge) return std::nullopt;
    std::unordered_set<std::string> ids;
    for (const auto& p : survey.participants) {
        if ((lt && p.age < f.age_lt) || (ge && p.age >= f.age_ge)) ids.insert(p.id);
    }
    return ids;
}

// ---------------------------------------------------------------------------
// Stages

void run_ingest(const PipelineConfig& cfg, const Flags&) {
    StageManifest mf = make_manifest("ingest", cfg);
    lb::require_file(cfg.corpus, "corpus");
    track_input(mf, cfg.corpus, cfg.corpus);

    const lb::CorpusFormat format = lb::corpus_format_from_string(cfg.corpus_format);
    const lb::Corpus raw = lb::load_corpus(cfg.corpus, format);
    const lb::FilterReport load_report = raw.provenance.report;

    auto [kept, filter_report] = lb::filter_corpus(raw, lb::FilterPolicy{cfg.romanization_threshold});

    lb::FilterReport report = filter_report;
    report.input = load_report.input;
    report.malformed = load_report.malformed;
    report.duplicate = load_report.duplicate;

    const bool tagged = format == lb::CorpusFormat::PreTaggedJsonl;
    const std::string name = tagged ? "tagged.jsonl" : "corpus.jsonl";
    if (tagged) lb::save_corpus_pre_tagged(kept, artifact_path(cfg.out_dir, name));
    else lb::save_corpus_tokens(kept, artifact_path(cfg.out_dir, name));

    json rep;
    rep["input"] = report.input;
    rep["retained"] = report.retained;
    rep["non_roman"] = report.non_roman;
    rep["url_only"] = report.url_only;
    rep["empty"] = report.empty;
    rep["duplicate"] = report.duplicate;
    rep["malformed"] = report.malformed;
    lb::write_file_atomic(artifact_path(cfg.out_dir, "filter_report.json"), rep.dump(2) + "\n");

    mf.outputs = {name, "filter_report.json"};
    write_manifest(mf, cfg.out_dir);
    std::cerr << "ingest: " << report.retained << "/" << report.input << " tweets retained\n";
}

void run_tag(const PipelineConfig& cfg, const Flags&) {
    StageManifest mf = make_manifest("tag", cfg);
    const std::string in_path = artifact_path(cfg.out_dir, "corpus.jsonl");
    if (!lb::file_exists(in_path)) {
        throw lb::DataError("missing " + in_path + " (run the ingest stage first)");
    }
    track_input(mf, "corpus.jsonl", in_path);
    lb::require_file(cfg.en_lexicon, "en lexicon");
    lb::require_file(cfg.hi_lexicon, "hi lexicon");
    lb::require_file(cfg.ne_lexicon, "ne lexicon");
    track_input(mf, cfg.en_lexicon, cfg.en_lexicon);
    track_input(mf, cfg.hi_lexicon, cfg.hi_lexicon);
    track_input(mf, cfg.ne_lexicon, cfg.ne_lexicon);

    lb::Corpus corpus = lb::load_corpus(in_path, lb::CorpusFormat::TokensJsonl);
    const lb::LexiconSet lexicons(lb::load_word_list(cfg.en_lexicon),
                                  lb::load_word_list(cfg.hi_lexicon),
                                  lb::load_word_list(cfg.ne_lexicon),
                                  lb::lexicon_priority_from_string(cfg.lexicon_priority));
    for (lb::Tweet& tweet : corpus.tweets) lb::tag_tokens(tweet, lexicons);

    lb::save_corpus_pre_tagged(corpus, artifact_path(cfg.out_dir, "tagged.jsonl"));
    mf.outputs = {"tagged.jsonl"};
    write_manifest(mf, cfg.out_dir);
}

void run_categorize(const PipelineConfig& cfg, const Flags&) {
    StageManifest mf = make_manifest("categorize", cfg);
    lb::Corpus corpus = load_artifact_corpus(cfg.out_dir, "tagged.jsonl", "tag", mf);

    lb::categorize_corpus(corpus, lb::CategoryPolicy{cfg.category_threshold, 2});
    lb::save_corpus_pre_tagged(corpus, artifact_path(cfg.out_dir, "categorized.jsonl"));
    lb::write_histogram_json(artifact_path(cfg.out_dir, "histogram.json"),
                             lb::category_histogram(corpus));

    mf.outputs = {"categorized.jsonl", "histogram.json"};
    write_manifest(mf, cfg.out_dir);
}

void run_stats(const PipelineConfig& cfg, const Flags& f) {
    StageManifest mf = make_manifest("stats", cfg);
    lb::Corpus corpus = load_artifact_corpus(cfg.out_dir, "categorized.jsonl", "categorize", mf);
    const auto words = resolve_word_list(cfg, f, mf);

    if (!f.mix_bucket.empty()) corpus = restrict_to_mix_bucket(corpus, cfg, f.mix_bucket);

    const std::unordered_set<std::string> word_set(words.begin(), words.end());
    const lb::UsageStatsMap stats = lb::accumulate_usage(corpus, word_set, f.threads);

    const std::string name = "stats" + mix_suffix(f) + ".tsv";
    lb::write_stats_tsv(artifact_path(cfg.out_dir, name), stats);
    mf.outputs = {name};
    write_manifest(mf, cfg.out_dir);
}

void run_candidates(const PipelineConfig& cfg, const Flags& f) {
    StageManifest mf = make_manifest("candidates", cfg);
    const lb::Corpus corpus =
        load_artifact_corpus(cfg.out_dir, "categorized.jsonl", "categorize", mf);

    std::unordered_set<std::string> stoplist;
    if (!cfg.stoplist.empty()) {
        lb::require_file(cfg.stoplist, "stoplist");
        track_input(mf, cfg.stoplist, cfg.stoplist);
        stoplist = lb::load_word_list(cfg.stoplist);
    }
    std::optional<std::unordered_set<std::string>> nouns;
    if (!cfg.noun_lexicon.empty()) {
        lb::require_file(cfg.noun_lexicon, "noun lexicon");
        track_input(mf, cfg.noun_lexicon, cfg.noun_lexicon);
        nouns = lb::load_word_list(cfg.noun_lexicon);
    }

    const auto freqs = lb::foreign_word_frequency(corpus, f.threads);
    const auto selected = lb::select_candidates(freqs, stoplist, nouns, cfg.top_n);
    lb::write_candidates_tsv(artifact_path(cfg.out_dir, "candidates.tsv"), selected, freqs);

    mf.outputs = {"candidates.tsv"};
    write_manifest(mf, cfg.out_dir);
    std::cerr << "candidates: " << selected.size() << " words\n";
}

void run_features(const PipelineConfig& cfg, const Flags& f) {
    StageManifest mf = make_manifest("features", cfg);
    const lb::Corpus corpus =
        load_artifact_corpus(cfg.out_dir, "categorized.jsonl", "categorize", mf);

    const std::string cand_path = artifact_path(cfg.out_dir, "candidates.tsv");
    if (!lb::file_exists(cand_path)) {
        throw lb::DataError("missing " + cand_path + " (run the candidates stage first)");
    }
    track_input(mf, "candidates.tsv", cand_path);
    const auto words = lb::read_candidates_tsv(cand_path);

    const auto table = lb::context_feature_table(corpus, words, f.threads);
    lb::write_features_tsv(artifact_path(cfg.out_dir, "features.tsv"), table);

    mf.outputs = {"features.tsv"};
    write_manifest(mf, cfg.out_dir);
}

void run_cluster(const PipelineConfig& cfg, const Flags& f, const CLI::App* sub) {
    StageManifest mf = make_manifest("cluster", cfg);
    const std::string feat_path = artifact_path(cfg.out_dir, "features.tsv");
    if (!lb::file_exists(feat_path)) {
        throw lb::DataError("missing " + feat_path + " (run the features stage first)");
    }
    track_input(mf, "features.tsv", feat_path);
    const auto table = lb::read_features_tsv(feat_path);

    lb::ElbowResult elbow;
    if (sub->count("--k")) {
        elbow.chosen_k = f.fixed_k;
    } else {
        const size_t k_max = std::min<size_t>(cfg.k_max, table.size());
        elbow = lb::elbow_k(table, cfg.k_min, k_max, cfg.seed);
    }
    const lb::ClusterModel model = lb::kmeans(table, elbow.chosen_k, cfg.seed);
    if (elbow.inertia_curve.empty()) elbow.inertia_curve.emplace_back(elbow.chosen_k, model.inertia);

    lb::write_clusters_tsv(artifact_path(cfg.out_dir, "clusters.tsv"), model);
    lb::write_elbow_json(artifact_path(cfg.out_dir, "elbow.json"), elbow);
    mf.outputs = {"clusters.tsv", "elbow.json"};
    write_manifest(mf, cfg.out_dir);
    std::cerr << "cluster: K=" << elbow.chosen_k << " inertia=" << lb::fmt_double(model.inertia)
              << "\n";
}

void run_sample(const PipelineConfig& cfg, const Flags&) {
    StageManifest mf = make_manifest("sample", cfg);
    const std::string clusters_path = artifact_path(cfg.out_dir, "clusters.tsv");
    if (!lb::file_exists(clusters_path)) {
        throw lb::DataError("missing " + clusters_path + " (run the cluster stage first)");
    }
    track_input(mf, "clusters.tsv", clusters_path);
    const lb::ClusterModel model = lb::read_clusters_tsv(clusters_path);

    lb::require_file(cfg.baseline_table, "baseline table");
    track_input(mf, cfg.baseline_table, cfg.baseline_table);
    const lb::BaselineTable table = lb::load_baseline_table(cfg.baseline_table);

    std::map<std::string, double> baseline;
    for (const auto& [word, cluster] : model.assignment) {
        const auto it = table.find(word);
        if (it == table.end()) continue; // sample_bbw reports the gap by name
        baseline[word] =
            lb::baseline_score(word, it->second.first, it->second.second, cfg.smoothing_k).value;
    }

    lb::TargetWordSets targets;
    targets.bbw = lb::sample_bbw(model, baseline);
    const std::unordered_set<std::string> exclude(targets.bbw.begin(), targets.bbw.end());
    targets.ran = lb::sample_random(model, cfg.n_random_targets, exclude, cfg.seed);

    lb::write_targets_tsv(artifact_path(cfg.out_dir, "targets.tsv"), targets);
    mf.outputs = {"targets.tsv"};
    write_manifest(mf, cfg.out_dir);
    std::cerr << "sample: " << targets.bbw.size() << " bbw + " << targets.ran.size() << " ran\n";
}

lb::ScoredWords compute_scores(const PipelineConfig& cfg, const Flags& f, lb::MetricId metric,
                               StageManifest& mf) {
    if (metric == lb::MetricId::Baseline) {
        const auto words = resolve_word_list(cfg, f, mf);
        lb::require_file(cfg.baseline_table, "baseline table");
        track_input(mf, cfg.baseline_table, cfg.baseline_table);
        const lb::BaselineTable table = lb::load_baseline_table(cfg.baseline_table);
        return lb::score_baseline(words, table, cfg.smoothing_k);
    }
    const std::string stats_name = "stats" + mix_suffix(f) + ".tsv";
    const std::string stats_path = artifact_path(cfg.out_dir, stats_name);
    if (!lb::file_exists(stats_path)) {
        throw lb::DataError("missing " + stats_path + " (run the stats stage first)");
    }
    track_input(mf, stats_name, stats_path);
    return lb::score_usage(lb::read_stats_tsv(stats_path), metric);
}

void run_score(const PipelineConfig& cfg, const Flags& f) {
    StageManifest mf = make_manifest("score", cfg);
    const lb::MetricId metric = lb::metric_id_from_string(f.metric);
    const lb::ScoredWords scored = compute_scores(cfg, f, metric, mf);

    const std::string name = "scores_" + f.metric + mix_suffix(f) + ".tsv";
    lb::write_scores_tsv(artifact_path(cfg.out_dir, name), scored);
    mf.outputs = {name};
    write_manifest(mf, cfg.out_dir);
}

void run_rank(const PipelineConfig& cfg, const Flags& f) {
    StageManifest mf = make_manifest("rank", cfg);
    const lb::MetricId metric = lb::metric_id_from_string(f.metric);

    const std::string scores_name = "scores_" + f.metric + mix_suffix(f) + ".tsv";
    const std::string scores_path = artifact_path(cfg.out_dir, scores_name);
    lb::ScoredWords scored;
    if (lb::file_exists(scores_path)) {
        track_input(mf, scores_name, scores_path);
        scored = lb::read_scores_tsv(scores_path);
    } else {
        scored = compute_scores(cfg, f, metric, mf);
        lb::write_scores_tsv(scores_path, scored);
        mf.outputs.push_back(scores_name);
    }

    const lb::RankList list = lb::rank(scored.scores);
    const std::string name = "rank_" + f.metric + mix_suffix(f) + ".tsv";
    lb::write_ranklist_tsv(artifact_path(cfg.out_dir, name), list);
    mf.outputs.push_back(name);
    write_manifest(mf, cfg.out_dir);
}

void run_ground_truth(const PipelineConfig& cfg, const Flags& f, const CLI::App* sub) {
    StageManifest mf = make_manifest("ground-truth", cfg);
    lb::require_file(cfg.survey, "survey CSV");
    track_input(mf, cfg.survey, cfg.survey);
    const lb::SurveyResponseSet survey = lb::load_responses(cfg.survey);

    const lb::Cohort cohort = cohort_from_flags(survey, sub, f);
    const std::string suffix = cohort_suffix(sub, f);

    const std::string lpf_name = "lpf" + suffix + ".tsv";
    const std::string rank_name = "rank_lpf" + suffix + ".tsv";
    lb::write_lpf_tsv(artifact_path(cfg.out_dir, lpf_name), lb::lpf_all(survey, cohort));
    lb::write_ranklist_tsv(artifact_path(cfg.out_dir, rank_name),
                           lb::rank_by_lpf(survey, cohort));

    mf.outputs = {lpf_name, rank_name};
    write_manifest(mf, cfg.out_dir);
}

/// Keeps only `keep` words and re-ranks from the stored scores, so both
/// lists cover the identical word set evaluation requires.
lb::RankList rerank_subset(const lb::RankList& list,
                           const std::unordered_set<std::string>& keep) {
    std::vector<lb::Score> scores;
    scores.reserve(keep.size());
    for (const auto& entry : list.entries) {
        if (keep.count(entry.word)) {
            scores.push_back(lb::Score{entry.word, list.metric, entry.score});
        }
    }
    return lb::rank(std::move(scores));
}

bool looks_like_planted_truth(const std::string& path) {
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    return first.rfind("word\tp\trank", 0) == 0;
}

lb::RankList resolve_truth(const PipelineConfig& cfg, const Flags& f, const CLI::App* sub,
                           StageManifest& mf) {
    std::string path = f.truth_path;
    if (path.empty()) {
        const std::string lpf_rank =
            artifact_path(cfg.out_dir, "rank_lpf" + cohort_suffix(sub, f) + ".tsv");
        const std::string planted = artifact_path(cfg.out_dir, "truth.tsv");
        if (lb::file_exists(lpf_rank)) path = lpf_rank;
        else if (lb::file_exists(planted)) path = planted;
        else {
            throw lb::DataError("missing " + lpf_rank +
                                " (run the ground-truth stage, or pass --truth)");
        }
    }
    lb::require_file(path, "ground truth");
    track_input(mf, path, path);
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
        const lb::SurveyResponseSet survey = lb::load_responses(path);
        return lb::rank_by_lpf(survey, cohort_from_flags(survey, sub, f));
    }
    if (looks_like_planted_truth(path)) return lb::read_truth_tsv(path);
    return lb::read_ranklist_tsv(path);
}

void run_evaluate(const PipelineConfig& cfg, const Flags& f, const CLI::App* sub) {
    StageManifest mf = make_manifest("evaluate", cfg);
    const std::string rank_name = "rank_" + f.metric + mix_suffix(f) + ".tsv";
    const std::string rank_path = artifact_path(cfg.out_dir, rank_name);
    if (!lb::file_exists(rank_path)) {
        throw lb::DataError("missing " + rank_path + " (run the rank stage first)");
    }
    track_input(mf, rank_name, rank_path);
    const lb::RankList metric_list = lb::read_ranklist_tsv(rank_path);
    const lb::RankList truth_list = resolve_truth(cfg, f, sub, mf);

    std::unordered_set<std::string> truth_words;
    for (const auto& entry : truth_list.entries) truth_words.insert(entry.word);
    std::unordered_set<std::string> common;
    for (const auto& entry : metric_list.entries) {
        if (truth_words.count(entry.word)) common.insert(entry.word);
    }
    if (common.size() < 5) {
        throw lb::DataError("only " + std::to_string(common.size()) +
                            " words shared between ranking and ground truth; need at least 5");
    }

    const lb::RankList a = rerank_subset(metric_list, common);
    const lb::RankList b = rerank_subset(truth_list, common);

    lb::EvalReport report;
    report.metric = f.metric;
    std::string cohort;
    if (!f.mix_bucket.empty()) cohort = "mix_" + f.mix_bucket;
    const std::string age = cohort_suffix(sub, f);
    if (!age.empty()) cohort += (cohort.empty() ? "" : "+") + age.substr(1);
    report.cohort = cohort.empty() ? "all" : cohort;
    report.n = common.size();
    report.rho = lb::spearman(a, b);
    report.buckets = lb::bucket_pr(lb::partition_ranges(a), lb::partition_ranges(b));

    const std::string name = "eval_" + f.metric + mix_suffix(f) + age + ".json";
    lb::write_eval_json(artifact_path(cfg.out_dir, name), report);
    mf.outputs = {name};
    write_manifest(mf, cfg.out_dir);
    std::cerr << "evaluate: " << f.metric << " vs " << report.cohort << ": rho="
              << lb::fmt_double(report.rho) << " n=" << report.n << "\n";
}

void run_synth(const Flags& f, const CLI::App* sub) {
    lb::require_file(f.synth_spec_path, "synth spec");
    lb::SynthSpec spec = lb::load_synth_spec(f.synth_spec_path);
    if (sub->count("--seed")) spec.seed = f.seed;
    const std::string out_dir = sub->count("--out") ? f.out : "out";
    ensure_out_dir(out_dir);

    StageManifest mf;
    mf.stage = "synth";
    mf.config_hash = lb::hash_file(f.synth_spec_path);
    mf.seed = spec.seed;
    track_input(mf, f.synth_spec_path, f.synth_spec_path);

    const lb::SynthResult result = lb::generate_corpus(spec);
    lb::save_corpus_pre_tagged(result.corpus, artifact_path(out_dir, "tagged.jsonl"));
    lb::write_truth_tsv(artifact_path(out_dir, "truth.tsv"), result.truth);
    lb::write_baseline_tsv(artifact_path(out_dir, "baseline_freqs.tsv"),
                           lb::synth_baseline_table(spec));
    lb::write_wordlist(artifact_path(out_dir, "en_lexicon.txt"), lb::synth_en_lexicon(spec));
    lb::write_wordlist(artifact_path(out_dir, "hi_lexicon.txt"), lb::synth_hi_lexicon(spec));

    mf.outputs = {"tagged.jsonl", "truth.tsv", "baseline_freqs.tsv", "en_lexicon.txt",
                  "hi_lexicon.txt"};
    write_manifest(mf, out_dir);
    std::cerr << "synth: " << result.corpus.tweets.size() << " tweets, "
              << spec.targets.size() << " targets\n";
}

void run_report(const PipelineConfig& cfg, const Flags&) {
    StageManifest mf = make_manifest("report", cfg);
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(cfg.out_dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("eval_", 0) == 0 && name.size() > 10 &&
            name.compare(name.size() - 5, 5, ".json") == 0) {
            names.push_back(name);
        }
    }
    if (ec) throw lb::DataError("cannot read " + cfg.out_dir + ": " + ec.message());
    if (names.empty()) throw lb::DataError("no evaluation reports in " + cfg.out_dir);
    std::sort(names.begin(), names.end());

    std::vector<lb::EvalReport> reports;
    for (const auto& name : names) {
        const std::string path = artifact_path(cfg.out_dir, name);
        track_input(mf, name, path);
        reports.push_back(lb::read_eval_json(path));
    }
    std::sort(reports.begin(), reports.end(), [](const lb::EvalReport& x, const lb::EvalReport& y) {
        return std::tie(x.metric, x.cohort) < std::tie(y.metric, y.cohort);
    });

    lb::TsvTable table;
    table.header = {"metric", "cohort", "n", "spearman", "macro_precision", "macro_recall",
                    "micro_precision", "micro_recall"};
    json rows = json::array();
    for (const auto& r : reports) {
        table.rows.push_back({r.metric, r.cohort, std::to_string(r.n), lb::fmt_double(r.rho),
                              lb::fmt_double(r.buckets.macro_precision),
                              lb::fmt_double(r.buckets.macro_recall),
                              lb::fmt_double(r.buckets.micro_precision),
                              lb::fmt_double(r.buckets.micro_recall)});
        rows.push_back({{"metric", r.metric},
                        {"cohort", r.cohort},
                        {"n", r.n},
                        {"spearman", r.rho},
                        {"macro_precision", r.buckets.macro_precision},
                        {"macro_recall", r.buckets.macro_recall},
                        {"micro_precision", r.buckets.micro_precision},
                        {"micro_recall", r.buckets.micro_recall}});
    }
    lb::write_file_atomic(artifact_path(cfg.out_dir, "report.tsv"), lb::format_tsv(table));
    lb::write_file_atomic(artifact_path(cfg.out_dir, "report.json"), rows.dump(2) + "\n");

    mf.outputs = {"report.tsv", "report.json"};
    write_manifest(mf, cfg.out_dir);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"borrowing-vs-mixing corpus pipeline"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* ingest = app.add_subcommand("ingest", "load, filter and tokenize the raw corpus");
    CLI::App* tag = app.add_subcommand("tag", "tag tokens against the lexicons");
    CLI::App* categorize = app.add_subcommand("categorize", "assign tweet categories");
    CLI::App* stats = app.add_subcommand("stats", "per-word usage counters");
    CLI::App* candidates = app.add_subcommand("candidates", "frequent foreign-word candidates");
    CLI::App* features = app.add_subcommand("features", "context feature vectors");
    CLI::App* cluster = app.add_subcommand("cluster", "K-means with elbow selection");
    CLI::App* sample = app.add_subcommand("sample", "bbw + random target words");
    CLI::App* score = app.add_subcommand("score", "metric scores for target words");
    CLI::App* rank = app.add_subcommand("rank", "ranked word list for a metric");
    CLI::App* ground_truth =
        app.add_subcommand("ground-truth", "survey LPF scores and ranking");
    CLI::App* evaluate = app.add_subcommand("evaluate", "compare a metric ranking to ground truth");
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    CLI::App* report = app.add_subcommand("report", "consolidate evaluation reports");

    for (CLI::App* sub : {ingest, tag, categorize, stats, candidates, features, cluster, sample,
                          score, rank, ground_truth, evaluate, report}) {
        add_common_options(sub, f);
    }

    stats->add_option("--words", f.words_path, "word list file (one word per line)");
    stats->add_option("--mix-bucket", f.mix_bucket, "restrict to users in high|mid|low")
        ->check(CLI::IsMember({"high", "mid", "low"}));
    cluster->add_option("--k", f.fixed_k, "fixed K (skip the elbow scan)");
    for (CLI::App* sub : {score, rank}) {
        sub->add_option("--metric", f.metric, "uur|utr|upr|baseline")
            ->required()
            ->check(CLI::IsMember({"uur", "utr", "upr", "baseline"}));
        sub->add_option("--words", f.words_path, "word list file (baseline metric)");
        sub->add_option("--mix-bucket", f.mix_bucket, "use the high|mid|low stats artifact")
            ->check(CLI::IsMember({"high", "mid", "low"}));
    }
    for (CLI::App* sub : {ground_truth, evaluate}) {
        sub->add_option("--age-lt", f.age_lt, "cohort: participants younger than AGE");
        sub->add_option("--age-ge", f.age_ge, "cohort: participants at least AGE");
    }
    evaluate->add_option("--metric", f.metric, "uur|utr|upr|baseline")
        ->required()
        ->check(CLI::IsMember({"uur", "utr", "upr", "baseline"}));
    evaluate->add_option("--mix-bucket", f.mix_bucket, "use the high|mid|low rank artifact")
        ->check(CLI::IsMember({"high", "mid", "low"}));
    evaluate->add_option("--truth", f.truth_path,
                         "ground truth: survey .csv, rank_lpf*.tsv or truth.tsv");
    synth->add_option("--config", f.synth_spec_path, "synth spec JSON")->required();
    synth->add_option("--seed", f.seed, "seed override");
    synth->add_option("--out", f.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (sub == synth) {
            run_synth(f, sub);
            return 0;
        }
        PipelineConfig cfg;
        if (!f.config_path.empty()) cfg = load_pipeline_config(f.config_path);
        apply_overrides(cfg, sub, f);
        if (f.threads == 0) f.threads = 1;
        ensure_out_dir(cfg.out_dir);

        if (sub == ingest) run_ingest(cfg, f);
        else if (sub == tag) run_tag(cfg, f);
        else if (sub == categorize) run_categorize(cfg, f);
        else if (sub == stats) run_stats(cfg, f);
        else if (sub == candidates) run_candidates(cfg, f);
        else if (sub == features) run_features(cfg, f);
        else if (sub == cluster) run_cluster(cfg, f, sub);
        else if (sub == sample) run_sample(cfg, f);
        else if (sub == score) run_score(cfg, f);
        else if (sub == rank) run_rank(cfg, f);
        else if (sub == ground_truth) run_ground_truth(cfg, f, sub);
        else if (sub == evaluate) run_evaluate(cfg, f, sub);
        else if (sub == report) run_report(cfg, f);
    } catch (const lb::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
