#ifndef LEXBORROW_ARTIFACTS_HPP
#define LEXBORROW_ARTIFACTS_HPP

#include "lexborrow/candidates.hpp"
#include "lexborrow/evaluation.hpp"
#include "lexborrow/ground_truth.hpp"
#include "lexborrow/metrics.hpp"
#include "lexborrow/synth.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lexborrow {

/// On-disk formats for every pipeline stage. All writers are atomic
/// (temp + rename), emit rows in a canonical order and format doubles with
/// the shortest round-trip representation, so re-running a stage with the
/// same inputs reproduces files byte for byte.

void write_stats_tsv(const std::string& path, const UsageStatsMap& stats);
UsageStatsMap read_stats_tsv(const std::string& path);

void write_scores_tsv(const std::string& path, const ScoredWords& scored);
ScoredWords read_scores_tsv(const std::string& path);

void write_ranklist_tsv(const std::string& path, const RankList& list);
RankList read_ranklist_tsv(const std::string& path);

void write_candidates_tsv(const std::string& path, const std::vector<std::string>& words,
                          const std::map<std::string, uint64_t>& freqs);
std::vector<std::string> read_candidates_tsv(const std::string& path);

void write_features_tsv(const std::string& path, const std::vector<ContextFeatureVector>& table);
std::vector<ContextFeatureVector> read_features_tsv(const std::string& path);

void write_clusters_tsv(const std::string& path, const ClusterModel& model);
/// Restores k and the assignment (centroids and inertia are not persisted).
ClusterModel read_clusters_tsv(const std::string& path);

void write_elbow_json(const std::string& path, const ElbowResult& elbow);
ElbowResult read_elbow_json(const std::string& path);

void write_targets_tsv(const std::string& path, const TargetWordSets& targets);
TargetWordSets read_targets_tsv(const std::string& path);

void write_lpf_tsv(const std::string& path, const std::vector<LPFScore>& scores);
std::vector<LPFScore> read_lpf_tsv(const std::string& path);

void write_truth_tsv(const std::string& path, const PlantedTruth& truth);
/// The planted ranking, for evaluating metric ranks against it.
RankList read_truth_tsv(const std::string& path);

void write_histogram_json(const std::string& path, const std::map<std::string, uint64_t>& hist);
std::map<std::string, uint64_t> read_histogram_json(const std::string& path);

void write_baseline_tsv(const std::string& path, const BaselineTable& table);

void write_wordlist(const std::string& path, const std::vector<std::string>& words);

/// Result of evaluating one metric ranking against one ground-truth ranking.
struct EvalReport {
    std::string metric;
    std::string cohort = "all";
    uint64_t n = 0; // words compared
    double rho = 0.0;
    BucketReport buckets;
};

void write_eval_json(const std::string& path, const EvalReport& report);
EvalReport read_eval_json(const std::string& path);

} // namespace lexborrow

#endif
