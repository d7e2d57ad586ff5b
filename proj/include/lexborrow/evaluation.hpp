#ifndef LEXBORROW_EVALUATION_HPP
#define LEXBORROW_EVALUATION_HPP

#include "lexborrow/metrics.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace lexborrow {

enum class RangeLabel { SB, LB, BL, LM, SM };

constexpr std::array<RangeLabel, 5> kRangeLabels = {RangeLabel::SB, RangeLabel::LB, RangeLabel::BL,
                                                    RangeLabel::LM, RangeLabel::SM};

const char* to_string(RangeLabel label);

/// One of the five 20% bands of a rank list, top to bottom.
struct RankRange {
    RangeLabel label;
    std::unordered_set<std::string> words;
};

using RangePartition = std::array<RankRange, 5>;

/// Spearman's rho, computed as the Pearson correlation of the two average-
/// tie rank vectors. Both lists must rank the identical word set (n >= 2).
/// A list whose ranks are all tied has no ordering signal; rho is 0 then.
double spearman(const RankList& list_a, const RankList& list_b);

/// Splits list positions into five bands; band i covers positions
/// (floor((i-1)*n/5), floor(i*n/5)]. Ties across a boundary follow list
/// order.
RangePartition partition_ranges(const RankList& list);

struct BucketCounts {
    uint64_t tp = 0, fp = 0, tn = 0;
    double precision = 0.0, recall = 0.0;
};

struct BucketReport {
    std::array<BucketCounts, 5> buckets; // indexed like kRangeLabels
    double macro_precision = 0.0, macro_recall = 0.0;
    double micro_precision = 0.0, micro_recall = 0.0;
};

/// Bucket-wise agreement of two partitions of the same word set.
BucketReport bucket_pr(const RangePartition& predicted, const RangePartition& truth);

} // namespace lexborrow

#endif
