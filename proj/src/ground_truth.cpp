#include "lexborrow/ground_truth.hpp"

#include "lexborrow/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lexborrow {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    // Survey cells never contain commas, so plain splitting is enough.
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

SurveyChoice parse_choice(const std::string& cell, const std::string& where) {
    if (cell == "EN") return SurveyChoice::En;
    if (cell == "HI") return SurveyChoice::Hi;
    if (cell == "NONE") return SurveyChoice::None;
    throw DataError(where + ": invalid survey choice '" + cell + "'");
}

} // namespace

SurveyResponseSet load_responses(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw DataError(path + ": empty survey file");

    SurveyResponseSet set;
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 4 || header[0] != "participant_id" || header[1] != "age" ||
        header[2] != "education") {
        throw DataError(path + ": expected header participant_id,age,education,<words...>");
    }
    for (size_t i = 3; i < header.size(); ++i) set.words.push_back(trim(header[i]));

    std::unordered_set<std::string> seen;
    for (size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        const std::string where = path + ":" + std::to_string(row + 1);
        const auto fields = split_csv_line(lines[row]);
        if (fields.size() != header.size()) {
            throw DataError(where + ": expected " + std::to_string(header.size()) + " fields");
        }

        Participant p;
        p.id = trim(fields[0]);
        if (p.id.empty()) throw DataError(where + ": empty participant_id");
        if (!seen.insert(p.id).second) throw DataError(where + ": duplicate participant_id " + p.id);

        const std::string age_str = trim(fields[1]);
        try {
            p.age = static_cast<unsigned>(std::stoul(age_str));
        } catch (const std::exception&) {
            throw DataError(where + ": bad age '" + age_str + "'");
        }
        if (p.age == 0) throw DataError(where + ": age must be positive");
        p.education = trim(fields[2]);

        for (size_t i = 3; i < fields.size(); ++i) {
            const std::string cell = trim(fields[i]);
            if (cell.empty()) continue; // missing answer
            p.choices[set.words[i - 3]] = parse_choice(cell, where);
        }
        set.participants.push_back(std::move(p));
    }
    return set;
}

namespace {

bool in_cohort(const Participant& p, const Cohort& cohort) {
    return !cohort || cohort->count(p.id) > 0;
}

} // namespace

LPFScore lpf(const SurveyResponseSet& responses, const std::string& word, const Cohort& cohort) {
    if (std::find(responses.words.begin(), responses.words.end(), word) ==
        responses.words.end()) {
        throw DataError("word not in survey: " + word);
    }
    LPFScore score;
    score.word = word;
    for (const Participant& p : responses.participants) {
        if (!in_cohort(p, cohort)) continue;
        auto it = p.choices.find(word);
        if (it == p.choices.end()) continue;
        switch (it->second) {
            case SurveyChoice::En: ++score.count_en; break;
            case SurveyChoice::Hi: ++score.count_hi; break;
            case SurveyChoice::None: ++score.count_none; break;
        }
    }
    score.lpf = static_cast<int64_t>(score.count_en) - static_cast<int64_t>(score.count_hi);
    return score;
}

std::vector<LPFScore> lpf_all(const SurveyResponseSet& responses, const Cohort& cohort) {
    std::vector<LPFScore> scores;
    scores.reserve(responses.words.size());
    for (const auto& word : responses.words) scores.push_back(lpf(responses, word, cohort));
    return scores;
}

RankList rank_by_lpf(const SurveyResponseSet& responses, const Cohort& cohort) {
    if (responses.words.empty()) throw DataError("survey has no words to rank");
    std::vector<Score> scores;
    for (const LPFScore& s : lpf_all(responses, cohort)) {
        scores.push_back(Score{s.word, MetricId::LPF, static_cast<double>(s.lpf)});
    }
    return rank(std::move(scores));
}

AgeSplit split_age(const SurveyResponseSet& responses, unsigned threshold) {
    AgeSplit split;
    split.young.emplace();
    split.elder.emplace();
    for (const Participant& p : responses.participants) {
        if (p.age < threshold) split.young->insert(p.id);
        else split.elder->insert(p.id);
    }
    if (split.young->empty()) std::cerr << "warning: young cohort is empty\n";
    if (split.elder->empty()) std::cerr << "warning: elder cohort is empty\n";
    return split;
}

const char* to_string(MixBucketLabel label) {
    switch (label) {
        case MixBucketLabel::High: return "High";
        case MixBucketLabel::Mid: return "Mid";
        case MixBucketLabel::Low: return "Low";
    }
    return "Low";
}

MixBucketLabel mix_bucket_from_string(std::string_view s) {
    if (s == "High") return MixBucketLabel::High;
    if (s == "Mid") return MixBucketLabel::Mid;
    if (s == "Low") return MixBucketLabel::Low;
    throw DataError("unknown mix bucket '" + std::string(s) + "'");
}

std::map<std::string, UserMixInfo> user_mix_fractions(const Corpus& corpus) {
    std::map<std::string, UserMixInfo> info;
    for (const Tweet& tweet : corpus.tweets) {
        if (!tweet.category) throw DataError("tweet " + tweet.id + " is not categorized");
        UserMixInfo& u = info[tweet.user_id];
        ++u.total;
        switch (*tweet.category) {
            case TweetCategory::CME:
            case TweetCategory::CMH:
            case TweetCategory::CMEQ: ++u.mixed; break;
            default: break;
        }
    }
    return info;
}

std::array<UserMixBucket, 3> bucket_users(const Corpus& corpus,
                                          const MixBucketThresholds& thresholds) {
    std::array<UserMixBucket, 3> buckets{UserMixBucket{MixBucketLabel::High, {}},
                                         UserMixBucket{MixBucketLabel::Mid, {}},
                                         UserMixBucket{MixBucketLabel::Low, {}}};
    for (const auto& [user, info] : user_mix_fractions(corpus)) {
        const double f = info.fraction();
        if (f > thresholds.high_above) buckets[0].user_ids.insert(user);
        else if (f < thresholds.low_below) buckets[2].user_ids.insert(user);
        else buckets[1].user_ids.insert(user);
    }
    return buckets;
}

Corpus restrict_to_users(const Corpus& corpus, const std::unordered_set<std::string>& users) {
    Corpus result;
    result.provenance = corpus.provenance;
    for (const Tweet& tweet : corpus.tweets) {
        if (users.count(tweet.user_id)) result.tweets.push_back(tweet);
    }
    return result;
}

} // namespace lexborrow
