#!/usr/bin/env python3
"""Regenerates the frozen categorization fixture.

Independent reference implementation of the tweet-category and
phrase-segmentation rules; the C++ suite must reproduce its output exactly.
Run from this directory: python3 make_fixture.py
"""
import json
import random

SEED = 20240611
N_TWEETS = 200

TAGS = ["En", "Hi", "NE", "Other"]


def categorize(tags):
    content = [t for t in tags if t in ("En", "Hi")]
    if not content:
        return "Other"
    n = len(content)
    en = sum(1 for t in content if t == "En")
    hi = n - en
    if en > 0.9 * n:
        return "En"
    if hi > 0.9 * n:
        return "Hi"
    runs = []
    for t in content:
        if runs and runs[-1][0] == t:
            runs[-1][1] += 1
        else:
            runs.append([t, 1])
    if len(runs) == 2 and runs[0][1] >= 2 and runs[1][1] >= 2:
        return "CS"
    if hi > en:
        return "CMH"
    if en > hi:
        return "CME"
    return "CMEQ"


def phrases(tags):
    lang = ["En" if t == "En" else "Hi" if t == "Hi" else "Oth" for t in tags]
    out = []
    i = 0
    while i < len(lang):
        j = i
        while j < len(lang) and lang[j] == lang[i]:
            j += 1
        out.append([lang[i], i, j])
        i = j
    return out


def main():
    rng = random.Random(SEED)
    tweets, annotations = [], []
    histogram = {k: 0 for k in ["En", "Hi", "CME", "CMH", "CMEQ", "CS", "Other"]}

    for i in range(N_TWEETS):
        style = rng.randrange(8)
        n = rng.randint(1, 14)
        if style == 0:      # mostly English
            tags = [rng.choices(TAGS, [20, 1, 2, 1])[0] for _ in range(n)]
        elif style == 1:    # mostly Hindi
            tags = [rng.choices(TAGS, [1, 20, 2, 1])[0] for _ in range(n)]
        elif style == 2:    # two trails, CS-shaped
            a, b = rng.sample(["En", "Hi"], 2)
            k = rng.randint(1, max(1, n - 1))
            tags = [a] * k + [b] * (n - k)
        elif style == 3:    # no content tokens at all
            tags = [rng.choice(["NE", "Other"]) for _ in range(n)]
        elif style == 4:    # alternating-ish mix
            tags = [rng.choice(["En", "Hi"]) for _ in range(n)]
        else:               # anything goes
            tags = [rng.choices(TAGS, [6, 6, 1, 1])[0] for _ in range(n)]

        tokens = [f"w{i}_{k}" for k in range(len(tags))]
        tweet_id = f"f{i:04d}"
        user = f"user{i % 23:02d}"
        tweets.append({"id": tweet_id, "user": user, "tokens": tokens, "tags": tags})

        cat = categorize(tags)
        histogram[cat] += 1
        annotations.append({"id": tweet_id, "category": cat, "phrases": phrases(tags)})

    with open("fixture_tweets.jsonl", "w") as fh:
        for t in tweets:
            fh.write(json.dumps(t, sort_keys=True) + "\n")
    with open("fixture_annotations.jsonl", "w") as fh:
        for a in annotations:
            fh.write(json.dumps(a, sort_keys=True) + "\n")
    with open("fixture_histogram.json", "w") as fh:
        json.dump(histogram, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print("categories:", {k: v for k, v in histogram.items() if v})


if __name__ == "__main__":
    main()
