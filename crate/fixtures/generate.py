"""Regenerates the fixture corpora. Output is fully determined by SEED."""

import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

SEED = 20090601
HERE = Path(__file__).parent

POSITIVE = ["good", "great", "nice", "cool", "fun", "happy", "glad", "love", "lovely",
            "wonderful", "excellent", "amazing", "best", "enjoying", "cheerful", "excited",
            "proud", "calm", "relaxed", "delighted", "birthday party", "good morning", "win"]
NEGATIVE = ["bad", "sad", "hate", "awful", "terrible", "horrible", "worst", "boring",
            "angry", "annoying", "crying", "hurt", "lonely", "tired", "sick", "scared",
            "nervous", "ashamed", "exhausted", "bad day", "traffic jam", "lose", "wicked"]
NEUTRAL = ["think", "know", "ok", "yes", "today", "morning", "work", "alert", "surprised",
           "monday morning", "shy", "determined"]
POS_EMOTICONS = [":)", ":-)", ":D", ";)", "<3", "^_^", ":P", "=)", "\\o/"]
NEG_EMOTICONS = [":(", ":-(", ":'(", ":/", "D:", ">:-(", "=(", ":["]
FILLERS = ["the", "bus", "was", "at", "my", "place", "and", "then", "we", "went", "to",
           "lunch", "with", "everyone", "again", "after", "class", "this", "week", "phone",
           "coffee", "game", "movie", "train", "weather", "it", "is", "just", "a330", "2009"]
BOOSTERS = ["very", "really", "so", "extremely"]
NEGATORS = ["not", "never", "don't"]


def sentence(rng, label):
    words = rng.sample(FILLERS, rng.randint(2, 6))
    own, other = (POSITIVE, NEGATIVE) if label == "positive" else (NEGATIVE, POSITIVE)
    kind = rng.random()
    if kind < 0.15:
        pass  # no opinion words at all
    elif kind < 0.25:
        words.append(rng.choice(NEUTRAL))
    elif kind < 0.35:
        # mixed, sometimes against the label
        words += [rng.choice(own), rng.choice(other)]
    elif kind < 0.42:
        words += [rng.choice(NEGATORS), rng.choice(other)]
    else:
        if rng.random() < 0.3:
            words.append(rng.choice(BOOSTERS))
        words.append(rng.choice(own))
    rng.shuffle(words)
    text = " ".join(words)
    r = rng.random()
    if r < 0.2:
        pool = POS_EMOTICONS if label == "positive" else NEG_EMOTICONS
        text += " " + rng.choice(pool)
    elif r < 0.25:
        text += " " + rng.choice(NEG_EMOTICONS if label == "positive" else POS_EMOTICONS)
    elif r < 0.32:
        text += rng.choice(["!!!", "!!", "?", "..."])
    return text


def labeled(rng, n):
    lines = ["# label<TAB>text, generated by generate.py"]
    for _ in range(n):
        label = "positive" if rng.random() < 0.55 else "negative"
        lines.append(f"{label}\t{sentence(rng, label)}")
    return "\n".join(lines) + "\n"


def stream(rng, n, start, days, topics):
    lines = ["# id<TAB>time<TAB>text, generated by generate.py"]
    for i in range(n):
        when = start + timedelta(seconds=rng.randrange(days * 86400))
        label = "positive" if rng.random() < 0.5 else "negative"
        text = sentence(rng, label)
        if topics and rng.random() < 0.7:
            text = rng.choice(topics) + " " + text
        lines.append(f"m{i}\t{when.strftime('%Y-%m-%dT%H:%M:%SZ')}\t{text}")
    return "\n".join(lines) + "\n"


def main():
    rng = random.Random(SEED)
    (HERE / "labeled_200.tsv").write_text(labeled(rng, 200))
    (HERE / "calibration_100.tsv").write_text(labeled(rng, 100))
    topics = ["airfrance crash", "swine flu outbreak", "h1n1 virus", "the a330 passengers"]
    june = datetime(2009, 6, 1, tzinfo=timezone.utc)
    (HERE / "stream_june2009.tsv").write_text(stream(rng, 120, june, 30, topics))
    (HERE / "baseline_may2009.tsv").write_text(stream(rng, 400, datetime(2009, 5, 1, tzinfo=timezone.utc), 30, []))


if __name__ == "__main__":
    main()
