"""Regenerate the bundled 200-post synthetic corpus and case series.

Run from the repo root:  python scripts/make_sample.py
The outputs are committed under src/sinosent/data/sample/.
"""

import csv
import random
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "sinosent" / "data" / "sample"

COUNTRIES = ["AU", "BR", "IN", "ID", "JP", "GB"]
COUNTRY_NAMES = {
    "AU": "Australia", "BR": "Brazil", "IN": "India",
    "ID": "Indonesia", "JP": "Japan", "GB": "United Kingdom",
}

KEYWORD_SNIPPETS = [
    "china released the report",
    "the chinese communist party lied",
    "wuhan lab leak theory again",
    "thanks china kung flu strikes",
    "beijing announced a new lockdown",
    "ccp propaganda is everywhere",
    "prc tests are not enough",
    "blame the mainland for this virus",
    "sinophobia is rising online",
    "hubei cases confirmed by officials",
]

FILLERS = [
    "I can't believe this is happening again",
    "lol we're doomed, stay safe everyone",
    "Feeling hopeful about the vaccine rollout",
    "So angry at the government response",
    "Sad news today, more deaths reported",
    "This is a hoax, don't believe the lies",
    "Officials confirmed new cases in lockdown areas",
    "Thanks to all the heroes in hospitals",
    "What a joke, haha",
    "Scared and worried about my family",
    "rt great progress on recovery numbers",
    "Another conspiracy theory making rounds",
]

NOISE = ["@someuser", "#covid", "#pandemic", "https://t.co/abc123", "🙂", "😢", "💉"]


def main():
    rng = random.Random(20200301)
    OUT.mkdir(parents=True, exist_ok=True)

    start = datetime(2020, 4, 1, tzinfo=timezone.utc)
    span_days = (datetime(2022, 1, 28, tzinfo=timezone.utc) - start).days

    with (OUT / "posts.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "text", "timestamp", "country"])
        for i in range(200):
            parts = [rng.choice(FILLERS)]
            if rng.random() < 0.8:
                parts.insert(rng.randrange(2), rng.choice(KEYWORD_SNIPPETS))
            if rng.random() < 0.5:
                parts.append(rng.choice(NOISE))
            when = start + timedelta(days=rng.randrange(span_days),
                                     seconds=rng.randrange(86400))
            writer.writerow([
                f"p{i:04d}",
                " ".join(parts),
                when.isoformat().replace("+00:00", "Z"),
                rng.choice(COUNTRIES),
            ])

    # wide cumulative cases CSV, one column per month-end date
    month_ends = []
    y, m = 2020, 4
    while (y, m) <= (2022, 1):
        ny, nm = (y + 1, 1) if m == 12 else (y, m + 1)
        month_ends.append(date(ny, nm, 1) - timedelta(days=1))
        y, m = ny, nm

    with (OUT / "cases.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["Province/State", "Country/Region"]
                        + [d.strftime("%-m/%-d/%y") for d in month_ends])
        for code in COUNTRIES:
            cumulative = 0
            row = ["", COUNTRY_NAMES[code]]
            for _ in month_ends:
                cumulative += rng.randrange(1000, 50000)
                row.append(cumulative)
            writer.writerow(row)

    print("wrote", OUT / "posts.csv", "and", OUT / "cases.csv")


if __name__ == "__main__":
    main()
