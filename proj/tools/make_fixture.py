#!/usr/bin/env python3
"""Regenerates the bundled synthetic fixture under fixtures/.

The fixture is six synthetic ecosystems with deliberately different funding
profiles: a "Berlin-like" one concentrated on large later-stage rounds and a
"London-like" one dominated by small seed rounds, plus four intermediate ones.
Malformed records are planted at known positions; MANIFEST.json records what
was planted so ingestion counts can be checked against it.

Usage: python3 tools/make_fixture.py [output_dir]
"""

import csv
import datetime as dt
import json
import random
import sys
from pathlib import Path

SEED = 20200106
CUTOFF = dt.date(2020, 1, 6)

ECOSYSTEMS = [
    {"name": "Berlin", "match": {"cities": ["Berlin"]}, "ppp_divisor_usd": 70000},
    {"name": "Israel", "match": {"countries": ["Israel"]}, "ppp_divisor_usd": 85000},
    {"name": "London", "match": {"cities": ["London"]}, "ppp_divisor_usd": 80000},
    {"name": "New York", "match": {"cities": ["New York", "Brooklyn"]}, "ppp_divisor_usd": 125000},
    {"name": "Paris", "match": {"regions": ["Ile-de-France", "Île-de-France"]}, "ppp_divisor_usd": 60000},
    {"name": "Silicon Valley",
     "match": {"cities": ["San Francisco", "Palo Alto", "Mountain View", "San Jose", "Menlo Park"]},
     "ppp_divisor_usd": 150000},
]

LOCATIONS = {
    "Berlin": ("Berlin", "Berlin", "Germany"),
    "Israel": ("Tel Aviv", "Tel Aviv District", "Israel"),
    "London": ("London", "England", "United Kingdom"),
    "New York": ("New York", "New York", "United States"),
    "Paris": ("Paris", "Ile-de-France", "France"),
    "Silicon Valley": ("Palo Alto", "California", "United States"),
}

PREFIX = {"Berlin": "ber", "Israel": "isr", "London": "lon", "New York": "nyc",
          "Paris": "par", "Silicon Valley": "sv"}

# (stage label, min amount, max amount, min day, max day) per round, in order.
PROFILES = {
    "Berlin": [("Seed", 1_500_000, 3_000_000, 60, 170),
               ("Series A", 6_000_000, 10_000_000, 200, 400),
               ("series_b", 15_000_000, 30_000_000, 500, 800),
               ("Series D", 60_000_000, 120_000_000, 900, 1300),
               ("series e", 100_000_000, 200_000_000, 1400, 1900)],
    "London": [("seed", 150_000, 400_000, 40, 170),
               ("Seed", 200_000, 500_000, 200, 400),
               ("angel", 300_000, 600_000, 420, 650),
               ("Series A", 2_000_000, 4_000_000, 700, 1000),
               ("Series B", 6_000_000, 10_000_000, 1100, 1500)],
    "Israel": [("Seed", 700_000, 1_500_000, 60, 250),
               ("Series A", 4_000_000, 8_000_000, 300, 600),
               ("Series B", 12_000_000, 20_000_000, 700, 1000),
               ("SERIES C", 25_000_000, 40_000_000, 1100, 1500)],
    "New York": [("Seed", 800_000, 1_600_000, 60, 250),
                 ("Series A", 5_000_000, 9_000_000, 350, 700),
                 ("Series B", 12_000_000, 22_000_000, 800, 1200),
                 ("Series C", 25_000_000, 45_000_000, 1300, 1700)],
    "Paris": [("pre-seed", 200_000, 500_000, 60, 250),
              ("Seed", 600_000, 1_200_000, 300, 600),
              ("Series A", 2_500_000, 5_000_000, 700, 1100),
              ("Series B", 8_000_000, 14_000_000, 1200, 1600)],
    "Silicon Valley": [("Seed", 1_200_000, 2_500_000, 50, 200),
                       ("Series A", 7_000_000, 12_000_000, 250, 500),
                       ("Series B", 18_000_000, 35_000_000, 600, 900),
                       ("Series C", 40_000_000, 70_000_000, 1000, 1300),
                       ("Series D", 80_000_000, 150_000_000, 1400, 1800)],
}

# 19 founding years per ecosystem; five fall in 2010-2012 (six for the last).
YEARS = [2009, 2010, 2010, 2011, 2011, 2012, 2013, 2014, 2014, 2015,
         2015, 2016, 2016, 2017, 2017, 2018, 2018, 2019, 2013]


def main(out_dir: Path) -> None:
    rng = random.Random(SEED)
    out_dir.mkdir(parents=True, exist_ok=True)

    startups = []   # valid records: dicts
    for eco in ECOSYSTEMS:
        name = eco["name"]
        years = list(YEARS)
        if name == "Silicon Valley":
            years[-1] = 2012
        for k, year in enumerate(years):
            founded = dt.date(year, 1, 1) + dt.timedelta(days=rng.randrange(0, 360))
            city, region, country = LOCATIONS[name]
            startups.append({"id": f"{PREFIX[name]}-{k:03d}", "name": f"{name} Startup {k}",
                             "founded": founded.isoformat(), "city": city, "region": region,
                             "country": country, "_eco": name})

    # Planted startup-file errors: (insert position, record, reason).
    bad_startups = [
        (10, {"id": "st-err-1", "name": "Bad Date Co", "founded": "13/45/20", "city": "Berlin",
              "region": "Berlin", "country": "Germany"}, "BadDate"),
        (30, {"id": "", "name": "No Id Co", "founded": "2014-05-01", "city": "London",
              "region": "England", "country": "United Kingdom"}, "MissingField"),
        (50, {"id": "st-err-3", "name": "No Date Co", "founded": "", "city": "Paris",
              "region": "Ile-de-France", "country": "France"}, "MissingField"),
        (70, {"id": "st-err-4", "name": "Feb 30 Co", "founded": "2015-02-30", "city": "Tel Aviv",
              "region": "", "country": "Israel"}, "BadDate"),
        (90, {"id": "ber-003", "name": "Duplicate Berlin", "founded": "2012-03-03", "city": "Berlin",
              "region": "Berlin", "country": "Germany"}, "DuplicateId"),
        (110, {"id": "sv-001", "name": "Duplicate Valley, Inc.", "founded": "2016-06-06",
               "city": "San Jose", "region": "California", "country": "United States"}, "DuplicateId"),
    ]
    startup_rows = [dict(s) for s in startups]
    for pos, rec, _ in bad_startups:
        startup_rows.insert(pos, rec)

    rounds = []
    special = 0
    for s in startups:
        founded = dt.date.fromisoformat(s["founded"])
        profile = PROFILES[s["_eco"]]
        for i, (label, lo, hi, dlo, dhi) in enumerate(profile):
            day = rng.randint(dlo, dhi)
            date = founded + dt.timedelta(days=day)
            if date > CUTOFF:
                break
            amount = rng.randrange(lo // 1000, hi // 1000) * 1000
            amount_text = str(amount)
            if rng.random() < 0.07:
                amount_text = ""  # unknown amount
            if rng.random() < 0.05:
                label = "Debt Financing"
            rounds.append({"startup_id": s["id"], "announced": date.isoformat(),
                           "amount_usd": amount_text, "stage": label})
            # A few same-day follow-ons and founding-day rounds.
            if i == 1 and special % 9 == 0:
                rounds.append({"startup_id": s["id"], "announced": date.isoformat(),
                               "amount_usd": str(amount // 4), "stage": "Series A"})
            special += 1
        if s["id"].endswith("-005"):
            rounds.append({"startup_id": s["id"], "announced": s["founded"],
                           "amount_usd": "250000.50", "stage": "angel"})

    rounds.sort(key=lambda r: (r["announced"], r["startup_id"]))
    bad_rounds = [
        (5, {"startup_id": "zz-unknown", "announced": "2015-01-01", "amount_usd": "1000000",
             "stage": "Seed"}, "OrphanRound"),
        (25, {"startup_id": "st-err-1", "announced": "2016-02-01", "amount_usd": "500000",
              "stage": "Seed"}, "OrphanRound"),
        (45, {"startup_id": "lon-007", "announced": "2001-01-01", "amount_usd": "300000",
              "stage": "Seed"}, "RoundBeforeFounding"),
        (65, {"startup_id": "par-009", "announced": "2002-06-15", "amount_usd": "200000",
              "stage": "Seed"}, "RoundBeforeFounding"),
        (85, {"startup_id": "nyc-004", "announced": "2013-05-05", "amount_usd": "12abc",
              "stage": "Series A"}, "BadAmount"),
        (105, {"startup_id": "isr-006", "announced": "2014-07-07", "amount_usd": "-5000",
               "stage": "Seed"}, "BadAmount"),
        (125, {"startup_id": "sv-008", "announced": "2016-13-01", "amount_usd": "4000000",
               "stage": "Series A"}, "BadDate"),
        (145, {"startup_id": "", "announced": "2017-01-01", "amount_usd": "100000",
               "stage": "Seed"}, "MissingField"),
        (165, {"startup_id": "ber-012", "announced": "", "amount_usd": "100000",
               "stage": "Seed"}, "MissingField"),
    ]
    round_rows = list(rounds)
    for pos, rec, _ in bad_rounds:
        round_rows.insert(pos, rec)

    cols_s = ["id", "name", "founded", "city", "region", "country"]
    with open(out_dir / "startups.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(cols_s)
        for r in startup_rows:
            w.writerow([r[c] for c in cols_s])
    cols_r = ["startup_id", "announced", "amount_usd", "stage"]
    with open(out_dir / "rounds.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(cols_r)
        for r in round_rows:
            w.writerow([r[c] for c in cols_r])

    def json_amount(text):
        if text == "":
            return None
        try:
            return int(text)
        except ValueError:
            try:
                return float(text)
            except ValueError:
                return text

    with open(out_dir / "startups.json", "w", encoding="utf-8") as f:
        json.dump([{c: r[c] for c in cols_s} for r in startup_rows], f, indent=1, ensure_ascii=False)
        f.write("\n")
    with open(out_dir / "rounds.json", "w", encoding="utf-8") as f:
        json.dump([{"startup_id": r["startup_id"], "announced": r["announced"],
                    "amount_usd": json_amount(r["amount_usd"]), "stage": r["stage"]}
                   for r in round_rows], f, indent=1)
        f.write("\n")

    config = {"ecosystems": ECOSYSTEMS,
              "stage_map": {"debt financing": "Other", "pre-seed": "Seed"}}
    with open(out_dir / "config.json", "w", encoding="utf-8") as f:
        json.dump(config, f, indent=2, ensure_ascii=False)
        f.write("\n")

    def by_reason(planted):
        out = {}
        for _, _, reason in planted:
            out[reason] = out.get(reason, 0) + 1
        return dict(sorted(out.items()))

    per_eco = {}
    for eco in ECOSYSTEMS:
        ids = {s["id"] for s in startups if s["_eco"] == eco["name"]}
        per_eco[eco["name"]] = {"startups": len(ids),
                                "rounds": sum(1 for r in rounds if r["startup_id"] in ids)}
    cohort = sorted(s["id"] for s in startups if 2010 <= int(s["founded"][:4]) <= 2012)
    manifest = {
        "startups": {"records": len(startup_rows), "accepted": len(startups), "excluded": 0,
                     "errors": len(bad_startups), "errors_by_reason": by_reason(bad_startups)},
        "rounds": {"records": len(round_rows), "accepted": len(rounds), "excluded": 0,
                   "errors": len(bad_rounds), "errors_by_reason": by_reason(bad_rounds),
                   "unknown_amount": sum(1 for r in rounds if r["amount_usd"] == "")},
        "ecosystems": per_eco,
        "founded_2010_2012": cohort,
    }
    with open(out_dir / "MANIFEST.json", "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
