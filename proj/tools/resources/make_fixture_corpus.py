#!/usr/bin/env python3
"""Writes the synthetic raw dataset used by the end-to-end tests.

Layout: <out>/fake/NNN.txt and <out>/satire/NNN.txt; first line headline,
then paragraphs separated by blank lines.
"""
import argparse
import pathlib
import random

NAMES = ["Senator Hale", "Mayor Ortiz", "the governor", "Dr. Lin", "the minister", "a spokesman",
         "Judge Barrow", "the president", "Coach Miller", "the ambassador", "Professor Kent"]
PLACES = ["Ohio", "the capital", "Brussels", "a small town", "Texas", "the harbor district",
          "the state fair", "downtown Denver", "the border", "a suburban mall"]
THINGS = ["budget", "vaccine", "bridge", "election", "pipeline", "tax plan", "water supply",
          "school board", "trade deal", "power grid", "court ruling", "museum"]
GROUPS = ["voters", "residents", "officials", "parents", "farmers", "workers", "critics", "experts"]

SHARED = [
    "The {thing} in {place} drew attention from {group} on Monday.",
    "{name} spoke about the {thing} during a press conference in {place}.",
    "Several {group} attended the meeting and asked questions about the {thing}.",
    "Local news outlets covered the story for most of the week.",
    "The {thing} has been debated for {n} months without a final decision.",
    "A statement from the office of {name} was released late in the evening.",
    "According to the report, {n} percent of {group} supported the change.",
    "The city council will vote on the {thing} next week.",
    "Reporters waited outside the building in {place} for several hours.",
    "Officials in {place} declined to comment on the {thing}.",
]

SATIRE = [
    "\"I have never been more certain of anything,\" said {name}, who was holding a sandwich.",
    "I asked my neighbor about the {thing}, and he said it was probably fine.",
    "Sources confirmed that {name} is now sleeping in the {thing} office to save time.",
    "Sitting quietly and staring at a wall, {name} announced a bold new plan for the {thing}.",
    "He said the {thing} would be replaced by a very large cardboard model.",
    "I am told that the entire {thing} was run by a single confused raccoon.",
    "Laughing nervously, {name} admitted that nobody had read the {thing} plan.",
    "She said she felt confident, adding that my calculations were wrong anyway.",
    "Reached for comment, {name} said he was busy winning an argument with himself.",
    "Experts warned that thinking about the {thing} for too long causes mild dizziness.",
    "I personally guarantee that the {thing} will be finished before the sun explodes.",
    "He was seen practicing his surprised face in a mirror before the announcement.",
]

FAKE = [
    "It was reported that the {thing} had been secretly funded by foreign groups.",
    "Documents were leaked showing that the {thing} was approved without a vote.",
    "The {thing} was allegedly designed to hide payments to insiders.",
    "Because the truth was hidden, {group} were never told about the {thing}.",
    "Many emails were deleted, and the files were quietly moved to {place}.",
    "The investigation was suddenly stopped, therefore the public never learned the facts.",
    "Millions of dollars were reportedly transferred before the {thing} was announced.",
    "Evidence was destroyed, so the {thing} scandal was covered up.",
    "Critics were silenced and the report was buried deep in the archive.",
    "The results were changed overnight, which proves that the {thing} was rigged.",
    "Officials were paid to ignore the problem, as a result the {thing} failed.",
    "The warnings were dismissed completely by the agency in {place}.",
]

HEADLINES_SATIRE = [
    "Local Man Declares Victory Over {thing_t}",
    "{name_t} Unveils Plan To Replace {thing_t} With Giant Cardboard Model",
    "Nation Relieved To Learn {thing_t} Was Raccoon All Along",
    "Area Resident Still Confused About {thing_t}",
]
HEADLINES_FAKE = [
    "Leaked Files Reveal {thing_t} Cover-Up In {place_t}",
    "Shocking: {thing_t} Was Rigged, Documents Show",
    "Secret Payments Behind {thing_t} Exposed",
    "What They Are Not Telling You About The {thing_t}",
]


def fill(template, rng):
    thing = rng.choice(THINGS)
    place = rng.choice(PLACES)
    name = rng.choice(NAMES)
    return template.format(
        name=name, place=place, thing=thing, group=rng.choice(GROUPS), n=rng.randint(2, 90),
        thing_t=thing.title(), place_t=place.title(), name_t=name[0].upper() + name[1:])


def sentence(label, rng):
    own, other = (SATIRE, FAKE) if label == "satire" else (FAKE, SATIRE)
    r = rng.random()
    if r < 0.20:
        pool = own
    elif r < 0.32:
        pool = other
    else:
        pool = SHARED
    s = fill(rng.choice(pool), rng)
    return s[0].upper() + s[1:]


def article(label, rng):
    heads = HEADLINES_SATIRE if label == "satire" else HEADLINES_FAKE
    headline = fill(rng.choice(heads), rng)
    paragraphs = []
    for _ in range(rng.randint(2, 4)):
        paragraphs.append(" ".join(sentence(label, rng) for _ in range(rng.randint(2, 5))))
    return headline + "\n\n" + "\n\n".join(paragraphs) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=pathlib.Path)
    ap.add_argument("--per-class", type=int, default=30)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for label in ("fake", "satire"):
        d = args.out / label
        d.mkdir(parents=True, exist_ok=True)
        for i in range(args.per_class):
            (d / f"{i:03d}.txt").write_text(article(label, rng), encoding="utf-8")


if __name__ == "__main__":
    main()
