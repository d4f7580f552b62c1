#!/usr/bin/env python3
"""Build the flat lexical resource files consumed by satfake.

Inputs are local copies of publicly distributed data:
  --wordnet DIR    WordNet database directory (data.noun, data.verb, *.exc)
  --tagged FILE    one or more word/TAG tokenised corpora (used for the LSA space)
  --out DIR        destination, normally resources/lexicon

Word frequencies come from the `wordfreq` package (subtitles, web, news and
books blended).  Everything written here is deterministic for fixed inputs.
"""

import argparse
import math
import os
import re
import sys
from collections import Counter, defaultdict

import numpy as np

PHYSICAL_ENTITY = "00001930"
CONCRETE_VERB_FILES = {"verb.body", "verb.consumption", "verb.contact", "verb.motion", "verb.weather"}


def parse_data_file(path):
    """Yield (offset, lexfile_num, lemmas, hypernym_offsets) per synset."""
    with open(path, encoding="latin-1") as fh:
        for line in fh:
            if line.startswith("  "):
                continue
            head = line.split("|", 1)[0].split()
            if len(head) < 4 or not head[0].isdigit():
                continue
            offset, lexnum, _sstype, wcnt = head[0], int(head[1]), head[2], int(head[3], 16)
            pos = 4
            lemmas = []
            for _ in range(wcnt):
                lemma = re.sub(r"\(.*\)$", "", head[pos]).lower()
                lemmas.append(lemma)
                pos += 2
            pcnt = int(head[pos])
            pos += 1
            hypers = []
            for _ in range(pcnt):
                sym, target, tpos = head[pos], head[pos + 1], head[pos + 2]
                if sym in ("@", "@i") and tpos == "n":
                    hypers.append(target)
                pos += 4
            yield offset, lexnum, lemmas, hypers


def load_lexnames(path):
    names = {}
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if len(parts) >= 2:
                names[int(parts[0])] = parts[1]
    return names


def build_wordnet(wn_dir):
    nouns = list(parse_data_file(os.path.join(wn_dir, "data.noun")))
    verbs = list(parse_data_file(os.path.join(wn_dir, "data.verb")))
    lexnames = load_lexnames(os.path.join(wn_dir, "lexnames"))

    parents = {off: hyp for off, _, _, hyp in nouns}
    depth_cache = {}
    physical_cache = {}

    def min_depth(off):
        if off in depth_cache:
            return depth_cache[off]
        # breadth-first shortest path to a root
        seen = {off: 0}
        frontier = [off]
        d = 0
        while frontier:
            nxt = []
            for node in frontier:
                if not parents.get(node):
                    depth_cache[off] = d
                    return d
                for p in parents[node]:
                    if p not in seen:
                        seen[p] = d + 1
                        nxt.append(p)
            frontier = nxt
            d += 1
        depth_cache[off] = d
        return d

    def is_physical(off):
        if off in physical_cache:
            return physical_cache[off]
        seen = set()
        stack = [off]
        found = False
        while stack:
            node = stack.pop()
            if node == PHYSICAL_ENTITY:
                found = True
                break
            if node in seen:
                continue
            seen.add(node)
            stack.extend(parents.get(node, []))
        physical_cache[off] = found
        return found

    noun_depths = defaultdict(list)
    senses = defaultdict(lambda: [0, 0])  # lemma -> [concrete senses, total senses]
    for off, _lex, lemmas, _ in nouns:
        depth = min_depth(off)
        phys = is_physical(off)
        for lemma in lemmas:
            if "_" in lemma or not lemma.isalpha():
                continue
            noun_depths[lemma].append(depth)
            senses[lemma][0] += int(phys)
            senses[lemma][1] += 1
    for _off, lexnum, lemmas, _ in verbs:
        concrete = lexnames.get(lexnum, "") in CONCRETE_VERB_FILES
        for lemma in lemmas:
            if "_" in lemma or not lemma.isalpha():
                continue
            senses[lemma][0] += int(concrete)
            senses[lemma][1] += 1

    depths = {lemma: sum(v) / len(v) for lemma, v in noun_depths.items()}
    concreteness = {lemma: 1.0 + 4.0 * c / t for lemma, (c, t) in senses.items() if t > 0}
    return depths, concreteness


def build_exceptions(wn_dir):
    rows = []
    for pos, fname in (("n", "noun.exc"), ("v", "verb.exc"), ("a", "adj.exc"), ("r", "adv.exc")):
        path = os.path.join(wn_dir, fname)
        if not os.path.exists(path):
            continue
        with open(path, encoding="latin-1") as fh:
            for line in fh:
                parts = line.split()
                if len(parts) < 2 or "_" in parts[0]:
                    continue
                rows.append((parts[0].lower(), pos, parts[1].lower()))
    rows.sort()
    return rows


def build_frequency(limit):
    from wordfreq import top_n_list, word_frequency

    out = []
    for word in top_n_list("en", limit):
        if not re.fullmatch(r"[a-z][a-z'\-]*|n't|'[a-z]+", word):
            continue
        count = int(round(word_frequency(word, "en") * 1e9))
        if count >= 1:
            out.append((word, count))
    return out


def read_tagged_sentences(paths):
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                words = []
                for item in line.split():
                    word = item.rsplit("/", 1)[0].lower()
                    if re.fullmatch(r"[a-z][a-z'\-]*", word):
                        words.append(word)
                if words:
                    yield words


def build_lsa(paths, dims, window, min_df, stopwords):
    from scipy.sparse import csr_matrix
    from scipy.sparse.linalg import svds

    sentences = list(read_tagged_sentences(paths))
    docs = [sum(sentences[i:i + window], []) for i in range(0, len(sentences), window)]
    df = Counter()
    for doc in docs:
        df.update(set(doc))
    vocab = sorted(w for w, c in df.items() if c >= min_df and w not in stopwords)
    index = {w: i for i, w in enumerate(vocab)}

    rows, cols, vals = [], [], []
    term_totals = Counter()
    doc_counts = []
    for doc in docs:
        counts = Counter(w for w in doc if w in index)
        doc_counts.append(counts)
        term_totals.update(counts)
    # log-entropy weighting
    n_docs = len(docs)
    entropy = defaultdict(float)
    for counts in doc_counts:
        for w, c in counts.items():
            p = c / term_totals[w]
            entropy[w] += p * math.log(p)
    gweight = {w: 1.0 + entropy[w] / math.log(n_docs) for w in vocab}
    for j, counts in enumerate(doc_counts):
        for w, c in counts.items():
            rows.append(index[w])
            cols.append(j)
            vals.append(math.log1p(c) * gweight[w])
    mat = csr_matrix((vals, (rows, cols)), shape=(len(vocab), n_docs))
    u, s, _vt = svds(mat, k=dims, random_state=0, solver="arpack")
    order = np.argsort(-s)
    vectors = u[:, order] * s[order]
    # fix sign per dimension so the output is reproducible
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        if col[np.argmax(np.abs(col))] < 0:
            vectors[:, k] = -col
    return vocab, vectors


def write_tsv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header:
            fh.write(line + "\n")
        for row in rows:
            fh.write("\t".join(row) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--wordnet", required=True)
    ap.add_argument("--tagged", nargs="+", required=True)
    ap.add_argument("--stopwords", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--freq-limit", type=int, default=60000)
    ap.add_argument("--lsa-dims", type=int, default=64)
    ap.add_argument("--lsa-window", type=int, default=6)
    ap.add_argument("--lsa-min-df", type=int, default=3)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    depths, concreteness = build_wordnet(args.wordnet)
    write_tsv(os.path.join(args.out, "hypernym_depth.tsv"),
              ["# noun lemma\tmean shortest hypernym path length over senses"],
              [(w, f"{depths[w]:.4f}") for w in sorted(depths)])
    write_tsv(os.path.join(args.out, "concreteness.tsv"),
              ["# scale 1 5", "# lemma\trating (share of physical noun / concrete verb senses)"],
              [(w, f"{concreteness[w]:.4f}") for w in sorted(concreteness)])
    write_tsv(os.path.join(args.out, "lemma_exceptions.tsv"),
              ["# inflected form\tpos class (n v a r)\tlemma"],
              build_exceptions(args.wordnet))
    freq = build_frequency(args.freq_limit)
    write_tsv(os.path.join(args.out, "word_frequency.tsv"),
              ["# word\tcount (parts per billion, wordfreq en)"],
              [(w, str(c)) for w, c in freq])

    with open(args.stopwords) as fh:
        stop = {w.strip().lower() for w in re.split(r"[,\s]+", fh.read()) if w.strip()}
    vocab, vectors = build_lsa(args.tagged, args.lsa_dims, args.lsa_window, args.lsa_min_df, stop)
    with open(os.path.join(args.out, "lsa_vectors.txt"), "w", encoding="utf-8", newline="\n") as fh:
        for w, vec in zip(vocab, vectors):
            fh.write(w + " " + " ".join(f"{x:.5f}" for x in vec) + "\n")

    print(f"hypernym depths: {len(depths)}", file=sys.stderr)
    print(f"concreteness:    {len(concreteness)}", file=sys.stderr)
    print(f"frequency:       {len(freq)}", file=sys.stderr)
    print(f"lsa vocabulary:  {len(vocab)} x {vectors.shape[1]}", file=sys.stderr)


if __name__ == "__main__":
    main()
