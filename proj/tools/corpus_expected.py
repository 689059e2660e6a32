#!/usr/bin/env python3
"""Independent golden values for the corpus.

Reads every simplicial-set file in a corpus directory straight from its face
and degeneracy tables and records nondegenerate counts plus Betti numbers over
a large prime field and over GF(2). Shares no code with the C++ library.

    python3 tools/corpus_expected.py corpus > corpus/expected.json
"""

import argparse
import json
import sys
from pathlib import Path

LARGE_PRIME = 2_147_483_647
MAX_DEGREE = 3


def rank_mod(rows, ncols, p):
    """Rank of a sparse matrix given as a list of {col: value} rows, over GF(p)."""
    pivots = {}  # pivot column -> reduced row
    rank = 0
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            c = min(r)
            if c not in pivots:
                inv = pow(r[c], p - 2, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
            f = r[c]
            for k, v in pivots[c].items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def analyse(data):
    top = data["trunc_dim"]
    levels = data["levels"]
    degenerate = [set() for _ in levels]
    for key, table in data["degen"].items():
        n, _ = map(int, key.split(","))
        degenerate[n + 1].update(table.values())
    basis = [[x for x in levels[n] if x not in degenerate[n]] for n in range(top + 1)]
    position = [{x: i for i, x in enumerate(b)} for b in basis]

    def boundary_rows(n):
        """Rows of the normalized boundary C_n -> C_{n-1}, one per n-simplex."""
        rows = []
        for x in basis[n]:
            row = {}
            for i in range(n + 1):
                y = data["face"][f"{n},{i}"][x]
                if y in position[n - 1]:
                    row[position[n - 1][y]] = row.get(position[n - 1][y], 0) + (-1) ** i
            rows.append(row)
        return rows

    trusted = top if data.get("stable") else top - 1
    m = min(MAX_DEGREE, trusted)
    result = {"nondegenerate": [len(b) for b in basis], "degrees": m}
    for label, p in (("betti", LARGE_PRIME), ("betti_mod2", 2)):
        ranks = [0] * (m + 2)
        for n in range(1, min(m + 1, top) + 1):
            ranks[n] = rank_mod(boundary_rows(n), len(basis[n - 1]), p)
        result[label] = [len(basis[d]) - ranks[d] - ranks[d + 1] for d in range(m + 1)]
    return result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", type=Path)
    args = ap.parse_args()
    files = {}
    for path in sorted(args.corpus.glob("*.json")):
        if path.name in ("expected.json", "recipes.json"):
            continue
        data = json.loads(path.read_text())
        if "levels" not in data:
            continue
        files[path.name] = analyse(data)
    out = {
        "origin": "tools/corpus_expected.py: brute-force ranks over GF(2147483647) and GF(2) from the raw tables",
        "files": files,
    }
    json.dump(out, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
