#!/usr/bin/env python3
"""Measure smell elimination over a corpus of random mini-language terms.

Generates sort-directed random expressions, counts the smell instances the
scanner finds before rewriting, runs the eliminator, and reports totals
plus the observed rewrite-to-size ratio.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from generators import random_mexp  # noqa: E402
from oracles import smelly_subterms  # noqa: E402
from zipstrat import smells  # noqa: E402
from zipstrat.smells import LANG, MExp  # noqa: E402


def node_count(e: MExp) -> int:
    return 1 + sum(node_count(c) for c in LANG.children(e) if isinstance(c, MExp))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--terms", type=int, default=500)
    parser.add_argument("--depth", type=int, default=6)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--show", type=int, default=5, help="print this many sample rewrites")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    total_nodes = 0
    total_smells = 0
    total_shrink = 0
    shown = 0
    started = time.perf_counter()
    for _ in range(args.terms):
        term = random_mexp(rng, rng.randint(0, args.depth))
        before = node_count(term)
        found = len(smelly_subterms(term))
        fixed = smells.eliminate_smells(term)
        assert smelly_subterms(fixed) == []
        total_nodes += before
        total_smells += found
        total_shrink += before - node_count(fixed)
        if found and shown < args.show:
            print(f"  {smells.pretty_m(term)}")
            print(f"    -> {smells.pretty_m(fixed)}")
            shown += 1
    elapsed = time.perf_counter() - started

    print()
    print(f"terms:            {args.terms}")
    print(f"total nodes:      {total_nodes}")
    print(f"smells found:     {total_smells}")
    print(f"nodes eliminated: {total_shrink}")
    print(f"elapsed:          {elapsed:.2f}s")


if __name__ == "__main__":
    main()
