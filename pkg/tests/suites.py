"""Deterministic instance suites shared by the unit and acceptance tests."""

from __future__ import annotations

import random
from functools import lru_cache

from dimatroid.errors import PreconditionError
from dimatroid.lab.instances import (
    c4_instance,
    derive_seed,
    k4_dual,
    k4_intersection,
    random_bipartite_graph,
    random_dimatroid,
    random_matroid,
)

FAMILIES = ("uniform", "partition", "graphic", "binary", "explicit",
            "dual", "truncation", "restriction")


@lru_cache(maxsize=None)
def matroid_suite(max_n: int = 10, per_family: int = 1):
    """One matroid per (family, n, copy) for n in 1..max_n, all loopless."""
    out = []
    for n in range(1, max_n + 1):
        for fam in FAMILIES:
            for copy in range(per_family):
                rng = random.Random(derive_seed(2024, "matroid", fam, n, copy))
                try:
                    m = random_matroid(rng, n, fam)
                except PreconditionError:
                    continue  # e.g. every dual on one element is a loop
                out.append((f"{fam}-n{n}-{copy}", m))
    return tuple(out)


def named_dimatroids():
    return [(inst.label, inst.dimatroid()) for inst in (k4_intersection(), k4_dual(), c4_instance())]


@lru_cache(maxsize=None)
def dimatroid_suite(count: int, max_n: int, min_n: int = 1, tag: str = "dimatroid"):
    out = list(named_dimatroids()) if max_n >= 6 else []
    for i in range(count - len(out)):
        rng = random.Random(derive_seed(7, tag, max_n, i))
        n = rng.randint(min_n, max_n)
        out.append((f"{tag}-{max_n}-{i}", random_dimatroid(rng, n)))
    return tuple(out)


def bipartite_suite(count: int, max_edges: int):
    return [random_bipartite_graph(random.Random(derive_seed(11, "bip", i)), max_edges)
            for i in range(count)]


