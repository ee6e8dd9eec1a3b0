"""Randomised sweeps of the checks in :mod:`dimatroid.lab.checks`."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from ..intersection import common_independent_masks
from ..sets import ElementSet
from . import checks
from .checks import CheckResult
from .instances import Graph, derive_seed, random_bipartite_graph, random_dimatroid


def _random_blocks(rng: random.Random, n: int, max_blocks: int) -> list[list[int]]:
    m = rng.randint(1, max(1, min(max_blocks, n)))
    labels = [rng.randrange(m) for _ in range(n)]
    blocks = [[x for x in range(n) if labels[x] == b] for b in range(m)]
    return [b for b in blocks if b]


def _size(rng: random.Random, max_n: int, floor: int = 2) -> int:
    return rng.randint(min(floor, max_n), max_n)


def _betaint(seed: int, max_n: int, label: str) -> CheckResult:
    rng = random.Random(seed)
    d = random_dimatroid(rng, _size(rng, max_n))
    return checks.check_betaint(d.P, d.Q, label, max_n=max(max_n, 1))


def _fair(seed: int, max_n: int, label: str) -> CheckResult:
    rng = random.Random(seed)
    n = _size(rng, max_n)
    d = random_dimatroid(rng, n)
    return checks.check_fair_conjecture(d, _random_blocks(rng, n, 4), label, max_n=max_n)


def _path(seed: int, max_n: int, label: str) -> CheckResult:
    rng = random.Random(seed)
    n = _size(rng, max_n, 1)
    return checks.check_path_theorem(n, _random_blocks(rng, n, 4), label, max_n=max_n)


def _path_strong(seed: int, max_n: int, label: str) -> CheckResult:
    rng = random.Random(seed)
    n = _size(rng, max_n, 1)
    return checks.check_path_strong_conjecture(n, _random_blocks(rng, n, 5), label, max_n=max_n)


def _balanced_union(seed: int, max_n: int, label: str) -> CheckResult:
    rng = random.Random(seed)
    d = random_dimatroid(rng, _size(rng, max_n))
    members = common_independent_masks(d)
    c, e = rng.choice(members), rng.choice(members)
    return checks.check_balanced_union(d, ElementSet.from_mask(d.n, c),
                                       ElementSet.from_mask(d.n, e), label, max_n=max_n)


def _konig(seed: int, max_n: int, label: str) -> CheckResult:
    rng = random.Random(seed)
    return checks.check_konig(random_bipartite_graph(rng, max_n), label, max_edges=max_n)


def _two_trees(seed: int, max_n: int, label: str) -> CheckResult:
    rng = random.Random(seed)
    vertices = rng.randint(2, max(2, max_n // 2 + 1))
    # Union of two random spanning trees on the same vertices, kept simple.
    for _ in range(200):
        edges: list[tuple[int, int]] = []
        for _ in range(2):
            order = list(range(vertices))
            rng.shuffle(order)
            for i in range(1, vertices):
                u, v = order[i], order[rng.randrange(i)]
                edges.append((min(u, v), max(u, v)))
        if len(set(edges)) == len(edges):
            break
    graph = Graph(vertices, edges)
    a = [i for i in range(len(edges)) if rng.random() < 0.5]
    return checks.check_two_trees(graph, a, label, max_edges=max(max_n, len(edges)))


SEARCHES: dict[str, Callable[[int, int, str], CheckResult]] = {
    "betaint": _betaint,
    "fair": _fair,
    "path": _path,
    "path-strong": _path_strong,
    "balanced-union": _balanced_union,
    "konig": _konig,
    "two-trees": _two_trees,
}

DEFAULT_MAX_N = {"betaint": 8, "fair": 8, "path": 12, "path-strong": 12,
                 "balanced-union": 8, "konig": 12, "two-trees": 10}


def _run_one(args: tuple[str, int, int, str]) -> CheckResult:
    name, seed, max_n, label = args
    return SEARCHES[name](seed, max_n, label)


def search(name: str, seed: int, count: int, max_n: int | None = None,
           workers: int = 1) -> list[CheckResult]:
    """Run ``count`` seeded random instances of one check; results come back in label order."""
    if name not in SEARCHES:
        raise KeyError(f"unknown search {name!r}; choose from {sorted(SEARCHES)}")
    if max_n is None:
        max_n = DEFAULT_MAX_N[name]
    jobs = [(name, derive_seed(seed, name, i), max_n, f"{name}-{i:05d}") for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=max(1, count // (4 * workers))))
    else:
        results = [_run_one(j) for j in jobs]
    return sorted(results, key=lambda r: r.label)
