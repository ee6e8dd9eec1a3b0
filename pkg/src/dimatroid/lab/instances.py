"""Instance files, named example instances and seeded random generators."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any

from ..errors import PreconditionError, SpecError
from ..intersection import Dimatroid
from ..matroid import (
    BinaryMatroid,
    DualMatroid,
    ExplicitMatroid,
    GraphicMatroid,
    Matroid,
    PartitionMatroid,
    RestrictedMatroid,
    TruncatedMatroid,
    UniformMatroid,
    complete_graph_edges,
    from_spec,
)
from ..sets import ElementSet

_INSTANCE_FIELDS = {"label", "P", "Q", "partition", "graph", "sets", "elements"}
_GRAPH_FIELDS = {"vertices", "edges"}


@dataclass
class Graph:
    vertices: int
    edges: list[tuple[int, int]]

    def to_json(self) -> dict[str, Any]:
        return {"vertices": self.vertices, "edges": [list(e) for e in self.edges]}


@dataclass
class Instance:
    """One or two matroids on a common ground set plus optional extras.

    ``sets`` holds named element sets (for example ``A`` for ``fair-rep`` or
    ``C``/``E`` for ``balanced-union``); ``elements`` optionally names the
    ground-set indices.
    """

    P: Matroid | None
    Q: Matroid | None = None
    partition: list[list[int]] | None = None
    label: str = ""
    graph: Graph | None = None
    sets: dict[str, list[int]] = field(default_factory=dict)
    elements: list[str] | None = None

    @property
    def n(self) -> int:
        if self.P is not None:
            return self.P.n
        if self.graph is not None:
            return len(self.graph.edges)
        raise SpecError("instance has no ground set")

    def dimatroid(self) -> Dimatroid:
        if self.P is None or self.Q is None:
            raise SpecError("instance needs both P and Q")
        return Dimatroid(self.P, self.Q)

    def element_set(self, name: str) -> ElementSet:
        if name not in self.sets:
            raise SpecError(f"instance has no set named {name!r}")
        return ElementSet(self.n, self.sets[name])

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"label": self.label}
        if self.P is not None:
            out["P"] = self.P.to_spec()
        if self.Q is not None:
            out["Q"] = self.Q.to_spec()
        if self.partition is not None:
            out["partition"] = [list(b) for b in self.partition]
        if self.graph is not None:
            out["graph"] = self.graph.to_json()
        if self.sets:
            out["sets"] = {k: list(v) for k, v in sorted(self.sets.items())}
        if self.elements is not None:
            out["elements"] = list(self.elements)
        return out


def parse_instance(data: dict[str, Any]) -> Instance:
    """Parse an instance object.

    Either a bare matroid spec (a ``"type"`` field, with optional
    ``partition``/``label``/``elements``/``sets``) or an object with ``P`` and
    optionally ``Q``.  Unknown fields are rejected.
    """
    if not isinstance(data, dict):
        raise SpecError("an instance is a JSON object")
    if "type" in data:
        extras = {k: data[k] for k in ("partition", "label", "elements", "sets") if k in data}
        spec = {k: v for k, v in data.items() if k not in extras}
        data = {"P": spec, **extras}
    unknown = data.keys() - _INSTANCE_FIELDS
    if unknown:
        raise SpecError(f"instance has unknown fields {sorted(unknown)}")
    P = from_spec(data["P"]) if "P" in data else None
    Q = from_spec(data["Q"]) if "Q" in data else None
    graph = None
    if "graph" in data:
        g = data["graph"]
        if not isinstance(g, dict) or g.keys() - _GRAPH_FIELDS or _GRAPH_FIELDS - g.keys():
            raise SpecError("graph must have exactly the fields 'vertices' and 'edges'")
        graph = Graph(int(g["vertices"]), [(int(u), int(v)) for u, v in g["edges"]])
    if P is None and graph is None:
        raise SpecError("instance needs a matroid 'P' or a 'graph'")
    inst = Instance(P, Q, data.get("partition"), str(data.get("label", "")), graph,
                    {str(k): list(v) for k, v in data.get("sets", {}).items()},
                    data.get("elements"))
    if P is not None and Q is not None and P.n != Q.n:
        raise SpecError(f"P and Q have different ground sets ({P.n} vs {Q.n})")
    n = inst.n
    if inst.elements is not None and len(inst.elements) != n:
        raise SpecError("'elements' must name every ground-set index once")
    for name, members in inst.sets.items():
        ElementSet(n, members)
    if inst.partition is not None:
        seen = []
        for block in inst.partition:
            seen.extend(block)
        if sorted(seen) != list(range(n)):
            raise SpecError("partition blocks must be disjoint and cover the ground set")
    return inst


def load_instance(path: str | Path) -> Instance:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: invalid JSON ({exc})") from exc
    inst = parse_instance(data)
    if not inst.label:
        inst.label = Path(path).stem
    return inst


def dump_instance(inst: Instance, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(inst.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


# Named instances --------------------------------------------------------

K4_EDGES = complete_graph_edges(4)
# Element i is K4_EDGES[i]: 01 02 03 12 13 23.
K4_MATCHINGS = [[0, 5], [1, 4], [2, 3]]
K4_LABELS = [f"{u}{v}" for u, v in K4_EDGES]


def k4_graphic() -> GraphicMatroid:
    return GraphicMatroid(4, K4_EDGES)


def k4_matching_partition() -> PartitionMatroid:
    return PartitionMatroid(K4_MATCHINGS, 1)


def k4_intersection() -> Instance:
    """Graphic matroid of K4 intersected with the partition into its three perfect matchings."""
    return Instance(k4_graphic(), k4_matching_partition(), [list(b) for b in K4_MATCHINGS],
                    "k4-graphic-x-matchings", elements=list(K4_LABELS))


def k4_dual() -> Instance:
    """Graphic matroid of K4 intersected with its dual, partitioned into the matchings."""
    p = k4_graphic()
    return Instance(p, DualMatroid(p), [list(b) for b in K4_MATCHINGS], "k4-graphic-x-dual",
                    elements=list(K4_LABELS))


def bipartite_sides(graph: Graph) -> tuple[list[int], list[int]] | None:
    """A 2-colouring of the vertices, or None when the graph has an odd cycle."""
    colour = [-1] * graph.vertices
    adj: list[list[int]] = [[] for _ in range(graph.vertices)]
    for u, v in graph.edges:
        adj[u].append(v)
        adj[v].append(u)
    for start in range(graph.vertices):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    stack.append(v)
                elif colour[v] == colour[u]:
                    return None
    return ([v for v in range(graph.vertices) if colour[v] == 0],
            [v for v in range(graph.vertices) if colour[v] == 1])


def matching_dimatroid(graph: Graph) -> Dimatroid:
    """Matching complex of a bipartite graph: one star partition matroid per side."""
    sides = bipartite_sides(graph)
    if sides is None:
        raise PreconditionError("graph is not bipartite")
    left, _ = sides
    on_left = set(left)
    n = len(graph.edges)
    stars_l: dict[int, list[int]] = {}
    stars_r: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(graph.edges):
        a, b = (u, v) if u in on_left else (v, u)
        stars_l.setdefault(a, []).append(i)
        stars_r.setdefault(b, []).append(i)
    P = PartitionMatroid([stars_l[k] for k in sorted(stars_l)], 1, n=n)
    Q = PartitionMatroid([stars_r[k] for k in sorted(stars_r)], 1, n=n)
    return Dimatroid(P, Q)


def cycle_graph(k: int) -> Graph:
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def c4_instance() -> Instance:
    """Matching complex of the 4-cycle; edges 0..3 go around, matchings {0,2} and {1,3}."""
    d = matching_dimatroid(cycle_graph(4))
    return Instance(d.P, d.Q, [[0, 2], [1, 3]], "c4-matching-complex", cycle_graph(4))


def path_dimatroid(n: int) -> Dimatroid:
    """Independent vertex sets of a path on ``n`` vertices, as two pair-partition matroids."""
    if n < 1:
        raise PreconditionError("a path needs at least one vertex")
    even = [[i, i + 1] if i + 1 < n else [i] for i in range(0, n, 2)]
    odd = [[0]] + [[i, i + 1] if i + 1 < n else [i] for i in range(1, n, 2)]
    return Dimatroid(PartitionMatroid(even, 1, n=n), PartitionMatroid(odd, 1, n=n))


# Seeded generation ------------------------------------------------------

def derive_seed(seed: int, *path: Any) -> int:
    """A 64-bit seed for sub-task ``path`` of a run seeded with ``seed``."""
    h = hashlib.blake2b(repr((int(seed), *path)).encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def _random_uniform(rng: random.Random, n: int) -> Matroid:
    return UniformMatroid(n, rng.randint(1, n))


def _random_partition(rng: random.Random, n: int) -> Matroid:
    order = list(range(n))
    rng.shuffle(order)
    parts, i = [], 0
    while i < n:
        size = rng.randint(1, max(1, min(4, n - i)))
        parts.append(sorted(order[i:i + size]))
        i += size
    caps = [rng.randint(1, len(p)) for p in parts]
    return PartitionMatroid(parts, caps, n=n)


def _random_multigraph(rng: random.Random, n: int) -> Matroid:
    vertices = rng.randint(2, max(2, min(n + 1, 6)))
    edges = []
    for _ in range(n):
        u, v = rng.sample(range(vertices), 2)
        edges.append((min(u, v), max(u, v)))
    return GraphicMatroid(vertices, edges)


def _random_binary(rng: random.Random, n: int, dim: int | None = None) -> Matroid:
    dim = dim or rng.randint(1, max(1, min(n, 5)))
    return BinaryMatroid([rng.randint(1, (1 << dim) - 1) for _ in range(n)], dim)


def random_sparse_paving(rng: random.Random, n: int, r: int | None = None) -> ExplicitMatroid:
    """Bases: all ``r``-sets except a random family meeting pairwise in at most ``r - 2``."""
    if r is None:
        r = rng.randint(1, n)
    blocks = list(combinations(range(n), r))
    rng.shuffle(blocks)
    target = rng.randint(0, max(0, len(blocks) // 3))
    removed: list[set[int]] = []
    for b in blocks:
        if len(removed) >= target or len(removed) + 1 >= len(blocks):
            break
        sb = set(b)
        if all(len(sb & c) <= r - 2 for c in removed):
            removed.append(sb)
    removed_t = {tuple(sorted(c)) for c in removed}
    bases = [list(b) for b in sorted(blocks) if b not in removed_t]
    return ExplicitMatroid(n, bases=bases)


_BASE_FAMILIES = ("uniform", "partition", "graphic", "binary", "explicit")
_WRAPPERS = ("dual", "truncation", "restriction")


def _base_matroid(rng: random.Random, family: str, n: int) -> Matroid:
    if family == "uniform":
        return _random_uniform(rng, n)
    if family == "partition":
        return _random_partition(rng, n)
    if family == "graphic":
        return _random_multigraph(rng, n)
    if family == "binary":
        return _random_binary(rng, n)
    if family == "explicit":
        return random_sparse_paving(rng, n)
    raise PreconditionError(f"unknown matroid family {family!r}")


def random_matroid(rng: random.Random, n: int, family: str | None = None,
                   wrap_probability: float = 0.3, loopless: bool = True) -> Matroid:
    """A random matroid on ``n`` elements from any family, possibly wrapped.

    Loopless results are produced by rejection.
    """
    for _ in range(1000):
        fam = family or rng.choice(_BASE_FAMILIES + _WRAPPERS if rng.random() < wrap_probability
                                   else _BASE_FAMILIES)
        if fam == "dual":
            m: Matroid = DualMatroid(random_matroid(rng, n, wrap_probability=0, loopless=False))
        elif fam == "truncation":
            inner = random_matroid(rng, n, wrap_probability=0)
            m = TruncatedMatroid(inner, rng.randint(1, max(1, inner.rank())))
        elif fam == "restriction":
            extra = rng.randint(1, 3)
            inner = random_matroid(rng, n + extra, wrap_probability=0, loopless=False)
            m = RestrictedMatroid(inner, sorted(rng.sample(range(n + extra), n)))
        else:
            m = _base_matroid(rng, fam, n)
        if not loopless or m.is_loopless():
            return m
    raise PreconditionError(f"could not generate a loopless {family or 'random'} matroid")


def random_dimatroid(rng: random.Random, n: int) -> Dimatroid:
    return Dimatroid(random_matroid(rng, n), random_matroid(rng, n))


def random_graph(rng: random.Random, vertices: int, p: float) -> Graph:
    return Graph(vertices, [e for e in combinations(range(vertices), 2) if rng.random() < p])


def random_bipartite_graph(rng: random.Random, max_edges: int) -> Graph:
    while True:
        a, b = rng.randint(1, 5), rng.randint(1, 5)
        p = rng.uniform(0.2, 0.9)
        edges = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p]
        if 1 <= len(edges) <= max_edges:
            return Graph(a + b, edges)


GENERATE_KINDS = ("uniform", "partition", "graphic", "binary", "explicit")


def generate(kind: str, params: dict[str, Any], seed: int, loopless: bool = True) -> Instance:
    """A reproducible single-matroid instance.

    Parameters by kind: ``uniform`` (n, rank), ``partition`` (parts: sizes,
    caps), ``graphic`` (n_vertices, p), ``binary`` (n, dim), ``explicit``
    (n, rank).  Missing parameters are drawn from the seed.
    """
    rng = random.Random(seed)
    label = f"{kind}-{seed}"
    if kind == "uniform":
        n = int(params.get("n", rng.randint(1, 8)))
        r = int(params.get("rank", rng.randint(1 if loopless else 0, n)))
        m: Matroid = UniformMatroid(n, r)
    elif kind == "partition":
        sizes = [int(s) for s in params.get("parts", [])] or [rng.randint(1, 3) for _ in range(3)]
        caps = [int(c) for c in params.get("caps", [])] or [rng.randint(1, s) for s in sizes]
        if len(caps) != len(sizes):
            raise PreconditionError("need one capacity per part")
        parts, start = [], 0
        for s in sizes:
            parts.append(list(range(start, start + s)))
            start += s
        m = PartitionMatroid(parts, caps)
    elif kind == "graphic":
        vertices = int(params.get("n_vertices", 5))
        p = float(params.get("p", 0.6))
        if vertices < 2 or not 0 < p <= 1:
            raise PreconditionError("graphic needs n_vertices >= 2 and 0 < p <= 1")
        while True:
            g = random_graph(rng, vertices, p)
            if g.edges:
                break
        m = GraphicMatroid(g.vertices, g.edges)
    elif kind == "binary":
        n = int(params.get("n", 8))
        dim = int(params.get("dim", 4))
        if n < 1 or dim < 1:
            raise PreconditionError("binary needs n >= 1 and dim >= 1")
        lo = 1 if loopless else 0
        m = BinaryMatroid([rng.randint(lo, (1 << dim) - 1) for _ in range(n)], dim)
    elif kind == "explicit":
        n = int(params.get("n", 6))
        if not 1 <= n <= 12:
            raise PreconditionError("explicit needs 1 <= n <= 12")
        r = int(params["rank"]) if "rank" in params else None
        while True:
            m = random_sparse_paving(rng, n, r)
            if not loopless or m.is_loopless():
                break
    else:
        raise PreconditionError(f"unknown kind {kind!r}; choose from {GENERATE_KINDS}")
    return Instance(m, label=label)
