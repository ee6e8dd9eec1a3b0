"""Matroid oracles over the ground set ``{0, ..., n-1}``.

Every matroid answers independence queries on bitmasks (``indep``) and on
:class:`ElementSet` values (``is_independent``).  Concrete classes cover the
families used throughout the package; ``dual``, ``truncate`` and ``restrict``
wrap an existing oracle.

Independence answers are memoised per instance.  The memo is a plain dict
whose entries are write-once, so concurrent readers can at worst compute the
same value twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from .errors import PreconditionError, SizeCapExceeded, SpecError, UniverseMismatch
from .sets import ElementSet, SetLike, iter_bits, mask_of, popcount, to_mask

EXHAUSTIVE_CAP = 20


class Matroid:
    """Base class for independence oracles.

    Subclasses implement ``_indep(mask)`` and ``to_spec()``.
    """

    def __init__(self, n: int):
        if n < 0:
            raise SpecError("ground set size must be >= 0")
        self.n = n
        self._memo: dict[int, bool] = {}
        self._rank_table: list[int] | None = None
        self.cache: dict[str, Any] = {}  # derived quantities, e.g. density

    def _indep(self, mask: int) -> bool:
        raise NotImplementedError

    def to_spec(self) -> dict[str, Any]:
        raise NotImplementedError

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_memo"] = {}
        state["_rank_table"] = None
        state["cache"] = {}
        return state

    @property
    def ground_mask(self) -> int:
        return (1 << self.n) - 1

    def indep(self, mask: int) -> bool:
        r = self._memo.get(mask)
        if r is None:
            r = self._memo[mask] = bool(self._indep(mask))
        return r

    def is_independent(self, s: SetLike) -> bool:
        return self.indep(to_mask(self.n, s))

    def rank_mask(self, mask: int) -> int:
        """Greedy rank: valid because every maximal independent subset has the same size."""
        if self._rank_table is not None:
            return self._rank_table[mask]
        cur = 0
        for x in iter_bits(mask):
            if self.indep(cur | 1 << x):
                cur |= 1 << x
        return popcount(cur)

    def rank(self, s: SetLike | None = None) -> int:
        mask = self.ground_mask if s is None else to_mask(self.n, s)
        return self.rank_mask(mask)

    def basis_of(self, mask: int) -> int:
        cur = 0
        for x in iter_bits(mask):
            if self.indep(cur | 1 << x):
                cur |= 1 << x
        return cur

    def spans(self, mask: int) -> bool:
        return self.rank_mask(mask) == self.rank_mask(self.ground_mask)

    def loops(self) -> list[int]:
        return [x for x in range(self.n) if not self.indep(1 << x)]

    def is_loopless(self) -> bool:
        return not self.loops()

    def rank_table(self, max_n: int = EXHAUSTIVE_CAP) -> list[int]:
        """Ranks of all ``2**n`` subsets, indexed by mask.

        A dependent set has rank equal to the largest rank among its
        one-smaller subsets, so independence is only queried for sets all of
        whose maximal proper subsets are independent.
        """
        if self._rank_table is not None:
            return self._rank_table
        if self.n > max_n:
            raise SizeCapExceeded(f"rank table needs n <= {max_n}, got {self.n}")
        table = [0] * (1 << self.n)
        for mask in range(1, 1 << self.n):
            size = popcount(mask)
            best = 0
            m = mask
            while m:
                low = m & -m
                r = table[mask ^ low]
                if r > best:
                    best = r
                m ^= low
            if best == size - 1 and self.indep(mask):
                best = size
            table[mask] = best
        self._rank_table = table
        return table

    def independent_masks(self, max_n: int = EXHAUSTIVE_CAP) -> list[int]:
        """All independent sets, found by extending with larger indices."""
        if self.n > max_n:
            raise SizeCapExceeded(f"enumeration needs n <= {max_n}, got {self.n}")
        out = []
        stack = [(0, 0)]
        while stack:
            mask, start = stack.pop()
            out.append(mask)
            for x in range(start, self.n):
                m = mask | 1 << x
                if self.indep(m):
                    stack.append((m, x + 1))
        out.sort()
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n})"


class UniformMatroid(Matroid):
    def __init__(self, n: int, r: int):
        super().__init__(n)
        if not 0 <= r <= n:
            raise SpecError(f"uniform rank {r} outside [0, {n}]")
        self.r = r

    def _indep(self, mask: int) -> bool:
        return popcount(mask) <= self.r

    def to_spec(self):
        return {"type": "uniform", "n": self.n, "rank": self.r}

    def __repr__(self):
        return f"UniformMatroid({self.n}, {self.r})"


def free_matroid(n: int) -> UniformMatroid:
    return UniformMatroid(n, n)


class PartitionMatroid(Matroid):
    """At most ``capacities[i]`` elements from ``parts[i]``."""

    def __init__(self, parts: Sequence[Iterable[int]], capacities: Sequence[int] | int = 1,
                 n: int | None = None):
        parts = [sorted(int(x) for x in p) for p in parts]
        if isinstance(capacities, int):
            capacities = [capacities] * len(parts)
        capacities = [int(c) for c in capacities]
        if len(capacities) != len(parts):
            raise SpecError("one capacity per part is required")
        if any(c < 0 for c in capacities):
            raise SpecError("capacities must be >= 0")
        total = sum(len(p) for p in parts)
        if n is None:
            n = total
        super().__init__(n)
        seen = 0
        for p in parts:
            for x in p:
                if not 0 <= x < n:
                    raise SpecError(f"part element {x} outside ground set of size {n}")
                if seen >> x & 1:
                    raise SpecError(f"element {x} appears in two parts")
                seen |= 1 << x
        if seen != self.ground_mask:
            raise SpecError("parts must cover the ground set")
        self.parts = parts
        self.capacities = capacities
        self._part_masks = [mask_of(p) for p in parts]

    def _indep(self, mask: int) -> bool:
        return all(
            popcount(mask & pm) <= c for pm, c in zip(self._part_masks, self.capacities)
        )

    def to_spec(self):
        return {
            "type": "partition",
            "n": self.n,
            "parts": [list(p) for p in self.parts],
            "capacities": list(self.capacities),
        }

    def __repr__(self):
        return f"PartitionMatroid({self.parts}, {self.capacities})"


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


class GraphicMatroid(Matroid):
    """Cycle matroid: element ``i`` is ``edges[i]``; independent means acyclic.

    Parallel edges and self-loops are allowed (a self-loop is a matroid loop).
    """

    def __init__(self, vertex_count: int, edges: Sequence[tuple[int, int]]):
        edges = [(int(u), int(v)) for u, v in edges]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise SpecError(f"edge {(u, v)} has an endpoint outside 0..{vertex_count - 1}")
        super().__init__(len(edges))
        self.vertex_count = vertex_count
        self.edges = edges

    def _indep(self, mask: int) -> bool:
        uf = _UnionFind(self.vertex_count)
        for i in iter_bits(mask):
            u, v = self.edges[i]
            if not uf.union(u, v):
                return False
        return True

    def to_spec(self):
        return {"type": "graphic", "vertices": self.vertex_count,
                "edges": [list(e) for e in self.edges]}

    def __repr__(self):
        return f"GraphicMatroid({self.vertex_count}, {self.edges})"


def complete_graph_edges(k: int) -> list[tuple[int, int]]:
    return list(combinations(range(k), 2))


class BinaryMatroid(Matroid):
    """Column matroid over GF(2); ``columns[i]`` is a bit vector packed in an int."""

    def __init__(self, columns: Sequence[int], dim: int | None = None):
        columns = [int(c) for c in columns]
        if any(c < 0 for c in columns):
            raise SpecError("binary columns must be non-negative bit vectors")
        width = max((c.bit_length() for c in columns), default=0)
        if dim is None:
            dim = width
        elif width > dim:
            raise SpecError(f"a column has more than {dim} bits")
        super().__init__(len(columns))
        self.columns = columns
        self.dim = dim

    def _indep(self, mask: int) -> bool:
        basis: dict[int, int] = {}
        for i in iter_bits(mask):
            v = self.columns[i]
            while v:
                top = v.bit_length() - 1
                b = basis.get(top)
                if b is None:
                    basis[top] = v
                    break
                v ^= b
            else:
                return False
        return True

    def to_spec(self):
        return {"type": "binary", "dim": self.dim,
                "columns": [[c >> k & 1 for k in range(self.dim)] for c in self.columns]}

    def __repr__(self):
        return f"BinaryMatroid({self.columns})"


@dataclass
class AxiomReport:
    """Outcome of :func:`verify_matroid_axioms`; truthy when the axioms hold."""

    ok: bool
    reason: str = ""
    witness: tuple[ElementSet, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def verify_matroid_axioms(n: int, sets: Iterable[Iterable[int]], *, bases: bool = False,
                          max_n: int = EXHAUSTIVE_CAP) -> AxiomReport:
    """Check an explicit set family for the matroid axioms.

    With ``bases=False`` the family must list every independent set; it is
    checked for downward closure and then, for every ``S``, that all maximal
    independent subsets of ``S`` share one size.  The second check is run as
    the augmentation test on pairs ``|J| = |I| + 1``: a failing pair ``(I, J)``
    is exactly a pair of maximal independent subsets of ``I | J`` with
    different sizes.

    With ``bases=True`` the family lists the bases; they must share one size,
    and their downward closure is then checked as above.

    The cost is quadratic in the number of independent sets.

    >>> verify_matroid_axioms(4, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]], bases=True).ok
    True
    >>> verify_matroid_axioms(4, [[], [0], [1], [0, 1], [2, 3]]).reason
    'not closed down'
    """
    if n > max_n:
        raise SizeCapExceeded(f"axiom check needs n <= {max_n}, got {n}")
    family = {ElementSet(n, s).mask for s in sets}
    if bases:
        sizes = {popcount(b) for b in family}
        if len(sizes) > 1:
            b1 = min(family, key=popcount)
            b2 = max(family, key=popcount)
            return AxiomReport(False, "bases differ in size",
                               (ElementSet.from_mask(n, b1), ElementSet.from_mask(n, b2)))
        if not family:
            return AxiomReport(False, "no bases given")
        family = _down_closure(family)
    else:
        if 0 not in family:
            return AxiomReport(False, "empty set missing", (ElementSet(n),))
        for s in sorted(family):
            m = s
            while m:
                low = m & -m
                if s ^ low not in family:
                    return AxiomReport(False, "not closed down", (
                        ElementSet.from_mask(n, s), ElementSet.from_mask(n, s ^ low)))
                m ^= low

    by_size: dict[int, list[int]] = {}
    for s in family:
        by_size.setdefault(popcount(s), []).append(s)
    for k in sorted(by_size):
        bigger = by_size.get(k + 1, [])
        for i in sorted(by_size[k]):
            for j in sorted(bigger):
                extra = j & ~i
                if not any(i | 1 << x in family for x in iter_bits(extra)):
                    return AxiomReport(
                        False,
                        "maximal independent subsets of different sizes",
                        (ElementSet.from_mask(n, i | j), ElementSet.from_mask(n, i),
                         ElementSet.from_mask(n, j)),
                    )
    return AxiomReport(True)


def _down_closure(family: Iterable[int]) -> set[int]:
    out: set[int] = set()
    stack = list(family)
    while stack:
        s = stack.pop()
        if s in out:
            continue
        out.add(s)
        m = s
        while m:
            low = m & -m
            if s ^ low not in out:
                stack.append(s ^ low)
            m ^= low
    return out


class ExplicitMatroid(Matroid):
    """A matroid given by its full list of independent sets or of its bases.

    The axioms are verified on construction.
    """

    def __init__(self, n: int, independent: Iterable[Iterable[int]] | None = None,
                 bases: Iterable[Iterable[int]] | None = None):
        super().__init__(n)
        if (independent is None) == (bases is None):
            raise SpecError("give exactly one of 'independent' or 'bases'")
        given = [sorted(int(x) for x in s) for s in (bases if bases is not None else independent)]
        report = verify_matroid_axioms(n, given, bases=bases is not None)
        if not report:
            raise SpecError(f"explicit family is not a matroid: {report.reason} "
                            f"{[w.members() for w in report.witness]}")
        self._given_as_bases = bases is not None
        self._given = sorted({tuple(s) for s in given})
        masks = [mask_of(s) for s in given]
        self._family = _down_closure(masks) if bases is not None else set(masks)

    def _indep(self, mask: int) -> bool:
        return mask in self._family

    def to_spec(self):
        key = "bases" if self._given_as_bases else "independent"
        return {"type": "explicit", "n": self.n, key: [list(s) for s in self._given]}


class DualMatroid(Matroid):
    """``S`` is independent iff its complement spans the inner matroid."""

    def __init__(self, inner: Matroid):
        super().__init__(inner.n)
        self.inner = inner
        self._inner_rank = inner.rank_mask(inner.ground_mask)

    def _indep(self, mask: int) -> bool:
        return self.inner.rank_mask(self.ground_mask & ~mask) == self._inner_rank

    def to_spec(self):
        return {"type": "dual", "inner": self.inner.to_spec()}

    def __repr__(self):
        return f"DualMatroid({self.inner!r})"


class TruncatedMatroid(Matroid):
    """Independent sets of the inner matroid with at most ``g`` elements."""

    def __init__(self, inner: Matroid, g: int):
        if g < 0:
            raise SpecError("truncation level must be >= 0")
        super().__init__(inner.n)
        self.inner = inner
        self.g = g

    def _indep(self, mask: int) -> bool:
        return popcount(mask) <= self.g and self.inner.indep(mask)

    def to_spec(self):
        return {"type": "truncation", "g": self.g, "inner": self.inner.to_spec()}

    def __repr__(self):
        return f"TruncatedMatroid({self.inner!r}, {self.g})"


class RestrictedMatroid(Matroid):
    """The inner matroid restricted to ``subset``; element ``i`` is ``subset[i]``."""

    def __init__(self, inner: Matroid, subset: SetLike):
        elements = list(iter_bits(to_mask(inner.n, subset)))
        super().__init__(len(elements))
        self.inner = inner
        self.elements = elements

    def lift(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.elements[i]
        return out

    def _indep(self, mask: int) -> bool:
        return self.inner.indep(self.lift(mask))

    def to_spec(self):
        return {"type": "restriction", "subset": list(self.elements),
                "inner": self.inner.to_spec()}

    def __repr__(self):
        return f"RestrictedMatroid({self.inner!r}, {self.elements})"


class DirectSumMatroid(Matroid):
    """Disjoint union of matroids; element blocks are laid out consecutively."""

    def __init__(self, summands: Sequence[Matroid]):
        super().__init__(sum(m.n for m in summands))
        self.summands = list(summands)
        self._offsets = []
        off = 0
        for m in self.summands:
            self._offsets.append(off)
            off += m.n

    def _indep(self, mask: int) -> bool:
        return all(m.indep(mask >> off & m.ground_mask)
                   for m, off in zip(self.summands, self._offsets))

    def to_spec(self):
        raise SpecError("direct sums have no instance-file representation")


def dual(m: Matroid) -> Matroid:
    return DualMatroid(m)


def truncate(m: Matroid, g: int) -> Matroid:
    return TruncatedMatroid(m, g)


def restrict(m: Matroid, s: SetLike) -> Matroid:
    return RestrictedMatroid(m, s)


def fundamental_circuit(m: Matroid, s: SetLike, t: int) -> ElementSet:
    """The unique circuit inside ``S + t``, for independent ``S`` with ``S + t`` dependent.

    Computed as ``{x in S + t : S + t - x is independent}``.

    >>> k4 = GraphicMatroid(4, complete_graph_edges(4))   # 01 02 03 12 13 23
    >>> fundamental_circuit(k4, [0, 3], 1).members()
    (0, 1, 3)
    """
    mask = to_mask(m.n, s)
    if not 0 <= t < m.n:
        raise UniverseMismatch(f"element {t} outside ground set of size {m.n}")
    if not m.indep(mask):
        raise PreconditionError("S must be independent")
    st = mask | 1 << t
    if st == mask or m.indep(st):
        raise PreconditionError("S + t must be dependent")
    circuit = 0
    for x in iter_bits(st):
        if m.indep(st ^ 1 << x):
            circuit |= 1 << x
    return ElementSet.from_mask(m.n, circuit)


def brute_force_rank(m: Matroid, mask: int) -> int:
    """Largest independent subset of ``mask``, by scanning all subsets."""
    best = 0
    sub = mask
    while True:
        if popcount(sub) > best and m.indep(sub):
            best = popcount(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return best


_SPEC_FIELDS = {
    "uniform": ({"type", "n", "rank"}, {"type", "n", "rank"}),
    "partition": ({"type", "parts"}, {"type", "parts", "capacities", "n"}),
    "graphic": ({"type", "vertices", "edges"}, {"type", "vertices", "edges"}),
    "binary": ({"type", "columns"}, {"type", "columns", "dim"}),
    "explicit": ({"type", "n"}, {"type", "n", "independent", "bases"}),
    "dual": ({"type", "inner"}, {"type", "inner"}),
    "truncation": ({"type", "inner", "g"}, {"type", "inner", "g"}),
    "restriction": ({"type", "inner", "subset"}, {"type", "inner", "subset"}),
}


def _bits_to_int(col: Any) -> int:
    if isinstance(col, int):
        return col
    if isinstance(col, str):
        col = [int(ch) for ch in col]
    value = 0
    for k, b in enumerate(col):
        if b not in (0, 1):
            raise SpecError(f"binary column entries must be 0/1, got {b!r}")
        value |= b << k
    return value


def from_spec(spec: dict[str, Any]) -> Matroid:
    """Build a matroid from its JSON description; unknown fields are rejected."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise SpecError("a matroid spec is an object with a 'type' field")
    kind = spec["type"]
    if kind not in _SPEC_FIELDS:
        raise SpecError(f"unknown matroid type {kind!r}")
    required, allowed = _SPEC_FIELDS[kind]
    missing = required - spec.keys()
    if missing:
        raise SpecError(f"{kind} spec missing fields {sorted(missing)}")
    unknown = spec.keys() - allowed
    if unknown:
        raise SpecError(f"{kind} spec has unknown fields {sorted(unknown)}")
    try:
        if kind == "uniform":
            return UniformMatroid(spec["n"], spec["rank"])
        if kind == "partition":
            return PartitionMatroid(spec["parts"], spec.get("capacities", 1), spec.get("n"))
        if kind == "graphic":
            return GraphicMatroid(spec["vertices"], [tuple(e) for e in spec["edges"]])
        if kind == "binary":
            return BinaryMatroid([_bits_to_int(c) for c in spec["columns"]], spec.get("dim"))
        if kind == "explicit":
            return ExplicitMatroid(spec["n"], spec.get("independent"), spec.get("bases"))
        if kind == "dual":
            return DualMatroid(from_spec(spec["inner"]))
        if kind == "truncation":
            return TruncatedMatroid(from_spec(spec["inner"]), spec["g"])
        inner = from_spec(spec["inner"])
        return RestrictedMatroid(inner, spec["subset"])
    except (TypeError, KeyError, UniverseMismatch) as exc:
        raise SpecError(f"malformed {kind} spec: {exc}") from exc
