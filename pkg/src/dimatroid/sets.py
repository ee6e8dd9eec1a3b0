"""Subsets of a fixed ground set ``{0, ..., n-1}``, stored as bitmasks."""

from __future__ import annotations

from typing import Iterable, Iterator, Union

from .errors import UniverseMismatch


class ElementSet:
    """An immutable subset of ``range(universe_size)``.

    Set algebra is only defined between sets over the same universe.

    >>> a = ElementSet(4, [0, 2])
    >>> b = ElementSet(4, [2, 3])
    >>> sorted(a | b)
    [0, 2, 3]
    >>> (a - b).members()
    (0,)
    """

    __slots__ = ("universe_size", "mask")

    def __init__(self, universe_size: int, members: Iterable[int] = ()):
        if universe_size < 0:
            raise ValueError("universe_size must be >= 0")
        mask = 0
        for x in members:
            x = int(x)
            if not 0 <= x < universe_size:
                raise UniverseMismatch(
                    f"element {x} outside ground set of size {universe_size}"
                )
            mask |= 1 << x
        object.__setattr__(self, "universe_size", universe_size)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, universe_size: int, mask: int) -> ElementSet:
        if mask < 0 or mask >> universe_size:
            raise UniverseMismatch(
                f"mask {mask:#x} outside ground set of size {universe_size}"
            )
        s = cls.__new__(cls)
        object.__setattr__(s, "universe_size", universe_size)
        object.__setattr__(s, "mask", mask)
        return s

    @classmethod
    def full(cls, universe_size: int) -> ElementSet:
        return cls.from_mask(universe_size, (1 << universe_size) - 1)

    def __setattr__(self, name, value):
        raise AttributeError("ElementSet is immutable")

    def __reduce__(self):
        return ElementSet.from_mask, (self.universe_size, self.mask)

    def _check(self, other: ElementSet) -> None:
        if not isinstance(other, ElementSet):
            raise TypeError(f"expected ElementSet, got {type(other).__name__}")
        if other.universe_size != self.universe_size:
            raise UniverseMismatch(
                f"universe sizes differ: {self.universe_size} vs {other.universe_size}"
            )

    def __or__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet.from_mask(self.universe_size, self.mask | other.mask)

    def __and__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet.from_mask(self.universe_size, self.mask & other.mask)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet.from_mask(self.universe_size, self.mask & ~other.mask)

    def __xor__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet.from_mask(self.universe_size, self.mask ^ other.mask)

    def complement(self) -> ElementSet:
        full = (1 << self.universe_size) - 1
        return ElementSet.from_mask(self.universe_size, full & ~self.mask)

    def plus(self, x: int) -> ElementSet:
        return ElementSet(self.universe_size, [*self, x])

    def minus(self, x: int) -> ElementSet:
        return ElementSet.from_mask(self.universe_size, self.mask & ~(1 << x))

    def issubset(self, other: ElementSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    __le__ = issubset

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x >= 0 and bool(self.mask >> x & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.universe_size == other.universe_size and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.universe_size, self.mask))

    def __lt__(self, other: ElementSet) -> bool:
        # Canonical order (size, then sorted members) for reproducible output.
        return (len(self), self.members()) < (len(other), other.members())

    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"ElementSet({self.universe_size}, {list(self.members())})"


SetLike = Union[ElementSet, Iterable[int]]


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def to_mask(n: int, s: SetLike) -> int:
    """Coerce an ElementSet or an iterable of indices to a bitmask over ``n``."""
    if isinstance(s, ElementSet):
        if s.universe_size != n:
            raise UniverseMismatch(
                f"set over universe {s.universe_size} used with ground set of size {n}"
            )
        return s.mask
    if isinstance(s, int):
        raise TypeError("pass an ElementSet or an iterable of element indices")
    return ElementSet(n, s).mask


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m
