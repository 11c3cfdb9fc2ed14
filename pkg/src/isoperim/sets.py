"""Finite sets of nonnegative integers and their volume/perimeter."""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass, field


@dataclass(frozen=True)
class IntSet:
    """Immutable finite subset of {0, 1, 2, ...}.

    ``elements`` is strictly increasing; ``mask`` has bit ``z`` set iff ``z`` is a
    member, which gives O(1) membership and bit-parallel boundary extraction.
    """

    elements: tuple[int, ...]
    mask: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        prev = -1
        mask = 0
        for z in self.elements:
            if not isinstance(z, int) or z < 0:
                raise ValueError(f"elements must be nonnegative integers, got {z!r}")
            if z <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = z
            mask |= 1 << z
        object.__setattr__(self, "mask", mask)

    @classmethod
    def of(cls, items: Iterable[int]) -> IntSet:
        items = list(items)
        if len(set(items)) != len(items):
            raise ValueError("duplicate elements")
        return cls(tuple(sorted(items)))

    @classmethod
    def interval(cls, lo: int, hi: int) -> IntSet:
        return cls(tuple(range(lo, hi + 1)))

    @classmethod
    def parse(cls, text: str) -> IntSet:
        """Parse a literal like ``{0,1,2}`` or ``{}``."""
        m = re.fullmatch(r"\s*\{\s*(.*?)\s*\}\s*", text)
        if m is None:
            raise ValueError(f"not a set literal: {text!r}")
        body = m.group(1)
        if not body:
            return cls(())
        return cls.of(int(tok) for tok in body.split(","))

    def __contains__(self, z: int) -> bool:
        return z >= 0 and (self.mask >> z) & 1 == 1

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"

    @property
    def max(self) -> int:
        return self.elements[-1]


def _elements_of_mask(mask: int) -> tuple[int, ...]:
    out = []
    z = 0
    while mask:
        if mask & 1:
            out.append(z)
        mask >>= 1
        z += 1
    return tuple(out)


def boundary(a: IntSet) -> IntSet:
    # interior points have both neighbours present; 0 never does since -1 is absent
    interior = a.mask & (a.mask << 1) & (a.mask >> 1)
    return IntSet(_elements_of_mask(a.mask & ~interior))


def volume(a: IntSet) -> int:
    return sum(a.elements)


def perimeter(a: IntSet) -> int:
    m = a.mask
    return sum(_elements_of_mask(m & ~(m & (m << 1) & (m >> 1))))


def complement_perimeter(a: IntSet) -> int:
    """Perimeter of the cofinite set {0, 1, ...} minus ``a``.

    Only ``z <= max(a) + 1`` can lie on the complement's boundary, so the sum
    runs over that window.
    """
    if not a.elements:
        return 0
    total = 0
    for z in range(1, a.max + 2):
        if z not in a and (z - 1 in a or z + 1 in a):
            total += z
    return total


# List-based versions with no bit tricks, kept as a reference for the above.

def perimeter_of_elements(elements: Iterable[int]) -> int:
    s = set(elements)
    return sum(z for z in s if not (z - 1 in s and z + 1 in s))


def complement_perimeter_of_elements(elements: Iterable[int]) -> int:
    s = set(elements)
    if not s:
        return 0
    top = max(s) + 1
    comp = [z for z in range(top + 2) if z not in s]
    cset = set(comp)
    return sum(z for z in comp if z <= top and not (z - 1 in cset and z + 1 in cset))
