"""Exact integer arithmetic: triangular numbers, the (f, g) decomposition, g-orbits.

Every ``n >= 1`` is written uniquely as ``n = T(f) - g`` with ``0 <= g < f``,
where ``T(f) = f(f+1)/2``.  ``f(0) = g(0) = 0`` by convention.  Nothing in this
module touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Largest ``n`` accepted by the public API.
MAX_N = 4 * 10**17

#: Largest exceptional volume; ``phi`` is measured against this by default.
EXCEPTION_CEILING = 149_894


def check_ceiling(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > MAX_N:
        raise ValueError(f"n = {n} exceeds the supported ceiling {MAX_N}")


def isqrt(m: int) -> int:
    """Largest ``r`` with ``r*r <= m``."""
    if m < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(m)


def triangular(m: int) -> int:
    return m * (m + 1) // 2


def f_of(n: int) -> int:
    """The unique ``f`` with ``T(f-1) < n <= T(f)``; ``f(0) = 0``."""
    check_ceiling(n)
    if n == 0:
        return 0
    f = (isqrt(8 * n + 1) - 1) // 2
    if triangular(f) < n:
        f += 1
    return f


def g_of(n: int) -> int:
    return triangular(f_of(n)) - n


@dataclass(frozen=True)
class FGDecomposition:
    n: int
    f: int
    g: int

    def __post_init__(self):
        if self.n != triangular(self.f) - self.g:
            raise ValueError(f"{self.n} != T({self.f}) - {self.g}")
        if self.n == 0:
            if self.f or self.g:
                raise ValueError("n = 0 must decompose as (0, 0)")
        elif not 0 <= self.g < self.f:
            raise ValueError(f"offset {self.g} out of range for row {self.f}")


def decompose(n: int) -> FGDecomposition:
    f = f_of(n)
    return FGDecomposition(n, f, triangular(f) - n)


# Independent forms of f, each evaluated with integer predicates only.  They
# exist so tests can confirm that the three classical expressions coincide.

def f_ceiling_form(n: int) -> int:
    """ceil((-1 + sqrt(1 + 8n)) / 2)."""
    r = isqrt(8 * n + 1)
    if r * r == 8 * n + 1:
        return (r - 1) // 2
    # sqrt(8n+1) lies strictly in (r, r+1)
    return r // 2 if r % 2 == 0 else (r + 1) // 2


def f_shifted_ceiling_form(n: int) -> int:
    """ceil(sqrt(2n) - 1/2): least c >= 0 with (2c + 1)^2 >= 8n."""
    c = max(0, (isqrt(8 * n) - 1) // 2)
    while (2 * c + 1) ** 2 < 8 * n:
        c += 1
    while c > 0 and (2 * c - 1) ** 2 >= 8 * n:
        c -= 1
    return c


def f_nearest_form(n: int) -> int:
    """Nearest integer to sqrt(2n): r with (2r - 1)^2 <= 8n < (2r + 1)^2."""
    r = isqrt(2 * n)
    # the candidates are r and r + 1; pick the one whose half-window holds 8n
    if (2 * r + 1) ** 2 <= 8 * n:
        r += 1
    return r


@dataclass(frozen=True)
class GOrbit:
    start: int
    iterates: tuple[int, ...]
    phi: int
    threshold: int

    @property
    def base(self) -> int:
        return self.iterates[self.phi]

    def row_sum(self) -> int:
        """Sum of f over the iterates strictly before the base."""
        return sum(f_of(x) for x in self.iterates[: self.phi])


def g_orbit(n: int, threshold: int = EXCEPTION_CEILING) -> GOrbit:
    """Iterate g from ``n`` until the first value ``<= threshold``.

    g(k) < k for every k >= 1 and g fixes 0, so the walk always stops, even for
    ``threshold = 0``.
    """
    check_ceiling(n)
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    iterates = [n]
    while iterates[-1] > threshold:
        iterates.append(g_of(iterates[-1]))
    return GOrbit(n, tuple(iterates), len(iterates) - 1, threshold)


def g_iterate(n: int, times: int) -> int:
    for _ in range(times):
        n = g_of(n)
    return n


def f_array(n):
    """Vectorised f: position of each n among the triangular numbers (integers only)."""
    n = np.asarray(n, dtype=np.int64)
    if n.size == 0:
        return n.copy()
    if n.min() < 0:
        raise ValueError("f_array needs nonnegative input")
    top = f_of(int(n.max()))
    tri = np.arange(top + 1, dtype=np.int64)
    tri = tri * (tri + 1) // 2
    # least f with T(f) >= n
    return np.searchsorted(tri, n, side="left").astype(np.int64)


def g_array(n):
    n = np.asarray(n, dtype=np.int64)
    f = f_array(n)
    return f * (f + 1) // 2 - n
