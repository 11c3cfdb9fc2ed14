"""Minimum perimeter of integer sets with a given volume.

P(n) is the least perimeter, and Q(n) the least complement perimeter, over
subsets of {0, 1, 2, ...} whose elements sum to n.  Four routes compute them:
brute force (``oracle``), dynamic programming over restricted minima (``dp``),
the exception-seeded recursion (``fast``), and a max-element scan over the DP
helper tables (``dp.direct_P`` / ``dp.direct_Q``).
"""

from .fast import fast_P, fast_Q, load_exception_table, quasi_explicit_P, quasi_explicit_Q
from .numeric import decompose, f_of, g_of, g_orbit
from .sets import IntSet, complement_perimeter, perimeter, volume

__all__ = [
    "IntSet",
    "complement_perimeter",
    "decompose",
    "f_of",
    "fast_P",
    "fast_Q",
    "g_of",
    "g_orbit",
    "load_exception_table",
    "perimeter",
    "quasi_explicit_P",
    "quasi_explicit_Q",
    "volume",
]
