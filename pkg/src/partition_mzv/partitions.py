"""Integer partitions: enumeration, Stanley coordinates, hooks, and
symmetric-group character values.

A partition is a plain tuple of weakly decreasing positive ints; the empty
partition is ().  Enumeration order is reverse lexicographic, e.g.
partitions_of(4) = (4), (3,1), (2,2), (2,1,1), (1,1,1,1); golden test data
depends on this order.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from typing import Iterator, NamedTuple


def check_partition(lam) -> tuple:
    lam = tuple(int(x) for x in lam)
    if any(x <= 0 for x in lam):
        raise ValueError(f"parts must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {lam}")
    return lam


def size(lam) -> int:
    return sum(lam)


def length(lam) -> int:
    return len(lam)


def partitions_of(n: int) -> Iterator[tuple]:
    """All partitions of n in reverse lexicographic order, each once."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def rec(rem, maxpart):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, maxpart), 0, -1):
            for rest in rec(rem - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def partitions_up_to(n: int) -> Iterator[tuple]:
    """All partitions of 0, 1, ..., n."""
    for m in range(n + 1):
        yield from partitions_of(m)


def conjugate(lam) -> tuple:
    """Transpose of the Young diagram."""
    if not lam:
        return ()
    out = []
    for c in range(lam[0]):
        out.append(sum(1 for part in lam if part > c))
    return tuple(out)


def multiplicity(lam, m: int) -> int:
    """Number of parts equal to m."""
    if m < 1:
        raise ValueError("part value must be >= 1")
    return sum(1 for part in lam if part == m)


class StanleyCoords(NamedTuple):
    """Multiplicities r and strictly decreasing distinct part values m."""

    r: tuple
    m: tuple

    def to_partition(self) -> tuple:
        out = []
        for rep, val in zip(self.r, self.m):
            out.extend([val] * rep)
        return check_partition(out)


def stanley(lam) -> StanleyCoords:
    r, m = [], []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        m.append(lam[i])
        r.append(j - i)
        i = j
    return StanleyCoords(tuple(r), tuple(m))


def depth(lam) -> int:
    """Number of distinct part values."""
    return len(set(lam))


def is_strict(lam) -> bool:
    return len(set(lam)) == len(lam)


def arm_leg_cells(lam) -> list:
    """(arm, leg) for every cell of the Young diagram; hook = arm + leg + 1."""
    conj = conjugate(lam)
    out = []
    for i, row in enumerate(lam):
        for j in range(row):
            arm = row - j - 1
            leg = conj[j] - i - 1
            out.append((arm, leg))
    return out


def hook_lengths(lam) -> list:
    return [a + b + 1 for a, b in arm_leg_cells(lam)]


def centralizer_size(mu) -> int:
    """z_mu = prod m^(r_m) r_m! over part values m."""
    z = 1
    for m, r in Counter(mu).items():
        z *= m**r * math.factorial(r)
    return z


def conjugacy_class_size(mu) -> int:
    """Number of permutations in S_n of cycle type mu."""
    return math.factorial(size(mu)) // centralizer_size(mu)


@lru_cache(maxsize=None)
def character(lam, mu) -> int:
    """Irreducible character chi_lam evaluated on the class of cycle type mu.

    Murnaghan-Nakayama over border strips, computed on beta-numbers.  A border
    strip of length t removable from lam corresponds to a beta-number b with
    b - t >= 0 not itself a beta-number; its sign is (-1)^(rows spanned - 1),
    which equals the count of beta-numbers strictly between b - t and b.
    """
    lam = tuple(lam)
    mu = tuple(mu)
    if size(lam) != size(mu):
        raise ValueError("partitions must have equal size")
    if not mu:
        return 1
    t = mu[0]
    rest = mu[1:]
    n_rows = len(lam)
    beta = [lam[i] + (n_rows - 1 - i) for i in range(n_rows)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        nb = b - t
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new_beta = sorted((beta_set - {b}) | {nb}, reverse=True)
        new_lam = tuple(
            x - (n_rows - 1 - i) for i, x in enumerate(new_beta) if x - (n_rows - 1 - i) > 0
        )
        total += (-1) ** height * character(new_lam, rest)
    return total


def hook_product(lam) -> int:
    out = 1
    for h in hook_lengths(lam):
        out *= h
    return out


def irrep_dimension(lam) -> int:
    """Dimension of the irreducible S_n representation: hook length formula."""
    return math.factorial(size(lam)) // hook_product(lam)
