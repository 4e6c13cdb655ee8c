"""Enumeration of element families over the chain {1..n} and the closed-form
counting formulas they satisfy.

Families are generated directly from the tabular form (choose a domain
avoiding 1, split it into consecutive blocks, pick an increasing image with
a_i <= min A_i) rather than by filtering all (n+1)^n partial maps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .pmap import PartialMap, is_requisite, member_ss_prime, requisite_from_image

__all__ = [
    "Family",
    "FamilySpec",
    "enumerate_family",
    "schroeder_small",
    "binom",
    "count_idempotents",
    "formula_idempotents",
    "count_rstar_classes",
    "formula_rstar_classes",
    "count_lstar_classes",
    "verify_identity_corollary",
]


class Family(str, Enum):
    SS_PRIME = "ss-prime"      # isotone decreasing, 1 not in domain
    SS = "ss"                  # isotone decreasing, 1 in domain
    LS = "ls"                  # all isotone decreasing partial maps
    IDEAL_K = "ideal"          # members of SS_PRIME of height <= p
    JSTAR_SLICE = "jstar"      # members of SS_PRIME of height exactly p
    IDEMPOTENTS = "idempotents"
    REQUISITE = "requisite"


_NEEDS_P = {Family.IDEAL_K, Family.JSTAR_SLICE, Family.REQUISITE}


@dataclass(frozen=True)
class FamilySpec:
    kind: Family
    n: int
    p: int | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"family enumeration needs n >= 2, got n={self.n}")
        if self.kind in _NEEDS_P and self.p is None:
            raise ValueError(f"family {self.kind.value} needs a height parameter p")
        if self.p is not None and not 0 <= self.p <= self.n - 1:
            raise ValueError(f"need 0 <= p <= n-1, got p={self.p}, n={self.n}")


def _isotone_decreasing(n: int, domain_pool: tuple[int, ...]) -> Iterator[PartialMap]:
    """All isotone order-decreasing maps whose domain is a subset of the pool.

    Kernel classes of an isotone map are consecutive runs of the domain, so we
    pick a domain, cut it into runs, and choose images left to right subject
    to a_prev < a_i <= min A_i.
    """
    yield PartialMap.empty(n)
    for r in range(1, len(domain_pool) + 1):
        for dom in itertools.combinations(domain_pool, r):
            # cut positions between consecutive domain points
            for cuts in itertools.chain.from_iterable(
                itertools.combinations(range(1, r), k) for k in range(r)
            ):
                bounds = (0, *cuts, r)
                blocks = [dom[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]
                yield from _fill_images(n, blocks)


def _fill_images(n: int, blocks: list[tuple[int, ...]]) -> Iterator[PartialMap]:
    mins = [b[0] for b in blocks]

    def rec(i: int, lo: int, acc: list[int]) -> Iterator[list[int]]:
        if i == len(blocks):
            yield acc
            return
        for a in range(lo, mins[i] + 1):
            yield from rec(i + 1, a + 1, acc + [a])

    for images in rec(0, 1, []):
        pairs = tuple(
            (d, images[i]) for i, block in enumerate(blocks) for d in block
        )
        yield PartialMap(n, tuple(sorted(pairs)))


def _iter_family(spec: FamilySpec) -> Iterator[PartialMap]:
    n, p = spec.n, spec.p
    if spec.kind is Family.SS_PRIME:
        yield from _isotone_decreasing(n, tuple(range(2, n + 1)))
    elif spec.kind is Family.LS:
        yield from _isotone_decreasing(n, tuple(range(1, n + 1)))
    elif spec.kind is Family.SS:
        for a in _isotone_decreasing(n, tuple(range(1, n + 1))):
            if a.pairs and a.pairs[0][0] == 1:
                yield a
    elif spec.kind is Family.IDEAL_K:
        for a in _isotone_decreasing(n, tuple(range(2, n + 1))):
            if a.height() <= p:
                yield a
    elif spec.kind is Family.JSTAR_SLICE:
        for a in _isotone_decreasing(n, tuple(range(2, n + 1))):
            if a.height() == p:
                yield a
    elif spec.kind is Family.IDEMPOTENTS:
        for a in _isotone_decreasing(n, tuple(range(2, n + 1))):
            if (p is None or a.height() == p) and a.is_idempotent():
                yield a
    elif spec.kind is Family.REQUISITE:
        if p == 0:
            return
        # one requisite per image {1} + (p-1 points of {2..n})
        for rest in itertools.combinations(range(2, n + 1), p - 1):
            yield requisite_from_image(n, (1, *rest))
    else:  # pragma: no cover
        raise ValueError(f"unsupported family {spec.kind}")


def enumerate_family(spec: FamilySpec) -> list[PartialMap]:
    """All members of the family, sorted by canonical text encoding."""
    out = sorted(set(_iter_family(spec)), key=lambda a: a.encode())
    return out


# -- counting formulas ---------------------------------------------------


def schroeder_small(n: int) -> int:
    """The small Schroeder number s_n, by its summation formula.

    Exact integer arithmetic; the defining division is checked to be exact.
    """
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return 1
    total = sum(
        math.comb(n + 1, n - r) * math.comb(n + r, r) for r in range(n + 1)
    )
    q, rem = divmod(total, 2 * (n + 1))
    assert rem == 0, "small Schroeder sum must be divisible by 2(n+1)"
    return q


def binom(m: int, k: int) -> int:
    """Binomial coefficient with the convention C(-1,-1)=1 and C(m,-1)=0 for
    m >= 0 (needed so the p=0 term of the class-count identity is 1)."""
    if k == -1:
        return 1 if m == -1 else 0
    if m < 0 or k < 0 or k > m:
        return 0
    return math.comb(m, k)


def count_idempotents(n: int) -> int:
    return len(enumerate_family(FamilySpec(Family.IDEMPOTENTS, n)))


def formula_idempotents(n: int) -> int:
    """(3^(n-1) + 1) / 2."""
    if n < 2:
        raise ValueError("need n >= 2")
    q, rem = divmod(3 ** (n - 1) + 1, 2)
    assert rem == 0
    return q


def formula_rstar_classes(n: int, p: int) -> int:
    """Number of kernels among height-p members:
    sum_{r=p}^{n-1} C(n-1,r) C(r-1,p-1)."""
    if not 0 <= p <= n - 1:
        raise ValueError(f"need 0 <= p <= n-1, got p={p}")
    return sum(binom(n - 1, r) * binom(r - 1, p - 1) for r in range(p, n))


def count_rstar_classes(n: int, p: int) -> int:
    """Distinct kernels (domain + block partition) among height-p members."""
    kernels = {
        a.kernel_blocks()
        for a in enumerate_family(FamilySpec(Family.JSTAR_SLICE, n, p))
    }
    return len(kernels)


def count_lstar_classes(n: int, p: int) -> int:
    """Distinct images among height-p members; equals C(n,p)."""
    if not 1 <= p <= n - 1:
        raise ValueError(f"need 1 <= p <= n-1, got p={p}")
    images = {
        a.image() for a in enumerate_family(FamilySpec(Family.JSTAR_SLICE, n, p))
    }
    return len(images)


def verify_identity_corollary(n: int) -> bool:
    """sum_p sum_{r=p}^{n-1} C(n-1,r) C(r-1,p-1) == (3^(n-1)+1)/2."""
    if n < 2:
        raise ValueError("need n >= 2")
    lhs = sum(formula_rstar_classes(n, p) for p in range(n))
    return lhs == formula_idempotents(n)
