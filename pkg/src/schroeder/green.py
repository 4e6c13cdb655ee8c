"""Finite semigroup container and Green's / starred Green's relations.

A :class:`SemigroupTable` interns a composition-closed set of partial maps
(optionally with a distinguished zero for Rees quotients) and exposes the
product on element indices.  Classical Green's relations are computed from
principal ideals via strongly connected components of the one-sided Cayley
digraphs; starred relations come in a definitional variant (the cancellation
biconditional quantified over S^1) and a characterized fast path (grouping
by image / kernel / height).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .pmap import PartialMap, compose

__all__ = [
    "Zero",
    "ZERO",
    "SemigroupTable",
    "EqPartition",
    "BinRelation",
    "build_table",
    "green",
    "starred_definitional",
    "starred_characterized",
    "partition_as_relation",
    "compose_relations",
    "relations_equal",
    "abundance_report",
    "AbundanceReport",
]

GreenName = Literal["L", "R", "H", "D", "J"]
StarName = Literal["Lstar", "Rstar", "Hstar", "Dstar"]


class Zero:
    """Distinguished absorbing zero of a Rees quotient.

    Not a partial map: in the quotient the whole lower ideal collapses to
    this single atom, while the empty map stays an ordinary element of the
    ambient semigroup.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def encode(self) -> str:
        return "0"

    def __repr__(self) -> str:
        return "ZERO"


ZERO = Zero()


@dataclass
class SemigroupTable:
    """An interned, indexed, composition-closed set of elements."""

    n: int
    elements: list  # PartialMap values, plus ZERO at index 0 when present
    zero_index: int | None
    collapse_below: int | None

    _index: dict = field(repr=False)
    _rows: list = field(default=None, repr=False)  # full product table, lazy

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, a) -> int:
        key = a if a is ZERO else a.pairs
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"element {a.encode() if a is not ZERO else '0'} not in table") from None

    def product(self, i: int, j: int) -> int:
        if self._rows is not None:
            return self._rows[i][j]
        return self._compute_product(i, j)

    def _compute_product(self, i: int, j: int) -> int:
        zi = self.zero_index
        if i == zi or j == zi:
            return zi
        a, b = self.elements[i], self.elements[j]
        c = compose(a, b)
        if self.collapse_below is not None and c.height() < self.collapse_below:
            return zi
        try:
            return self._index[c.pairs]
        except KeyError:
            raise ValueError(
                f"not closed under composition: {a.encode()} * {b.encode()} "
                f"= {c.encode()} is missing"
            ) from None

    def full_table(self) -> list:
        """Materialize the whole product table (list of rows of indices).

        Works on raw pair tuples instead of PartialMap values; at ~10^3
        elements the 10^6 products stay in the seconds range.
        """
        if self._rows is not None:
            return self._rows
        size = len(self.elements)
        zi = self.zero_index
        cut = self.collapse_below
        index = self._index
        pairs_of = [None if a is ZERO else a.pairs for a in self.elements]
        dict_of = [None if a is ZERO else dict(a.pairs) for a in self.elements]
        rows = []
        for i in range(size):
            if i == zi:
                rows.append([zi] * size)
                continue
            apairs = pairs_of[i]
            row = []
            for j in range(size):
                if j == zi:
                    row.append(zi)
                    continue
                bd = dict_of[j]
                cpairs = tuple((d, bd[v]) for d, v in apairs if v in bd)
                if cut is not None and len({v for _, v in cpairs}) < cut:
                    row.append(zi)
                    continue
                k = index.get(cpairs)
                if k is None:
                    a, b = self.elements[i], self.elements[j]
                    raise ValueError(
                        f"not closed under composition: {a.encode()} * {b.encode()} is missing"
                    )
                row.append(k)
            rows.append(row)
        self._rows = rows
        return rows

    def idempotent_indices(self) -> list[int]:
        return [i for i in range(len(self)) if self.product(i, i) == i]


def build_table(
    elements: Iterable[PartialMap],
    adjoin_zero: bool = False,
    collapse_below: int | None = None,
    verify: bool = True,
) -> SemigroupTable:
    """Intern an element set, checking closure (optionally under collapse).

    With ``collapse_below = p`` every product of height < p is identified
    with the zero, realizing a Rees quotient; this forces ``adjoin_zero``.
    With ``verify=False`` the full product scan is skipped and closure
    violations surface lazily on first offending lookup.
    """
    elems = sorted(set(elements), key=lambda a: a.encode())
    if not elems:
        raise ValueError("empty element set")
    n = elems[0].n
    if any(a.n != n for a in elems):
        raise ValueError("ambient size mismatch among elements")
    if collapse_below is not None:
        adjoin_zero = True
    listing: list = ([ZERO] if adjoin_zero else []) + elems
    index: dict = {a.pairs: i for i, a in enumerate(elems, start=1 if adjoin_zero else 0)}
    if adjoin_zero:
        index[ZERO] = 0
    table = SemigroupTable(
        n=n,
        elements=listing,
        zero_index=0 if adjoin_zero else None,
        collapse_below=collapse_below,
        _index=index,
    )
    if verify:
        table.full_table()  # raises on the first violating pair
    return table


@dataclass(frozen=True)
class EqPartition:
    """A partition of a table's element indices into classes."""

    class_id: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def from_keys(cls, keys: Sequence) -> "EqPartition":
        """Group indices by arbitrary hashable keys; classes ordered by
        their smallest member."""
        groups: dict = {}
        for i, key in enumerate(keys):
            groups.setdefault(key, []).append(i)
        classes = sorted(groups.values())
        cid = [0] * len(keys)
        for c, members in enumerate(classes):
            for i in members:
                cid[i] = c
        return cls(tuple(cid), tuple(tuple(m) for m in classes))

    def num_classes(self) -> int:
        return len(self.classes)

    def is_identity(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def same_class(self, i: int, j: int) -> bool:
        return self.class_id[i] == self.class_id[j]

    def class_of(self, i: int) -> tuple[int, ...]:
        return self.classes[self.class_id[i]]

    def to_json(self, table: SemigroupTable, relation: str) -> str:
        return json.dumps(
            {
                "relation": relation,
                "classes": [
                    [table.elements[i].encode() for i in cls_] for cls_ in self.classes
                ],
            }
        )


# -- classical Green's relations ----------------------------------------


def _scc_partition(size: int, successors) -> EqPartition:
    """Tarjan SCC (iterative) over the digraph given by a successor
    function; mutual reachability classes become the partition."""
    index_of = [-1] * size
    low = [0] * size
    on_stack = [False] * size
    stack: list[int] = []
    comp = [-1] * size
    counter = 0
    ncomp = 0
    for root in range(size):
        if index_of[root] != -1:
            continue
        work = [(root, iter(successors(root)))]
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index_of[w] == -1:
                    index_of[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                elif on_stack[w]:
                    if index_of[w] < low[v]:
                        low[v] = index_of[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index_of[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return EqPartition.from_keys(comp)


def green(table: SemigroupTable, which: GreenName) -> EqPartition:
    """Classical Green's relation via principal-ideal reachability.

    a and b are L-related iff each lies in the other's principal left ideal
    S^1 a, i.e. iff they are mutually reachable under left multiplications;
    likewise for R and J.  H = L intersect R; D = join of L and R.
    """
    rows = table.full_table()
    size = len(table)
    indices = range(size)

    def left_succ(i):  # x * a for all x
        return (rows[x][i] for x in indices)

    def right_succ(i):  # a * y for all y
        return (rows[i][y] for y in indices)

    def both_succ(i):
        yield from left_succ(i)
        yield from right_succ(i)

    if which == "L":
        return _scc_partition(size, left_succ)
    if which == "R":
        return _scc_partition(size, right_succ)
    if which == "J":
        return _scc_partition(size, both_succ)
    if which == "H":
        lcl = green(table, "L").class_id
        rcl = green(table, "R").class_id
        return EqPartition.from_keys(list(zip(lcl, rcl)))
    if which == "D":
        # join of L and R: connected components when both partitions merge
        lcl = green(table, "L").class_id
        rcl = green(table, "R").class_id
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx

        for cid in (lcl, rcl):
            first: dict[int, int] = {}
            for i, c in enumerate(cid):
                if c in first:
                    union(first[c], i)
                else:
                    first[c] = i
        return EqPartition.from_keys([find(i) for i in range(size)])
    raise ValueError(f"unknown Green relation {which!r}")


def regular_indices(table: SemigroupTable) -> list[int]:
    """Indices of regular elements: a with a b a == a for some b."""
    rows = table.full_table()
    size = len(table)
    return [
        i
        for i in range(size)
        if any(rows[rows[i][b]][i] == i for b in range(size))
    ]


# -- starred relations ----------------------------------------------------


def starred_definitional(
    table: SemigroupTable, which: Literal["Lstar", "Rstar"], max_size: int = 250
) -> EqPartition:
    """L* / R* straight from the cancellation biconditional over S^1.

    a L* b iff for all x, y in S^1: ax = ay <=> bx = by; equivalently the
    equivalence x ~ y <=> ax = ay on S^1 is the same for a and b, so we
    fingerprint that equivalence per element and group.  The formal identity
    of S^1 is virtual (index -1), never materialized as a map.
    """
    size = len(table)
    if size > max_size:
        raise ValueError(
            f"definitional starred check guarded at {max_size} elements "
            f"(got {size}); use starred_characterized or raise the guard"
        )
    if which not in ("Lstar", "Rstar"):
        raise ValueError(f"definitional variant only for Lstar/Rstar, got {which!r}")
    rows = table.full_table()
    s1 = [-1] + list(range(size))  # -1 is the adjoined identity

    def prod(a: int, x: int) -> int:
        if x == -1:
            return a
        if which == "Lstar":
            return rows[a][x]
        return rows[x][a]

    keys = []
    for a in range(size):
        seen: dict[int, int] = {}
        fingerprint = tuple(seen.setdefault(prod(a, x), len(seen)) for x in s1)
        keys.append(fingerprint)
    return EqPartition.from_keys(keys)


def starred_characterized(table: SemigroupTable, which: StarName) -> EqPartition:
    """L*, R*, H*, D* via their structural characterizations on this family:
    image sets, kernels, equality, and heights respectively.  The zero of a
    Rees quotient is always its own class."""
    zero_key = ("zero",)

    def key(i: int):
        a = table.elements[i]
        if a is ZERO:
            return zero_key
        if which == "Lstar":
            return ("im", a.image())
        if which == "Rstar":
            return ("ker", a.kernel_blocks())
        if which == "Hstar":
            return ("eq", a.pairs)
        if which == "Dstar":
            return ("h", a.height())
        raise ValueError(f"unknown starred relation {which!r}")

    return EqPartition.from_keys([key(i) for i in range(len(table))])


# -- relation algebra ------------------------------------------------------


@dataclass(frozen=True)
class BinRelation:
    """A binary relation on element indices 0..size-1."""

    size: int
    pairs: frozenset

    @classmethod
    def identity(cls, size: int) -> "BinRelation":
        return cls(size, frozenset((i, i) for i in range(size)))

    def __contains__(self, pair) -> bool:
        return pair in self.pairs


def partition_as_relation(p: EqPartition) -> BinRelation:
    pairs = set()
    for cls_ in p.classes:
        for a in cls_:
            for b in cls_:
                pairs.add((a, b))
    return BinRelation(len(p.class_id), frozenset(pairs))


def compose_relations(r1: BinRelation, r2: BinRelation) -> BinRelation:
    """(a, c) in r1 o r2 iff exists b with (a, b) in r1 and (b, c) in r2."""
    if r1.size != r2.size:
        raise ValueError("universe mismatch")
    by_first: dict[int, set[int]] = {}
    for b, c in r2.pairs:
        by_first.setdefault(b, set()).add(c)
    out = set()
    for a, b in r1.pairs:
        for c in by_first.get(b, ()):
            out.add((a, c))
    return BinRelation(r1.size, frozenset(out))


def relations_equal(r1: BinRelation, r2: BinRelation) -> bool:
    return r1.size == r2.size and r1.pairs == r2.pairs


# -- abundance -------------------------------------------------------------


@dataclass(frozen=True)
class AbundanceReport:
    right_abundant: bool
    left_abundant: bool
    rstar_idempotent_counts: tuple[int, ...]
    lstar_witness: tuple[int, ...] | None  # an idempotent-free L*-class

    @property
    def unique_idempotent_per_rstar(self) -> bool:
        return all(c == 1 for c in self.rstar_idempotent_counts)


def abundance_report(table: SemigroupTable) -> AbundanceReport:
    """Idempotent census per starred class (characterized fast path, so it
    scales past the definitional guard)."""
    idem = set()
    for i, a in enumerate(table.elements):
        if a is ZERO or compose(a, a) == a:
            idem.add(i)
    rstar = starred_characterized(table, "Rstar")
    lstar = starred_characterized(table, "Lstar")
    rcounts = tuple(sum(1 for i in cls_ if i in idem) for cls_ in rstar.classes)
    witness = None
    for cls_ in lstar.classes:
        if not any(i in idem for i in cls_):
            witness = cls_
            break
    return AbundanceReport(
        right_abundant=all(c >= 1 for c in rcounts),
        left_abundant=witness is None,
        rstar_idempotent_counts=rcounts,
        lstar_witness=witness,
    )
