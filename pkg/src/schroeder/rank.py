"""Generation, closure, and rank computation for the small Schroeder
semigroup, its two-sided ideals K(n,p), and their Rees quotients.

The rank oracle is independent of the closed-form results it checks: it
collects the *essential* elements (those admitting no factorization avoiding
themselves, hence forced into every generating set), verifies that they
generate, and only then certifies the minimum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .families import Family, FamilySpec, binom, enumerate_family
from .green import ZERO, SemigroupTable
from .pmap import (
    PartialMap,
    alpha_i,
    alpha_ik,
    compose,
    eps_1k,
    is_requisite,
    member_ss_prime,
    requisite_from_image,
)

__all__ = [
    "closure",
    "closure_indices",
    "essential_elements",
    "RankResult",
    "rank_oracle",
    "formula_rank_quotient",
    "formula_rank_ideal",
    "generating_set_G",
    "ss_prime_minimal_generators",
    "factor_via_requisite",
    "lift_requisite",
    "verify_ss1_witnesses",
    "verify_theorem_hq",
]


def closure(generators, universe=None) -> set[PartialMap]:
    """Least composition-closed superset of the generators.

    Worklist BFS over right multiplication by generators (every product
    g1 g2 ... gk is reached left to right).  ``universe``, when given, is
    used only for an early exit once everything is reached.
    """
    gens = list(generators)
    if not gens:
        return set()
    target = None if universe is None else set(universe)
    seen = set(gens)
    work = list(seen)
    while work:
        if target is not None and len(seen) == len(target):
            break
        a = work.pop()
        for g in gens:
            c = compose(a, g)
            if c not in seen:
                seen.add(c)
                work.append(c)
    return seen


def closure_indices(table: SemigroupTable, gen_indices) -> set[int]:
    """Subsemigroup generated by the given indices, inside a built table
    (so Rees-quotient products collapse correctly)."""
    gens = sorted(set(gen_indices))
    seen = set(gens)
    work = list(gens)
    while work:
        i = work.pop()
        for g in gens:
            c = table.product(i, g)
            if c not in seen:
                seen.add(c)
                work.append(c)
    return seen


def essential_elements(table: SemigroupTable) -> set[int]:
    """Indices with no factorization g = a * b where a != g and b != g.

    Every generating set must contain each of these: in a shortest
    expression of g over generators not containing g, the final product
    would exhibit forbidden factors.
    """
    rows = table.full_table()
    size = len(table)
    decomposable = [False] * size
    for i in range(size):
        row = rows[i]
        for j in range(size):
            c = row[j]
            if c != i and c != j:
                decomposable[c] = True
    return {i for i in range(size) if not decomposable[i]}


@dataclass(frozen=True)
class RankResult:
    rank: int | None
    essential: frozenset
    certified: bool
    generating_set: tuple[int, ...]
    notes: str = ""

    def to_json(self, table: SemigroupTable) -> str:
        enc = lambda i: table.elements[i].encode() if table.elements[i] is not ZERO else "0"
        return json.dumps(
            {
                "rank": self.rank,
                "certified": self.certified,
                "essential": sorted(enc(i) for i in self.essential),
                "generating_set": sorted(enc(i) for i in self.generating_set),
                "notes": self.notes,
            }
        )


def _factor_constraints(table: SemigroupTable) -> list[frozenset]:
    """Necessary-membership constraints on any generating set A.

    Take a shortest expression s = g1 ... gk over A of an element s not in
    A; then k >= 2, the prefix u = g1...g_{k-1} and the suffix v = g2...gk
    lie in S and differ from s (else a shorter expression exists).  Hence A
    must meet both
        {s} | {g != s : exists u != s with u g = s}   (last factor)
        {s} | {g != s : exists v != s with g v = s}   (first factor)
    for every s.  A minimum hitting set of these constraints is a sound
    lower bound on the rank.
    """
    rows = table.full_table()
    size = len(table)
    pred_right: list[set[int]] = [set() for _ in range(size)]
    pred_left: list[set[int]] = [set() for _ in range(size)]
    for u in range(size):
        row = rows[u]
        for g in range(size):
            s = row[g]
            if s != u and s != g:
                pred_right[s].add(g)
                pred_left[s].add(u)
    out = []
    for s in range(size):
        out.append(frozenset({s}) | frozenset(pred_right[s]))
        out.append(frozenset({s}) | frozenset(pred_left[s]))
    return out


def _disjoint_packing(constraints: list[frozenset]) -> int:
    """Greedy count of pairwise disjoint constraints: each needs its own
    hitter, so this lower-bounds any hitting set."""
    used: set[int] = set()
    count = 0
    for c in sorted(constraints, key=len):
        if not (c & used):
            used |= c
            count += 1
    return count


def _minimal_constraints(constraints: list[frozenset]) -> list[frozenset]:
    """Drop duplicates and supersets (hitting a subset implies the superset)."""
    minimal: list[frozenset] = []
    for c in sorted(set(constraints), key=len):
        if not any(m <= c for m in minimal):
            minimal.append(c)
    return minimal


def _min_hitting_size(minimal: list[frozenset], budget: int) -> tuple[int, bool]:
    """Exact minimum hitting set size by branch and bound (least-candidates
    pivot, disjoint-packing bound).  Returns (optimum, complete); when the
    node budget runs out ``optimum`` is only the best size found so far."""
    if not minimal:
        return 0, True
    best = len(set().union(*minimal))  # one hitter per constraint always works
    nodes = 0
    complete = True

    def rec(chosen: set[int]) -> None:
        nonlocal best, nodes, complete
        nodes += 1
        if nodes > budget:
            complete = False
            return
        open_cs = [c for c in minimal if not (c & chosen)]
        if not open_cs:
            best = min(best, len(chosen))
            return
        if len(chosen) + _disjoint_packing(open_cs) >= best:
            return
        for g in sorted(min(open_cs, key=len)):
            chosen.add(g)
            rec(chosen)
            chosen.discard(g)

    rec(set())
    return best, complete


def _constraint_components(minimal: list[frozenset]) -> list[list[frozenset]]:
    """Group constraints into connected components under shared candidates."""
    parent = list(range(len(minimal)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_seen: dict[int, int] = {}
    for i, c in enumerate(minimal):
        for g in c:
            if g in first_seen:
                parent[find(i)] = find(first_seen[g])
            else:
                first_seen[g] = i
    comps: dict[int, list[frozenset]] = {}
    for i, c in enumerate(minimal):
        comps.setdefault(find(i), []).append(c)
    return list(comps.values())


def rank_oracle(
    table: SemigroupTable,
    hint: Iterable[PartialMap] | None = None,
    budget: int = 200_000,
) -> RankResult:
    """Minimum size of a generating set, certified when possible.

    Strategy: essential elements (no factorization avoiding themselves) are
    forced into every generating set; when they generate, the rank is their
    count.  Otherwise the exact minimum hitting set over the first/last
    factor constraints is a sound lower bound, and the oracle certifies as
    soon as it verifies some generating set of exactly that size (built one
    candidate per constraint component, or supplied as ``hint``).  When
    nothing matches the bound the result is honestly uncertified.
    """
    size = len(table)
    essential = essential_elements(table)
    if essential and len(closure_indices(table, essential)) == size:
        return RankResult(
            rank=len(essential),
            essential=frozenset(essential),
            certified=True,
            generating_set=tuple(sorted(essential)),
        )
    minimal = _minimal_constraints(
        [c for c in _factor_constraints(table) if not (c & essential)]
    )
    extra_opt, complete = _min_hitting_size(minimal, budget)
    lower = len(essential) + extra_opt
    certifiable = complete

    candidates: list[set[int]] = []
    if hint is not None:
        candidates.append({table.index_of(a) for a in hint})
    components = _constraint_components(minimal)
    if len(components) == extra_opt:
        # one extra generator per component; pick the first that, on top of
        # the essentials, reaches everything its component's constraints
        # came from (verified globally afterwards)
        base = closure_indices(table, essential) if essential else set()
        picks: set[int] = set()
        for comp in components:
            pool = sorted(set().union(*comp))
            targets = {s for c in comp for s in c} - base
            for g in pool:
                reached = closure_indices(table, essential | picks | {g})
                if targets <= reached:
                    picks.add(g)
                    break
            else:
                picks.add(pool[0])
        candidates.append(set(essential) | picks)

    for cand in candidates:
        if len(cand) == lower and len(closure_indices(table, cand)) == size:
            return RankResult(
                rank=lower if certifiable else None,
                essential=frozenset(essential),
                certified=certifiable,
                generating_set=tuple(sorted(cand)),
                notes="" if certifiable else (
                    f"generating set of size {len(cand)} found but the "
                    "lower-bound search hit its node budget"
                ),
            )
    return RankResult(
        rank=None,
        essential=frozenset(essential),
        certified=False,
        generating_set=(),
        notes=(
            f"lower bound {lower} (hitting-set{'' if complete else ', budget-limited'}); "
            "no generating set of that size found"
        ),
    )


# -- closed forms ----------------------------------------------------------


def formula_rank_quotient(n: int, p: int) -> int:
    """Rank of the Rees quotient at height p:
    C(n-1,p-1) + sum_{r=p}^{n-1} C(n-1,r) C(r-1,p-1)."""
    if not 1 <= p <= n - 1:
        raise ValueError(f"need 1 <= p <= n-1, got p={p}, n={n}")
    return binom(n - 1, p - 1) + sum(
        binom(n - 1, r) * binom(r - 1, p - 1) for r in range(p, n)
    )


def formula_rank_ideal(n: int, p: int) -> int:
    """Rank of the ideal K(n,p); same closed form, valid for p <= n-2 only
    (at p = n-1 the ideal is the whole semigroup, whose rank is 3n-4)."""
    if not 1 <= p <= n - 2:
        raise ValueError(
            f"ideal rank formula needs 1 <= p <= n-2 (got p={p}, n={n}); "
            "use rank_oracle on the full semigroup for the top height"
        )
    return formula_rank_quotient(n, p)


# -- distinguished generating sets ------------------------------------------


def generating_set_G(n: int, p: int) -> set[PartialMap]:
    """Height-p requisite elements together with height-p idempotents."""
    if not 1 <= p <= n - 1:
        raise ValueError(f"need 1 <= p <= n-1, got p={p}, n={n}")
    reqs = enumerate_family(FamilySpec(Family.REQUISITE, n, p))
    idems = enumerate_family(FamilySpec(Family.IDEMPOTENTS, n, p))
    return set(reqs) | set(idems)


def ss_prime_minimal_generators(n: int) -> set[PartialMap]:
    """A minimum generating set of the whole semigroup, of size 3n-4:
    all of height n-1 plus the height n-2 idempotents other than the
    partial identity missing point 2."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n == 2:
        return generating_set_G(2, 1)
    top = generating_set_G(n, n - 1)
    reqs = set(enumerate_family(FamilySpec(Family.REQUISITE, n, n - 2)))
    below = generating_set_G(n, n - 2) - reqs - {eps_1k(n, 2)}
    return below | top


# -- explicit constructions -------------------------------------------------


def factor_via_requisite(a: PartialMap) -> tuple[PartialMap, PartialMap]:
    """Write a = b * r where r is the unique requisite element sharing a's
    image and b shares a's kernel.

    Only images of the shape {1, ..., i-1} followed by a tail admit a
    requisite, so this covers exactly the maps whose least image point is 1
    (plus partial-identity-like degenerate cases).
    """
    if not member_ss_prime(a) or not a.pairs:
        raise ValueError("factorization needs a nonempty isotone decreasing map avoiding 1")
    req = requisite_from_image(a.n, a.image())  # raises if no requisite shape
    blocks = a.kernel_view().blocks
    i = len(a.image()) - len(req.fixed_points())  # i-1 shifted image points
    b_pairs = []
    for pos, (block, value) in enumerate(blocks):
        # shifted image points map their block one step up; tail blocks keep value
        target = pos + 2 if pos < i else value
        b_pairs.extend((d, target) for d in block)
    b = PartialMap(a.n, tuple(sorted(b_pairs)))
    return b, req


def lift_requisite(a: PartialMap) -> tuple[PartialMap, PartialMap]:
    """Express a height-p requisite as beta * gamma with beta an idempotent
    and gamma a requisite, both of height p+1.

    Needs two spare points outside Dom a and Im a (i.e. p <= n-3): the
    smaller becomes an extra fixed point of beta, the larger of gamma.
    """
    if not is_requisite(a):
        raise ValueError("lift is defined for requisite elements only")
    used = set(a.domain()) | set(a.image())
    spare = [x for x in range(1, a.n + 1) if x not in used]
    if len(spare) < 2:
        raise ValueError("lift undefined; complement too small (needs height <= n-3)")
    d, c = spare[0], spare[1]
    beta = PartialMap.of(a.n, {x: x for x in (*a.domain(), d)})
    gamma = PartialMap.of(a.n, {**a.as_dict(), c: c})
    return beta, gamma


# -- lemma-level verifications ----------------------------------------------


def verify_ss1_witnesses(n: int) -> bool:
    """Check the witness identities behind the minimum generating set:
    eps_{1,k} * alpha_i == alpha_{i,k} for all 2 <= i < k <= n, and
    alpha_2 squared is the partial identity missing point 2."""
    if n < 4:
        raise ValueError("need n >= 4")
    ok = all(
        compose(eps_1k(n, k), alpha_i(n, i)) == alpha_ik(n, i, k)
        for i in range(2, n + 1)
        for k in range(i + 1, n + 1)
    )
    a2 = alpha_i(n, 2)
    return ok and compose(a2, a2) == eps_1k(n, 2)


def verify_theorem_hq(n: int) -> bool:
    """Idempotents generate every map avoiding 1 in its image, and together
    with the requisite elements they generate everything."""
    ss = set(enumerate_family(FamilySpec(Family.SS_PRIME, n)))
    idems = {a for a in ss if a.is_idempotent()}
    avoid1 = {a for a in ss if 1 not in a.image()}
    gen_idem = closure(idems, universe=ss)
    if not avoid1 <= gen_idem:
        return False
    reqs = {a for a in ss if is_requisite(a)}
    return closure(idems | reqs, universe=ss) == ss
