"""Classification of abelian group extensions 0 -> A -> G -> C -> 0.

Given the subgroup A and quotient C in canonical form, enumerate every
isomorphism class that the middle group G can take.  The free part of C
always splits off; for the torsion part, each choice of cocycle values
(one coset of A/mA per torsion factor m of C) yields a presentation of a
candidate G, and distinct classes are collected after canonicalization.

A brute-force oracle is provided for small orders: enumerate all abelian
groups of order |A|*|C|, list their subgroups by closure, and keep the
groups realizing the prescribed subgroup/quotient pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from math import gcd, prod


def _lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out

from .fgab import (
    FgGroup,
    IntMatrix,
    direct_sum,
    factorint,
    group_from_presentation,
    group_sort_key,
)

BRUTE_FORCE_DEFAULT_BOUND = 64


class BruteForceBoundError(ValueError):
    """Inputs too large for the exhaustive oracle."""


@dataclass(frozen=True)
class ExtensionProblem:
    """Sub A and quotient C of an extension 0 -> A -> G -> C -> 0."""

    sub: FgGroup
    quot: FgGroup


@dataclass(frozen=True)
class ExtensionAnswer:
    """All isomorphism classes the middle group can realize.

    ``candidates`` is canonically sorted and always contains the direct
    sum ``split_member``; ``forced_unique`` means the mathematics pins G.
    """

    candidates: tuple[FgGroup, ...]
    split_member: FgGroup

    @property
    def forced_unique(self) -> bool:
        return len(self.candidates) == 1


def ext_classes(quot: FgGroup, sub: FgGroup) -> FgGroup:
    """The group Ext^1(quot, sub) = direct sum over torsion factors m of
    quot of sub/m*sub; the free part of quot contributes nothing."""
    out = FgGroup.trivial()
    for m in quot.torsion:
        out = direct_sum(out, _quotient_by_multiple(sub, m))
    return out


def _quotient_by_multiple(g: FgGroup, m: int) -> FgGroup:
    """g / m*g, presented by the relations of g together with m*(each gen)."""
    n = g.n_generators
    rels = g.relation_matrix().hstack(IntMatrix.diagonal([m] * n))
    return group_from_presentation(rels, n)


def _cocycle_ranges(sub: FgGroup, m: int) -> list[range]:
    # Coordinate ranges of the lexicographically minimal representatives of
    # sub/m*sub: free coordinates run mod m, a torsion-d coordinate runs
    # mod gcd(d, m).
    return [range(m)] * sub.rank + [range(gcd(d, m)) for d in sub.torsion]


def enumerate_extensions(problem: ExtensionProblem) -> ExtensionAnswer:
    """Every middle class of an extension of ``quot`` by ``sub``.

    The enumeration ranges over full coset-representative tuples (one
    element of sub/m_j*sub per torsion factor m_j of quot) rather than
    Ext-orbit representatives; duplicate classes are removed after
    canonicalization, which keeps the construction auditable.
    """
    sub, quot = problem.sub, problem.quot
    free_rank = quot.rank
    ms = quot.torsion
    t = len(ms)
    na = sub.n_generators
    r_sub = sub.relation_matrix()

    found: set[FgGroup] = set()
    axes = [itertools.product(*_cocycle_ranges(sub, m)) for m in ms]
    for tails in itertools.product(*axes):
        # Generators: lifted quotient generators x_1..x_t, then sub gens.
        # Relations: sub relations, and m_j*x_j = a_j for the chosen a_j.
        cols: list[list[int]] = []
        for j in range(r_sub.cols):
            col = [0] * t + list(r_sub.column(j))
            cols.append(col)
        for j, a in enumerate(tails):
            col = [0] * (t + na)
            col[j] = ms[j]
            for i, coord in enumerate(a):
                col[t + i] = -coord
            cols.append(col)
        rel = IntMatrix.from_rows(
            [[c[i] for c in cols] for i in range(t + na)], len(cols)
        )
        middle = group_from_presentation(rel, t + na)
        found.add(FgGroup(middle.rank + free_rank, middle.torsion))

    split = direct_sum(sub, quot)
    assert split in found
    return ExtensionAnswer(
        candidates=tuple(sorted(found, key=group_sort_key)), split_member=split
    )


# ---------------------------------------------------------------------------
# Exhaustive oracle for small finite groups


def _partitions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def rec(remaining: int, largest: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, largest), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def abelian_groups_of_order(n: int) -> list[FgGroup]:
    """All isomorphism classes of abelian groups of order n (n >= 1)."""
    if n < 1:
        raise ValueError("order must be positive")
    per_prime = [
        [[p**e for e in part] for part in _partitions(exp)]
        for p, exp in factorint(n).items()
    ]
    groups = []
    for combo in itertools.product(*per_prime):
        cyclic_orders = [q for qs in combo for q in qs]
        groups.append(
            group_from_presentation(
                IntMatrix.diagonal(cyclic_orders), len(cyclic_orders)
            )
        )
    return sorted(set(groups), key=group_sort_key)


class _FiniteModel:
    """A finite abelian group as element indices with an addition table."""

    def __init__(self, cyclic_orders: tuple[int, ...]):
        self.orders = cyclic_orders
        self.size = prod(cyclic_orders) if cyclic_orders else 1
        self.elements = list(itertools.product(*(range(q) for q in cyclic_orders)))
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.add = [
            [
                self.index[tuple((x + y) % q for x, y, q in zip(a, b, cyclic_orders))]
                for b in self.elements
            ]
            for a in self.elements
        ]
        # element_order[i] = lcm over coordinates of q / gcd(q, x)
        self.element_order = [
            _lcm_all(q // gcd(q, x) for x, q in zip(e, cyclic_orders))
            for e in self.elements
        ]

    def scale(self, k: int, i: int) -> int:
        coords = self.elements[i]
        return self.index[tuple((k * x) % q for x, q in zip(coords, self.orders))]

    def subgroup_generated(self, base: frozenset[int], g: int) -> frozenset[int]:
        add = self.add
        acc = set(base)
        cur = g
        while cur not in acc:
            row = add[cur]
            acc.update(map(row.__getitem__, base))
            cur = add[cur][g]
        return frozenset(acc)

    def all_subgroups(self) -> list[frozenset[int]]:
        zero = frozenset({self.index[tuple(0 for _ in self.orders)]})
        seen = {zero}
        queue = [zero]
        while queue:
            h = queue.pop()
            for g in range(self.size):
                if g in h:
                    continue
                bigger = self.subgroup_generated(h, g)
                if bigger not in seen:
                    seen.add(bigger)
                    queue.append(bigger)
        return list(seen)

    def subset_class(self, elems: frozenset[int]) -> FgGroup:
        """Isomorphism class of a subgroup, from its p^j-torsion counts."""
        orders = [self.element_order[i] for i in elems]
        return _class_from_counts(len(elems), lambda pj: sum(
            1 for o in orders if pj % o == 0
        ))

    def quotient_class(self, sub: frozenset[int]) -> FgGroup:
        """Isomorphism class of G/sub, counting cosets killed by p^j."""
        size = self.size // len(sub)
        return _class_from_counts(size, lambda pj: sum(
            1 for i in range(self.size) if self.scale(pj, i) in sub
        ) // len(sub))


def _class_from_counts(order: int, count_killed) -> FgGroup:
    """Recover a finite abelian group from the counts of elements killed
    by each prime power (the counts determine the primary partitions)."""
    primary: list[int] = []
    for p, exp in factorint(order).items():
        prev = 1
        parts_at_least = []
        for j in range(1, exp + 1):
            cj = count_killed(p**j)
            # number of primary parts of size >= j
            k = 0
            ratio = cj // prev
            while ratio > 1:
                ratio //= p
                k += 1
            parts_at_least.append(k)
            prev = cj
        for j, k in enumerate(parts_at_least, start=1):
            nxt = parts_at_least[j] if j < len(parts_at_least) else 0
            primary.extend([p**j] * (k - nxt))
    return group_from_presentation(IntMatrix.diagonal(primary), len(primary))


@cache
def _subgroup_quotient_pairs(cyclic_orders: tuple[int, ...]) -> frozenset[tuple[FgGroup, FgGroup]]:
    model = _FiniteModel(cyclic_orders)
    pairs = set()
    for sub in model.all_subgroups():
        pairs.add((model.subset_class(sub), model.quotient_class(sub)))
    return frozenset(pairs)


def brute_force_extensions(
    problem: ExtensionProblem, bound: int = BRUTE_FORCE_DEFAULT_BOUND
) -> ExtensionAnswer:
    """Independent oracle: search all abelian groups of order |sub|*|quot|.

    Only valid for finite inputs with |sub|*|quot| <= bound.
    """
    sub, quot = problem.sub, problem.quot
    if not (sub.is_finite and quot.is_finite):
        raise BruteForceBoundError("brute force requires finite sub and quot")
    order = sub.order * quot.order
    if order > bound:
        raise BruteForceBoundError(f"order {order} exceeds bound {bound}")

    found = []
    for g in abelian_groups_of_order(order):
        # Model G by its primary cyclic factors for fast element arithmetic.
        primary: list[int] = []
        for d in g.torsion:
            primary.extend(p**e for p, e in factorint(d).items())
        if (sub, quot) in _subgroup_quotient_pairs(tuple(sorted(primary))):
            found.append(g)

    split = direct_sum(sub, quot)
    assert split in found
    return ExtensionAnswer(
        candidates=tuple(sorted(found, key=group_sort_key)), split_member=split
    )
