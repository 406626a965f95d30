"""
Strong Hurwitz numbers at small degree.

:func:`count_tuples` enumerates tuples exactly; :func:`frobenius_disconnected`
evaluates the character formula for the same (possibly disconnected) total,
so the two can be checked against each other.

EXAMPLES::

    >>> from branchdata.data import GeneralDatum
    >>> r = count_tuples(GeneralDatum(3, [[3], [3], [3]]))
    >>> r.tuple_count, r.class_count, r.weighted_count
    (2, 1, Fraction(1, 3))
    >>> frobenius_disconnected(GeneralDatum(3, [[3], [3], [3]]))
    Fraction(1, 3)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .data import CyclePartition, DatumError, GeneralDatum, SpecialDatum, partitions
from .perm import Permutation, _orbit_roots
from .search import (SearchBudget, SearchExhausted, class_size, run_enumeration, search_order,
                     z_value)

COUNT_BUDGET = SearchBudget(max_degree=8, max_nodes=10**8)
CHARACTER_MAX_DEGREE = 14


def format_rational(x: Fraction) -> str:
    """``"p/q"``, also for integers, so the JSON type never changes."""
    return "%d/%d" % (x.numerator, x.denominator)


@dataclass(frozen=True)
class CountReport:
    tuple_count: int
    transitive_count: int
    class_count: int
    weighted_count: Fraction
    per_class_aut: tuple

    def to_json(self) -> dict:
        return {"tuple_count": self.tuple_count, "transitive_count": self.transitive_count,
                "class_count": self.class_count, "weighted_count": format_rational(self.weighted_count),
                "per_class_aut": list(self.per_class_aut)}


def _general(datum) -> GeneralDatum:
    if isinstance(datum, SpecialDatum):
        return datum.general()
    if isinstance(datum, GeneralDatum):
        return datum
    raise DatumError("expected a SpecialDatum or GeneralDatum")


def count_tuples(datum, budget: SearchBudget | None = None, *, workers: int = 1) -> CountReport:
    """
    Exact counts of tuples with the datum's cycle types and product identity.

    The first factor is fixed to a class representative and the counts are
    scaled by the class size. Transitive tuples are sorted into orbits under
    simultaneous conjugation by a canonical relabelling; the number of
    relabellings that reach the canonical form is the centralizer order.
    Raises :class:`~branchdata.search.SearchExhausted` past the budget.
    """
    budget = budget or COUNT_BUDGET
    gd = _general(datum)
    d, parts = gd.d, [tuple(p) for p in gd.partitions]
    if not parts:
        raise DatumError("datum has no partitions")
    if d > budget.max_degree:
        raise SearchExhausted("degree %d exceeds the counting budget %d" % (d, budget.max_degree))
    if len(parts) == 1:
        trivial = all(a == 1 for a in parts[0])
        one = trivial and d == 1
        return CountReport(int(trivial), int(one), int(one), Fraction(int(one)), (1,) if one else ())
    order = search_order(parts)
    ordered = [parts[i] for i in order]
    results = run_enumeration(ordered, collect=True, stop_first=False,
                              max_nodes=budget.max_nodes, workers=workers)
    raw_tuples = raw_transitive = 0
    classes = {}
    for tuples, transitive, found, _, _, exhausted in results:
        if exhausted:
            raise SearchExhausted("node budget of %d exhausted" % budget.max_nodes)
        raw_tuples += tuples
        raw_transitive += transitive
        classes.update(found)
    scale = class_size(ordered[0])
    auts = tuple(sorted(classes.values()))
    # orbit-stabilizer: each class meets the fixed-first slice in |Z(first)| / aut tuples
    centralizer_first = z_value(ordered[0])
    if sum(centralizer_first // a for a in auts) != raw_transitive:
        raise AssertionError("class sizes do not add up to the transitive count")
    weighted = Fraction(raw_transitive * scale, math.factorial(d))
    if weighted != sum((Fraction(1, a) for a in auts), Fraction(0)):
        raise AssertionError("weighted count disagrees with the automorphism sum")
    return CountReport(raw_tuples * scale, raw_transitive * scale, len(auts), weighted, auts)


def _canonical(perms, n):
    # pure-Python canonical form with tuple keys (any degree)
    best = None
    aut = 0
    for start in range(n):
        label = [-1] * n
        label[start] = 0
        order = [start]
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for p in perms:
                y = p[x]
                if label[y] < 0:
                    label[y] = len(order)
                    order.append(y)
        key = tuple(label[p[order[i]]] for p in perms for i in range(n))
        if best is None or key < best:
            best, aut = key, 1
        elif key == best:
            aut += 1
    return best, aut


def centralizer_order(gens: Sequence[Permutation], d: int | None = None) -> int:
    """
    Order of the centralizer of ``gens`` in ``S_d``.

    Orbits of the same isomorphism type can be permuted, and each orbit
    contributes its own automorphisms: ``prod_t n_t! * aut_t ** n_t``.

    >>> from branchdata.perm import Permutation as P
    >>> centralizer_order([P.parse("(1,2,3)", 3)]), centralizer_order([], 3)
    (3, 6)
    """
    if gens:
        d = gens[0].degree
        if any(g.degree != d for g in gens):
            raise DatumError("generators have different degrees")
    elif d is None:
        raise DatumError("degree required for an empty generator list")
    imgs = [g._img for g in gens]
    roots = _orbit_roots(imgs, d)
    groups = {}
    for x, r in enumerate(roots):
        groups.setdefault(r, []).append(x)
    types = {}
    for pts in groups.values():
        pos = {x: i for i, x in enumerate(pts)}
        local = [[pos[img[x]] for x in pts] for img in imgs]
        key, aut = _canonical(local, len(pts))
        n, _ = types.get(key, (0, aut))
        types[key] = (n + 1, aut)
    out = 1
    for n, aut in types.values():
        out *= math.factorial(n) * aut**n
    return out


# ---------------------------------------------------------------------------
# characters


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    n = len(lam)
    beta = [lam[i] + n - 1 - i for i in range(n)]
    bset = set(beta)
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in bset:
            continue
        between = sum(1 for c in beta if t < c < b)
        new = sorted((bset - {b}) | {t}, reverse=True)
        shape = tuple(x for x in (c - (n - 1 - i) for i, c in enumerate(new)) if x > 0)
        total += (-1) ** between * _mn(shape, rest)
    return total


@dataclass(frozen=True)
class CharacterQuery:
    lam: CyclePartition
    mu: CyclePartition

    def __init__(self, lam, mu):
        lam = lam if isinstance(lam, CyclePartition) else CyclePartition(lam)
        mu = mu if isinstance(mu, CyclePartition) else CyclePartition(mu)
        if lam.total != mu.total:
            raise DatumError("lambda and mu must partition the same d")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)


def character_value(lam, mu=None) -> int:
    """
    The irreducible character ``chi_lam`` at the class ``mu``, by the
    Murnaghan-Nakayama rule on beta-sets.

    >>> character_value((1, 1), (2,)), character_value((2, 1), (1, 1, 1))
    (-1, 2)
    """
    q = lam if isinstance(lam, CharacterQuery) else CharacterQuery(lam, mu)
    return _mn(tuple(q.lam), tuple(q.mu))


def frobenius_disconnected(datum, max_degree: int = CHARACTER_MAX_DEGREE) -> Fraction:
    """
    ``(1/d!) * (prod |C_i| / d!) * sum_lam prod_i chi_lam(C_i) / chi_lam(1)^(k-2)``.

    The class-sum formula counts tuples with product identity (connected or
    not); dividing by ``d!`` gives the automorphism-weighted count, so the
    result times ``d!`` equals ``count_tuples(datum).tuple_count``.
    """
    gd = _general(datum)
    d, parts = gd.d, [tuple(p) for p in gd.partitions]
    if not parts:
        raise DatumError("datum has no partitions")
    if d > max_degree:
        raise SearchExhausted("degree %d exceeds the character budget %d" % (d, max_degree))
    k = len(parts)
    fact = math.factorial(d)
    total = Fraction(0)
    ones = (1,) * d
    for lam in partitions(d):
        dim = _mn(lam, ones)
        term = Fraction(1)
        for c in parts:
            term *= _mn(lam, c)
        total += term / Fraction(dim) ** (k - 2)
    sizes = 1
    for c in parts:
        sizes *= class_size(c)
    tuples = total * sizes / fact
    if tuples.denominator != 1:
        raise AssertionError("character sum is not an integer tuple count")
    return tuples / fact
