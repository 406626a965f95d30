"""
Conjugacy-class candidate tables and bounded depth-first search for
permutation tuples with prescribed cycle types and product identity.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .data import Constellation, DatumError, GeneralDatum, SpecialDatum
from .perm import Permutation

# Largest conjugacy class the search will materialise.
MAX_CLASS_SIZE = 2_000_000


class SearchExhausted(RuntimeError):
    """The search hit its degree or node budget before reaching a verdict."""


@dataclass(frozen=True)
class SearchBudget:
    max_degree: int = 12
    max_nodes: int = 10**7

    def __post_init__(self):
        if self.max_degree < 1 or self.max_nodes < 1:
            raise ValueError("search budget values must be positive")


def class_size(part) -> int:
    """Number of permutations of cycle type ``part``: ``d! / z_part``."""
    return math.factorial(sum(part)) // z_value(part)


def z_value(part) -> int:
    """``prod_i i^{k_i} k_i!`` where ``k_i`` counts parts equal to ``i``."""
    out = 1
    counts = {}
    for a in part:
        counts[a] = counts.get(a, 0) + 1
    for a, k in counts.items():
        out *= a**k * math.factorial(k)
    return out


def canonical_rep(part) -> list:
    """
    0-based image table of the block representative of a class: cycles on
    consecutive points, longest first.

    >>> canonical_rep((2, 2))
    [1, 0, 3, 2]
    """
    img = []
    start = 0
    for a in sorted(part, reverse=True):
        img.extend(range(start + 1, start + a))
        img.append(start)
        start += a
    return img


@lru_cache(maxsize=64)
def class_elements(part: tuple) -> np.ndarray:
    """
    All permutations of cycle type ``part`` as rows of 0-based images,
    sorted lexicographically.
    """
    part = tuple(sorted(part, reverse=True))
    d = sum(part)
    size = class_size(part)
    if size > MAX_CLASS_SIZE:
        raise SearchExhausted("class %s has %d elements, above the limit %d"
                              % (list(part), size, MAX_CLASS_SIZE))
    out = np.empty((size, d), dtype=np.int32)
    img = list(range(d))
    used = [False] * d
    counts = {}
    for a in part:
        counts[a] = counts.get(a, 0) + 1
    lengths = sorted(counts)
    row = 0

    def place(cycle_left):
        # choose the cycle through the smallest unused point
        nonlocal row
        if cycle_left == 0:
            out[row] = img
            row += 1
            return
        x = used.index(False)
        for L in lengths:
            if counts[L] == 0:
                continue
            counts[L] -= 1
            used[x] = True
            grow([x], L, cycle_left)
            used[x] = False
            counts[L] += 1

    def grow(cyc, L, cycle_left):
        if len(cyc) == L:
            for i, y in enumerate(cyc):
                img[y] = cyc[(i + 1) % L]
            place(cycle_left - 1)
            for y in cyc:
                img[y] = y
            return
        for y in range(cyc[0] + 1, d):
            if not used[y]:
                used[y] = True
                cyc.append(y)
                grow(cyc, L, cycle_left)
                cyc.pop()
                used[y] = False

    place(len(part))
    assert row == size
    order = np.lexsort(out.T[::-1])
    out = out[order]
    out.setflags(write=False)
    return out


def _rows_for(backend, arr):
    # the pure-Python kernel is much faster on nested lists than on numpy rows
    return arr if backend.BACKEND == "cython" else arr.tolist()


def prepare(parts, backend=None):
    """
    Build the kernel arguments for the factor order ``parts``: the first
    factor is fixed to its block representative, the middle ones range over
    their classes and the last is forced by the product.
    """
    backend = backend or kernels.get_backend()
    d = sum(parts[0])
    first = canonical_rep(parts[0])
    mids = [class_elements(tuple(p)) for p in parts[1:-1]]
    offsets = [0]
    for arr in mids:
        offsets.append(offsets[-1] + len(arr))
    if mids:
        cands = np.concatenate(mids)
    else:
        cands = np.zeros((0, d), dtype=np.int32)
    branch = [d - len(p) for p in parts]
    rem = [0] * (len(mids) + 1)
    acc = branch[-1]
    rem[len(mids)] = acc
    for j in range(len(mids) - 1, -1, -1):
        acc += branch[j + 1]
        rem[j] = acc
    total = sum(branch)
    return dict(d=d, first=first, cands=_rows_for(backend, cands), offsets=offsets,
                last_type=sorted(parts[-1], reverse=True), rem=rem,
                genus_cut=(total, total + 2 - 2 * d))


def _run_chunk(args):
    backend_name, parts, kw = args
    backend = kernels.get_backend(backend_name)
    prep = prepare(parts, backend)
    kw = dict(kw)
    if kw.pop("prune_orbits", False):
        kw["genus_cut"] = prep["genus_cut"]
    return backend.enumerate_tuples(prep["d"], prep["first"], prep["cands"], prep["offsets"],
                                    prep["last_type"], prep["rem"], **kw)


def chunk_bounds(n: int, chunks: int) -> list:
    """Split ``range(n)`` into at most ``chunks`` contiguous, ordered pieces."""
    chunks = max(1, min(chunks, n)) if n else 1
    step, extra = divmod(n, chunks)
    out, lo = [], 0
    for i in range(chunks):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def run_enumeration(parts, *, collect, stop_first, max_nodes, workers=1, prune_orbits=False):
    """
    Run the kernel over ``parts`` (cycle types in product order), split over
    the first middle factor when ``workers > 1``. Results come back in
    chunk order, so merged output does not depend on the worker count.

    ``prune_orbits`` cuts prefixes that can no longer become transitive; the
    tuple counts are then meaningless, so counting leaves it off.
    """
    backend = kernels.get_backend()
    parts = [tuple(p) for p in parts]
    nfirst = len(class_elements(parts[1])) if len(parts) > 2 else 1
    bounds = chunk_bounds(nfirst, workers) if workers > 1 else [(0, nfirst)]
    kw_list = [dict(collect=collect, stop_first=stop_first, max_nodes=max_nodes, lo=lo, hi=hi,
                    prune_orbits=prune_orbits) for lo, hi in bounds]
    jobs = [(backend.BACKEND, parts, kw) for kw in kw_list]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_chunk, jobs))
    else:
        results = []
        for job in jobs:
            res = _run_chunk(job)
            results.append(res)
            if stop_first and res[3] is not None:
                break
    return results


def _braid(perms, j):
    """Hurwitz move on slots ``j, j+1``: ``(g, h) -> (h, h^-1 g h)``."""
    g, h = perms[j], perms[j + 1]
    hi = [0] * len(h)
    for x, y in enumerate(h):
        hi[y] = x
    perms[j] = h
    perms[j + 1] = [hi[g[h[x]]] for x in range(len(h))]


def reorder(perms, labels):
    """
    Braid the tuple until ``labels`` is sorted ascending. Each adjacent swap
    keeps the product and moves a factor's conjugacy class one slot, so the
    result carries the cycle types in label order.
    """
    perms = list(perms)
    labels = list(labels)
    n = len(labels)
    for i in range(n):
        for j in range(n - 1 - i):
            if labels[j] > labels[j + 1]:
                _braid(perms, j)
                labels[j], labels[j + 1] = labels[j + 1], labels[j]
    return perms


def search_order(parts) -> list:
    """
    Factor order used by the search: the largest class fixed first, the
    second largest forced last, the rest between in their original order.
    """
    idx = list(range(len(parts)))
    if len(parts) <= 2:
        return idx
    by_size = sorted(idx, key=lambda i: (-class_size(parts[i]), i))
    first, last = by_size[0], by_size[1]
    middle = [i for i in idx if i not in (first, last)]
    return [first] + middle + [last]


def search_tuple(parts, budget: SearchBudget | None = None, *, reorder_factors=True, workers=1):
    """
    First transitive tuple (0-based image lists, in the order of ``parts``)
    with the given cycle types and product identity, or ``None`` if none
    exists. Raises :class:`SearchExhausted` when the budget runs out.
    """
    budget = budget or SearchBudget()
    parts = [tuple(sorted(p, reverse=True)) for p in parts]
    d = sum(parts[0])
    if d > budget.max_degree:
        raise SearchExhausted("degree %d exceeds the search budget %d" % (d, budget.max_degree))
    if len(parts) == 1:
        return [list(range(d))] if d == 1 else None
    order = search_order(parts) if reorder_factors else list(range(len(parts)))
    ordered = [parts[i] for i in order]
    results = run_enumeration(ordered, collect=False, stop_first=True,
                              max_nodes=budget.max_nodes, workers=workers, prune_orbits=True)
    for res in results:
        if res[3] is not None:
            return _assemble(ordered, order, res[3])
        if res[5]:
            raise SearchExhausted("node budget of %d exhausted" % budget.max_nodes)
    return None


def _assemble(ordered, order, solution):
    first = canonical_rep(ordered[0])
    perms = [first]
    for j, c in enumerate(solution):
        perms.append([int(y) for y in class_elements(ordered[j + 1])[c - _offset(ordered, j)]])
    acc = list(range(len(first)))
    for p in perms:
        acc = [acc[y] for y in p]
    last = [0] * len(acc)
    for x, y in enumerate(acc):
        last[y] = x
    perms.append(last)
    return reorder(perms, order)


def _offset(ordered, j):
    return sum(len(class_elements(ordered[i + 1])) for i in range(j))


def search_realize(datum, budget: SearchBudget | None = None, *, workers=1):
    """
    Exhaustive search for a constellation of ``datum`` (special or general).

    Returns a :class:`Constellation` in the datum's factor order, or ``None``
    when no transitive tuple exists. Raises :class:`SearchExhausted` when
    the degree or node budget is exceeded.
    """
    if isinstance(datum, SpecialDatum):
        parts = datum.partitions()
    elif isinstance(datum, GeneralDatum):
        parts = list(datum.partitions)
    else:
        raise DatumError("expected a SpecialDatum or GeneralDatum")
    if not parts:
        raise DatumError("datum has no partitions")
    sol = search_tuple(parts, budget, workers=workers)
    if sol is None:
        return None
    return Constellation(datum.d, [Permutation._from_zero_based(p) for p in sol])


__all__ = ["SearchBudget", "SearchExhausted", "search_realize", "search_tuple", "class_elements",
           "class_size", "canonical_rep", "z_value"]
