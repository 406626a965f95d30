"""
Constructive realization of special branch data.

For genus at least one every datum is realized by explicit constructions;
the recursion lowers the number of single-cycle branch points and the
genus until it reaches three-point data (handled in :mod:`branchdata.construct`)
or the two-point genus-one base. Genus-zero data go to the bounded search.

EXAMPLES::

    >>> from branchdata.data import SpecialDatum
    >>> realize(SpecialDatum(3, [3], [3], [2])).cycle_text()
    '(1,2,3) (1,2,3) (1,2,3)'
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from . import construct as _c
from .construct import ConstructionDefect, LemmaTwoCycleParams, compose, invert
from .data import (Constellation, CyclePartition, DatumError, RealizabilityVerdict, SpecialDatum,
                   decide_realizable, verify_constellation)
from .perm import Permutation, cycle_lengths
from .search import SearchBudget, SearchExhausted, reorder, search_realize, search_tuple


class NotRealizable(Exception):
    """The datum fails the realizability criterion; ``verdict`` says why."""

    def __init__(self, verdict: RealizabilityVerdict):
        super().__init__("not realizable: %s (v=%d)" % (verdict.reason.value, verdict.v))
        self.verdict = verdict


@dataclass
class RealizeStats:
    """Counters filled in by :func:`realize` and :func:`realize_full_cycle`."""

    constructed: int = 0
    searched: int = 0
    search_fallbacks: int = 0


def _perm(img):
    return Permutation._from_zero_based(img)


def _parts(x):
    return x if isinstance(x, CyclePartition) else CyclePartition(x)


# ---------------------------------------------------------------------------
# public wrappers over the three-point constructions


def lemma_two_cycles(s, r=None, d=None):
    """
    An ``s``-cycle and an ``r``-cycle with product ``(1, 2, ..., d)``.

    Accepts ``(s, r, d)`` or a :class:`LemmaTwoCycleParams`.

    >>> a, b = lemma_two_cycles(3, 3, 5)
    >>> a.cycle_text(), b.cycle_text()
    ('(1,4,5)', '(1,2,3)')
    """
    if isinstance(s, LemmaTwoCycleParams):
        s, r, d = s
    s1, s2 = _c.lemma_two_cycles_lists(s, r, d)
    return _perm(s1), _perm(s2)


def realize_full_cycle(A, B, *, search_small=True, stats: RealizeStats | None = None):
    """
    ``(tau1, tau2)`` of types ``A`` and ``B`` whose product is a ``d``-cycle.

    When one side has no part of size three or more and ``d <= 6`` the pair
    comes from the search (first solution in lexicographic order); this is
    counted in ``stats.search_fallbacks``. Pass ``search_small=False`` to
    always use the construction.

    >>> t1, t2 = realize_full_cycle([2, 2], [4])
    >>> t1.cycle_text(), t2.cycle_text()
    ('(1,2)(3,4)', '(1,3,2,4)')
    """
    A, B = _parts(A), _parts(B)
    if A.total != B.total:
        raise DatumError("A and B must have the same total")
    if not _c.full_cycle_ok(A, B):
        raise DatumError("A=%s, B=%s with a full cycle violates the Riemann-Hurwitz bound or parity"
                         % (list(A), list(B)))
    d = A.total
    if search_small and len(A) + len(B) > 2 and (A[0] < 3 or B[0] < 3) and d <= 6:
        sol = search_tuple([A, B, (d,)], reorder_factors=False)
        if stats is not None:
            stats.search_fallbacks += 1
        return _perm(sol[0]), _perm(sol[1])
    al, be = _c.full_cycle_lists(A, B)
    return _perm(al), _perm(be)


def realize_ell1(A, B, m) -> Constellation:
    """
    Constellation ``(tau1, tau2, sigma)`` for ``(A, B, (m+1, 1, ..., 1))``
    with ``m = p + q - 2 + 2g`` and ``g >= 1``.
    """
    A, B = _parts(A), _parts(B)
    datum = SpecialDatum(A.total, A, B, [m])
    if m + 2 - len(A) - len(B) < 2 or (m - len(A) - len(B)) % 2:
        raise DatumError("realize_ell1 needs genus >= 1, got %s" % datum)
    return _finish(datum, list(_c.ell1_lists(A, B, m)))


def realize_base_ell2(A, B, m) -> Constellation:
    """
    The closed-form genus-one constellation for ``p = q = m1 = m2 = m``.

    >>> realize_base_ell2([2, 2], [2, 2], 2).cycle_text()
    '(1,2)(3,4) (1,2)(3,4) (1,2,3) (1,3,2)'
    """
    A, B = _parts(A), _parts(B)
    if not len(A) == len(B) == m:
        raise DatumError("realize_base_ell2 needs p = q = m, got p=%d q=%d m=%d" % (len(A), len(B), m))
    datum = SpecialDatum(A.total, A, B, [m, m])
    return _finish(datum, _base_ell2(tuple(A), tuple(B)))


def merge_parts_reduce(A, B, M) -> Constellation:
    """
    Genus-one constellation for ``sum(M) = p + q`` with at least two
    single-cycle points, by merging the largest ``m_min + 1`` parts of ``A``,
    realizing the smaller datum and splitting the merged cycle again.
    """
    A, B = _parts(A), _parts(B)
    datum = SpecialDatum(A.total, A, B, M)
    if datum.ell < 2 or sum(datum.M) != len(A) + len(B):
        raise DatumError("merge_parts_reduce needs l >= 2 and sum(M) = p + q, got %s" % datum)
    return _finish(datum, _genus_one(tuple(A), tuple(B), datum.M))


def _finish(datum, perms):
    c = Constellation(datum.d, [_perm(p) for p in perms])
    check = verify_constellation(datum, c)
    if not check:
        raise ConstructionDefect("constructed tuple for %s failed %s: %s"
                                 % (datum, check.failure, check.detail))
    return c


# ---------------------------------------------------------------------------
# tuple-level operations


def _adjoint(perms):
    return [invert(perms[1]), invert(perms[0])] + [invert(p) for p in reversed(perms[2:])]


def swap_adjoint(c: Constellation) -> Constellation:
    """
    ``(tau2^-1, tau1^-1, sigma_l^-1, ..., sigma_1^-1)``: still a constellation,
    with the types of the two front slots exchanged.
    """
    out = _adjoint([list(p._img) for p in c.perms])
    return Constellation(c.d, [_perm(p) for p in out])


class _Sigma:
    """A single-cycle factor with its support, for repeated absorption."""

    __slots__ = ("buf", "supp", "least", "ptr")

    def __init__(self, img):
        self.buf = _c.Buf(img)
        self.supp = {x for x, y in enumerate(self.buf.img) if x != y}
        self.least = min(self.supp) if self.supp else None
        self.ptr = 0

    def add(self, x):
        self.supp.add(x)
        if self.least is None or x < self.least:
            self.least = x

    def outside(self):
        while self.ptr in self.supp:
            self.ptr += 1
        return self.ptr


class _Pair:
    """Support bookkeeping for two adjacent factors ``(a, b)``."""

    def __init__(self, a, b):
        self.a, self.b = a, b
        self.inter = len(a.supp & b.supp)
        self.a_only = sorted(a.supp - b.supp)
        self.b_only = sorted(b.supp - a.supp)

    def _top(self, heap, other):
        while heap and heap[0] in other.supp:
            heapq.heappop(heap)
        return heap[0]

    def choose(self):
        a, b = self.a, self.b
        na, nb = len(a.supp), len(b.supp)
        if na == 0 and nb == 0:
            return 0, 1
        if nb == 0:
            return a.least, a.outside()
        if na == 0:
            return b.least, b.outside()
        if self.inter == na:
            return a.least, b.outside()
        if self.inter == nb:
            return b.least, a.outside()
        return self._top(self.a_only, b), self._top(self.b_only, a)

    def absorb(self):
        x, y = self.choose()
        a, b = self.a, self.b
        a.buf.rmul([x, y])
        b.buf.lmul([x, y])
        for pt in (x, y):
            if pt not in a.supp:
                a.add(pt)
                if pt in b.supp:
                    self.inter += 1
                else:
                    heapq.heappush(self.a_only, pt)
            if pt not in b.supp:
                b.add(pt)
                if pt in a.supp:
                    self.inter += 1
                else:
                    heapq.heappush(self.b_only, pt)
        return x, y


def absorb_transposition(c: Constellation, i: int, j: int | None = None) -> Constellation:
    """
    Grow the adjacent single-cycle factors ``sigma_i`` and ``sigma_j``
    (1-based, ``j = i + 1``) by one point each, replacing them with
    ``sigma_i (x y)`` and ``(x y) sigma_j``. The product is unchanged.

    An identity factor becomes the bare transposition ``(x y)``.
    """
    j = i + 1 if j is None else j
    ell = len(c.perms) - 2
    if j != i + 1 or not 1 <= i < j <= ell:
        raise DatumError("need adjacent sigma indices 1 <= i < j = i + 1 <= %d, got %d, %d" % (ell, i, j))
    perms = [list(p._img) for p in c.perms]
    sa, sb = _Sigma(perms[i + 1]), _Sigma(perms[j + 1])
    for s in (sa, sb):
        lens = [n for n in cycle_lengths(s.buf.img) if n > 1]
        if len(lens) > 1:
            raise DatumError("sigma factors must be single cycles")
    before = (len(sa.supp), len(sb.supp))
    _Pair(sa, sb).absorb()
    grew = lambda n0, s: (n0 + 1 if n0 else 2) == len(s.supp)
    if not (grew(before[0], sa) and grew(before[1], sb)):
        raise ConstructionDefect("absorption did not grow both cycles by one")
    perms[i + 1], perms[j + 1] = sa.buf.img, sb.buf.img
    return Constellation(c.d, [_perm(p) for p in perms])


# ---------------------------------------------------------------------------
# the induction on l and the genus


def _genus(A, B, M):
    return (sum(M) + 2 - len(A) - len(B)) // 2


def _decreasing_order(M):
    return sorted(range(len(M)), key=lambda i: -M[i])


def _core(A, B, M):
    """0-based tuple ``[tau1, tau2, sigma_1, ...]`` for a datum of genus >= 1."""
    if len(M) == 1:
        return list(_c.ell1_lists(A, B, M[0]))
    if _genus(A, B, M) == 1:
        return _genus_one(A, B, M)
    return _higher_genus(A, B, M)


def _with_labels(perms, labels):
    # braid the sigma slots into label order; tau1, tau2 stay put
    return perms[:2] + reorder(perms[2:], labels)


def _base_ell2(A, B):
    d = sum(A)
    full = [(x + 1) % d for x in range(d)]
    full_inv = invert(full)

    def block_cycle_inv(parts):
        # (s_p, ..., s_2, s_1) on the block starts s_1 = 0, s_2 = a_1, ...
        starts = [0]
        for a in parts[:-1]:
            starts.append(starts[-1] + a)
        img = list(range(d))
        for k in range(len(starts)):
            img[starts[k]] = starts[k - 1]
        return img

    pa_inv = block_cycle_inv(A)
    pb = invert(block_cycle_inv(B))
    swap01 = list(range(d))
    swap01[0], swap01[1] = 1, 0
    tau1 = compose(pa_inv, full)
    tau2 = compose(full_inv, pb)
    sigma1 = invert(compose(swap01, pb))
    sigma2 = invert(compose(pa_inv, swap01))
    return [tau1, tau2, sigma1, sigma2]


def _genus_one(A, B, M):
    if len(B) > len(A):
        return _adjoint(_genus_one(B, A, tuple(reversed(M))))
    order = _decreasing_order(M)
    ms = [M[i] for i in order]
    p, q = len(A), len(B)
    if len(ms) == 2 and p == q == ms[0] == ms[1]:
        return _with_labels(_base_ell2(A, B), order)
    m = ms[-1]
    _c._check(p > m, "merge needs more than %d parts, A=%s", m, A)
    block = A[:m + 1]
    merged = sum(block)
    smaller = tuple(sorted((merged,) + tuple(A[m + 1:]), reverse=True))
    sub = _core(smaller, B, tuple(ms[:-1]))
    return _with_labels(_split(sub, block, merged), order)


def _split(sub, block, merged):
    """Conjugate so a ``merged``-cycle of tau1 is ``(0, 1, ...)`` and cut it into ``block``."""
    tau = sub[0]
    d = len(tau)
    seen = bytearray(d)
    cyc = None
    for x in range(d):
        if seen[x]:
            continue
        pts = _c._cycle_points(tau, x)
        for y in pts:
            seen[y] = 1
        if len(pts) == merged:
            cyc = pts
            break
    _c._check(cyc is not None, "no cycle of length %d to split", merged)
    relabel = [0] * d
    inside = set(cyc)
    for i, y in enumerate(cyc):
        relabel[y] = i
    nxt = merged
    for y in range(d):
        if y not in inside:
            relabel[y] = nxt
            nxt += 1
    out = []
    for p in sub:
        img = [0] * d
        for x, y in enumerate(p):
            img[relabel[x]] = relabel[y]
        out.append(img)
    starts = [0]
    for a in block[:-1]:
        starts.append(starts[-1] + a)
    last_inv = list(range(d))
    for k in range(len(starts)):
        last_inv[starts[k]] = starts[k - 1]
    out[0] = compose(last_inv, out[0])
    out.append(invert(last_inv))
    return out


def _higher_genus(A, B, M):
    """
    Lower the two leading entries of ``M`` together until the genus is one
    or a single entry is left, realize that, then regrow both factors one
    transposition at a time.
    """
    order = _decreasing_order(M)
    cur = [M[i] for i in order]
    excess = 2 * _genus(A, B, M) - 2
    hist = []
    while excess > 0 and len(cur) > 1:
        cur[0] -= 1
        cur[1] -= 1
        da, db = cur[0] == 0, cur[1] == 0
        if db:
            del cur[1]
        if da:
            del cur[0]
        hist.append((da, db))
        excess -= 2
    perms = _core(A, B, tuple(cur))
    d = len(perms[0])
    sigmas = [_Sigma(p) for p in perms[2:]]
    pair = None
    for da, db in reversed(hist):
        if da:
            sigmas.insert(0, _Sigma(list(range(d))))
            pair = None
        if db:
            sigmas.insert(1, _Sigma(list(range(d))))
            pair = None
        if pair is None or pair.a is not sigmas[0] or pair.b is not sigmas[1]:
            pair = _Pair(sigmas[0], sigmas[1])
        pair.absorb()
    perms = perms[:2] + [s.buf.img for s in sigmas]
    return _with_labels(perms, order)


def realize(datum: SpecialDatum, budget: SearchBudget | None = None,
            stats: RealizeStats | None = None) -> Constellation:
    """
    A verified constellation for ``datum``.

    Raises :class:`NotRealizable` when the criterion fails and
    :class:`~branchdata.search.SearchExhausted` when a genus-zero search runs
    out of budget. Genus-zero data are realized by search; everything else
    is constructed.
    """
    verdict = decide_realizable(datum)
    if not verdict.realizable:
        raise NotRealizable(verdict)
    if verdict.genus == 0:
        c = search_realize(datum, budget)
        if stats is not None:
            stats.searched += 1
        if c is None:
            raise ConstructionDefect("search found no realization of %s although the criterion holds"
                                     % datum)
        return _finish(datum, [list(p._img) for p in c.perms])
    perms = _core(tuple(datum.A), tuple(datum.B), datum.M)
    if stats is not None:
        stats.constructed += 1
    return _finish(datum, perms)


__all__ = ["NotRealizable", "SearchExhausted", "ConstructionDefect", "RealizeStats", "SearchBudget",
           "LemmaTwoCycleParams", "lemma_two_cycles", "realize_full_cycle", "realize_ell1",
           "realize_base_ell2", "merge_parts_reduce", "absorb_transposition", "swap_adjoint",
           "search_realize", "realize"]
