"""
Explicit constructions for three-point data.

Everything here works on 0-based image lists. The public wrappers in
:mod:`branchdata.realizer` convert to :class:`~branchdata.perm.Permutation`.

The three-partition routine keeps a state ``(alpha, beta, s)`` with
``alpha * beta = s``; the constellation it stands for is
``(alpha, beta, s^-1)``.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right, insort
from typing import NamedTuple

from .data import DatumError


class ConstructionDefect(AssertionError):
    """An internal invariant of a construction failed. This is a bug."""


def _check(cond, msg, *args):
    if not cond:
        raise ConstructionDefect(msg % args if args else msg)


class Buf:
    """A mutable permutation with its inverse, for in-place cycle products."""

    __slots__ = ("img", "inv")

    def __init__(self, img, inv=None):
        self.img = list(img)
        if inv is None:
            inv = [0] * len(self.img)
            for x, y in enumerate(self.img):
                inv[y] = x
        self.inv = list(inv)

    def __len__(self):
        return len(self.img)

    def grow(self, n):
        """Append ``n`` fixed points."""
        k = len(self.img)
        self.img.extend(range(k, k + n))
        self.inv.extend(range(k, k + n))

    def invert(self):
        self.img, self.inv = self.inv, self.img

    def lmul(self, cyc):
        """Replace ``self`` by ``cyc * self`` (the cycle acts last)."""
        img, inv = self.img, self.inv
        n = len(cyc)
        pre = [inv[s] for s in cyc]
        for i in range(n):
            t, v = pre[i], cyc[(i + 1) % n]
            img[t] = v
            inv[v] = t

    def rmul(self, cyc):
        """Replace ``self`` by ``self * cyc`` (the cycle acts first)."""
        img, inv = self.img, self.inv
        n = len(cyc)
        old = [img[cyc[(i + 1) % n]] for i in range(n)]
        for i in range(n):
            img[cyc[i]] = old[i]
            inv[old[i]] = cyc[i]

    def moves(self, x):
        return self.img[x] != x


def compose(p, q):
    return [p[y] for y in q]


def invert(p):
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return out


def cycle_reps(img) -> dict:
    """Map cycle length to the set of smallest points of cycles of that length."""
    seen = bytearray(len(img))
    out = {}
    for x in range(len(img)):
        if seen[x]:
            continue
        n = 0
        y = x
        while not seen[y]:
            seen[y] = 1
            y = img[y]
            n += 1
        out.setdefault(n, set()).add(x)
    return out


def _cycle_points(img, x):
    out = [x]
    y = img[x]
    while y != x:
        out.append(y)
        y = img[y]
    return out


# ---------------------------------------------------------------------------
# two-cycle lemma


class LemmaTwoCycleParams(NamedTuple):
    s: int
    r: int
    d: int

    def validate(self):
        s, r, d = self
        if not (1 <= s <= d and 1 <= r <= d):
            raise DatumError("need 1 <= s, r <= d, got s=%d r=%d d=%d" % (s, r, d))
        if s + r < d + 1 or (s + r - d - 1) % 2:
            raise DatumError("need s + r >= d + 1 and s + r = d + 1 mod 2, got s=%d r=%d d=%d"
                             % (s, r, d))
        return self


def lemma_two_cycles_lists(s, r, d):
    """
    ``(sigma1, sigma2)``: an ``s``-cycle and an ``r``-cycle whose product
    is ``(0, 1, ..., d-1)``, from the closed formulas
    ``sigma2^-1 = (r-1, ..., 1, 0)(2k, ..., 1, 0)`` and
    ``sigma1 = (0, 1, ..., d-1) sigma2^-1`` with ``2k = s + r - d - 1``.
    """
    LemmaTwoCycleParams(s, r, d).validate()
    k = (s + r - d - 1) // 2
    inner = list(range(d))            # (2k, 2k-1, ..., 0)
    for x in range(1, 2 * k + 1):
        inner[x] = x - 1
    inner[0] = 2 * k
    outer = list(range(d))            # (r-1, ..., 1, 0)
    for x in range(1, r):
        outer[x] = x - 1
    outer[0] = r - 1
    s2_inv = compose(outer, inner)
    full = [(x + 1) % d for x in range(d)]
    return compose(full, s2_inv), invert(s2_inv)


# ---------------------------------------------------------------------------
# full-cycle realizations: tau1 of type A, tau2 of type B, tau1*tau2 a d-cycle

_M1, _M2, _M2_MIRROR = 0, 1, 2


def full_cycle_ok(A, B) -> bool:
    d, p, q = sum(A), len(A), len(B)
    return sum(B) == d and p + q <= d + 1 and (d + 1 - p - q) % 2 == 0


def _tree(A, B):
    """
    Rotation systems of a bipartite plane tree with white degrees ``A`` and
    black degrees ``B`` (``len(A) + len(B) = sum(A) + 1``). Edges are
    labelled in creation order; the rotation at a vertex follows that order.
    """
    white, black = list(A), list(B)
    ew = [[] for _ in white]
    eb = [[] for _ in black]
    leaves_w = [i for i in range(len(white) - 1, -1, -1) if white[i] == 1]
    hubs_w = [i for i in range(len(white) - 1, -1, -1) if white[i] > 1]
    leaves_b = [i for i in range(len(black) - 1, -1, -1) if black[i] == 1]
    hubs_b = [i for i in range(len(black) - 1, -1, -1) if black[i] > 1]
    n = sum(white)
    e = 0
    while e < n - 1:
        if leaves_w and hubs_b:
            w, b = leaves_w.pop(), hubs_b[-1]
            black[b] -= 1
            if black[b] == 1:
                hubs_b.pop()
                leaves_b.append(b)
            white[w] = 0
        else:
            _check(leaves_b and hubs_w, "no bipartite tree for degrees %s / %s", A, B)
            w, b = hubs_w[-1], leaves_b.pop()
            white[w] -= 1
            if white[w] == 1:
                hubs_w.pop()
                leaves_w.append(w)
            black[b] = 0
        ew[w].append(e)
        eb[b].append(e)
        e += 1
    _check(len(leaves_w) == 1 and len(leaves_b) == 1, "tree construction left %s / %s", white, black)
    ew[leaves_w[0]].append(e)
    eb[leaves_b[0]].append(e)

    def rotation(groups):
        img = [0] * n
        for g in groups:
            for i, x in enumerate(g):
                img[x] = g[(i + 1) % len(g)]
        return img

    ra, rb = {}, {}
    for g in ew:
        ra.setdefault(len(g), []).append(g[0])
    for g in eb:
        rb.setdefault(len(g), []).append(g[0])
    return rotation(ew), rotation(eb), ra, rb


def full_cycle_lists(A, B):
    """
    Constructive full-cycle realization. Handles are added two points at a
    time on top of a plane tree; each move multiplies the product cycle on
    the left and right by small cycles through the new points, chosen so the
    product stays a single cycle.
    """
    A, B = list(A), list(B)
    d, p, q = sum(A), len(A), len(B)
    if not full_cycle_ok(A, B):
        raise DatumError("no full-cycle realization for A=%s, B=%s" % (A, B))
    if p == 1 and q == 1:
        s1, s2 = lemma_two_cycles_lists(d, d, d)
        return invert(s2), invert(s1)

    genus = (d + 1 - p - q) // 2
    ha = [-a for a in A]
    hb = [-b for b in B]
    heapq.heapify(ha)
    heapq.heapify(hb)
    moves = []
    for _ in range(genus):
        a, b = -ha[0], -hb[0]
        if a >= 3 and b >= 3:
            heapq.heapreplace(ha, -(a - 2))
            heapq.heapreplace(hb, -(b - 2))
            moves.append((_M1, a - 2, b - 2))
        elif b >= 3:
            a1, a2 = -heapq.heappop(ha), -heapq.heappop(ha)
            _check(a1 == a2 == 2, "handle move needs two parts 2 in A, got %d, %d", a1, a2)
            heapq.heappush(ha, -1)
            heapq.heappush(ha, -1)
            heapq.heapreplace(hb, -(b - 2))
            moves.append((_M2, 1, 1, b - 2))
        else:
            _check(a >= 3, "handle move needs a part >= 3, got A max %d, B max %d", a, b)
            b1, b2 = -heapq.heappop(hb), -heapq.heappop(hb)
            _check(b1 == b2 == 2, "handle move needs two parts 2 in B, got %d, %d", b1, b2)
            heapq.heappush(hb, -1)
            heapq.heappush(hb, -1)
            heapq.heapreplace(ha, -(a - 2))
            moves.append((_M2_MIRROR, a - 2, 1, 1))

    a0 = sorted((-x for x in ha), reverse=True)
    b0 = sorted((-x for x in hb), reverse=True)
    al, be, ra, rb = _tree(a0, b0)
    alpha, beta = Buf(al), Buf(be)
    z = Buf(compose(al, be))
    n = len(al)
    for move in reversed(moves):
        for buf in (alpha, beta, z):
            buf.grow(2)
        n1, n2 = n, n + 1
        if move[0] == _M1:
            _, la, lb = move
            x, y = ra[la].pop(), rb[lb].pop()
            left, right = [[n2, n1, x]], [[n2, n1, y]]
            ra.setdefault(la + 2, []).append(x)
            rb.setdefault(lb + 2, []).append(y)
        elif move[0] == _M2:
            _, la1, la2, lb = move
            u, v = ra[la1].pop(), ra[la2].pop()
            y = rb[lb].pop()
            if y != u and _meets_first(z.img, u, v, y):
                right = [[n2, n1, y]]
            else:
                right = [[n1, n2, y]]
            left = [[u, n2], [v, n1]]
            ra.setdefault(la1 + 1, []).append(u)
            ra.setdefault(la2 + 1, []).append(v)
            rb.setdefault(lb + 2, []).append(y)
        else:
            _, la, lb1, lb2 = move
            x = ra[la].pop()
            u, v = rb[lb1].pop(), rb[lb2].pop()
            if x == u or (x != v and _meets_first(z.img, u, v, x)):
                left = [[n2, n1, x]]
            else:
                left = [[n1, n2, x]]
            right = [[u, n2], [v, n1]]
            ra.setdefault(la + 2, []).append(x)
            rb.setdefault(lb1 + 1, []).append(u)
            rb.setdefault(lb2 + 1, []).append(v)
        for c in left:
            alpha.lmul(c)
            z.lmul(c)
        for c in right:
            beta.rmul(c)
            z.rmul(c)
        n += 2
    return alpha.img, beta.img


def _meets_first(zimg, u, v, other):
    """Walking forward from ``u`` along ``z``, is ``v`` reached no later than ``other``?"""
    t = zimg[u]
    while t != v and t != other:
        t = zimg[t]
    return t == v


# ---------------------------------------------------------------------------
# three partitions (A, B, (m+1, 1, ..., 1)) with genus >= 1

# Hand-derived base for A = B = (3,3), m = 4, found by exhaustive search and
# frozen. Stored as (tau1, tau2) 0-based; s = tau1 * tau2.
FIXTURE_33_33_4 = ([5, 3, 0, 4, 1, 2], [3, 2, 4, 5, 1, 0])

_SWAP, _S11, _S12, _S21 = "swap", "1.1", "1.2", "2.1"


def plan_ell1(A, B, m):
    """
    Top-down reduction plan: the list of steps and the base datum reached.
    Each step strictly lowers the degree and keeps the genus at least one.
    """
    A, B = sorted(A), sorted(B)
    D = sum(A)
    steps = []
    while True:
        p, q = len(A), len(B)
        twice_g = m + 2 - p - q
        _check(twice_g >= 2 and twice_g % 2 == 0 and m + 1 <= D,
               "reduction left the genus >= 1 range: A=%s B=%s m=%d", A, B, m)
        if D == 3:
            return steps, ("d3", A, B, m)
        if m + 1 == D:
            return steps, ("full", A, B, m)
        if A == [3, 3] and B == [3, 3] and m == 4:
            return steps, ("fixture", A, B, m)
        uniform = A[0] == A[-1] == B[0] == B[-1]
        if uniform and p == 1:
            return steps, ("cycle", A, B, m)
        before = D
        if not uniform:
            b = min(A[0], B[0])
            if B[0] != b or A[-1] <= b:
                A, B = B, A
                steps.append((_SWAP,))
            i = bisect_right(A, b)
            ai = A.pop(i)
            if m - 1 < D - b:
                insort(A, ai - b)
                B.pop(0)
                steps.append((_S11, ai - b, b))
                m -= 1
                D -= b
            else:
                _check(b >= 3, "subcase 1.2 needs b >= 3, got %d", b)
                insort(A, ai - 2)
                B.pop(0)
                insort(B, b - 2)
                steps.append((_S12, ai - 2, b - 2))
                m -= 2
                D -= 2
        else:
            k = A[0]
            if m - 1 <= D - k:
                A.pop()
                B.pop()
                steps.append((_S21, k))
                m -= 2
                D -= k
            else:
                _check(k >= 3, "subcase 2.2 needs k >= 3, got %d", k)
                A.pop(0)
                insort(A, k - 2)
                B.pop(0)
                insort(B, k - 2)
                steps.append((_S12, k - 2, k - 2))
                m -= 2
                D -= 2
        _check(D < before, "degree did not decrease")


def _base_ell1(kind, A, B, m):
    D = sum(A)
    if kind == "d3":
        al = [1, 2, 0]
        return al, list(al), compose(al, al)
    if kind == "fixture":
        al, be = FIXTURE_33_33_4
        return list(al), list(be), compose(al, be)
    if kind == "full":
        al, be = full_cycle_lists(sorted(A, reverse=True), sorted(B, reverse=True))
        return al, be, compose(al, be)
    # A = B = (D): a hook times a D-cycle gives a D-cycle
    x, y = full_cycle_lists([m + 1] + [1] * (D - m - 1), [D])
    return compose(x, y), invert(y), x


def _common_point(img, reps, length, s):
    """Smallest point of ``s``'s support on the first cycle of that length meeting it."""
    for r in sorted(reps.get(length, ())):
        best = None
        for x in _cycle_points(img, r):
            if s.moves(x) and (best is None or x < best):
                best = x
        if best is not None:
            return r, best
    raise ConstructionDefect("no cycle of length %d meets the support of s" % length)


def ell1_lists(A, B, m):
    """
    ``(tau1, tau2, sigma)`` for ``(A, B, (m+1, 1, ..., 1))`` at genus >= 1,
    built bottom-up from :func:`plan_ell1`.
    """
    steps, (kind, A0, B0, m0) = plan_ell1(A, B, m)
    al, be, s = _base_ell1(kind, A0, B0, m0)
    alpha, beta, s = Buf(al), Buf(be), Buf(s)
    ra, rb = cycle_reps(alpha.img), cycle_reps(beta.img)
    D = len(al)
    for step in reversed(steps):
        kind = step[0]
        if kind == _SWAP:
            alpha, beta = beta, alpha
            alpha.invert()
            beta.invert()
            s.invert()
            ra, rb = rb, ra
            continue
        if kind == _S11:
            _, la, b = step
            r, a = _common_point(alpha.img, ra, la, s)
            for buf in (alpha, beta, s):
                buf.grow(b)
            c = list(range(D, D + b))
            top = c[-1]
            alpha.rmul(c[::-1])
            alpha.lmul([a, top])
            beta.rmul(c)
            s.lmul([a, top])
            ra[la].discard(r)
            ra.setdefault(la + b, set()).add(r)
            rb.setdefault(b, set()).add(c[0])
            D += b
        elif kind == _S12:
            _, la, lb = step
            rx, x = _common_point(alpha.img, ra, la, s)
            ry, y = _common_point(beta.img, rb, lb, s)
            for buf in (alpha, beta, s):
                buf.grow(2)
            n1, n2 = D, D + 1
            t1, t2 = [n2, n1, x], [n2, n1, y]
            alpha.lmul(t1)
            beta.rmul(t2)
            s.rmul(t2)
            s.lmul(t1)
            ra[la].discard(rx)
            ra.setdefault(la + 2, set()).add(rx)
            rb[lb].discard(ry)
            rb.setdefault(lb + 2, set()).add(ry)
            D += 2
        else:
            _, k = step
            r, x1, steps_to = _two_common_points(alpha.img, ra, k, s)
            for buf in (alpha, beta, s):
                buf.grow(k)
            c = list(range(D, D + k))
            n1, ni = c[0], c[steps_to]
            xi = _walk(alpha.img, x1, steps_to)
            alpha.lmul(c)
            alpha.lmul([xi, ni])
            alpha.lmul([x1, n1])
            beta.rmul(c[::-1])
            s.lmul([xi, ni])
            s.lmul([x1, n1])
            ra[k].discard(r)
            ra[k].add(x1)
            ra[k].add(n1)
            rb.setdefault(k, set()).add(n1)
            D += k
    s.invert()
    return alpha.img, beta.img, s.img


def _walk(img, x, n):
    for _ in range(n):
        x = img[x]
    return x


def _two_common_points(img, reps, k, s):
    """
    On the first ``k``-cycle with two points moved by ``s``: the smaller of
    the two smallest such points, and the number of steps to the other.
    """
    for r in sorted(reps.get(k, ())):
        pts = _cycle_points(img, r)
        common = sorted(x for x in pts if s.moves(x))
        if len(common) >= 2:
            x1, x2 = common[0], common[1]
            pos = {x: i for i, x in enumerate(pts)}
            return r, x1, (pos[x2] - pos[x1]) % k
    raise ConstructionDefect("no %d-cycle has two points moved by s" % k)
