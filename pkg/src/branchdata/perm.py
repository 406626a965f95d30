"""
Permutations of ``{1, ..., d}`` stored as one-line image tables.

Products follow the apply-right-first convention: ``compose(p, q)(x) == p(q(x))``.
All public interfaces are 1-based; the image table is kept 0-based internally.

EXAMPLES::

    >>> p = Permutation.parse("(1,4,5)", 5)
    >>> q = Permutation.parse("(1,2,3)", 5)
    >>> str(compose(p, q))
    '(1,2,3,4,5)'
"""

from __future__ import annotations

import re
from typing import Iterable, NamedTuple, Sequence


class PermutationError(ValueError):
    """Malformed permutation data or mismatched degrees."""


class CycleSpec(NamedTuple):
    """Disjoint cycles on ``{1..degree}``; fixed points are omitted."""

    cycles: tuple
    degree: int


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    r"""
    An immutable permutation of ``{1, ..., d}``.

    ``images[x-1]`` is the image of the point ``x``.
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        img = tuple(int(x) - 1 for x in images)
        d = len(img)
        if d < 1:
            raise PermutationError("degree must be at least 1")
        seen = bytearray(d)
        for y in img:
            if not 0 <= y < d or seen[y]:
                raise PermutationError("images %r do not form a bijection of 1..%d"
                                       % ([y + 1 for y in img], d))
            seen[y] = 1
        self._img = img
        self._hash = None

    @classmethod
    def _from_zero_based(cls, img: Sequence[int]) -> "Permutation":
        # trusted constructor: no validation
        p = object.__new__(cls)
        p._img = tuple(img)
        p._hash = None
        return p

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        if d < 1:
            raise PermutationError("degree must be at least 1")
        return cls._from_zero_based(range(d))

    @classmethod
    def from_cycles(cls, cycles, d: int) -> "Permutation":
        """
        Build a permutation from a list of disjoint 1-based cycles.

        >>> Permutation.from_cycles([(1, 2, 3)], 3).images
        (2, 3, 1)
        """
        if isinstance(cycles, CycleSpec):
            cycles, d = cycles.cycles, cycles.degree
        if d < 1:
            raise PermutationError("degree must be at least 1")
        img = list(range(d))
        used = bytearray(d)
        for c in cycles:
            c = [int(x) for x in c]
            if len(c) < 2:
                if len(c) == 1 and 1 <= c[0] <= d and not used[c[0] - 1]:
                    used[c[0] - 1] = 1
                    continue
                raise PermutationError("bad cycle %r" % (c,))
            for x in c:
                if not 1 <= x <= d:
                    raise PermutationError("point %d out of range 1..%d" % (x, d))
                if used[x - 1]:
                    raise PermutationError("cycles overlap at point %d" % x)
                used[x - 1] = 1
            for i, x in enumerate(c):
                img[x - 1] = c[(i + 1) % len(c)] - 1
        return cls._from_zero_based(img)

    @classmethod
    def parse(cls, text: str, d: int) -> "Permutation":
        """
        Parse cycle notation such as ``"(1,2)(3,4)"`` or ``"id"``.

        >>> Permutation.parse(" (1, 3) ", 3).images
        (3, 2, 1)
        """
        s = "".join(text.split())
        if s in ("id", ""):
            return cls.identity(d)
        pos = 0
        cycles = []
        for mo in _CYCLE_RE.finditer(s):
            if mo.start() != pos:
                raise PermutationError("unexpected text at position %d in %r" % (pos, text))
            body = mo.group(1)
            try:
                cycles.append([int(t) for t in body.split(",")])
            except ValueError:
                raise PermutationError("bad cycle %r" % mo.group(0)) from None
            pos = mo.end()
        if pos != len(s):
            raise PermutationError("unexpected text at position %d in %r" % (pos, text))
        return cls.from_cycles(cycles, d)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return tuple(y + 1 for y in self._img)

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __repr__(self):
        return "Permutation(%r, %d)" % (str(self), self.degree)

    def __str__(self):
        return self.cycle_text()

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self._img))

    def to_cycles(self) -> CycleSpec:
        return to_cycles(self)

    def cycle_text(self) -> str:
        cs = to_cycles(self).cycles
        if not cs:
            return "id"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cs)

    def cycle_type(self):
        return cycle_type(self)

    def num_cycles(self) -> int:
        img = self._img
        seen = bytearray(len(img))
        n = 0
        for x in range(len(img)):
            if not seen[x]:
                n += 1
                while not seen[x]:
                    seen[x] = 1
                    x = img[x]
        return n

    def support(self) -> frozenset:
        """Moved points, 1-based."""
        return frozenset(i + 1 for i, y in enumerate(self._img) if i != y)

    def to_json(self) -> list:
        return list(self.images)


def _check_degrees(*perms):
    d = perms[0].degree
    for p in perms[1:]:
        if p.degree != d:
            raise PermutationError("degree mismatch: %d vs %d" % (d, p.degree))
    return d


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product ``p q`` with ``q`` acting first."""
    _check_degrees(p, q)
    pi = p._img
    return Permutation._from_zero_based([pi[y] for y in q._img])


def compose_all(perms: Sequence[Permutation]) -> Permutation:
    """``perms[0] perms[1] ... perms[-1]``, the last factor acting first."""
    if not perms:
        raise PermutationError("empty product has no degree")
    d = _check_degrees(*perms)
    acc = list(range(d))
    for p in perms:
        pi = p._img
        acc = [acc[y] for y in pi]
    return Permutation._from_zero_based(acc)


def inverse(p: Permutation) -> Permutation:
    img = p._img
    inv = [0] * len(img)
    for i, y in enumerate(img):
        inv[y] = i
    return Permutation._from_zero_based(inv)


def to_cycles(p: Permutation) -> CycleSpec:
    """
    Canonical cycle form: each cycle starts at its smallest point and cycles
    are sorted by that point.

    >>> to_cycles(Permutation([2, 1, 4, 3])).cycles
    ((1, 2), (3, 4))
    """
    img = p._img
    seen = bytearray(len(img))
    out = []
    for x in range(len(img)):
        if seen[x] or img[x] == x:
            seen[x] = 1
            continue
        c = []
        while not seen[x]:
            seen[x] = 1
            c.append(x + 1)
            x = img[x]
        out.append(tuple(c))
    return CycleSpec(tuple(out), len(img))


def from_cycles(spec: CycleSpec) -> Permutation:
    return Permutation.from_cycles(spec.cycles, spec.degree)


def cycle_lengths(img: Sequence[int]) -> list:
    """Cycle lengths of a 0-based image table, fixed points included, sorted decreasing."""
    seen = bytearray(len(img))
    out = []
    for x in range(len(img)):
        if not seen[x]:
            n = 0
            while not seen[x]:
                seen[x] = 1
                x = img[x]
                n += 1
            out.append(n)
    out.sort(reverse=True)
    return out


def cycle_type(p: Permutation):
    """The cycle type as a :class:`~branchdata.data.CyclePartition`."""
    from .data import CyclePartition
    return CyclePartition._trusted(tuple(cycle_lengths(p._img)))


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """``g p g^-1``, i.e. ``p`` with its points relabelled by ``g``."""
    _check_degrees(p, g)
    gi, pi = g._img, p._img
    out = [0] * len(pi)
    for x, y in enumerate(pi):
        out[gi[x]] = gi[y]
    return Permutation._from_zero_based(out)


def _orbit_roots(imgs: Sequence[Sequence[int]], d: int) -> list:
    parent = list(range(d))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for img in imgs:
        for x, y in enumerate(img):
            rx, ry = find(x), find(y)
            if rx != ry:
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry
    return [find(x) for x in range(d)]


def orbits(gens: Sequence[Permutation], d: int | None = None) -> list:
    """
    Orbits of the group generated by ``gens`` as sorted lists of 1-based points,
    ordered by smallest element.

    ``d`` is required when ``gens`` is empty.

    >>> a = Permutation.parse("(1,2)(3,4)", 4); b = Permutation.parse("(1,2)", 4)
    >>> orbits([a, b])
    [[1, 2], [3, 4]]
    >>> orbits([], 3)
    [[1], [2], [3]]
    """
    if gens:
        n = _check_degrees(*gens)
        if d is not None and d != n:
            raise PermutationError("degree mismatch: %d vs %d" % (d, n))
        d = n
    elif d is None:
        raise PermutationError("degree required for an empty generator list")
    roots = _orbit_roots([g._img for g in gens], d)
    groups = {}
    for x, r in enumerate(roots):
        groups.setdefault(r, []).append(x + 1)
    return [groups[r] for r in sorted(groups)]


def is_transitive(gens: Sequence[Permutation], d: int | None = None) -> bool:
    return len(orbits(gens, d)) == 1
