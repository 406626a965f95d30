"""
Branch data of the special shape ``A, B, (m_1+1, 1..1), ..., (m_l+1, 1..1)``.

Covers the realizability decision, the genus formula, verification of
monodromy tuples and the degree ``l*d`` Belyi datum.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterator, Sequence

from .perm import Permutation, compose_all, cycle_lengths, _orbit_roots


class DatumError(ValueError):
    """Input that does not describe a valid datum."""


class CyclePartition(tuple):
    """
    A partition of ``total`` with parts stored weakly decreasing.

    >>> CyclePartition([1, 3, 2])
    (3, 2, 1)
    >>> CyclePartition([2, 2]).total
    4
    """

    def __new__(cls, parts: Sequence[int]):
        try:
            ps = sorted((int(x) for x in parts), reverse=True)
        except (TypeError, ValueError):
            raise DatumError("partition parts must be integers: %r" % (parts,)) from None
        if not ps:
            raise DatumError("empty partition")
        if ps[-1] < 1:
            raise DatumError("partition parts must be positive: %r" % (parts,))
        return super().__new__(cls, ps)

    @classmethod
    def _trusted(cls, parts: tuple) -> "CyclePartition":
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple:
        return tuple(self)

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def branching(self) -> int:
        """``total - length``: the contribution to the total branch number."""
        return sum(self) - len(self)

    @classmethod
    def hook(cls, m: int, d: int) -> "CyclePartition":
        """The type ``(m+1, 1, ..., 1)`` of a single ``(m+1)``-cycle in ``S_d``."""
        if not 0 <= m < d:
            raise DatumError("need 0 <= m < d, got m=%d d=%d" % (m, d))
        return cls._trusted((m + 1,) + (1,) * (d - m - 1))


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple]:
    """
    Partitions of ``n`` as decreasing tuples, in reverse lexicographic order.

    >>> list(partitions(4))
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    a = [0] * (n + 1)

    def rec(rest, mx, k):
        if rest == 0:
            yield tuple(a[:k])
            return
        for part in range(min(rest, mx), 0, -1):
            a[k] = part
            yield from rec(rest - part, part, k + 1)

    yield from rec(n, max_part, 0)


@dataclass(frozen=True)
class SpecialDatum:
    """
    The datum ``(d; A, B, M)``: partitions ``A`` and ``B`` of ``d`` and the
    sizes ``m_i`` of the single-cycle branch points.

    ``M`` keeps the caller's order, since it fixes the slot order of a
    constellation.
    """

    d: int
    A: CyclePartition
    B: CyclePartition
    M: tuple

    def __init__(self, d, A, B, M):
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "A", A if isinstance(A, CyclePartition) else CyclePartition(A))
        object.__setattr__(self, "B", B if isinstance(B, CyclePartition) else CyclePartition(B))
        object.__setattr__(self, "M", tuple(int(m) for m in M))
        self.validate()

    def validate(self):
        d = self.d
        if d < 2:
            raise DatumError("degree must be at least 2, got %d" % d)
        for name, part in (("A", self.A), ("B", self.B)):
            if part.total != d:
                raise DatumError("%s=%s sums to %d, expected d=%d" % (name, list(part), part.total, d))
            if len(part) == d:
                raise DatumError("%s=%s is unbranched (all parts 1)" % (name, list(part)))
        if not self.M:
            raise DatumError("M must contain at least one entry")
        for m in self.M:
            if m < 1:
                raise DatumError("every m_i must be at least 1, got %d" % m)
            if m + 1 > d:
                raise DatumError("m_i + 1 = %d exceeds d = %d" % (m + 1, d))

    @property
    def ell(self) -> int:
        return len(self.M)

    @property
    def p(self) -> int:
        return len(self.A)

    @property
    def q(self) -> int:
        return len(self.B)

    def partitions(self) -> list:
        return [self.A, self.B] + [CyclePartition.hook(m, self.d) for m in self.M]

    def general(self) -> "GeneralDatum":
        return GeneralDatum(self.d, self.partitions())

    def to_json(self) -> dict:
        return {"d": self.d, "A": list(self.A), "B": list(self.B), "M": list(self.M)}

    @classmethod
    def from_json(cls, obj) -> "SpecialDatum":
        if isinstance(obj, (str, bytes)):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise DatumError("malformed JSON at line %d column %d: %s"
                                 % (exc.lineno, exc.colno, exc.msg)) from None
        if not isinstance(obj, dict):
            raise DatumError("datum must be a JSON object")
        missing = [k for k in ("d", "A", "B", "M") if k not in obj]
        if missing:
            raise DatumError("datum is missing keys %s" % missing)
        for k in ("A", "B", "M"):
            if not isinstance(obj[k], list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                                       for x in obj[k]):
                raise DatumError("%s must be a list of integers" % k)
        if not isinstance(obj["d"], int) or isinstance(obj["d"], bool):
            raise DatumError("d must be an integer")
        return cls(obj["d"], obj["A"], obj["B"], obj["M"])

    def __str__(self):
        return "{d=%d, A=%s, B=%s, M=%s}" % (self.d, tuple(self.A), tuple(self.B), self.M)


@dataclass(frozen=True)
class GeneralDatum:
    """An arbitrary list of partitions of ``d``, one per branch point."""

    d: int
    partitions: tuple

    def __init__(self, d, partitions):
        parts = tuple(p if isinstance(p, CyclePartition) else CyclePartition(p) for p in partitions)
        for p in parts:
            if p.total != d:
                raise DatumError("partition %s does not sum to d=%d" % (list(p), d))
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "partitions", parts)

    def total_branching(self) -> int:
        return sum(p.branching() for p in self.partitions)

    def to_json(self) -> dict:
        return {"d": self.d, "partitions": [list(p) for p in self.partitions]}


class Reason(str, enum.Enum):
    OK_CASE1 = "OK_CASE1"
    OK_CASE2 = "OK_CASE2"
    ODD_TOTAL_BRANCHING = "ODD_TOTAL_BRANCHING"
    TOO_LITTLE_BRANCHING = "TOO_LITTLE_BRANCHING"
    GCD_OBSTRUCTION = "GCD_OBSTRUCTION"


@dataclass(frozen=True)
class RealizabilityVerdict:
    realizable: bool
    reason: Reason
    v: int
    genus: int | None = None

    def to_json(self) -> dict:
        out = {"realizable": self.realizable, "reason": self.reason.value, "v": self.v}
        if self.genus is not None:
            out["genus"] = self.genus
        return out


@dataclass(frozen=True)
class Constellation:
    """
    Monodromy tuple ``(tau_1, tau_2, sigma_1, ..., sigma_l)`` whose ordered
    product is the identity.

    ``part_map`` optionally records, for the ``A`` and ``B`` slots, the point
    set of the cycle realizing each part.
    """

    d: int
    perms: tuple
    part_map: dict | None = field(default=None, compare=False)

    def __init__(self, d, perms, part_map=None):
        perms = tuple(perms)
        for p in perms:
            if p.degree != d:
                raise DatumError("permutation of degree %d in a degree-%d constellation" % (p.degree, d))
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "part_map", part_map)

    @property
    def tau1(self) -> Permutation:
        return self.perms[0]

    @property
    def tau2(self) -> Permutation:
        return self.perms[1]

    @property
    def sigmas(self) -> tuple:
        return self.perms[2:]

    def to_json(self) -> dict:
        return {"d": self.d, "perms": [p.to_json() for p in self.perms]}

    @classmethod
    def from_json(cls, obj) -> "Constellation":
        if isinstance(obj, (str, bytes)):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise DatumError("malformed JSON at line %d column %d: %s"
                                 % (exc.lineno, exc.colno, exc.msg)) from None
        if not isinstance(obj, dict) or "d" not in obj or "perms" not in obj:
            raise DatumError('constellation must be an object with keys "d" and "perms"')
        d = obj["d"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise DatumError("d must be a positive integer")
        if not isinstance(obj["perms"], list):
            raise DatumError("perms must be a list")
        perms = []
        for i, img in enumerate(obj["perms"]):
            if not isinstance(img, list) or len(img) != d:
                raise DatumError("perms[%d] must be a list of %d images" % (i, d))
            try:
                perms.append(Permutation(img))
            except ValueError as exc:
                raise DatumError("perms[%d]: %s" % (i, exc)) from None
        return cls(d, perms)

    def cycle_text(self) -> str:
        return " ".join(p.cycle_text() for p in self.perms)


def total_branch_number(datum: SpecialDatum) -> int:
    """``m_1 + ... + m_l + (d - p) + (d - q)``."""
    return sum(datum.M) + (datum.d - datum.p) + (datum.d - datum.q)


def decide_realizable(datum: SpecialDatum) -> RealizabilityVerdict:
    """
    Decide whether the datum is the branch data of some branched cover of the sphere.

    >>> decide_realizable(SpecialDatum(4, [2, 2], [2, 2], [2])).reason.value
    'GCD_OBSTRUCTION'
    >>> decide_realizable(SpecialDatum(3, [3], [3], [2])).genus
    1
    """
    d = datum.d
    v = total_branch_number(datum)
    if v % 2:
        return RealizabilityVerdict(False, Reason.ODD_TOTAL_BRANCHING, v)
    if v < 2 * d - 2:
        return RealizabilityVerdict(False, Reason.TOO_LITTLE_BRANCHING, v)
    if v == 2 * d - 2:
        g = reduce(gcd, datum.A + datum.B)
        if max(datum.M) * g < d:
            return RealizabilityVerdict(True, Reason.OK_CASE1, v, 0)
        return RealizabilityVerdict(False, Reason.GCD_OBSTRUCTION, v)
    return RealizabilityVerdict(True, Reason.OK_CASE2, v, (v + 2 - 2 * d) // 2)


def genus_of(datum: SpecialDatum) -> int:
    """``(v + 2 - 2d) / 2``; raises when ``v`` is odd or below ``2d - 2``."""
    v = total_branch_number(datum)
    if v % 2:
        raise DatumError("total branch number %d is odd" % v)
    if v < 2 * datum.d - 2:
        raise DatumError("total branch number %d is below 2d-2 = %d" % (v, 2 * datum.d - 2))
    return (v + 2 - 2 * datum.d) // 2


def riemann_hurwitz_genus(perms: Sequence[Permutation]) -> int | None:
    """
    Genus of the cover encoded by a transitive tuple, read off the cycle counts.

    Returns ``None`` when ``2 - 2g = 2d - v`` has no integral solution.
    """
    d = perms[0].degree
    v = sum(d - p.num_cycles() for p in perms)
    twice = v + 2 - 2 * d
    if twice < 0 or twice % 2:
        return None
    return twice // 2


@dataclass(frozen=True)
class Verification:
    valid: bool
    failure: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        if self.valid:
            return {"valid": True}
        return {"valid": False, "failure": self.failure, "detail": self.detail}


def verify_constellation(datum: SpecialDatum, c: Constellation) -> Verification:
    """
    Check the product, the cycle types and transitivity, in that order.

    The first failed condition is named in ``failure``: one of ``degree``,
    ``shape``, ``product``, ``cycle_type`` or ``transitivity``.
    """
    d = datum.d
    if c.d != d or any(p.degree != d for p in c.perms):
        return Verification(False, "degree", "constellation degree %d, datum degree %d" % (c.d, d))
    if len(c.perms) != datum.ell + 2:
        return Verification(False, "shape", "expected %d permutations, got %d"
                            % (datum.ell + 2, len(c.perms)))
    prod = compose_all(c.perms)
    if not prod.is_identity():
        return Verification(False, "product", "ordered product is %s, not id" % prod.cycle_text())
    for i, (perm, want) in enumerate(zip(c.perms, datum.partitions())):
        got = tuple(cycle_lengths(perm._img))
        if got != tuple(want):
            slot = ("tau1", "tau2")[i] if i < 2 else "sigma%d" % (i - 1)
            return Verification(False, "cycle_type", "%s has type %s, expected %s"
                                % (slot, list(got), list(want)))
    roots = _orbit_roots([p._img for p in c.perms], d)
    if len(set(roots)) != 1:
        groups = {}
        for x, r in enumerate(roots):
            groups.setdefault(r, []).append(x + 1)
        orbit_text = ", ".join("{%s}" % ",".join(map(str, groups[r])) for r in sorted(groups))
        return Verification(False, "transitivity", "orbits %s" % orbit_text)
    return Verification(True)


def belyi_datum(datum: SpecialDatum) -> GeneralDatum:
    """
    The three-point datum of degree ``l*d``.

    >>> belyi_datum(SpecialDatum(2, [2], [2], [1, 1])).to_json()
    {'d': 4, 'partitions': [[4], [4], [2, 2]]}
    """
    ell, d = datum.ell, datum.d
    big = ell * d
    third = [m + 1 for m in datum.M]
    third += [1] * (big - sum(third))
    return GeneralDatum(big, [[ell * a for a in datum.A], [ell * b for b in datum.B], third])


def enumerate_special_data(d: int, genus_min: int, genus_max: int) -> Iterator[SpecialDatum]:
    """
    Every special datum of degree ``d`` whose formal genus ``(v+2-2d)/2`` lies
    in ``[genus_min, genus_max]``, each once: ``A >= B`` lexicographically and
    ``M`` weakly decreasing.

    Data failing the gcd bound at ``v = 2d-2`` are included; they have formal genus 0.

    >>> [str(x) for x in enumerate_special_data(2, 1, 1)]
    ['{d=2, A=(2,), B=(2,), M=(1, 1)}']
    """
    if d < 2:
        raise DatumError("degree must be at least 2")
    genus_min = max(genus_min, 0)
    if genus_max < genus_min:
        return
    branched = [p for p in partitions(d) if len(p) < d]
    for g in range(genus_min, genus_max + 1):
        for i, A in enumerate(branched):
            for B in branched[i:]:
                total_m = 2 * d - 2 + 2 * g - (d - len(A)) - (d - len(B))
                if total_m < 1:
                    continue
                for M in partitions(total_m, d - 1):
                    yield SpecialDatum(d, CyclePartition._trusted(A), CyclePartition._trusted(B), M)
