"""
Built-in example table run by ``branchdata selftest``.

Each entry is a name and a zero-argument check returning the observed value
next to the expected one.
"""

from __future__ import annotations

from fractions import Fraction

from .counting import centralizer_order, character_value, count_tuples, frobenius_disconnected
from .data import (Constellation, GeneralDatum, SpecialDatum, belyi_datum, decide_realizable,
                   enumerate_special_data, genus_of, total_branch_number, verify_constellation)
from .perm import Permutation, compose, conjugate, cycle_type, inverse, is_transitive, orbits
from .realizer import (NotRealizable, absorb_transposition, lemma_two_cycles, realize,
                       realize_base_ell2, realize_full_cycle, swap_adjoint)
from .search import search_realize


def P(text, d):
    return Permutation.parse(text, d)


def S(d, A, B, M):
    return SpecialDatum(d, A, B, M)


def C(text, d):
    return Constellation(d, [P(t, d) for t in text.split()])


def _reason(datum):
    try:
        realize(datum)
    except NotRealizable as exc:
        return exc.verdict.reason.value
    return "realized"


def _verify(datum, text):
    v = verify_constellation(datum, C(text, datum.d))
    return v.failure or "valid"


def _counts(parts, d):
    r = count_tuples(GeneralDatum(d, parts))
    return (r.tuple_count, r.transitive_count, r.class_count, r.weighted_count, r.per_class_aut)


def _absorb_example():
    c = C("(1,2,3) (1,3,2) (1,2) (1,2)", 3)
    out = absorb_transposition(c, 1)
    return out.cycle_text(), bool(verify_constellation(S(3, [3], [3], [2, 2]), out))


def _search_types(datum):
    c = search_realize(datum)
    return c is not None and bool(verify_constellation(datum, c))


EXAMPLES = [
    ("compose 3-cycles", lambda: compose(P("(1,4,5)", 5), P("(1,2,3)", 5)).cycle_text(), "(1,2,3,4,5)"),
    ("compose involution", lambda: compose(P("(1,2)", 2), P("(1,2)", 2)).is_identity(), True),
    ("inverse 3-cycle", lambda: inverse(P("(1,2,3)", 3)).cycle_text(), "(1,3,2)"),
    ("inverse involution", lambda: inverse(P("(1,2)(3,4)", 4)).cycle_text(), "(1,2)(3,4)"),
    ("from cycles", lambda: P("(1,2,3)", 3).to_json(), [2, 3, 1]),
    ("to cycles", lambda: Permutation([2, 1, 4, 3]).cycle_text(), "(1,2)(3,4)"),
    ("cycle type", lambda: tuple(cycle_type(P("(1,2)(3,4,5)", 6))), (3, 2, 1)),
    ("cycle type of id", lambda: tuple(cycle_type(P("id", 4))), (1, 1, 1, 1)),
    ("conjugate", lambda: conjugate(P("(1,2)", 3), P("(1,3)", 3)).cycle_text(), "(2,3)"),
    ("orbits", lambda: (orbits([P("(1,2)(3,4)", 4), P("(1,2)", 4)]),
                        is_transitive([P("(1,2)(3,4)", 4), P("(1,2)", 4)])), ([[1, 2], [3, 4]], False)),
    ("orbits of nothing", lambda: orbits([], 3), [[1], [2], [3]]),
    ("branch number (3),(3),(2)", lambda: total_branch_number(S(3, [3], [3], [2])), 6),
    ("branch number (2),(2),(1)", lambda: total_branch_number(S(2, [2], [2], [1])), 3),
    ("branch number unbranched", lambda: GeneralDatum(2, [[1, 1], [1, 1], [2]]).total_branching(), 1),
    ("gcd obstruction", lambda: decide_realizable(S(4, [2, 2], [2, 2], [2])).reason.value, "GCD_OBSTRUCTION"),
    ("base datum realizable", lambda: (decide_realizable(S(3, [3], [3], [2])).realizable,
                                       decide_realizable(S(3, [3], [3], [2])).genus), (True, 1)),
    ("odd branching", lambda: decide_realizable(S(2, [2], [2], [1])).reason.value, "ODD_TOTAL_BRANCHING"),
    ("genus of base datum", lambda: genus_of(S(3, [3], [3], [2])), 1),
    ("genus zero datum", lambda: genus_of(S(3, [2, 1], [2, 1], [2])), 0),
    ("verify base triple", lambda: _verify(S(3, [3], [3], [2]), "(1,2,3) (1,2,3) (1,2,3)"), "valid"),
    ("verify wrong product", lambda: _verify(S(3, [3], [3], [2]), "(1,2,3) (1,3,2) (1,2,3)"), "product"),
    ("verify intransitive", lambda: _verify(S(4, [2, 2], [2, 2], [1, 1]),
                                            "(1,2)(3,4) (1,2)(3,4) (1,2) (1,2)"), "transitivity"),
    ("belyi l=1", lambda: belyi_datum(S(3, [3], [3], [2])).to_json(), {"d": 3, "partitions": [[3], [3], [3]]}),
    ("belyi l=2", lambda: belyi_datum(S(2, [2], [2], [1, 1])).to_json(),
     {"d": 4, "partitions": [[4], [4], [2, 2]]}),
    ("enumerate d=2 genus 1", lambda: [str(x) for x in enumerate_special_data(2, 1, 1)],
     ["{d=2, A=(2,), B=(2,), M=(1, 1)}"]),
    ("enumerate empty range", lambda: list(enumerate_special_data(4, 3, 2)), []),
    ("realize base datum", lambda: realize(S(3, [3], [3], [2])).cycle_text(), "(1,2,3) (1,2,3) (1,2,3)"),
    ("realize odd datum", lambda: _reason(S(2, [2], [2], [1])), "ODD_TOTAL_BRANCHING"),
    ("realize gcd-obstructed", lambda: _reason(S(4, [2, 2], [2, 2], [2])), "GCD_OBSTRUCTION"),
    ("realize fixture datum", lambda: realize(S(6, [3, 3], [3, 3], [4])).cycle_text(),
     "(1,6,3)(2,4,5) (1,4,6)(2,3,5) (1,2,3,4,5)"),
    ("lemma s=r=3 d=5", lambda: tuple(p.cycle_text() for p in lemma_two_cycles(3, 3, 5)), ("(1,4,5)", "(1,2,3)")),
    ("lemma s=r=3 d=3", lambda: tuple(p.cycle_text() for p in lemma_two_cycles(3, 3, 3)), ("(1,3,2)", "(1,3,2)")),
    ("lemma s=1", lambda: tuple(p.cycle_text() for p in lemma_two_cycles(1, 4, 4)), ("id", "(1,2,3,4)")),
    ("full cycle (2,2),(4)", lambda: tuple(p.cycle_text() for p in realize_full_cycle([2, 2], [4])),
     ("(1,2)(3,4)", "(1,3,2,4)")),
    ("base l=2 d=4", lambda: realize_base_ell2([2, 2], [2, 2], 2).cycle_text(),
     "(1,2)(3,4) (1,2)(3,4) (1,2,3) (1,3,2)"),
    ("base l=2 d=2", lambda: realize_base_ell2([2], [2], 1).cycle_text(), "(1,2) (1,2) (1,2) (1,2)"),
    ("mixed datum", lambda: bool(verify_constellation(S(4, [2, 1, 1], [2, 2], [3, 2]),
                                                      realize(S(4, [2, 1, 1], [2, 2], [3, 2])))), True),
    ("absorb transposition", _absorb_example, ("(1,2,3) (1,3,2) (1,3,2) (1,2,3)", True)),
    ("swap adjoint", lambda: swap_adjoint(C("(1,2,3) (1,2,3) (1,2,3)", 3)).cycle_text(),
     "(1,3,2) (1,3,2) (1,3,2)"),
    ("search gcd-obstructed", lambda: search_realize(S(4, [2, 2], [2, 2], [2])), None),
    ("search genus zero", lambda: _search_types(S(3, [2, 1], [2, 1], [2])), True),
    ("search (3,3),(3,3),(5,1)", lambda: _search_types(S(6, [3, 3], [3, 3], [4])), True),
    ("count (3),(3),(3)", lambda: _counts([[3], [3], [3]], 3), (2, 2, 1, Fraction(1, 3), (3,))),
    ("count (2)^4", lambda: _counts([[2]] * 4, 2), (1, 1, 1, Fraction(1, 2), (2,))),
    ("count (2)^3", lambda: _counts([[2]] * 3, 2), (0, 0, 0, Fraction(0), ())),
    ("centralizer of 3-cycle", lambda: centralizer_order([P("(1,2,3)", 3)]), 3),
    ("centralizer of nothing", lambda: centralizer_order([], 3), 6),
    ("centralizer of S3", lambda: centralizer_order([P("(1,2)", 3), P("(1,2,3)", 3)]), 1),
    ("trivial character", lambda: character_value((4,), (2, 1, 1)), 1),
    ("sign character", lambda: character_value((1, 1), (2,)), -1),
    ("character dimension", lambda: character_value((2, 1), (1, 1, 1)), 2),
    ("frobenius (2),(2)", lambda: frobenius_disconnected(GeneralDatum(2, [[2], [2]])), Fraction(1, 2)),
    ("frobenius (3),(3),(3)", lambda: frobenius_disconnected(GeneralDatum(3, [[3], [3], [3]])), Fraction(1, 3)),
    ("frobenius odd branching", lambda: frobenius_disconnected(GeneralDatum(2, [[2]] * 3)), Fraction(0)),
]


def run_examples():
    """Yield ``(name, passed, detail)`` for every entry of :data:`EXAMPLES`."""
    for name, check, expected in EXAMPLES:
        try:
            got = check()
        except Exception as exc:  # a crash is reported as a failure, not raised
            yield name, False, "raised %s: %s" % (type(exc).__name__, exc)
            continue
        if got == expected:
            yield name, True, ""
        else:
            yield name, False, "expected %r, got %r" % (expected, got)
