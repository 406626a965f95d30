import random

import pytest
from hypothesis import given, strategies as st

from branchdata.perm import (CycleSpec, Permutation, PermutationError, compose, compose_all, conjugate,
                             cycle_type, from_cycles, inverse, is_transitive, orbits, to_cycles)

from conftest import P, perms


def test_compose_is_right_first():
    assert compose(P("(1,4,5)", 5), P("(1,2,3)", 5)) == P("(1,2,3,4,5)", 5)
    p = P("(1,2)", 3)
    q = P("(2,3)", 3)
    assert compose(p, q)(2) == p(q(2))


def test_compose_identity_and_involution():
    p = P("(1,3)(2,4,5)", 5)
    assert compose(Permutation.identity(5), p) == p
    assert compose(P("(1,2)", 2), P("(1,2)", 2)).is_identity()


def test_inverse_examples():
    assert inverse(P("(1,2,3)", 3)).cycle_text() == "(1,3,2)"
    assert inverse(Permutation.identity(4)).is_identity()
    assert inverse(P("(1,2)(3,4)", 4)) == P("(1,2)(3,4)", 4)


def test_cycles_round_trip_examples():
    assert from_cycles(CycleSpec(((1, 2, 3),), 3)).to_json() == [2, 3, 1]
    assert to_cycles(Permutation([2, 1, 4, 3])).cycles == ((1, 2), (3, 4))
    rng = random.Random(7)
    for _ in range(1000):
        img = list(range(1, 51))
        rng.shuffle(img)
        p = Permutation(img)
        assert from_cycles(to_cycles(p)) == p


def test_cycle_type_examples():
    assert tuple(cycle_type(P("(1,2,3)", 3))) == (3,)
    assert tuple(cycle_type(Permutation.identity(4))) == (1, 1, 1, 1)
    assert tuple(cycle_type(P("(1,2)(3,4,5)", 6))) == (3, 2, 1)


def test_conjugate_examples():
    assert conjugate(P("(1,2)", 3), P("(1,3)", 3)) == P("(2,3)", 3)
    p = P("(1,2,4)", 4)
    assert conjugate(p, Permutation.identity(4)) == p


def test_orbits_examples():
    gens = [P("(1,2)(3,4)", 4), P("(1,2)", 4)]
    assert orbits(gens) == [[1, 2], [3, 4]]
    assert not is_transitive(gens)
    assert orbits([P("(1,2,3,4,5,6)", 6)]) == [[1, 2, 3, 4, 5, 6]]
    assert orbits([], 3) == [[1], [2], [3]]


def test_parse_and_print():
    assert P(" ( 1 , 3 ) ", 3).images == (3, 2, 1)
    assert P("id", 3).cycle_text() == "id"
    assert P("(2,3,1)", 3).cycle_text() == "(1,2,3)"


@pytest.mark.parametrize("text,d", [("(1,2", 3), ("(1,1)", 3), ("(1,4)", 3), ("(1,2)(2,3)", 3),
                                    ("(a,b)", 3), ("()", 3)])
def test_parse_rejects(text, d):
    with pytest.raises(PermutationError):
        Permutation.parse(text, d)


def test_bad_images_and_degrees():
    with pytest.raises(PermutationError):
        Permutation([1, 1, 2])
    with pytest.raises(PermutationError):
        Permutation([])
    with pytest.raises(PermutationError):
        compose(P("(1,2)", 2), P("(1,2)", 3))


@given(st.data())
def test_group_laws(data):
    d = data.draw(st.integers(1, 10))
    p, q, r = (data.draw(perms(d)) for _ in range(3))
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose(p, inverse(p)).is_identity()
    assert inverse(compose(p, q)) == compose(inverse(q), inverse(p))
    assert compose_all([p, q, r]) == compose(p, compose(q, r))


@given(st.data())
def test_conjugation_keeps_cycle_type(data):
    d = data.draw(st.integers(1, 10))
    p, g = data.draw(perms(d)), data.draw(perms(d))
    c = conjugate(p, g)
    assert cycle_type(c) == cycle_type(p)
    assert c == compose(g, compose(p, inverse(g)))


@given(perms(max_d=30))
def test_text_round_trip(p):
    assert Permutation.parse(p.cycle_text(), p.degree) == p
    assert sum(cycle_type(p)) == p.degree
    assert p.num_cycles() == len(cycle_type(p))


@given(st.lists(perms(d=8), max_size=4))
def test_orbits_partition_points(gens):
    orb = orbits(gens, 8)
    assert sorted(x for o in orb for x in o) == list(range(1, 9))
    for g in gens:
        for o in orb:
            assert {g(x) for x in o} == set(o)
