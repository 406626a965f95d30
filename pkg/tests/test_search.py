import pytest

from branchdata.data import GeneralDatum, SpecialDatum, verify_constellation
from branchdata.perm import Permutation, compose_all, cycle_type, is_transitive
from branchdata.search import (SearchBudget, SearchExhausted, canonical_rep, chunk_bounds, class_elements,
                               class_size, reorder, search_order, search_realize, search_tuple)


def test_class_elements():
    rows = class_elements((3, 1))
    assert len(rows) == class_size((3, 1)) == 8
    assert [list(r) for r in rows] == sorted(list(r) for r in rows)
    assert all(sorted(row) == list(range(4)) for row in rows.tolist())
    assert canonical_rep((2, 2)) == [1, 0, 3, 2]


def test_search_examples():
    assert search_realize(SpecialDatum(4, [2, 2], [2, 2], [2])) is None
    for datum in (SpecialDatum(3, [2, 1], [2, 1], [2]), SpecialDatum(6, [3, 3], [3, 3], [4])):
        c = search_realize(datum)
        assert c is not None and verify_constellation(datum, c)


def test_search_general_datum():
    datum = GeneralDatum(4, [[2, 2], [3, 1], [3, 1]])
    c = search_realize(datum)
    assert [tuple(cycle_type(p)) for p in c.perms] == [(2, 2), (3, 1), (3, 1)]
    assert compose_all(c.perms).is_identity() and is_transitive(c.perms)


def test_search_budget():
    with pytest.raises(SearchExhausted):
        search_realize(SpecialDatum(13, [13], [13], [12]))
    with pytest.raises(SearchExhausted):
        search_tuple([(2, 1, 1, 1, 1, 1)] * 10, SearchBudget(max_nodes=5))
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=0)


def test_reorder_keeps_product_and_moves_types():
    perms = [[1, 0, 2, 3], [0, 2, 3, 1], [3, 1, 2, 0]]
    labels = [2, 0, 1]
    out = reorder(perms, labels)
    as_perm = lambda xs: [Permutation._from_zero_based(x) for x in xs]
    assert compose_all(as_perm(out)) == compose_all(as_perm(perms))
    types = [tuple(cycle_type(p)) for p in as_perm(perms)]
    assert [tuple(cycle_type(p)) for p in as_perm(out)] == [types[1], types[2], types[0]]


def test_search_order():
    order = search_order([(2, 1, 1), (4,), (3, 1), (2, 2)])
    # class sizes 6, 6, 8, 3: the 8 goes first, the earlier 6 last
    assert order == [2, 1, 3, 0]


def test_chunk_bounds():
    assert chunk_bounds(10, 3) == [(0, 4), (4, 7), (7, 10)]
    assert chunk_bounds(2, 5) == [(0, 1), (1, 2)]


def test_workers_give_same_answer():
    datum = SpecialDatum(6, [2, 2, 1, 1], [3, 1, 1, 1], [2, 1, 1])
    assert search_realize(datum, workers=3) == search_realize(datum)
