import hashlib

import pytest

from branchdata import kernels
from branchdata.data import enumerate_special_data
from branchdata.search import prepare, search_order

needs_cython = pytest.mark.skipif(kernels.ckernels is None, reason="compiled kernels not built")


def _run(backend, parts, **kw):
    prep = prepare(parts, backend)
    kw.setdefault("max_nodes", 10**8)
    return backend.enumerate_tuples(prep["d"], prep["first"], prep["cands"], prep["offsets"],
                                    prep["last_type"], prep["rem"], **kw)


CASES = [
    [(3,), (3,), (3,)],
    [(2, 2), (2, 2), (2, 2), (2, 2)],
    [(3, 1), (2, 2), (4,)],
    [(2, 1, 1, 1)] * 5,
    [(3, 3), (3, 3), (5, 1)],
    [(4, 2), (3, 2, 1), (2, 2, 1, 1), (5, 1)],
]


def test_backend_selection():
    assert kernels.BACKEND in ("python", "cython")
    assert kernels.get_backend("python").BACKEND == "python"
    assert kernels.get_backend() is kernels.get_backend(kernels.BACKEND)
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@needs_cython
@pytest.mark.parametrize("parts", CASES)
def test_backends_agree_on_counts(parts):
    py, cy = kernels.get_backend("python"), kernels.get_backend("cython")
    a = _run(py, parts, collect=True, stop_first=False)
    b = _run(cy, parts, collect=True, stop_first=False)
    assert a[:3] == b[:3]
    assert not a[5] and not b[5]


@needs_cython
def test_backends_agree_on_first_solution():
    py, cy = kernels.get_backend("python"), kernels.get_backend("cython")
    h = {}
    for name, be in (("py", py), ("cy", cy)):
        digest = hashlib.sha1()
        for d in range(2, 6):
            for datum in enumerate_special_data(d, 0, 0):
                parts = [tuple(datum.partitions()[i]) for i in search_order(datum.partitions())]
                prep = prepare(parts, be)
                res = be.enumerate_tuples(prep["d"], prep["first"], prep["cands"], prep["offsets"],
                                          prep["last_type"], prep["rem"], collect=False, stop_first=True,
                                          max_nodes=10**7, genus_cut=prep["genus_cut"])
                digest.update(repr((res[3] and list(res[3]), res[4])).encode())
        h[name] = digest.hexdigest()
    assert h["py"] == h["cy"]


@pytest.mark.parametrize("name", ["python", "cython"])
def test_canonical_key_is_conjugation_invariant(name):
    if name == "cython" and kernels.ckernels is None:
        pytest.skip("compiled kernels not built")
    be = kernels.get_backend(name)
    a = [[1, 2, 0, 3], [1, 0, 3, 2]]
    # relabel by (0 3)
    g = [3, 1, 2, 0]
    b = [[g[p[g[x]]] for x in range(4)] for p in a]
    assert be.canonical_key(a, 4) == be.canonical_key(b, 4)
    key, aut = be.canonical_key([[1, 2, 0]], 3)
    assert aut == 3
    with pytest.raises(ValueError):
        be.canonical_key([[1, 0, 2]], 3)
    with pytest.raises(ValueError):
        be.canonical_key([[1, 5, 0]], 3)


def test_node_budget_reported():
    res = _run(kernels.get_backend("python"), [(2, 1, 1, 1)] * 7, collect=False, stop_first=False,
               max_nodes=50)
    assert res[5]
