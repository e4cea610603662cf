from __future__ import annotations

import json

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from twisted_yangian import linalg
from twisted_yangian.exact_tensor import DOWN, UP, SparseTensor
from twisted_yangian.lie_core import (AlgebraError, LieAlgebraData, build_from_constants,
                                      casimir_identity_check, change_basis, classical_constructor,
                                      from_matrices, sl2, sl3_chevalley, sl3_matrices,
                                      structure_report)

FAMILIES = [("sl", 2), ("sl", 3), ("sl", 4), ("so", 5), ("sp", 4)]


def vec(L, terms):
    v = [mpq(0)] * L.dim
    for lab, c in terms.items():
        v[L.index(lab)] = mpq(c)
    return v


def test_sl2_killing_form():
    L = sl2()
    e, f, h = (L.index(x) for x in "efh")
    assert L.form[h, h] == 8 and L.form[e, f] == 4
    assert L.form[e, e] == L.form[f, f] == L.form[e, h] == 0
    assert L.casimir == 1


@pytest.mark.parametrize("family,n", FAMILIES)
@pytest.mark.parametrize("form", ["killing", "trace"])
def test_classical_structure_report(family, n, form):
    L = classical_constructor(family, n, form)
    rep = structure_report(L)
    assert rep.passed, rep.summary()
    if form == "killing":
        assert L.casimir == 1


def test_dimensions():
    assert classical_constructor("sl", 2).dim == 3
    assert classical_constructor("sl", 4).dim == 15
    assert classical_constructor("so", 5).dim == 10
    assert classical_constructor("sp", 4).dim == 10


def test_unsupported_family():
    with pytest.raises(AlgebraError):
        classical_constructor("so", 4)
    with pytest.raises(AlgebraError):
        classical_constructor("e", 6)


def test_sl3_chevalley_brackets():
    L = sl3_chevalley()
    assert L.labels == ("e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2")
    assert L.casimir == 6
    br = lambda a, b: L.bracket_vec(vec(L, {a: 1}), vec(L, {b: 1}))
    assert br("e1", "e2") == vec(L, {"e3": 1})
    assert br("e3", "f3") == vec(L, {"h1": 1, "h2": 1})
    assert br("f2", "f1") == vec(L, {"f3": 1})
    assert L.form[L.index("h1"), L.index("h2")] == -1
    assert L.form[L.index("e1"), L.index("f1")] == 1


def test_sl3_chevalley_matches_matrices():
    L = sl3_chevalley()
    M = from_matrices(L.labels, sl3_matrices())
    assert M.structure == L.structure


def test_casimir_check_and_rescaling():
    L = sl3_chevalley()
    rep = casimir_identity_check(L)
    assert rep.passed and rep.values["c_g"] == 6
    for s in (2, mpq(1, 3), -5):
        assert L.rescaled(s).casimir == L.casimir / s
    assert casimir_identity_check(sl2()).values["c_g"] == 1


def test_rejects_bad_input():
    L = sl2()
    bad = L.structure + SparseTensor((3, 3, 3), (DOWN, DOWN, UP), {(0, 1, 0): 1, (1, 0, 0): -1})
    with pytest.raises(AlgebraError, match="Jacobi"):
        build_from_constants(L.labels, bad)
    with pytest.raises(AlgebraError, match="antisymmetric"):
        build_from_constants(L.labels, L.structure + SparseTensor((3, 3, 3), (DOWN, DOWN, UP), {(0, 1, 2): 1}))
    with pytest.raises(AlgebraError):
        build_from_constants(L.labels, L.structure, SparseTensor.delta(3, (DOWN, DOWN)))
    abelian = SparseTensor((2, 2, 2), (DOWN, DOWN, UP))
    with pytest.raises(AlgebraError, match="degenerate"):
        build_from_constants(("a", "b"), abelian)


def test_json_round_trip():
    L = sl3_chevalley()
    obj = json.loads(json.dumps(L.to_json_obj()))
    M = LieAlgebraData.from_json_obj(obj)
    assert M.structure == L.structure and M.form == L.form and M.casimir == 6
    with pytest.raises(AlgebraError):
        LieAlgebraData.from_json_obj({"kind": "other"})


small = st.integers(-2, 2)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_casimir_basis_independent(rows):
    L = sl2()
    V = [[mpq(x) + (3 if i == j else 0) for j, x in enumerate(r)] for i, r in enumerate(rows)]
    if linalg.rank(V) < 3:
        return
    M = change_basis(L, V)
    assert M.casimir == L.casimir
    assert structure_report(M).passed
