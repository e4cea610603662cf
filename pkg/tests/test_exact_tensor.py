from __future__ import annotations

import itertools
import json

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from twisted_yangian.exact_tensor import (DOWN, UP, Q, SparseTensor, TensorError, antisymmetrize,
                                          canonical_part, contract, cyclic_sum, einsum, from_dense,
                                          outer, symmetrize)
from twisted_yangian.lie_core import sl2, sl3_chevalley


def rationals():
    return st.builds(lambda n, d: mpq(n, d), st.integers(-9, 9), st.integers(1, 5))


@st.composite
def tensors(draw, dims=(3, 3, 3), variance=(DOWN, DOWN, UP)):
    idx = st.tuples(*(st.integers(0, d - 1) for d in dims))
    entries = draw(st.dictionaries(idx, rationals(), max_size=8))
    return SparseTensor(dims, variance, entries)


def test_q_is_exact():
    assert Q("3/4") == mpq(3, 4)
    assert Q(1, 3) + Q(2, 3) == 1


def test_zero_entries_pruned():
    t = SparseTensor((2, 2), (DOWN, UP), {(0, 0): 0, (1, 1): 2})
    assert len(t) == 1
    assert (t - t).entries == {}


def test_bad_index_rejected():
    with pytest.raises(TensorError):
        SparseTensor((2,), (UP,), {(2,): 1})
    with pytest.raises(TensorError):
        SparseTensor((2,), ("sideways",))


def test_contract_identity():
    d = SparseTensor.delta(4)
    assert contract(d, d, [(1, 0)]) == d


def test_contract_with_zero():
    L = sl3_chevalley()
    z = SparseTensor.zeros((8, 8, 8), (UP, DOWN, DOWN))
    assert contract(L.structure, z, [(0, 0)]).is_zero()


def test_contract_variance_mismatch_names_pair():
    L = sl2()
    with pytest.raises(TensorError, match=r"\(0, 0\)"):
        contract(L.structure, L.structure, [(0, 0)])


def test_contract_dimension_mismatch():
    a = SparseTensor.delta(2)
    b = SparseTensor.delta(3)
    with pytest.raises(TensorError):
        contract(a, b, [(1, 0)])


def test_killing_form_from_contraction():
    # eta_ab = alpha_ac^d alpha_bd^c against a brute-force triple loop
    L = sl2()
    s = L.structure
    eta = contract(s, s, [(2, 1), (1, 2)])
    brute = {}
    for a, b, c, d in itertools.product(range(3), repeat=4):
        v = s[a, c, d] * s[b, d, c]
        if v:
            brute[(a, b)] = brute.get((a, b), 0) + v
    assert eta.entries == {k: v for k, v in brute.items() if v}
    assert symmetrize(eta, [0, 1]) == eta == L.form


def test_symmetrize_examples():
    L = sl3_chevalley()
    assert symmetrize(L.structure, [0, 1]).is_zero()
    e = SparseTensor((3, 3, 3), (UP, UP, UP), {(0, 1, 2): 1})
    s = symmetrize(e, [0, 1, 2])
    assert len(s) == 6 and set(s.entries.values()) == {mpq(1, 6)}


def test_symmetrize_rejects_mixed_variance():
    with pytest.raises(TensorError):
        symmetrize(SparseTensor.delta(3), [0, 1])


def test_cyclic_sum_examples():
    L = sl3_chevalley()
    t = SparseTensor((3, 3, 3), (UP, UP, UP), {(0, 1, 2): 5})
    assert cyclic_sum(t, [0]) == t
    c = cyclic_sum(t, [0, 1, 2])
    assert len(c) == 3 and set(c.entries.values()) == {5}
    jac = cyclic_sum(einsum("abd,cde->abce", L.structure, L.structure), [0, 1, 2])
    assert jac.is_zero()


def test_einsum_matches_contract():
    L = sl3_chevalley()
    a = einsum("abd,dc->abc", L.structure, L.form)
    b = contract(L.structure, L.form, [(2, 0)])
    assert a == b


def test_einsum_strict_rejects_same_position_sum():
    L = sl2()
    with pytest.raises(TensorError):
        einsum("ab,bc->ac", L.form, L.form)


def test_json_round_trip_and_order():
    t = SparseTensor((2, 3), (DOWN, UP), {(1, 2): mpq(-3, 7), (0, 1): 2})
    obj = json.loads(t.to_json())
    assert obj["entries"][0]["idx"] == [0, 1]
    assert obj["entries"][1] == {"idx": [1, 2], "num": "-3", "den": "7"}
    assert SparseTensor.from_json(t.to_json()) == t


def test_canonical_part_sees_only_symmetric_slots():
    t = SparseTensor((2, 2), (UP, UP), {(0, 1): 1, (1, 0): -1})
    assert canonical_part(t, [0, 1]).is_zero()


def test_from_dense_and_outer():
    m = from_dense([[1, 2], [0, 3]])
    assert m[0, 1] == 2 and len(m) == 3
    o = outer(m, SparseTensor.delta(2))
    assert o.rank == 4 and o[0, 1, 1, 1] == 2


@given(tensors(), tensors(), tensors(dims=(3, 3), variance=(UP, DOWN)))
def test_contract_bilinear(a, a2, b):
    lhs = contract(a + a2, b, [(2, 1)])
    assert lhs == contract(a, b, [(2, 1)]) + contract(a2, b, [(2, 1)])


@given(tensors(variance=(UP, UP, UP)))
def test_symmetrize_idempotent(t):
    s = symmetrize(t, [0, 1, 2])
    assert symmetrize(s, [0, 1, 2]) == s
    assert symmetrize(t, [0, 2]).transpose((2, 1, 0)) == symmetrize(t, [0, 2])


@given(tensors(variance=(UP, UP, UP)))
def test_antisymmetrize_projector(t):
    a = antisymmetrize(t, [0, 1])
    assert antisymmetrize(a, [0, 1]) == a
    assert symmetrize(a, [0, 1]).is_zero()


@given(tensors(variance=(UP, UP, UP)))
def test_cyclic_sum_is_cyclic(t):
    c = cyclic_sum(t, [0, 1, 2])
    assert c.transpose((1, 2, 0)) == c
