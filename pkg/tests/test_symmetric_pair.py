from __future__ import annotations

import json

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from twisted_yangian import fixtures as F
from twisted_yangian.exact_tensor import DOWN, UP, SparseTensor, einsum
from twisted_yangian.lie_core import change_basis
from twisted_yangian.symmetric_pair import (PairError, SymmetricPairData, bi_ideal_tau,
                                            bialgebra_report, check_involution, cocommutator,
                                            decompose, diagonal_involution, identity_involution,
                                            involution_from_images, verify_pair_identities)


@pytest.mark.parametrize("name", sorted(F.PAIRS))
def test_pair_identities(name):
    P = F.PAIRS[name]()
    rep = verify_pair_identities(P)
    assert rep.passed, rep.summary()


def test_so3_pair():
    P = F.sl3_so3()
    assert (P.nh, P.nm) == (3, 5)
    assert P.h_labels == ("Ce", "Cf", "Ch")
    assert set(P.m_labels) == {"CE", "CE2", "CF", "f3", "CH"}
    # c_g = c_(h) + cbar_(h) and sum g g = (c_g / 2) delta
    assert P.c_of[0] + P.cbar_of[0] == P.casimir == 6
    gg = einsum("prz,zrq->pq", P.hi("mmh"), P.lo("hmm"), strict=False)
    assert gg == SparseTensor.delta(5, gg.variance).scale(3)


def test_gl2_pair_centre():
    P = F.sl3_gl2()
    assert (P.nh, P.nm) == (4, 4)
    assert P.blocks[1] == ("center", (3,))
    assert P.h_labels[3] == "Ck"
    assert P.c_of[3] == 0
    assert P.h_vectors[3][6:] == (1, 2)


def test_identity_involution_gives_empty_m():
    P = F.sl3_even()
    assert P.nm == 0 and not P.is_proper
    assert P.f == P.parent.structure
    assert P.w.is_zero() and P.g.is_zero()
    assert verify_pair_identities(P).passed


def test_sl4_diag_two_simple_blocks_and_centre():
    P = F.sl4_diag()
    kinds = [k for k, _ in P.blocks]
    assert kinds == ["simple", "simple", "center"]
    assert all(c > 0 for c, (k, _) in zip(P.cbar_of, [P.blocks[b] for b in P.block_of]) if k != "center")


def test_bad_involutions():
    L = F.sl3()
    with pytest.raises(PairError, match="square"):
        check_involution(L, SparseTensor.delta(8).scale(2))
    swap = involution_from_images(L, {"e1": {"e2": 1}, "e2": {"e1": 1}})
    with pytest.raises(PairError, match="automorphism"):
        check_involution(L, swap)
    with pytest.raises(PairError):
        diagonal_involution(F.sl4(), [1, 1, 1])


def test_json_round_trip():
    P = F.sl3_gl2()
    obj = json.loads(json.dumps(P.to_json_obj()))
    Q = SymmetricPairData.from_json_obj(obj)
    assert Q.f == P.f and Q.g == P.g and Q.w == P.w and Q.blocks == P.blocks


def test_cocommutator_skew_and_duality():
    L = F.sl3()
    for a in range(L.dim):
        d = cocommutator(L, a)
        assert (d + d.transpose((1, 0))).is_zero()
    rep = bialgebra_report(L, F.sl3_so3())
    assert rep.passed, rep.summary()


def test_tau_support_gl2():
    P = F.sl3_gl2()
    for p in range(P.nm):
        t = bi_ideal_tau(P, p)
        assert t.dims == (P.nm, P.nh)
    assert not bi_ideal_tau(P, 0).is_zero()
    with pytest.raises(PairError):
        bi_ideal_tau(F.sl3_even(), 0)


@given(st.permutations(range(8)))
def test_block_detection_stable_under_basis_permutation(perm):
    L = F.sl3()
    vecs = [[1 if j == i else 0 for j in range(8)] for i in perm]
    M = change_basis(L, vecs, labels=[L.labels[i] for i in perm])
    theta = F.gl2_involution(M)
    P = decompose(M, theta)
    assert (P.nh, P.nm) == (4, 4)
    assert sorted(k for k, _ in P.blocks) == ["center", "simple"]
    assert sorted(P.block_casimir) == [0, 4]
    assert verify_pair_identities(P).passed
