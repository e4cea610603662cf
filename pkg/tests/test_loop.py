from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_yangian import fixtures as F
from twisted_yangian.lie_core import sl2
from twisted_yangian.loop import (LoopElement, LoopError, check_classical_relations, drinfeld_B,
                                  drinfeld_J, loop_bracket, loop_pairing, theta_extended)


@st.composite
def elements(draw, dim=8, max_deg=4):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, dim - 1), st.integers(0, max_deg)),
                                 st.integers(-3, 3), max_size=4))
    return LoopElement(terms)


def test_sl2_graded_bracket():
    L = sl2()
    e, f, h = (L.index(x) for x in "efh")
    assert loop_bracket(LoopElement.basis(e, 1), LoopElement.basis(f, 2), L) == LoopElement.basis(h, 3)


def test_pair_context_uses_blocked_constants():
    P = F.sl3_so3()
    g = P.lo("hmm")
    for al in range(P.nh):
        for p in range(P.nm):
            got = loop_bracket(LoopElement.basis(al, 0), LoopElement.basis(P.nh + p, 1), P)
            want = LoopElement({(P.nh + q, 1): g[al, p, q] for q in range(P.nm)})
            assert got == want


def test_bad_context():
    with pytest.raises(LoopError):
        loop_bracket(LoopElement.basis(0, 0), LoopElement.basis(0, 0), object())


@given(elements(), elements(), elements())
def test_bracket_axioms(x, y, z):
    L = F.sl3()
    br = lambda a, b: loop_bracket(a, b, L)
    assert (br(x, y) + br(y, x)).is_zero()
    assert (br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))).is_zero()


@given(elements(), elements())
def test_grading_additive(x, y):
    L = F.sl3()
    for (a, k) in x.terms:
        for (b, l) in y.terms:
            d = loop_bracket(LoopElement.basis(a, k), LoopElement.basis(b, l), L).degrees()
            assert d <= {k + l}


def test_theta_extended():
    P = F.sl3_so3()
    X2 = LoopElement.basis(0, 2)
    Y2 = LoopElement.basis(P.nh, 2)
    assert theta_extended(X2, P) == X2
    assert theta_extended(Y2, P) == -Y2
    assert theta_extended(LoopElement.basis(P.nh, 1), P) == LoopElement.basis(P.nh, 1)


@given(elements())
def test_theta_involutive(x):
    P = F.sl3_so3()
    assert theta_extended(theta_extended(x, P), P) == x


def test_drinfeld_J_is_loop_basis():
    L = F.sl3()
    for n in range(5):
        for a in range(L.dim):
            assert drinfeld_J(n, a, L) == LoopElement.basis(a, n)
    for a in range(L.dim):
        for b in range(L.dim):
            lhs = loop_bracket(drinfeld_J(1, a, L), drinfeld_J(2, b, L), L)
            want = LoopElement({(c, 3): v for (aa, bb, c), v in L.structure.entries.items()
                                if (aa, bb) == (a, b)})
            assert lhs == want


@pytest.mark.parametrize("name", ["sl3-so3", "sl3-gl2", "sl4-diag"])
def test_drinfeld_B_is_loop_basis(name):
    P = F.PAIRS[name]()
    for level in range(6):
        n = P.nm if level % 2 else P.nh
        off = P.nh if level % 2 else 0
        for i in range(n):
            assert drinfeld_B(level, i, P) == LoopElement.basis(off + i, level)


def test_drinfeld_B_rejects_rank_one_and_improper():
    L = sl2()
    from twisted_yangian.symmetric_pair import decompose, involution_from_images
    theta = involution_from_images(L, {"e": {"e": -1}, "f": {"f": -1}})
    with pytest.raises(LoopError):
        drinfeld_B(1, 0, decompose(L, theta))
    with pytest.raises(LoopError):
        drinfeld_B(1, 0, F.sl3_even())


def test_pairing_isotropic():
    L = F.sl3()
    a, b = L.index("e1"), L.index("f1")
    assert loop_pairing(LoopElement.basis(a, 1), LoopElement.basis(b, -2), L) == 1
    assert loop_pairing(LoopElement.basis(a, 1), LoopElement.basis(b, 2), L) == 0
    assert loop_pairing(LoopElement.basis(a, -1), LoopElement.basis(b, -3), L) == 0


@pytest.mark.parametrize("name", ["sl3", "sl3-so3", "sl3-gl2", "sl3-even", "sl4-diag"])
def test_classical_relations(name):
    ctx = F.sl3() if name == "sl3" else F.PAIRS[name]()
    rep = check_classical_relations(ctx, max_degree=5)
    assert rep.passed, rep.summary()
    ids = {c.id for c in rep.checks}
    if name in ("sl3-so3", "sl3-gl2", "sl4-diag"):
        assert {"LH2", "LH3", "B.basis"} <= ids
    assert {"DL2", "DL3", "LH4", "J.basis"} <= ids
