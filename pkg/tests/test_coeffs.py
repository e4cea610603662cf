from __future__ import annotations

import json

import pytest
from gmpy2 import mpq

from twisted_yangian import fixtures as F
from twisted_yangian.coeffs import (CoeffBundle, CoeffError, _S2, _base_T, bundle_for_pair,
                                    compute_lambda, compute_phi_big_uncorrected,
                                    compute_remark_tensors, compute_terrific, compute_upsilon,
                                    compute_upsilon_uncorrected, export_bundle, load_bundle,
                                    observable, scaling_report, scaling_report_even,
                                    sl3_remark_forms, upsilon_A_form, upsilon_B_form,
                                    verify_proof_identities)
from twisted_yangian.exact_tensor import canonical_part, symmetrize

EVEN_NAMES = ("h", "hbar", "phi", "psi", "Psi", "Phi", "PhiBar", "W")


def test_beta_swap_antisymmetry():
    beta, _ = compute_terrific(F.sl3())
    assert beta == -beta.transpose((1, 0, 2, 4, 3, 5))


def test_gamma_vanishes_on_commuting_pairs():
    L = F.sl3()
    _, gamma = compute_terrific(L)
    h1, h2 = L.index("h1"), L.index("h2")
    assert not any(k[:4] in {(h1, h2, h1, h2), (h1, h1, h2, h2)} for k in gamma.entries)


def test_lambda_vanishes_for_gl2():
    # only the part symmetric in the three h slots is seen by {X, X, X}
    assert not compute_lambda(F.sl3_gl2()).is_zero()
    assert symmetrize(compute_lambda(F.sl3_gl2()), [2, 3, 4]).is_zero()
    assert not symmetrize(compute_lambda(F.sl3_so3()), [2, 3, 4]).is_zero()


def test_lambda_needs_proper_pair():
    with pytest.raises(CoeffError):
        compute_lambda(F.sl3_even())


@pytest.mark.parametrize("name", ["sl3-so3", "sl3-gl2", "sl4-diag"])
def test_upsilon_forms(name):
    P = F.PAIRS[name]()
    A, B = upsilon_A_form(P), upsilon_B_form(P)
    assert A == B
    assert A == A.transpose((0, 1, 2, 4, 3, 5))
    assert symmetrize(compute_upsilon(P), [3, 4]) == A


def test_uncorrected_upsilon_is_a_quarter():
    P = F.sl3_so3()
    U, U4 = compute_upsilon(P), compute_upsilon_uncorrected(P)
    assert symmetrize(U4.scale(4), [3, 4]) == symmetrize(U, [3, 4])
    assert U4 != U


def test_remark_tensors_linear_identity():
    phi, psi, h, hbar = compute_remark_tensors(F.sl3())
    assert h - hbar == psi.scale(3)
    assert h == phi + psi.scale(2)


@pytest.mark.parametrize("name", ["sl3-so3", "sl3-gl2", "sl4-diag"])
def test_proof_identities(name):
    P = F.PAIRS[name]()
    rep = verify_proof_identities(P.parent, P)
    assert rep.passed, rep.summary()
    assert {"level3.cancel", "level2.cancel", "upsilon.A=B", "ID3"} <= {c.id for c in rep.checks}


def test_proof_identities_killing_sl4():
    assert verify_proof_identities(F.sl4()).passed


def test_id3_with_half_casimir_fails():
    for L in (F.sl3(), F.sl4()):
        T, S2 = _base_T(L), _S2(L)
        r = T.scale(6) - symmetrize(T, [1, 2, 3]).scale(6) - S2.scale(L.casimir / 2)
        assert not r.is_zero()


def test_scaling():
    assert scaling_report(F.sl3(), F.sl3_so3()).passed
    assert scaling_report(F.sl3(), F.sl3_gl2(), s=mpq(1, 3)).passed


def test_scaling_even():
    rep = scaling_report_even(F.sl3())
    assert rep.passed, rep.summary()


def test_remark_equivalence(even_sl3):
    Psi, Phi, PhiBar = sl3_remark_forms(F.sl3(), even_sl3.phi)
    assert canonical_part(even_sl3.Psi, [3, 4, 5]) == canonical_part(Psi, [3, 4, 5])
    assert canonical_part(even_sl3.Phi, [3, 4, 5]) == canonical_part(Phi, [3, 4, 5])
    sl = [3, 4, 5, 6, 7]
    assert canonical_part(even_sl3.PhiBar, sl) == canonical_part(PhiBar, sl)


def test_uncorrected_phi_misses_remark(even_sl3):
    e = even_sl3
    L = F.sl3()
    u = compute_phi_big_uncorrected(L, e.h, e.hbar, e.Psi, e.PhiBar, e.W)
    beta, _ = compute_terrific(L)
    want = canonical_part(beta.scale(mpq(-1, 6)), [3, 4, 5], [0, 1, 2])
    assert canonical_part(u, [3, 4, 5], [0, 1, 2]) != want
    assert canonical_part(e.Phi, [3, 4, 5], [0, 1, 2]) == want


def test_observable_is_symmetric_projection():
    beta, _ = compute_terrific(F.sl3())
    o = observable(beta, [3, 4, 5], [0, 1, 2])
    assert o == o.transpose((1, 0, 2, 3, 4, 5)).scale(-1)
    assert o == o.transpose((0, 1, 2, 4, 3, 5))


def test_bundle_round_trip(tmp_path):
    b = bundle_for_pair(F.sl3_so3())
    assert sorted(b.tensors) == ["beta", "gamma", "lambda", "upsilon"]
    path = export_bundle(b, tmp_path / "b.json")
    back = load_bundle(path)
    assert back.tensors == b.tensors
    assert json.loads(path.read_text())["manifest"][0]["name"] in b.tensors
    assert bundle_for_pair(F.sl3_so3()).digest() == b.digest()


def test_bundle_centre_parameter():
    assert bundle_for_pair(F.sl3_gl2()).counit_center == "c"
    assert bundle_for_pair(F.sl3_so3()).counit_center is None


def test_even_bundle_manifest(tmp_path, even_sl3):
    b = CoeffBundle("sl3", {k: getattr(even_sl3, k) for k in EVEN_NAMES})
    obj = json.loads(export_bundle(b, tmp_path / "e.json").read_text())
    assert len(obj["manifest"]) == 8
    assert load_bundle(tmp_path / "e.json").tensors["Phi"] == even_sl3.Phi
