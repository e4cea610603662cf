from __future__ import annotations

import dataclasses

import pytest
from gmpy2 import mpq

from twisted_yangian import fixtures as F
from twisted_yangian.coeffs import compute_phi_big_uncorrected, compute_upsilon_uncorrected
from twisted_yangian.golden import (Family, check_gl2_golden, check_so3_golden,
                                    check_yangian_golden, fcomm, lin, predict, run_golden, sym, word)
from twisted_yangian.ncpoly import X, code
from twisted_yangian.report import Report


def by_id(rep):
    return {c.id: c for c in rep.checks}


def test_predict_solves_and_checks_nullspace():
    a, b = code(X, 0), code(X, 1)
    fam = Family("toy")
    fam.add(word(lin((1, a))), {(0, (a,)): mpq(2)})
    fam.add(word(lin((1, b))), {(0, (b,)): mpq(3)})
    target = word(lin((1, a), (1, b)))
    pred, bad = predict(fam, target)
    assert pred == {(0, (a,)): 2, (0, (b,)): 3}
    assert not bad
    # a family whose lhs cancels but whose rhs does not is reported
    fam.add(word(lin((1, a))), {(0, (a,)): mpq(5)})
    _, bad = predict(fam, target)
    assert bad


def test_yangian_level2():
    rep = Report("t")
    check_yangian_golden(rep)
    ids = by_id(rep)
    assert ids["sl3.casimir"].passed
    assert ids["yangian.level2.3/4"].passed and ids["yangian.level2.3/4'"].passed
    assert rep.passed


def test_so3_tables():
    rep = Report("t")
    check_so3_golden(rep)
    assert rep.passed, rep.summary()
    vals = {tuple(k[1]): k[2] for k in rep.values["so3.level3"]}
    assert vals[("Cf", "Cf", "B(CE2)")] == "3/2"
    assert vals[("Cf", "Ch", "B(CE)")] == "15/4"
    vals2 = {tuple(k[1]): k[2] for k in rep.values["so3.level2"]}
    assert vals2 == {("Ch", "Ch", "Ch"): "1/4", ("Ce", "Cf", "Ch"): "-3/4"}


def test_uncorrected_upsilon_fails_golden():
    rep = Report("t")
    check_so3_golden(rep, upsilon=compute_upsilon_uncorrected, tag="so3u")
    ids = by_id(rep)
    assert ids["so3u.level2"].passed
    assert not ids["so3u.level3"].passed
    assert ids["so3u.level3.3/2"].witness == ["3/8", "3/2"]
    assert not ids["so3u.level3.consistent"].passed


def test_gl2_tables():
    rep = Report("t")
    check_gl2_golden(rep)
    assert rep.passed, rep.summary()
    assert rep.values["gl2.level2.E"] == [] and rep.values["gl2.level2.F"] == []
    assert rep.values["gl2.level3.F.as-given"]["computed coefficient"] == "0"


def test_full_golden_suite(even_sl3):
    rep = run_golden(coeffs=even_sl3)
    assert rep.passed, rep.summary()
    assert len(rep.checks) == 39
    ids = by_id(rep)
    for sub in ("hbar2.1", "hbar2.1/2", "hbar2.1/4", "hbar2.-1/4", "hbar4.-1/2", "hbar4.-1/4",
                "hbar4.-1/12"):
        assert ids[f"even.level4.{sub}"].passed


def test_uncorrected_phi_fails_level4(even_sl3):
    e = even_sl3
    bad = compute_phi_big_uncorrected(F.sl3(), e.h, e.hbar, e.Psi, e.PhiBar, e.W)
    rep = Report("t")
    from twisted_yangian.golden import check_even_golden
    check_even_golden(rep, dataclasses.replace(e, Phi=bad))
    ids = by_id(rep)
    assert ids["even.level4.hbar2"].passed
    assert not ids["even.level4.hbar4"].passed
