"""Coefficient tensors of the defining relations and their identity checks.

Index conventions: every tensor keeps the slot order of its written index
signature, lower indices first, e.g. ``beta[a, b, c, i, j, k]`` is
beta_{abc}^{ijk}.  Pair tensors (Lambda, Upsilon) use the local numbering of
h (0..nh-1) and m (0..nm-1) of :class:`SymmetricPairData`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from gmpy2 import mpq

from .exact_tensor import (SparseTensor, antisymmetrize, cyclic_sum, diff_witness, einsum,
                           symmetrize)
from .lie_core import LieAlgebraData
from .report import Report
from .symmetric_pair import SymmetricPairData


class CoeffError(ValueError):
    pass


def _w(a: SparseTensor, b: SparseTensor):
    return diff_witness(a, b)


# Yangian


def compute_terrific(L: LieAlgebraData):
    """beta_{abc}^{ijk} and gamma_{abcd}^{ijk}."""
    up, low, S = L.up, L.low, L.structure
    beta = einsum("ail,bjm,ckn,lmn->abcijk", up, up, up, low)
    gamma = einsum("cde,abeijk->abcdijk", S, beta) + einsum("abe,cdeijk->abcdijk", S, beta)
    return beta, gamma


# even twisted Yangian


def _base_T(L: LieAlgebraData) -> SparseTensor:
    """T[i,a,b,c] = alpha_i^{jk} alpha_j^{cr} alpha_k^{bs} alpha_{sr}^a."""
    up = L.up
    return einsum("ijk,jcr,kbs,sra->iabc", up, up, up, L.structure)


def _S2(L: LieAlgebraData) -> SparseTensor:
    """S[i,a,b,c] = alpha_i^{jc} alpha_j^{ab} + alpha_i^{jb} alpha_j^{ac}."""
    up = L.up
    return einsum("ijc,jab->iabc", up, up) + einsum("ijb,jac->iabc", up, up)


def compute_remark_tensors(L: LieAlgebraData):
    """(phi, psi, h, hbar) of the convenient form of the even coaction."""
    up = L.up
    base = einsum("ajk,jxr,kys,srz->axyz", up, up, up, L.structure)
    # the sum over all 3! placements of (b,c,d) is 6 times the average
    phi = symmetrize(base, [1, 2, 3]).scale(mpq(1, 4) / L.casimir)
    psi = (einsum("ajd,jbc->abcd", up, up) + einsum("ajc,jbd->abcd", up, up)).scale(mpq(1, 12))
    h = phi + psi.scale(2)
    hbar = phi - psi
    return phi, psi, h, hbar


def compute_psi_big(L: LieAlgebraData, hbar: SparseTensor) -> SparseTensor:
    S = L.structure
    t1 = einsum("abd,crk,drij->abcijk", S, S, hbar)
    t2 = einsum("drk,abd,crij->abcijk", S, S, hbar)
    return cyclic_sum(t1 - t2, [0, 1, 2])


def compute_phibar(L: LieAlgebraData, h: SparseTensor, Psi: SparseTensor) -> SparseTensor:
    S = L.structure
    t1 = cyclic_sum(einsum("rsi,abd,crjk,dslm->abcijklm", S, S, h, h), [0, 1, 2])
    t2 = einsum("abcjkr,rilm->abcijklm", Psi, h)
    return (t1 - t2).scale(mpq(1, 5))


def compute_W(L: LieAlgebraData, h: SparseTensor, hbar: SparseTensor) -> SparseTensor:
    S = L.structure
    w1 = (einsum("rsi,crxy,dszk,xtj,yzt->cdijk", S, h, h, S, S)
          + einsum("rsi,crxy,dszt,xtk,yzj->cdijk", S, h, h, S, S))
    w2 = (einsum("cxyz,defk,yet,zti,xfj->cdijk", hbar, h, S, S, S)
          - einsum("dxyz,cefk,yet,zti,xfj->cdijk", hbar, h, S, S, S))
    w3 = (einsum("cjxy,dkzr,xrs,zyt,sti->cdijk", hbar, hbar, S, S, S)
          + einsum("cjxy,dkzr,xrs,syt,zti->cdijk", hbar, hbar, S, S, S))
    return w1 + w2 + w3


def nested_cyclic(t: SparseTensor, outer, inner) -> SparseTensor:
    """Cyclic sum over the ``outer`` slot group, then over the ``inner`` group."""
    return cyclic_sum(cyclic_sum(t, outer), inner)


def _phi_parts(L: LieAlgebraData, h, hbar, Psi, W):
    S = L.structure
    A = cyclic_sum(einsum("abd,cdijk->abcijk", S, W), [0, 1, 2])
    C = einsum("abcxjy,ykzr,zxs,rsi->abcijk", Psi, hbar, S, S)
    D = einsum("abcxyz,zrsk,rxi,ysj->abcijk", Psi, h, S, S)
    return A, C, D


def quintic_lowering(L: LieAlgebraData, PhiBar) -> SparseTensor:
    """Degree-2 remainder of 15 PhiBar^{ijklm} x_i (x) {x_j,x_k,{x_l,x_m}}.

    Uses {a,b,{c,d}} = {a,b,c,d} + 1/6 {[a,c],[b,d]} - 1/3 {a,[c,[b,d]]}
    for coefficients symmetric in (a,b) and in (c,d).
    """
    S = L.structure
    E = PhiBar.scale(5)
    pair = einsum("abcipqlm,plj,qmk->abcijk", E, S, S).scale(mpq(1, 2))
    chain = einsum("abcijqlm,qmr,lrk->abcijk", E, S, S)
    return pair - chain


def compute_phi_big(L: LieAlgebraData, h, hbar, Psi, PhiBar, W) -> SparseTensor:
    """Cubic coefficient of the level-4 relation.

    The quintic term enters through its exact degree-2 remainder and the
    h-term carries the sign it has in the coaction of {x_i, x_j, G(x_k)}.
    """
    A, C, D = _phi_parts(L, h, hbar, Psi, W)
    return (A + quintic_lowering(L, PhiBar) - C + D).scale(mpq(1, 9))


def compute_phi_big_uncorrected(L: LieAlgebraData, h, hbar, Psi, PhiBar, W) -> SparseTensor:
    """Closed form with the nested-cyclic quintic term and -D; kept for comparison only.

    It misses -beta/6 for sl3; :func:`compute_phi_big` is the corrected form.
    """
    S = L.structure
    A, C, D = _phi_parts(L, h, hbar, Psi, W)
    # PhiBar^{(ix(yzj))}: slots of PhiBar are a,b,c,i,x,y,z,j
    nested = nested_cyclic(PhiBar, [3, 4, 5, 6, 7], [5, 6, 7])
    Bt = einsum("abcixyzj,xyr,rzk->abcijk", nested, S, S)
    return (A + Bt.scale(mpq(1, 6)) - C - D).scale(mpq(1, 9))


@dataclass
class EvenCoeffs:
    phi: SparseTensor
    psi: SparseTensor
    h: SparseTensor
    hbar: SparseTensor
    Psi: SparseTensor
    PhiBar: SparseTensor
    W: SparseTensor
    Phi: SparseTensor


def compute_even_coeffs(L: LieAlgebraData) -> EvenCoeffs:
    phi, psi, h, hbar = compute_remark_tensors(L)
    Psi = compute_psi_big(L, hbar)
    PhiBar = compute_phibar(L, h, Psi)
    W = compute_W(L, h, hbar)
    Phi = compute_phi_big(L, h, hbar, Psi, PhiBar, W)
    return EvenCoeffs(phi, psi, h, hbar, Psi, PhiBar, W, Phi)


def sl3_remark_forms(L: LieAlgebraData, phi: SparseTensor, beta: SparseTensor | None = None):
    """Simplified (Psi, Phi, PhiBar) stated for sl3."""
    if beta is None:
        beta, _ = compute_terrific(L)
    S, up = L.structure, L.up
    Psi = (cyclic_sum(beta, [0, 1, 2]).scale(mpq(1, 3))
           + cyclic_sum(einsum("abd,clk,dlij->abcijk", S, S, phi), [0, 1, 2])
           - cyclic_sum(einsum("dlk,abd,clij->abcijk", S, S, phi), [0, 1, 2]))
    Phi = beta.scale(mpq(-1, 6))
    PhiBar = cyclic_sum(einsum("air,bjs,crsklm->abcijklm", up, up, beta), [0, 1, 2]).scale(mpq(1, 36))
    return Psi, Phi, PhiBar


def observable(t: SparseTensor, sym_slots, anti_slots=None) -> SparseTensor:
    """Part of a coefficient tensor seen by its relation.

    ``sym_slots`` are contracted with a symmetrized product; ``anti_slots`` are
    lower indices in which the left-hand side is totally antisymmetric.
    """
    out = symmetrize(t, sym_slots)
    if anti_slots:
        out = antisymmetrize(out, anti_slots)
    return out


# proper twisted Yangian


def _need_proper(P: SymmetricPairData):
    if not P.is_proper:
        raise CoeffError("Lambda/Upsilon need a pair with nonempty m")
    if any(c == 0 for c in P.cbar_of):
        raise CoeffError("cbar_(alpha) vanishes for some block")


def compute_lambda(P: SymmetricPairData) -> SparseTensor:
    """Lambda[p, q, lam, mu, nu] with p, q in m and lam, mu, nu in h."""
    _need_proper(P)
    g_hi, w, w_hi = P.hi("mhm"), P.w, P.hi("hmm")
    l1 = einsum("pmt,qlu,tun->pqlmn", g_hi, g_hi, w)
    l2 = einsum("pqa,ab,brs,rmt,slu,tun->pqlmn", w, P.inv_cbar, w_hi, g_hi, g_hi, w)
    return (l1 + l2).scale(mpq(1, 3))


def _upsilon_core(P: SymmetricPairData) -> SparseTensor:
    """X[p,q,r,lam,mu,u] = w_{st}^al g_p^{lam s} g_q^{mu t} g_{al r}^u
    + w_{pq}^al f_al^{lam be} g_r^{mu s} g_{be s}^u."""
    g_hi, g_lo, w = P.hi("mhm"), P.lo("hmm"), P.w
    f_hi = P.hi("hhh")
    a1 = einsum("sta,pls,qmt,aru->pqrlmu", w, g_hi, g_hi, g_lo)
    a2 = einsum("pqa,alb,rms,bsu->pqrlmu", w, f_hi, g_hi, g_lo)
    return a1 + a2


def _dress(P: SymmetricPairData, A: SparseTensor) -> SparseTensor:
    """A_{pqr} + (2/c_g) kappa_m^{tv} w_{pq}^mu g_{r mu}^s A_{stv}."""
    extra = einsum("tv,pqm,rms,stvlgu->pqrlgu", P.kappa_m_inv, P.w, P.lo("mhm"), A)
    return A + extra.scale(2 / P.casimir)


def compute_upsilon(P: SymmetricPairData) -> SparseTensor:
    """Upsilon[p, q, r, lam, mu, u] with unit weight on the first bracket.

    On the part symmetric in (lam, mu), the only part {X, X, B} sees, this
    equals :func:`upsilon_A_form`.
    """
    _need_proper(P)
    return _dress(P, _upsilon_core(P))


def compute_upsilon_uncorrected(P: SymmetricPairData) -> SparseTensor:
    """The same closed form with weight 1/4 on the first bracket, kept for comparison.

    It is exactly a quarter of :func:`compute_upsilon` and misses the sl3
    level-3 values by that factor.
    """
    _need_proper(P)
    X = _upsilon_core(P)
    extra = einsum("vx,pqg,rgy,yvxlmu->pqrlmu", P.kappa_m_inv, P.w, P.lo("mhm"), X)
    return X.scale(mpq(1, 4)) + extra.scale(1 / (2 * P.casimir))


def upsilon_A_form(P: SymmetricPairData) -> SparseTensor:
    _need_proper(P)
    X = _upsilon_core(P)
    A = (X + X.transpose((0, 1, 2, 4, 3, 5))).scale(mpq(1, 2))
    return _dress(P, A)


def upsilon_B_form(P: SymmetricPairData) -> SparseTensor:
    _need_proper(P)
    w, w_hi, g_hi, g_mhm = P.w, P.hi("hmm"), P.hi("mhm"), P.lo("mhm")
    b1 = einsum("tsg,pqb,but,ras->pqragu", w, w, w_hi, g_hi)
    b2 = einsum("tsg,rbu,pas,qbt->pqragu", w, g_mhm, g_hi, g_hi)
    b3 = einsum("tsg,rbu,pbs,qat->pqragu", w, g_mhm, g_hi, g_hi)
    Bt = (b1 + b2 + b3).scale(mpq(1, 2))
    return _dress(P, Bt)


# identity suite


def verify_proof_identities(L: LieAlgebraData, P: SymmetricPairData | None = None) -> Report:
    rep = Report("proof-identities")
    c = L.casimir
    up = L.up
    T = _base_T(L)
    S2 = _S2(L)
    phi, psi, h, hbar = compute_remark_tensors(L)
    aa = einsum("ijc,jab->iabc", up, up)

    r = hbar.transpose((0, 3, 2, 1)).scale(4) - h.scale(4) + aa
    rep.add("derivation.hhbar", "4 hbar_i^{cba} - 4 h_i^{abc} + alpha_i^{jc} alpha_j^{ab} = 0",
            r.is_zero(), _first(r))
    r = (h - hbar) - psi.scale(3)
    rep.add("remark.h-hbar", "h - hbar = 3 psi", r.is_zero(), _first(r))
    # the coefficient of the aa terms is c_g (c_g/2 leaves a residual)
    r = T.scale(6) - symmetrize(T, [1, 2, 3]).scale(6) - S2.scale(c)
    rep.add("ID3", "6T = sum_pi T + c_g(aa + aa)", r.is_zero(), _first(r))
    r = T - T.transpose((0, 2, 1, 3)) - aa.scale(c / 2)
    rep.add("AUX1", "auxiliary identity with a<->b exchange", r.is_zero(), _first(r))
    aa2 = einsum("ijb,jac->iabc", up, up)
    r = T - T.transpose((0, 3, 2, 1)) - aa2.scale(c / 2)
    rep.add("AUX2", "auxiliary identity with a<->c exchange", r.is_zero(), _first(r))

    if P is not None and P.is_proper:
        w, g_hmm, g_mhm = P.w, P.lo("hmm"), P.lo("mhm")
        e1 = einsum("pqb,brt->pqrt", w, g_hmm)
        e2 = einsum("uv,pqa,ras,sub,bvt->pqrt", P.kappa_m_inv, w, g_mhm, w, g_hmm)
        r = e1 + e2.scale(2 / c)
        rep.add("level3.cancel", "w g + (2/c_g) kappa w g w g = 0 (via ggid)", r.is_zero(), _first(r))
        r = w + einsum("pqa,ab,brs,rsm->pqm", w, P.inv_cbar, P.hi("hmm"), w)
        rep.add("level2.cancel", "w + sum cbar^-1 w w w = 0", r.is_zero(), _first(r))
        A, Bf = upsilon_A_form(P), upsilon_B_form(P)
        rep.add("upsilon.A=B", "A-form equals B-form", A == Bf, _w(A, Bf))
        r = A - A.transpose((0, 1, 2, 4, 3, 5))
        rep.add("upsilon.sym", "Upsilon symmetric in its two h indices", r.is_zero(), _first(r))
        U = compute_upsilon(P)
        r = (U + U.transpose((0, 1, 2, 4, 3, 5))).scale(mpq(1, 2)) - A
        rep.add("upsilon.closed=A", "closed form of Upsilon equals the A-form on its (lam mu) part",
                r.is_zero(), _first(r))
    return rep.finish()


def scaling_report(L: LieAlgebraData, P: SymmetricPairData | None = None, s=2) -> Report:
    """Rescale the form by s and compare with the predicted powers of s."""
    from .symmetric_pair import decompose

    rep = Report("scaling")
    s = mpq(s)
    L2 = L.rescaled(s)
    b1, g1 = compute_terrific(L)
    b2, g2 = compute_terrific(L2)
    rep.add("beta", "beta scales as s^-2", b2 == b1.scale(s ** -2))
    rep.add("gamma", "gamma scales as s^-2", g2 == g1.scale(s ** -2))
    e1 = compute_remark_tensors(L)
    e2 = compute_remark_tensors(L2)
    for name, x, y in zip(("phi", "psi", "h", "hbar"), e1, e2):
        rep.add(name, f"{name} scales as s^-2", y == x.scale(s ** -2))
    if P is not None and P.is_proper:
        P2 = decompose(L2, P.theta, name=P.name)
        rep.add("lambda", "Lambda scales as s^-2", compute_lambda(P2) == compute_lambda(P).scale(s ** -2))
        rep.add("upsilon", "Upsilon scales as s^-2",
                compute_upsilon(P2) == compute_upsilon(P).scale(s ** -2))
    return rep.finish()


def scaling_report_even(L: LieAlgebraData, s=2) -> Report:
    rep = Report("scaling-even")
    s = mpq(s)
    a = compute_even_coeffs(L)
    b = compute_even_coeffs(L.rescaled(s))
    for name, power in (("Psi", -2), ("W", -4), ("PhiBar", -4), ("Phi", -4)):
        x, y = getattr(a, name), getattr(b, name)
        rep.add(name, f"{name} scales as s^{power}", y == x.scale(s ** power))
    return rep.finish()


def _first(t: SparseTensor):
    if t.is_zero():
        return None
    k = min(t.entries)
    return [list(k), str(t.entries[k])]


# export

TENSOR_NOTES = {
    "beta": "level-2 terrific coefficient beta_{abc}^{ijk}",
    "gamma": "level-3 terrific coefficient gamma_{abcd}^{ijk}",
    "lambda": "level-2 horrific coefficient Lambda_{pq}^{lam mu nu} (h, m local indices)",
    "upsilon": "level-3 horrific coefficient Upsilon_{pqr}^{lam mu u} (h, m local indices)",
    "h": "coaction tensor h_a^{bcd}",
    "hbar": "coaction tensor hbar_a^{bcd}",
    "phi": "coaction tensor phi_a^{bcd}",
    "psi": "coaction tensor psi_a^{bcd}",
    "Psi": "level-4 horrific coefficient Psi_{abc}^{ijk}",
    "Phi": "level-4 horrific coefficient Phi_{abc}^{ijk}",
    "PhiBar": "level-4 horrific coefficient PhiBar_{abc}^{ijklm}",
    "W": "auxiliary tensor W_{cd}^{ijk}",
}


@dataclass
class CoeffBundle:
    name: str
    tensors: dict = field(default_factory=dict)
    counit_center: object = None

    def to_json_obj(self) -> dict:
        manifest = [{"name": k, "description": TENSOR_NOTES.get(k, ""), "rank": t.rank,
                     "entries": len(t)} for k, t in self.tensors.items()]
        obj = {"kind": "coeff_bundle", "name": self.name, "manifest": manifest,
               "tensors": {k: t.to_json_obj() for k, t in self.tensors.items()}}
        if self.counit_center is not None:
            obj["counit_center"] = str(self.counit_center)
        return obj

    @classmethod
    def from_json_obj(cls, obj) -> "CoeffBundle":
        if obj.get("kind") != "coeff_bundle":
            raise CoeffError("JSON object is not a coeff_bundle")
        return cls(obj["name"], {k: SparseTensor.from_json_obj(v) for k, v in obj["tensors"].items()},
                   obj.get("counit_center"))

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json_obj(), sort_keys=True).encode()).hexdigest()


def bundle_for_pair(P: SymmetricPairData) -> CoeffBundle:
    beta, gamma = compute_terrific(P.parent)
    b = CoeffBundle(P.name or "pair", {"beta": beta, "gamma": gamma})
    if P.is_proper:
        b.tensors["lambda"] = compute_lambda(P)
        b.tensors["upsilon"] = compute_upsilon(P)
        if any(k == "center" for k, _ in P.blocks):
            b.counit_center = "c"
    return b


def bundle_for_even(L: LieAlgebraData) -> CoeffBundle:
    e = compute_even_coeffs(L)
    return CoeffBundle(L.name or "even", {"h": e.h, "hbar": e.hbar, "phi": e.phi, "psi": e.psi,
                                          "Psi": e.Psi, "Phi": e.Phi, "PhiBar": e.PhiBar, "W": e.W})


def export_bundle(bundle: CoeffBundle, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(bundle.to_json_obj(), indent=1, sort_keys=True))
    return path


def load_bundle(path) -> CoeffBundle:
    return CoeffBundle.from_json_obj(json.loads(Path(path).read_text()))
