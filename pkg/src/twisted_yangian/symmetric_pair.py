"""Symmetric pairs g = h + m of an involution and their adapted basis.

The adapted basis lists the simple blocks of h (each in canonical row-reduced
form), then the centre of h, then m.  All blocked constants are restrictions
of the structure constants written in that basis:

    f[al, be, ga] = [X_al, X_be] -> X_ga
    g[al, p, q]   = [X_al, Y_p]  -> Y_q
    w[p, q, al]   = [Y_p, Y_q]   -> X_al

Raised variants (f_al^{be ga}, g_p^{al q}, w_al^{pq}, ...) are restrictions of
``adapted.up``; see :meth:`SymmetricPairData.hi`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from gmpy2 import mpq

from . import linalg
from .exact_tensor import DOWN, UP, SparseTensor, einsum, Q
from .lie_core import LieAlgebraData, change_basis, _mat_comb
from .report import Report


class PairError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else f"{msg} (witness {witness})")
        self.witness = witness


def _first(t: SparseTensor):
    return min(t.entries) if t.entries else None


# involutions

def involution_from_images(L: LieAlgebraData, images: dict) -> SparseTensor:
    """theta_a^b from a dict label -> {label: coeff}; unlisted labels are fixed."""
    ent = {}
    for a, lab in enumerate(L.labels):
        img = images.get(lab, {lab: 1})
        for tgt, c in img.items():
            if c:
                ent[(a, L.index(tgt))] = Q(c)
    return SparseTensor((L.dim, L.dim), (DOWN, UP), ent)


def identity_involution(L: LieAlgebraData) -> SparseTensor:
    return SparseTensor.delta(L.dim)


def diagonal_involution(L: LieAlgebraData, signs) -> SparseTensor:
    """Conjugation by diag(signs) in the matrix realization of L."""
    if L.matrices is None:
        raise PairError("algebra carries no matrix realization")
    N = len(L.matrices[0])
    if len(signs) != N:
        raise PairError(f"need {N} signs")
    imgs = []
    for m in L.matrices:
        imgs.append([[m[i][j] * signs[i] * signs[j] for j in range(N)] for i in range(N)])
    flat = [[m[i][j] for i in range(N) for j in range(N)] for m in L.matrices]
    ent = {}
    for a, img in enumerate(imgs):
        target = [img[i][j] for i in range(N) for j in range(N)]
        coords = linalg.solve(linalg.transpose(flat), target)
        if coords is None:
            raise PairError("conjugate leaves the algebra")
        for b, c in enumerate(coords):
            if c:
                ent[(a, b)] = c
    return SparseTensor((L.dim, L.dim), (DOWN, UP), ent)


def check_involution(L: LieAlgebraData, theta: SparseTensor):
    """Raise PairError unless theta squares to one and is an automorphism."""
    n = L.dim
    if theta.dims != (n, n):
        raise PairError(f"involution has dims {theta.dims}")
    theta = theta.with_variance((DOWN, UP))
    sq = einsum("ab,bc->ac", theta, theta) - SparseTensor.delta(n)
    if not sq.is_zero():
        raise PairError("theta does not square to the identity", _first(sq))
    lhs = einsum("abc,cd->abd", L.structure, theta)
    rhs = einsum("ae,bf,efd->abd", theta, theta, L.structure)
    diff = lhs - rhs
    if not diff.is_zero():
        raise PairError("theta is not a Lie algebra automorphism", _first(diff))
    return theta


# pair data

def _vec_label(labels, v):
    parts = []
    for lab, c in zip(labels, v):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        coef = "" if a == 1 else f"{a}"
        if a.denominator != 1:
            coef = f"({a})"
        parts.append((sign, f"{coef}{lab}"))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, t in parts[1:]:
        s += sign + t
    return s


@dataclass(frozen=True, eq=False)
class SymmetricPairData:
    parent: LieAlgebraData
    theta: SparseTensor
    adapted: LieAlgebraData
    h_vectors: tuple
    m_vectors: tuple
    blocks: tuple          # ((kind, (h indices...)), ...) kind in {"simple", "center"}
    block_casimir: tuple   # c_(alpha) per block
    name: str = ""

    @property
    def nh(self) -> int:
        return len(self.h_vectors)

    @property
    def nm(self) -> int:
        return len(self.m_vectors)

    @property
    def casimir(self) -> mpq:
        return self.adapted.casimir

    @property
    def is_proper(self) -> bool:
        return self.nm > 0

    @cached_property
    def H(self):
        return list(range(self.nh))

    @cached_property
    def M(self):
        return list(range(self.nh, self.nh + self.nm))

    def _ranges(self, spaces: str):
        return [self.H if s == "h" else self.M for s in spaces]

    def lo(self, spaces: str) -> SparseTensor:
        """Restriction of alpha_{ab}^c, e.g. lo("hmm") = g_{al p}^q."""
        return self.adapted.structure.restrict(self._ranges(spaces))

    def hi(self, spaces: str) -> SparseTensor:
        """Restriction of alpha_a^{bc}, e.g. hi("mhm") = g_p^{al q}."""
        return self.adapted.up.restrict(self._ranges(spaces))

    @cached_property
    def f(self) -> SparseTensor:
        return self.lo("hhh")

    @cached_property
    def g(self) -> SparseTensor:
        return self.lo("hmm")

    @cached_property
    def w(self) -> SparseTensor:
        return self.lo("mmh")

    @cached_property
    def kappa_h(self) -> SparseTensor:
        return self.adapted.form.restrict([self.H, self.H])

    @cached_property
    def kappa_m(self) -> SparseTensor:
        return self.adapted.form.restrict([self.M, self.M])

    @cached_property
    def kappa_h_inv(self) -> SparseTensor:
        return self.adapted.form_inverse.restrict([self.H, self.H])

    @cached_property
    def kappa_m_inv(self) -> SparseTensor:
        return self.adapted.form_inverse.restrict([self.M, self.M])

    @cached_property
    def block_of(self) -> list:
        out = [None] * self.nh
        for b, (_, idx) in enumerate(self.blocks):
            for i in idx:
                out[i] = b
        return out

    @cached_property
    def c_of(self) -> list:
        return [self.block_casimir[self.block_of[i]] for i in range(self.nh)]

    @cached_property
    def cbar_of(self) -> list:
        return [self.casimir - c for c in self.c_of]

    @cached_property
    def inv_cbar(self) -> SparseTensor:
        """Diagonal weight 1/cbar_(alpha) over h, as a (down, up) tensor."""
        return SparseTensor((self.nh, self.nh), (DOWN, UP),
                            {(i, i): 1 / c for i, c in enumerate(self.cbar_of)}, check=False)

    @property
    def h_labels(self):
        return self.adapted.labels[:self.nh]

    @property
    def m_labels(self):
        return self.adapted.labels[self.nh:]

    def block_kappa(self, b) -> SparseTensor:
        idx = self.blocks[b][1]
        return self.kappa_h.restrict([idx, idx])

    def to_json_obj(self) -> dict:
        return {
            "kind": "symmetric_pair", "name": self.name,
            "parent": self.parent.to_json_obj(),
            "theta": self.theta.to_json_obj(),
            "adapted_labels": list(self.adapted.labels),
            "h_vectors": [[str(x) for x in v] for v in self.h_vectors],
            "m_vectors": [[str(x) for x in v] for v in self.m_vectors],
            "blocks": [{"kind": k, "indices": list(i), "casimir": str(c)}
                       for (k, i), c in zip(self.blocks, self.block_casimir)],
            "c_g": str(self.casimir),
            "f": self.f.to_json_obj(), "g": self.g.to_json_obj(), "w": self.w.to_json_obj(),
            "kappa_h": self.kappa_h.to_json_obj(), "kappa_m": self.kappa_m.to_json_obj(),
        }

    @classmethod
    def from_json_obj(cls, obj) -> "SymmetricPairData":
        if obj.get("kind") != "symmetric_pair":
            raise PairError("JSON object is not a symmetric_pair")
        L = LieAlgebraData.from_json_obj(obj["parent"])
        return decompose(L, SparseTensor.from_json_obj(obj["theta"]), name=obj.get("name", ""))


def _centroid_split(D_vecs, bracket):
    """Split a semisimple algebra (given by basis vectors) into simple ideals.

    The centroid (maps commuting with every ad x) of a direct sum of split
    simple algebras is spanned by the projections onto the summands, so the
    eigenspaces of a generic centroid element are the simple ideals.
    """
    d = len(D_vecs)
    if d == 0:
        return []
    # coordinates inside D
    piv_red, piv = linalg.rref(D_vecs)
    def coords(v):
        x = linalg.solve(linalg.transpose(D_vecs), v)
        if x is None:
            raise PairError("bracket leaves the derived algebra")
        return x
    ad = []
    for x in D_vecs:
        ad.append(linalg.transpose([coords(bracket(x, y)) for y in D_vecs]))  # ad_x columns
    # unknown T (d x d), condition T ad_x - ad_x T = 0
    rows = []
    for A in ad:
        for i in range(d):
            for j in range(d):
                row = [mpq(0)] * (d * d)
                for k in range(d):
                    if A[k][j]:
                        row[i * d + k] += A[k][j]
                    if A[i][k]:
                        row[k * d + j] -= A[i][k]
                rows.append(row)
    cent = linalg.nullspace(rows, d * d)
    if len(cent) <= 1:
        return [D_vecs]
    import sympy
    k = len(cent)
    for attempt in range(1, 20):
        coeffs = [attempt * (i + 1) + i * i for i in range(k)]
        T = [[sum((c * cent[t][i * d + j] for t, c in enumerate(coeffs)), mpq(0)) for j in range(d)]
             for i in range(d)]
        Ms = sympy.Matrix(d, d, lambda i, j: sympy.Rational(int(T[i][j].numerator), int(T[i][j].denominator)))
        eig = Ms.eigenvects()
        if len(eig) == k and all(ev.is_rational for ev, _, _ in eig):
            parts = []
            for _, _, vecs in eig:
                comp = []
                for v in vecs:
                    cv = [mpq(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v]
                    comp.append([sum((cv[i] * D_vecs[i][a] for i in range(d)), mpq(0))
                                 for a in range(len(D_vecs[0]))])
                parts.append(linalg.row_space(comp))
            return parts
    raise PairError("could not split h into simple ideals over the rationals")


def decompose(L: LieAlgebraData, theta: SparseTensor, *, name: str = "",
              labels: dict | None = None) -> SymmetricPairData:
    """Eigenspace decomposition of ``theta`` and the adapted basis.

    ``labels`` optionally maps vector labels (e.g. "e1-e2") to display names.
    """
    theta = check_involution(L, theta)
    n = L.dim
    T = [[theta[a, b] for b in range(n)] for a in range(n)]
    # v theta = +-v  <=>  (theta^T -+ 1) v^T = 0
    Tt = linalg.transpose(T)
    plus = [[Tt[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    minus = [[Tt[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    hv = linalg.nullspace(plus, n)
    mv = linalg.nullspace(minus, n)
    if len(hv) + len(mv) != n:
        raise PairError(f"eigenspace dimensions {len(hv)} + {len(mv)} != {n}")

    br = L.bracket_vec
    # centre of h and derived algebra [h, h]
    hd = len(hv)
    rows = []
    for y in hv:
        cols = [br(x, y) for x in hv]  # [x_i, y] as function of coefficients of x
        for a in range(n):
            rows.append([c[a] for c in cols])
    zc = linalg.nullspace(rows, hd) if hd else []
    centre = linalg.row_space([[sum((c[i] * hv[i][a] for i in range(hd)), mpq(0)) for a in range(n)]
                               for c in zc]) if zc else []
    derived = linalg.row_space([br(x, y) for i, x in enumerate(hv) for y in hv[i + 1:]]) if hd else []
    if len(derived) + len(centre) != hd:
        raise PairError("h is not reductive (derived algebra and centre do not span h)")
    if len(centre) > 1:
        raise PairError("centre of h has dimension > 1")
    simple = _centroid_split(derived, br) if derived else []
    simple.sort(key=lambda comp: linalg.rref(comp)[1])
    h_basis, blocks = [], []
    for comp in simple:
        blocks.append(("simple", tuple(range(len(h_basis), len(h_basis) + len(comp)))))
        h_basis.extend(comp)
    if centre:
        blocks.append(("center", (len(h_basis),)))
        h_basis.extend(centre)
    basis = h_basis + mv
    raw = [_vec_label(L.labels, v) for v in basis]
    labs = [labels.get(r, r) if labels else r for r in raw]
    A = change_basis(L, basis, labs, name=L.name)

    nh = len(h_basis)
    H = list(range(nh))
    fup = A.up.restrict([H, H, H])
    f = A.structure.restrict([H, H, H])
    cas = einsum("amn,nmb->ab", fup, f)
    bc = []
    for kind, idx in blocks:
        vals = {cas[i, j] for i in idx for j in idx if i != j}
        diag = {cas[i, i] for i in idx}
        if len(diag) != 1 or vals - {0}:
            raise PairError("block Casimir is not scalar", idx)
        bc.append(diag.pop())
    return SymmetricPairData(L, theta, A, tuple(map(tuple, h_basis)), tuple(map(tuple, mv)),
                             tuple(blocks), tuple(bc), name=name)


# identity suite

def verify_pair_identities(P: SymmetricPairData) -> Report:
    rep = Report("pair-identities")
    nh, nm, c = P.nh, P.nm, P.casimir
    A = P.adapted.structure
    H, M = P.H, P.M
    # closure: [h,h] in h, [h,m] in m, [m,m] in h
    bad = [(a, b, k) for (a, b, k) in A.entries
           if (a < nh) == (b < nh) and k >= nh or (a < nh) != (b < nh) and k < nh]
    rep.add("closure", "[h,h] in h, [h,m] in m, [m,m] in h",
            not bad, bad[0] if bad else None)
    f, g, w = P.f, P.g, P.w
    gmh = P.lo("mhm")
    rep.add("anti.f", "f antisymmetric", (f + f.transpose((1, 0, 2))).is_zero())
    rep.add("anti.g", "g_{mu p} + g_{p mu} = 0", (g + gmh.transpose((1, 0, 2))).is_zero())
    rep.add("anti.w", "w antisymmetric", (w + w.transpose((1, 0, 2))).is_zero())
    # Jacobi identities in the f, g, w blocks
    j1 = einsum("abn,gnm->abgm", f, f)
    j1 = j1 + j1.transpose((2, 0, 1, 3)) + j1.transpose((1, 2, 0, 3))
    # f_{ab}^n f_{gn}^m + f_{ga}^n f_{bn}^m + f_{bg}^n f_{an}^m
    j1 = (einsum("abn,gnm->abgm", f, f) + einsum("gan,bnm->abgm", f, f)
          + einsum("bgn,anm->abgm", f, f))
    rep.add("mixjac.fff", "Jacobi identity of f", j1.is_zero(), _first(j1))
    j2 = (einsum("abm,pms->abps", f, gmh) + einsum("bpq,aqs->abps", g, g)
          - einsum("apq,bqs->abps", g, g))
    rep.add("mixjac.fgg", "mixed Jacobi identity f g g", j2.is_zero(), _first(j2))
    j3 = (einsum("pqb,abm->apqm", w, f) + einsum("apr,qrm->apqm", g, w)
          - einsum("aqr,prm->apqm", g, w))
    rep.add("mixjac.wfg", "mixed Jacobi identity w f g", j3.is_zero(), _first(j3))
    # cyclic w g identities
    j4 = einsum("pqa,ras->pqrs", w, gmh)
    j4 = j4 + j4.transpose((1, 2, 0, 3)) + j4.transpose((2, 0, 1, 3))
    rep.add("jacsym.cyclic", "cyclic w g identity", j4.is_zero(), _first(j4))
    t = einsum("par,qrb->pqab", gmh, w) - einsum("qar,prb->pqab", gmh, w)
    cross = {k: v for k, v in t.entries.items() if P.block_of[k[2]] != P.block_of[k[3]]}
    rep.add("jacsym.cross", "w g identity across distinct blocks", not cross, min(cross) if cross else None)
    # Casimir blocks
    fup, wup = P.hi("hhh"), P.hi("hmm")
    ff = einsum("amn,nmb->ab", fup, f)
    ww = einsum("aqp,pqb->ab", wup, w)
    exp_ff = SparseTensor((nh, nh), (DOWN, UP), {(i, i): P.c_of[i] for i in range(nh)})
    exp_ww = SparseTensor((nh, nh), (DOWN, UP), {(i, i): P.cbar_of[i] for i in range(nh)})
    d1 = ff - exp_ff
    d2 = ww - exp_ww
    rep.add("inv.X", "f_al^{be nu}[X_nu,X_be] = c_(al) X_al", d1.is_zero(), _first(d1))
    rep.add("inv.Y", "w_ga^{qp}[Y_p,Y_q] = cbar_(ga) X_ga", d2.is_zero(), _first(d2))
    rep.add("wwid.ff", "f f = c_(al) delta", d1.is_zero(), _first(d1))
    rep.add("wwid.ww", "w w = cbar_(al) delta, zero across blocks", d2.is_zero(), _first(d2))
    # cross-check c_(al) + cbar_(al) = c_g via an independent w-contraction
    split = all(P.c_of[i] + ww[i, i] == c for i in range(nh)) if nm else True
    rep.add("casimir.split", "cbar_(al) = c_g - c_(al)", split)
    central_ok = all(P.block_casimir[b] == 0 for b, (k, _) in enumerate(P.blocks) if k == "center")
    rep.add("casimir.center", "c_(z) = 0 on the centre", central_ok)
    gg = einsum("pra,arq->pq", P.hi("mmh"), g)
    dg = gg - SparseTensor.delta(nm).scale(c / 2) if nm else gg
    rep.add("ggid", "g_p^{r al} g_{al r}^q = (c_g/2) delta_p^q", dg.is_zero(), _first(dg))
    gg2 = einsum("qpa,apr->qr", P.hi("mmh"), g)
    dg2 = gg2 - SparseTensor.delta(nm).scale(c / 2) if nm else gg2
    rep.add("ggid.bracket", "g_q^{p al}[X_al,Y_p] = (c_g/2) Y_q", dg2.is_zero(), _first(dg2))
    if nm:
        pos = all(P.cbar_of[i] > 0 for i in range(nh) if P.blocks[P.block_of[i]][0] == "simple")
        rep.add("cbar.positive", "divisor cbar_(al) nonzero (positive)", pos)
    rep.values["c_g"] = c
    rep.values["blocks"] = [(k, len(i), str(cb), str(c - cb)) for (k, i), cb in zip(P.blocks, P.block_casimir)]
    return rep.finish()


# bialgebra maps

def cocommutator(L: LieAlgebraData, a: int) -> SparseTensor:
    """delta(J(x_a)) = [x_a (x) 1, Omega] = alpha_a^{lk} x_k (x) x_l, as T[k, l]."""
    n = L.dim
    ent = {(k, l): v for (aa, l, k), v in L.up.entries.items() if aa == a}
    return SparseTensor((n, n), (UP, UP), ent, check=False)


def omega_commutator(L: LieAlgebraData, a: int) -> SparseTensor:
    """[x_a (x) 1, eta^{bc} x_b (x) x_c] expanded directly: eta^{bc} alpha_{ab}^k x_k (x) x_c."""
    n = L.dim
    out = {}
    for (b, c), e in L.form_inverse.entries.items():
        for (aa, bb, k), v in L.structure.entries.items():
            if aa == a and bb == b:
                out[(k, c)] = out.get((k, c), 0) + e * v
    return SparseTensor((n, n), (UP, UP), {k: v for k, v in out.items() if v})


def bi_ideal_tau(P: SymmetricPairData, p: int) -> SparseTensor:
    """tau(B(Y_p)) = [Y_p (x) 1, Omega_h] = sum g_p^{al s} Y_s (x) X_al, as T[s, al].

    ``p`` indexes m (0-based within m).
    """
    if not P.is_proper:
        raise PairError("bi_ideal_tau needs a proper pair; use the theta = id coaction instead")
    gup = P.hi("mhm")
    ent = {(s, al): v for (pp, al, s), v in gup.entries.items() if pp == p}
    return SparseTensor((P.nm, P.nh), (UP, UP), ent, check=False)


def _pair(L, a, k, b, l):
    from .loop import LoopElement, loop_pairing
    return loop_pairing(LoopElement({(a, k): 1}), LoopElement({(b, l): 1}), L)


def bialgebra_report(L: LieAlgebraData, P: SymmetricPairData | None = None) -> Report:
    """Skew-symmetry, duality and cocycle checks for delta and tau."""
    from .loop import LoopElement, loop_bracket, loop_pairing
    rep = Report("bialgebra")
    n = L.dim
    skew_bad = dual_bad = omega_bad = eq41_bad = None
    # tensor squares pair in reversed order here: (a (x) b, y (x) z) = (a, z)(b, y)
    for a in range(n):
        d = cocommutator(L, a)
        if not (d + d.transpose((1, 0))).is_zero() and skew_bad is None:
            skew_bad = a
        if d != omega_commutator(L, a) and omega_bad is None:
            omega_bad = a
        for b in range(n):
            # pair delta(J(x_a)) with alpha_b^{ji} x_i^{(-1)} (x) x_j^{(-1)}
            tot = mpq(0)
            for (k, l), v in d.entries.items():
                for (bb, j, i), u in L.up.entries.items():
                    if bb != b:
                        continue
                    tot += v * u * _pair(L, k, 0, j, -1) * _pair(L, l, 0, i, -1)
            if tot != L.casimir * L.form[a, b] and dual_bad is None:
                dual_bad = (a, b)
        # duality with the bracket: (delta(x_a^{(1)}), x_i^{(-1)} (x) x_j^{(-1)}) = (x_a^{(1)}, [x_i^{(-1)}, x_j^{(-1)}])
        x = LoopElement({(a, 1): 1})
        for i in range(n):
            for j in range(n):
                lhs = sum((v * _pair(L, k, 0, j, -1) * _pair(L, l, 0, i, -1)
                           for (k, l), v in d.entries.items()), mpq(0))
                rhs = loop_pairing(x, loop_bracket(LoopElement({(i, -1): 1}),
                                                   LoopElement({(j, -1): 1}), L), L)
                if lhs != rhs and eq41_bad is None:
                    eq41_bad = (a, i, j)
    rep.add("delta.skew", "delta(J(x)) skew-symmetric", skew_bad is None, skew_bad)
    rep.add("delta.omega", "delta(J(x_a)) = [x_a (x) 1, Omega_g]", omega_bad is None, omega_bad)
    rep.add("delta.duality", "(delta(J(x_a)), al_b^ji x_i^(-1) (x) x_j^(-1)) = c_g eta_ab",
            dual_bad is None, dual_bad)
    rep.add("delta.duality-bracket", "(delta(x), y (x) z) = (x, [y, z])", eq41_bad is None, eq41_bad)
    # 1-cocycle: delta([x_a, J(x_b)]) = ad_{x_a} delta(J(x_b))
    coc_bad = None
    deltas = [cocommutator(L, b) for b in range(n)]
    ad = L.structure
    for a in range(n):
        for b in range(n):
            lhs = SparseTensor.zeros((n, n), (UP, UP))
            for (aa, bb, c), v in ad.entries.items():
                if aa == a and bb == b:
                    lhs = lhs + deltas[c].scale(v)
            rhs = {}
            for (k, l), v in deltas[b].entries.items():
                for (aa, kk, m), u in ad.entries.items():
                    if aa == a and kk == k:
                        rhs[(m, l)] = rhs.get((m, l), 0) + v * u
                    if aa == a and kk == l:
                        rhs[(k, m)] = rhs.get((k, m), 0) + v * u
            rhs = SparseTensor((n, n), (UP, UP), {k: v for k, v in rhs.items() if v})
            if lhs != rhs and coc_bad is None:
                coc_bad = (a, b)
    rep.add("delta.cocycle", "delta is a 1-cocycle", coc_bad is None, coc_bad)
    if P is not None and P.is_proper:
        A = P.adapted
        tau_bad = supp_bad = None
        for p in range(P.nm):
            tau = bi_ideal_tau(P, p)
            for q in range(P.nm):
                tot = mpq(0)
                for (s, al), v in tau.entries.items():
                    for (qq, r, be), u in P.hi("mmh").entries.items():
                        if qq != q:
                            continue
                        # straight order: M+ pairs with H-, H+ with M-
                        tot += v * u * _pair(A, P.nh + s, 0, P.nh + r, -1) * _pair(A, al, 0, be, -1)
                if tot != P.casimir / 2 * P.kappa_m[p, q] and tau_bad is None:
                    tau_bad = (p, q)
            # tau(B(Y_p)) agrees with the direct [Y_p (x) 1, Omega_h]
            direct = {}
            for (al, be), e in P.kappa_h_inv.entries.items():
                for (pp, aa, s), v in P.lo("mhm").entries.items():
                    if pp == p and aa == al:
                        direct[(s, be)] = direct.get((s, be), 0) + e * v
            direct = SparseTensor((P.nm, P.nh), (UP, UP), {k: v for k, v in direct.items() if v})
            if direct != tau and supp_bad is None:
                supp_bad = p
        rep.add("tau.duality", "(tau(B(Y_p)), g_q^{r al} Y_r^(-1) (x) X_al^(-1)) = (c_g/2) kappa_pq", tau_bad is None, tau_bad)
        rep.add("tau.omega_h", "tau(B(Y_p)) = [Y_p (x) 1, Omega_h] lies in m (x) h", supp_bad is None, supp_bad)
    return rep.finish()
