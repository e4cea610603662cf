"""The half-loop algebra g[u], its twisted subalgebra, and Drinfel'd generators.

A :class:`LoopElement` is a finite combination of ``x_a^{(k)} = x_a u^k``.
Negative degrees are allowed so the same type can represent the mirror half
used by the invariant pairing.  In a pair context the basis index refers to the
adapted basis (h first, then m).
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .exact_tensor import Q
from .lie_core import LieAlgebraData
from .report import Report
from .symmetric_pair import SymmetricPairData


class LoopError(ValueError):
    pass


class LoopElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (a, k), v in terms.items():
                v = Q(v)
                if v:
                    self.terms[(int(a), int(k))] = v

    @classmethod
    def basis(cls, a: int, k: int) -> "LoopElement":
        return cls({(a, k): 1})

    @classmethod
    def _raw(cls, terms):
        e = cls.__new__(cls)
        e.terms = terms
        return e

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LoopElement._raw(out)

    def __neg__(self):
        return LoopElement._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Q(c)
        if not c:
            return LoopElement()
        return LoopElement._raw({k: v * c for k, v in self.terms.items()})

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, LoopElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {k for _, k in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*x{a}^({k})" for (a, k), v in sorted(self.terms.items()))


def _algebra(ctx) -> LieAlgebraData:
    if isinstance(ctx, SymmetricPairData):
        return ctx.adapted
    if isinstance(ctx, LieAlgebraData):
        return ctx
    raise LoopError(f"unsupported context {type(ctx).__name__}")


@lru_cache(maxsize=64)
def _bracket_table(L: LieAlgebraData):
    tab = {}
    for (a, b, c), v in L.structure.entries.items():
        tab.setdefault((a, b), []).append((c, v))
    return tab


def loop_bracket(x: LoopElement, y: LoopElement, ctx) -> LoopElement:
    """[x_a^{(k)}, x_b^{(l)}] = alpha_{ab}^c x_c^{(k+l)}, extended bilinearly."""
    tab = _bracket_table(_algebra(ctx))
    out = {}
    for (a, k), u in x.terms.items():
        for (b, l), v in y.terms.items():
            for c, s in tab.get((a, b), ()):
                key = (c, k + l)
                out[key] = out.get(key, 0) + u * v * s
    return LoopElement._raw({k: v for k, v in out.items() if v})


def loop_pairing(x: LoopElement, y: LoopElement, ctx) -> mpq:
    """(x^{(k)}, y^{(l)}) = eta(x, y) delta_{k+l+1,0}."""
    L = _algebra(ctx)
    tot = mpq(0)
    for (a, k), u in x.terms.items():
        for (b, l), v in y.terms.items():
            if k + l + 1 == 0:
                e = L.form[a, b]
                if e:
                    tot += u * v * e
    return tot


def theta_extended(x: LoopElement, P: SymmetricPairData) -> LoopElement:
    """theta(x^{(k)}) = (-1)^k theta(x)^{(k)}; h is fixed and m negated in the adapted basis."""
    out = {}
    for (a, k), v in x.terms.items():
        s = 1 if a < P.nh else -1
        if k % 2:
            s = -s
        out[(a, k)] = v * s
    return LoopElement._raw(out)


# Drinfel'd generators

def drinfeld_J(n: int, a: int, L: LieAlgebraData) -> LoopElement:
    """Level-n generator J^{(n)}(x_a) built by the bracket recursion."""
    return _J(L, n, a)


@lru_cache(maxsize=None)
def _J(L: LieAlgebraData, n: int, a: int) -> LoopElement:
    if n < 0:
        raise LoopError("level must be non-negative")
    if n <= 1:
        return LoopElement.basis(a, n)
    acc = LoopElement()
    for (aa, c, b), v in L.up.entries.items():
        if aa != a:
            continue
        acc = acc + loop_bracket(_J(L, 1, b), _J(L, n - 1, c), L).scale(v)
    return acc.scale(1 / L.casimir)


def _check_twistable(P: SymmetricPairData):
    if not P.is_proper:
        raise LoopError("twisted generators need a proper pair (m nonempty)")
    if P.parent.dim == 3:
        raise LoopError("rank-1 parent: the twisted level-4 case is exceptional and not supported")


def drinfeld_B(level: int, idx: int, P: SymmetricPairData) -> LoopElement:
    """Twisted generator of the given level.

    Odd levels give B^{(level)}(Y_p) with ``idx`` = p in 0..dim m - 1; even
    levels give B^{(level)}(X_al) with ``idx`` = al in 0..dim h - 1.
    """
    _check_twistable(P)
    return _B(P, level, idx)


@lru_cache(maxsize=None)
def _B(P: SymmetricPairData, level: int, idx: int) -> LoopElement:
    nh = P.nh
    if level < 0:
        raise LoopError("level must be non-negative")
    if level == 0:
        return LoopElement.basis(idx, 0)
    if level == 1:
        return LoopElement.basis(nh + idx, 1)
    acc = LoopElement()
    if level % 2:
        # c_g B^{(2n+1)}(Y_p) = 2 sum g_p^{al q} [B^{(1)}(Y_q), B^{(2n)}(X_al)]
        for (p, al, q), v in P.hi("mhm").entries.items():
            if p == idx:
                acc = acc + loop_bracket(_B(P, 1, q), _B(P, level - 1, al), P).scale(v)
        return acc.scale(2 / P.casimir)
    # cbar_(al) B^{(2n+2)}(X_al) = w_al^{qp} [B^{(1)}(Y_p), B^{(2n+1)}(Y_q)]
    for (al, q, p), v in P.hi("hmm").entries.items():
        if al == idx:
            acc = acc + loop_bracket(_B(P, 1, p), _B(P, level - 1, q), P).scale(v)
    return acc.scale(1 / P.cbar_of[idx])


# classical relations

def _first_bad(items):
    for key, val in items:
        if not val.is_zero():
            return key
    return None


def check_classical_relations(ctx, max_degree: int = 5) -> Report:
    """Drinfel'd recursions and the classical relations in the loop realization."""
    if isinstance(ctx, SymmetricPairData):
        L, P = ctx.parent, ctx
    else:
        L, P = ctx, None
    rep = Report("classical")
    n = L.dim
    J1 = [LoopElement.basis(a, 1) for a in range(n)]

    def Jb(b, c):  # J([x_b, x_c]) -> alpha_{bc}^d x_d^{(1)}
        out = LoopElement()
        for d, v in _bracket_table(L).get((b, c), ()):
            out = out + J1[d].scale(v)
        return out

    # J^{(k)}(x_a) = x_a^{(k)}
    bad = None
    for k in range(max_degree + 1):
        for a in range(n):
            if drinfeld_J(k, a, L) != LoopElement.basis(a, k):
                bad = bad or (k, a)
    rep.add("J.basis", "J^(n)(x_a) = x_a^(n)", bad is None, bad)
    bad = None
    for k in range(max_degree + 1):
        for m in range(max_degree + 1 - k):
            for a in range(n):
                for b in range(n):
                    lhs = loop_bracket(drinfeld_J(k, a, L), drinfeld_J(m, b, L), L)
                    rhs = LoopElement()
                    for c, v in _bracket_table(L).get((a, b), ()):
                        rhs = rhs + drinfeld_J(k + m, c, L).scale(v)
                    if lhs != rhs:
                        bad = bad or (k, m, a, b)
    rep.add("J.brackets", "[J^(k)(x_a), J^(m)(x_b)] = al_ab^c J^(k+m)(x_c)", bad is None, bad)

    def dl2():
        for a in range(n):
            for b in range(n):
                for c in range(b + 1, n):
                    r = (loop_bracket(J1[a], Jb(b, c), L) + loop_bracket(J1[b], Jb(c, a), L)
                         + loop_bracket(J1[c], Jb(a, b), L))
                    yield (a, b, c), r
    rep.add("DL2", "DL2 with J -> x^(1)", *_res(dl2()))

    comm = {(a, b): loop_bracket(J1[a], J1[b], L) for a in range(n) for b in range(n)}
    jb = {(a, b): Jb(a, b) for a in range(n) for b in range(n)}

    def dl3():
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(n):
                    for d in range(c + 1, n):
                        r = loop_bracket(comm[a, b], jb[c, d], L) + loop_bracket(comm[c, d], jb[a, b], L)
                        yield (a, b, c, d), r
    rep.add("DL3", "DL3 with J -> x^(1)", *_res(dl3()))

    G = [LoopElement.basis(a, 2) for a in range(n)]

    def Gb(b, c):
        out = LoopElement()
        for d, v in _bracket_table(L).get((b, c), ()):
            out = out + G[d].scale(v)
        return out

    def lh4():
        for i in range(n):
            for j in range(n):
                for k in range(j + 1, n):
                    r = (loop_bracket(G[i], Gb(j, k), L) + loop_bracket(G[j], Gb(k, i), L)
                         + loop_bracket(G[k], Gb(i, j), L))
                    yield (i, j, k), r
    rep.add("LH4", "LH4 with G -> x^(2)", *_res(lh4()))

    if P is not None and P.is_proper and L.dim > 3:
        rep.extend(_twisted_checks(P, max_degree))
    return rep.finish()


def _res(gen):
    for key, val in gen:
        if not val.is_zero():
            return False, key
    return True, None


def _twisted_checks(P: SymmetricPairData, max_degree: int) -> Report:
    rep = Report("twisted")
    nh, nm = P.nh, P.nm
    A = P.adapted
    # recursions reproduce the loop basis
    bad = None
    for level in range(max_degree + 1):
        rng = range(nm) if level % 2 else range(nh)
        for i in rng:
            exp = LoopElement.basis(i + (nh if level % 2 else 0), level)
            if drinfeld_B(level, i, P) != exp:
                bad = bad or (level, i)
    rep.add("B.basis", "B recursions reproduce X^(2k), Y^(2k+1)", bad is None, bad)

    # graded brackets among the recursive generators
    f, g, w = P.f, P.g, P.w
    gmh = P.lo("mhm")
    bad = None
    for tot in range(max_degree + 1):
        for k1 in range(tot + 1):
            k2 = tot - k1
            if k1 % 2 and k2 % 2:  # [B(Y), B(Y)] = w B(X)
                for p in range(nm):
                    for q in range(nm):
                        lhs = loop_bracket(drinfeld_B(k1, p, P), drinfeld_B(k2, q, P), P)
                        rhs = LoopElement()
                        for (pp, qq, al), v in w.entries.items():
                            if pp == p and qq == q:
                                rhs = rhs + drinfeld_B(tot, al, P).scale(v)
                        if lhs != rhs:
                            bad = bad or ("YY", k1, k2, p, q)
            elif k1 % 2:  # [B(Y_p), B(X_al)] = g_{p al}^q B(Y_q)
                for p in range(nm):
                    for al in range(nh):
                        lhs = loop_bracket(drinfeld_B(k1, p, P), drinfeld_B(k2, al, P), P)
                        rhs = LoopElement()
                        for (pp, aa, q), v in gmh.entries.items():
                            if pp == p and aa == al:
                                rhs = rhs + drinfeld_B(tot, q, P).scale(v)
                        if lhs != rhs:
                            bad = bad or ("YX", k1, k2, p, al)
            elif not k2 % 2:  # [B(X), B(X)] = f B(X)
                for al in range(nh):
                    for be in range(nh):
                        lhs = loop_bracket(drinfeld_B(k1, al, P), drinfeld_B(k2, be, P), P)
                        rhs = LoopElement()
                        for (aa, bb, ga), v in f.entries.items():
                            if aa == al and bb == be:
                                rhs = rhs + drinfeld_B(tot, ga, P).scale(v)
                        if lhs != rhs:
                            bad = bad or ("XX", k1, k2, al, be)
    rep.add("B.relations", "graded brackets of the B^(k) up to max degree", bad is None, bad)

    # theta-extended fixes exactly X^(2k), Y^(2k+1)
    bad = None
    for level in range(max_degree + 1):
        for a in range(A.dim):
            e = LoopElement.basis(a, level)
            fixed = theta_extended(e, P) == e
            expect = (a < nh) == (level % 2 == 0)
            if fixed != expect:
                bad = bad or (a, level)
    rep.add("theta.fixed", "twisted subalgebra spanned by X^(2k), Y^(2k+1)", bad is None, bad)

    Y1 = [LoopElement.basis(nh + p, 1) for p in range(nm)]
    yy = {(r, s): loop_bracket(Y1[r], Y1[s], P) for r in range(nm) for s in range(nm)}
    wup = P.hi("hmm")
    inv_cbar = P.cbar_of

    def lh2():
        for p in range(nm):
            for q in range(nm):
                r = yy[p, q]
                for (pp, qq, al), v in w.entries.items():
                    if pp != p or qq != q:
                        continue
                    for (aa, rr, ss), u in wup.entries.items():
                        if aa == al:
                            r = r + yy[rr, ss].scale(v * u / inv_cbar[al])
                yield (p, q), r
    rep.add("LH2", "LH2 with B -> Y^(1)", *_res(lh2()))

    yyy = {(s, t, u): loop_bracket(yy[s, t], Y1[u], P)
           for s in range(nm) for t in range(nm) for u in range(nm)}
    coef = {}
    c = P.casimir
    # K_{pqr}^{stu} = (2/c) kappa_m^{tu} w_{pq}^al g_{r al}^s
    for (pp, qq, al), v in w.entries.items():
        for (rr, aa, s), u in gmh.entries.items():
            if aa != al:
                continue
            for (t, uu), k in P.kappa_m_inv.entries.items():
                key = (pp, qq, rr)
                coef.setdefault(key, {})
                coef[key][(s, t, uu)] = coef[key].get((s, t, uu), 0) + 2 * v * u * k / c

    def lh3():
        for p in range(nm):
            for q in range(nm):
                for r in range(nm):
                    res = yyy[p, q, r]
                    for (s, t, u), v in coef.get((p, q, r), {}).items():
                        res = res + yyy[s, t, u].scale(v)
                    yield (p, q, r), res
    rep.add("LH3", "LH3 with B -> Y^(1)", *_res(lh3()))
    return rep.finish()
