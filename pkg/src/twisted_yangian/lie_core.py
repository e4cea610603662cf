"""Simple Lie algebras as exact structure-constant data.

Index conventions: ``structure[a, b, c]`` is the coefficient of ``x_c`` in
``[x_a, x_b]``; ``form`` is the invariant form with lower indices and
``form_inverse`` its inverse.  Raised and lowered variants of the structure
constants are derived on demand:

    up[a, b, c]   = eta^{bd} alpha_{ad}^c
    low[a, b, c]  = alpha_{ab}^d eta_{dc}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from gmpy2 import mpq

from . import linalg
from .exact_tensor import (DOWN, UP, SparseTensor, TensorError, cyclic_sum, einsum,
                           Q)
from .report import Report


class AlgebraError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg if witness is None else f"{msg} (witness {witness})")
        self.witness = witness


@dataclass(frozen=True, eq=False)
class LieAlgebraData:
    labels: tuple
    structure: SparseTensor
    form: SparseTensor
    form_inverse: SparseTensor
    casimir: mpq
    name: str = ""
    matrices: tuple | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def up(self) -> SparseTensor:
        """alpha_a^{bc} = eta^{bd} alpha_{ad}^c (antisymmetric in b, c)."""
        return einsum("adc,bd->abc", self.structure, self.form_inverse)

    @cached_property
    def low(self) -> SparseTensor:
        """alpha_{abc} = alpha_{ab}^d eta_{dc} (totally antisymmetric)."""
        return einsum("abd,dc->abc", self.structure, self.form)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def bracket_vec(self, u, v):
        """Bracket of two coordinate vectors."""
        out = [mpq(0)] * self.dim
        for (a, b, c), val in self.structure.entries.items():
            if u[a] and v[b]:
                out[c] += u[a] * v[b] * val
        return out

    def form_vec(self, u, v):
        return sum((u[a] * v[b] * val for (a, b), val in self.form.entries.items()), mpq(0))

    def rescaled(self, s) -> "LieAlgebraData":
        """Same algebra with the invariant form multiplied by ``s``."""
        s = Q(s)
        return build_from_constants(self.labels, self.structure, self.form.scale(s),
                                    name=self.name, matrices=self.matrices)

    def to_json_obj(self) -> dict:
        return {"kind": "lie_algebra", "name": self.name, "labels": list(self.labels),
                "structure": self.structure.to_json_obj(), "form": self.form.to_json_obj(),
                "casimir": {"num": str(self.casimir.numerator), "den": str(self.casimir.denominator)}}

    @classmethod
    def from_json_obj(cls, obj) -> "LieAlgebraData":
        if obj.get("kind") != "lie_algebra":
            raise AlgebraError("JSON object is not a lie_algebra")
        return build_from_constants(obj["labels"], SparseTensor.from_json_obj(obj["structure"]),
                                    SparseTensor.from_json_obj(obj["form"]), name=obj.get("name", ""))


def killing_form(structure: SparseTensor) -> SparseTensor:
    """eta_{ab} = alpha_{ac}^d alpha_{bd}^c."""
    return einsum("acd,bdc->ab", structure, structure, strict=False).with_variance((DOWN, DOWN))


def jacobi_tensor(structure: SparseTensor) -> SparseTensor:
    """Cyclic sum over (a, b, c) of alpha_{ab}^d alpha_{dc}^e."""
    t = einsum("abd,dce->abce", structure, structure)
    return cyclic_sum(t, [0, 1, 2])


def _first(t: SparseTensor):
    return min(t.entries) if t.entries else None


def build_from_constants(labels: Sequence[str], structure: SparseTensor, form="killing", *,
                         name: str = "", matrices=None) -> LieAlgebraData:
    """Validate structure constants and attach an invariant form and c_g."""
    labels = tuple(labels)
    n = len(labels)
    if structure.dims != (n, n, n):
        raise AlgebraError(f"structure has dims {structure.dims}, expected {(n, n, n)}")
    structure = structure.with_variance((DOWN, DOWN, UP))
    anti = structure + structure.transpose((1, 0, 2))
    if not anti.is_zero():
        raise AlgebraError("structure constants are not antisymmetric", _first(anti))
    jac = jacobi_tensor(structure)
    if not jac.is_zero():
        raise AlgebraError("Jacobi identity fails", _first(jac))

    if isinstance(form, str):
        if form != "killing":
            raise AlgebraError(f"unknown form choice {form!r}; pass 'killing' or a tensor")
        eta = killing_form(structure)
    elif isinstance(form, SparseTensor):
        eta = form.with_variance((DOWN, DOWN))
        if eta.dims != (n, n):
            raise AlgebraError(f"form has dims {eta.dims}")
    else:
        raise AlgebraError("form must be 'killing' or a SparseTensor")
    asym = eta - eta.transpose((1, 0))
    if not asym.is_zero():
        raise AlgebraError("form is not symmetric", _first(asym))
    dense = [[eta[i, j] for j in range(n)] for i in range(n)]
    try:
        inv = linalg.inverse(dense)
    except ZeroDivisionError:
        raise AlgebraError("invariant form is degenerate; algebra is not semisimple") from None
    eta_inv = SparseTensor((n, n), (UP, UP), {(i, j): inv[i][j] for i in range(n) for j in range(n)
                                              if inv[i][j]}, check=False)
    low = einsum("abd,dc->abc", structure, eta)
    bad = low + low.transpose((0, 2, 1))
    if not bad.is_zero():
        raise AlgebraError("form is not ad-invariant", _first(bad))

    cas = einsum("ab,ace,bed->cd", eta_inv, structure, structure)
    c = cas[0, 0]
    for (i, j), v in cas.entries.items():
        if i != j or v != c:
            raise AlgebraError("adjoint Casimir is not proportional to the identity", (i, j))
    if len(cas.entries) != n or not c:
        raise AlgebraError("adjoint Casimir eigenvalue vanishes or is not scalar",
                           next((i for i in range(n) if cas[i, i] != c), 0))
    return LieAlgebraData(labels, structure, eta, eta_inv, c, name, matrices)


def casimir_identity_check(L: LieAlgebraData) -> Report:
    """alpha_a^{bc} alpha_{cb}^d = c_g delta_a^d."""
    rep = Report("casimir")
    lhs = einsum("abc,cbd->ad", L.up, L.structure)
    rhs = SparseTensor.delta(L.dim).scale(L.casimir)
    diff = lhs - rhs
    rep.add("casimir.contracted", "al_a^bc [x_c, x_b] = c_g x_a",
            diff.is_zero(), _first(diff))
    rep.values["c_g"] = L.casimir
    return rep.finish()


def structure_report(L: LieAlgebraData) -> Report:
    """Re-run the structural invariants and report each one."""
    rep = Report("structure")
    s = L.structure
    anti = s + s.transpose((1, 0, 2))
    rep.add("antisymmetry", "al_ab^c = -al_ba^c", anti.is_zero(), _first(anti))
    jac = jacobi_tensor(s)
    rep.add("jacobi", "cyclic al_ab^d al_cd^e = 0", jac.is_zero(), _first(jac))
    sym = L.form - L.form.transpose((1, 0))
    rep.add("form.symmetric", "eta_ab = eta_ba", sym.is_zero(), _first(sym))
    prod = einsum("ab,bc->ac", L.form, L.form_inverse) - SparseTensor.delta(L.dim)
    rep.add("form.inverse", "eta_ab eta^bc = delta_a^c", prod.is_zero(), _first(prod))
    inv = L.low + L.low.transpose((0, 2, 1))
    rep.add("form.invariant", "invariance al_abc + al_acb = 0", inv.is_zero(), _first(inv))
    cas = einsum("ab,ace,bed->cd", L.form_inverse, s, s) - SparseTensor.delta(L.dim).scale(L.casimir)
    rep.add("casimir.adjoint", "al_a^cd al_cd^b = c_g delta_a^b", cas.is_zero(), _first(cas))
    cojac = cyclic_sum(einsum("adc,dbe->abec", L.up, L.up), [1, 2, 3])
    rep.add("cojacobi", "co-Jacobi identity of al_a^bc", cojac.is_zero(), _first(cojac))
    rep.extend(casimir_identity_check(L))
    return rep.finish()


# change of basis

def change_basis(L: LieAlgebraData, vectors, labels=None, name=None) -> LieAlgebraData:
    """Algebra in the basis x'_i = sum_a vectors[i][a] x_a (vectors must be a basis)."""
    n = L.dim
    V = [[Q(x) for x in v] for v in vectors]
    if len(V) != n:
        raise AlgebraError(f"need {n} basis vectors, got {len(V)}")
    try:
        Vinv = linalg.inverse(V)
    except ZeroDivisionError:
        raise AlgebraError("vectors are linearly dependent") from None
    ent = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = L.bracket_vec(V[i], V[j])
            for k in range(n):
                c = sum((br[a] * Vinv[a][k] for a in range(n) if br[a]), mpq(0))
                if c:
                    ent[(i, j, k)] = c
                    ent[(j, i, k)] = -c
    form = {}
    for i in range(n):
        for j in range(n):
            v = L.form_vec(V[i], V[j])
            if v:
                form[(i, j)] = v
    labels = tuple(labels) if labels is not None else tuple(f"v{i}" for i in range(n))
    mats = None
    if L.matrices is not None:
        mats = tuple(_mat_comb(L.matrices, v) for v in V)
    return build_from_constants(labels, SparseTensor((n, n, n), (DOWN, DOWN, UP), ent, check=False),
                                SparseTensor((n, n), (DOWN, DOWN), form, check=False),
                                name=name if name is not None else L.name, matrices=mats)


# matrix realizations

def _unit(N, i, j):
    m = [[mpq(0)] * N for _ in range(N)]
    m[i][j] = mpq(1)
    return m


def _mat_comb(mats, coeffs):
    N = len(mats[0])
    out = [[mpq(0)] * N for _ in range(N)]
    for c, m in zip(coeffs, mats):
        if c:
            for i in range(N):
                for j in range(N):
                    if m[i][j]:
                        out[i][j] += c * m[i][j]
    return out


def _comm(a, b):
    ab = linalg.matmul(a, b)
    ba = linalg.matmul(b, a)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(ab, ba)]


def _trace_prod(a, b):
    N = len(a)
    return sum((a[i][k] * b[k][i] for i in range(N) for k in range(N)), mpq(0))


def from_matrices(labels, mats, form="killing", name="") -> LieAlgebraData:
    """Structure constants of the span of ``mats`` (closed under commutators).

    ``form`` may be "killing", "trace" (trace form of the given realization)
    or an explicit tensor.
    """
    n = len(mats)
    N = len(mats[0])
    flat = [[m[i][j] for i in range(N) for j in range(N)] for m in mats]
    _, rows = linalg.rref(flat)  # pivot positions give an invertible minor
    if len(rows) != n:
        raise AlgebraError("matrices are linearly dependent")
    minor = [[flat[b][r] for b in range(n)] for r in rows]
    minv = linalg.inverse(minor)

    def coords(m):
        f = [m[i][j] for i in range(N) for j in range(N)]
        sel = [f[r] for r in rows]
        c = [sum((minv[a][k] * sel[k] for k in range(n)), mpq(0)) for a in range(n)]
        recon = [sum((c[b] * flat[b][p] for b in range(n)), mpq(0)) for p in range(N * N)]
        if recon != f:
            raise AlgebraError("matrix span is not closed under commutators")
        return c

    ent = {}
    for a in range(n):
        for b in range(a + 1, n):
            c = coords(_comm(mats[a], mats[b]))
            for k, v in enumerate(c):
                if v:
                    ent[(a, b, k)] = v
                    ent[(b, a, k)] = -v
    structure = SparseTensor((n, n, n), (DOWN, DOWN, UP), ent, check=False)
    if form == "trace":
        form = SparseTensor((n, n), (DOWN, DOWN),
                            {(a, b): _trace_prod(mats[a], mats[b]) for a in range(n) for b in range(n)})
    return build_from_constants(labels, structure, form, name=name, matrices=tuple(mats))


def _sort_roots(items, rank_):
    """Order positive root vectors by height.

    ``items`` holds (weight, position, label, matrix); simple roots are the
    positive roots that are not sums of two positive roots.
    """
    weights = [tuple(w) for w, *_ in items]
    wset = set(weights)
    simple = [w for w in weights
              if not any(tuple(x - y for x, y in zip(w, u)) in wset for u in weights if u != w)]
    # heights: coefficients in the simple roots
    A = linalg.transpose([list(map(Q, s)) for s in simple])
    heights = []
    for w in weights:
        x = linalg.solve(A, list(map(Q, w)))
        if x is None:
            raise AlgebraError("root system decomposition failed")
        heights.append(sum(x))
    order = sorted(range(len(items)), key=lambda i: (heights[i], items[i][1]))
    return [items[i] for i in order]


def classical_constructor(family: str, n: int, form="killing") -> LieAlgebraData:
    """sl(n), so(n) or sp(n) (n even) in a fixed Chevalley-type basis.

    Ordering: Cartan elements, then positive root vectors by height (ties broken
    by matrix position), then the negative root vectors in the same order.
    so and sp are realized as the matrices preserving an antidiagonal form, so
    the upper-triangular part is a Borel subalgebra.
    """
    family = family.lower()
    if family == "sl":
        if n < 2:
            raise AlgebraError("sl(n) needs n >= 2")
        return _sl(n, form)
    if family == "so":
        if n < 3 or n == 4:
            raise AlgebraError("so(n) is supported for n = 3 and n >= 5 (so(4) is not simple)")
        return _form_algebra("so", n, form)
    if family == "sp":
        if n < 2 or n % 2:
            raise AlgebraError("sp(n) needs even n >= 2")
        return _form_algebra("sp", n, form)
    raise AlgebraError(f"unsupported family {family!r}")


def _sl(n, form):
    labels, mats = [], []
    for i in range(n - 1):
        m = _unit(n, i, i)
        m[i + 1][i + 1] = mpq(-1)
        labels.append(f"h{i + 1}")
        mats.append(m)
    pos = sorted(((j - i, i, j) for i in range(n) for j in range(i + 1, n)))
    for _, i, j in pos:
        labels.append(f"e{i + 1},{j + 1}")
        mats.append(_unit(n, i, j))
    for _, i, j in pos:
        labels.append(f"f{j + 1},{i + 1}")
        mats.append(_unit(n, j, i))
    return from_matrices(labels, mats, form, name=f"sl{n}")


def _form_algebra(kind, N, form):
    half = N // 2
    Qm = [[mpq(0)] * N for _ in range(N)]
    for i in range(N):
        j = N - 1 - i
        if kind == "so":
            Qm[i][j] = mpq(1)
        else:
            Qm[i][j] = mpq(1) if i < half else mpq(-1)

    def cond(A):
        At = linalg.transpose(A)
        x = linalg.matmul(At, Qm)
        y = linalg.matmul(Qm, A)
        return [x[i][j] + y[i][j] for i in range(N) for j in range(N)]

    bar = lambda i: N - 1 - i
    seen = set()
    cartan, pos, neg = [], [], []
    for i in range(N):
        for j in range(N):
            orbit = tuple(sorted({(i, j), (bar(j), bar(i))}))
            if orbit in seen:
                continue
            seen.add(orbit)
            units = [_unit(N, *p) for p in orbit]
            M = linalg.transpose([cond(u) for u in units])
            ker = linalg.nullspace(M, len(units))
            if not ker:
                continue
            mat = _mat_comb(units, ker[0])
            a, b = orbit[0]
            if a == b:
                if a < bar(a):
                    cartan.append((a, mat))
                continue
            # weight eps_a - eps_b with eps_{bar k} = -eps_k
            w = [0] * half
            for k, s in ((a, 1), (b, -1)):
                if k < half:
                    w[k] += s
                elif bar(k) < half:
                    w[bar(k)] -= s
            if a < b:
                pos.append((w, (a, b), f"e{a + 1},{b + 1}", mat))
            else:
                neg.append((w, (a, b), f"f{a + 1},{b + 1}", mat))
    pos = _sort_roots(pos, half)
    neg_by_w = {tuple(-x for x in w): (lab, m) for w, _, lab, m in neg}
    labels = [f"h{k + 1}" for k in range(len(cartan))]
    mats = [m for _, m in sorted(cartan)]
    for w, _, lab, m in pos:
        labels.append(lab)
        mats.append(m)
    for w, _, lab, m in pos:
        nl, nm = neg_by_w[tuple(w)]
        labels.append(nl)
        mats.append(nm)
    return from_matrices(labels, mats, form, name=f"{kind}{N}")


# fixed algebras

def sl2(form="killing") -> LieAlgebraData:
    """sl2 on (e, f, h) with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    e = [[0, 1], [0, 0]]
    f = [[0, 0], [1, 0]]
    h = [[1, 0], [0, -1]]
    mats = [[[mpq(x) for x in r] for r in m] for m in (e, f, h)]
    return from_matrices(("e", "f", "h"), mats, form, name="sl2")


SL3_LABELS = ("e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2")


def sl3_chevalley() -> LieAlgebraData:
    """sl3 in the Cartan-Chevalley basis with the trace form, c_g = 6."""
    ix = {l: i for i, l in enumerate(SL3_LABELS)}
    cartan = [[2, -1], [-1, 2]]
    table = {}

    def put(a, b, terms):
        for lab, c in terms:
            table[(ix[a], ix[b], ix[lab])] = mpq(c)
            table[(ix[b], ix[a], ix[lab])] = mpq(-c)

    for i in (1, 2):
        put(f"e{i}", f"f{i}", [(f"h{i}", 1)])
        for j in (1, 2):
            put(f"h{i}", f"e{j}", [(f"e{j}", cartan[i - 1][j - 1])])
            put(f"h{i}", f"f{j}", [(f"f{j}", -cartan[i - 1][j - 1])])
        put(f"h{i}", "e3", [("e3", 1)])
        put(f"h{i}", "f3", [("f3", -1)])
    put("e1", "e2", [("e3", 1)])
    put("f1", "f2", [("f3", -1)])
    put("e1", "f3", [("f2", -1)])
    put("e2", "f3", [("f1", 1)])
    put("f1", "e3", [("e2", 1)])
    put("f2", "e3", [("e1", -1)])
    put("e3", "f3", [("h1", 1), ("h2", 1)])
    structure = SparseTensor((8, 8, 8), (DOWN, DOWN, UP), {k: v for k, v in table.items() if v})
    form = {}
    for i in (1, 2, 3):
        form[(ix[f"e{i}"], ix[f"f{i}"])] = 1
        form[(ix[f"f{i}"], ix[f"e{i}"])] = 1
    form[(ix["h1"], ix["h1"])] = 2
    form[(ix["h2"], ix["h2"])] = 2
    form[(ix["h1"], ix["h2"])] = -1
    form[(ix["h2"], ix["h1"])] = -1
    return build_from_constants(SL3_LABELS, structure, SparseTensor((8, 8), (DOWN, DOWN), form),
                                name="sl3")


def sl3_matrices():
    """Defining 3x3 matrices of the Chevalley basis, in SL3_LABELS order."""
    E = lambda i, j: _unit(3, i - 1, j - 1)
    h1 = _unit(3, 0, 0)
    h1[1][1] = mpq(-1)
    h2 = _unit(3, 1, 1)
    h2[2][2] = mpq(-1)
    return [E(1, 2), E(2, 3), E(1, 3), E(2, 1), E(3, 2), E(3, 1), h1, h2]
