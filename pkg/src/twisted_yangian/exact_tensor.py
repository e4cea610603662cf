"""Exact rational scalars and a sparse multi-index tensor kernel.

Scalars are ``gmpy2.mpq`` values (always in lowest terms, arbitrary precision).
A :class:`SparseTensor` stores only nonzero entries in a dict keyed by index
tuples, together with the range of every slot and its variance ("up" for a
contravariant index, "down" for a covariant one).
"""

from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

UP = "up"
DOWN = "down"

ZERO = mpq(0)
ONE = mpq(1)


class TensorError(ValueError):
    """Shape, variance or format problem in a tensor operation."""


def Q(value, den=None) -> mpq:
    """Coerce ``value`` (int, str, Fraction, mpq) to an exact rational."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact scalars")
    return mpq(value)


class SparseTensor:
    """Immutable sparse tensor with exact rational entries."""

    __slots__ = ("dims", "variance", "entries", "_hash")

    def __init__(self, dims: Sequence[int], variance: Sequence[str],
                 entries: Mapping[tuple, object] | None = None, *, check: bool = True):
        dims = tuple(int(d) for d in dims)
        variance = tuple(variance)
        if len(dims) != len(variance):
            raise TensorError("dims and variance differ in length")
        for v in variance:
            if v not in (UP, DOWN):
                raise TensorError(f"bad variance flag {v!r}")
        clean = {}
        if entries:
            for idx, val in entries.items():
                if check:
                    idx = tuple(int(i) for i in idx)
                    if len(idx) != len(dims):
                        raise TensorError(f"index {idx} has wrong rank")
                    for i, d in zip(idx, dims):
                        if not 0 <= i < d:
                            raise TensorError(f"index {idx} out of range {dims}")
                    val = Q(val)
                if val:
                    clean[idx] = val
        self.dims = dims
        self.variance = variance
        self.entries = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zeros(cls, dims, variance) -> "SparseTensor":
        return cls(dims, variance, {})

    @classmethod
    def delta(cls, n: int, variance=(DOWN, UP)) -> "SparseTensor":
        return cls((n, n), variance, {(i, i): ONE for i in range(n)}, check=False)

    @classmethod
    def _raw(cls, dims, variance, entries) -> "SparseTensor":
        t = cls.__new__(cls)
        t.dims = tuple(dims)
        t.variance = tuple(variance)
        t.entries = entries
        t._hash = None
        return t

    # basic protocol

    @property
    def rank(self) -> int:
        return len(self.dims)

    def __getitem__(self, idx) -> mpq:
        return self.entries.get(tuple(idx), ZERO)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (self.dims == other.dims and self.variance == other.variance
                and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dims, self.variance, frozenset(self.entries.items())))
        return self._hash

    def __repr__(self):
        return f"SparseTensor(dims={self.dims}, variance={self.variance}, nnz={len(self.entries)})"

    # linear structure

    def _same_shape(self, other: "SparseTensor"):
        if self.dims != other.dims or self.variance != other.variance:
            raise TensorError(
                f"shape mismatch: {self.dims}/{self.variance} vs {other.dims}/{other.variance}")

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        self._same_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SparseTensor._raw(self.dims, self.variance, out)

    def __neg__(self) -> "SparseTensor":
        return SparseTensor._raw(self.dims, self.variance, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + (-other)

    def scale(self, c) -> "SparseTensor":
        c = Q(c)
        if not c:
            return SparseTensor._raw(self.dims, self.variance, {})
        return SparseTensor._raw(self.dims, self.variance, {k: v * c for k, v in self.entries.items()})

    def __mul__(self, c) -> "SparseTensor":
        return self.scale(c)

    __rmul__ = __mul__

    # index manipulation

    def transpose(self, perm: Sequence[int]) -> "SparseTensor":
        """New tensor whose slot ``i`` is slot ``perm[i]`` of ``self``."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.rank)):
            raise TensorError(f"{perm} is not a permutation of the slots")
        dims = tuple(self.dims[p] for p in perm)
        var = tuple(self.variance[p] for p in perm)
        return SparseTensor._raw(dims, var, {tuple(k[p] for p in perm): v for k, v in self.entries.items()})

    def restrict(self, ranges: Sequence[Sequence[int]]) -> "SparseTensor":
        """Sub-tensor on the given per-slot index lists, renumbered from zero."""
        maps = [{g: i for i, g in enumerate(r)} for r in ranges]
        out = {}
        for k, v in self.entries.items():
            new = []
            for i, m in zip(k, maps):
                j = m.get(i)
                if j is None:
                    break
                new.append(j)
            else:
                out[tuple(new)] = v
        return SparseTensor._raw(tuple(len(r) for r in ranges), self.variance, out)

    def with_variance(self, variance: Sequence[str]) -> "SparseTensor":
        """Same entries under a different variance signature (no index raising)."""
        return SparseTensor(self.dims, variance, self.entries, check=False)

    def to_fraction_dict(self) -> dict:
        return {k: Fraction(int(v.numerator), int(v.denominator)) for k, v in self.entries.items()}

    # JSON

    def to_json_obj(self) -> dict:
        return {
            "rank": self.rank,
            "dims": list(self.dims),
            "variance": list(self.variance),
            "entries": [
                {"idx": list(k), "num": str(v.numerator), "den": str(v.denominator)}
                for k, v in sorted(self.entries.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SparseTensor":
        try:
            dims = obj["dims"]
            if obj.get("rank", len(dims)) != len(dims):
                raise TensorError("rank does not match dims")
            entries = {}
            for e in obj["entries"]:
                den = int(e.get("den", "1"))
                if den <= 0:
                    raise TensorError(f"non-positive denominator at {e['idx']}")
                entries[tuple(e["idx"])] = mpq(int(e["num"]), den)
            return cls(dims, obj["variance"], entries)
        except (KeyError, TypeError) as exc:
            raise TensorError(f"malformed tensor JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "SparseTensor":
        return cls.from_json_obj(json.loads(text))


def contract(a: SparseTensor, b: SparseTensor, pairs: Sequence[tuple[int, int]],
             *, strict: bool = True) -> SparseTensor:
    """Sum over the paired slots of ``a`` and ``b``.

    The result's slots are the free slots of ``a`` followed by the free slots of
    ``b``, each in their original order.  With ``strict`` every pair must join an
    upper index with a lower one.
    """
    pairs = [(int(i), int(j)) for i, j in pairs]
    ia = [i for i, _ in pairs]
    ib = [j for _, j in pairs]
    if len(set(ia)) != len(ia) or len(set(ib)) != len(ib):
        raise TensorError(f"slot used twice in {pairs}")
    for i, j in pairs:
        if not (0 <= i < a.rank and 0 <= j < b.rank):
            raise TensorError(f"pair {(i, j)} out of range")
        if a.dims[i] != b.dims[j]:
            raise TensorError(f"pair {(i, j)}: dimension {a.dims[i]} vs {b.dims[j]}")
        if strict and a.variance[i] == b.variance[j]:
            raise TensorError(f"pair {(i, j)}: both indices are {a.variance[i]}")
    free_a = [i for i in range(a.rank) if i not in ia]
    free_b = [j for j in range(b.rank) if j not in ib]
    dims = tuple(a.dims[i] for i in free_a) + tuple(b.dims[j] for j in free_b)
    var = tuple(a.variance[i] for i in free_a) + tuple(b.variance[j] for j in free_b)

    index = {}
    for kb, vb in b.entries.items():
        key = tuple(kb[j] for j in ib)
        index.setdefault(key, []).append((tuple(kb[j] for j in free_b), vb))
    out: dict = {}
    for ka, va in a.entries.items():
        rows = index.get(tuple(ka[i] for i in ia))
        if not rows:
            continue
        fa = tuple(ka[i] for i in free_a)
        for fb, vb in rows:
            k = fa + fb
            out[k] = out.get(k, ZERO) + va * vb
    return SparseTensor._raw(dims, var, {k: v for k, v in out.items() if v})


def outer(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    return contract(a, b, [])


def _check_slots(t: SparseTensor, slots: Sequence[int]):
    slots = list(slots)
    if len(set(slots)) != len(slots):
        raise TensorError(f"repeated slot in {slots}")
    for s in slots:
        if not 0 <= s < t.rank:
            raise TensorError(f"slot {s} out of range")
    if slots:
        d, v = t.dims[slots[0]], t.variance[slots[0]]
        for s in slots[1:]:
            if t.dims[s] != d:
                raise TensorError(f"slots {slots} have different ranges")
            if t.variance[s] != v:
                raise TensorError(f"slots {slots} have different variance")
    return slots


def _permuted_sum(t: SparseTensor, slots, perms, weight) -> SparseTensor:
    out: dict = {}
    for k, v in t.entries.items():
        vals = [k[s] for s in slots]
        for p in perms:
            new = list(k)
            for s, src in zip(slots, p):
                new[s] = vals[src]
            new = tuple(new)
            out[new] = out.get(new, ZERO) + v * weight
    return SparseTensor._raw(t.dims, t.variance, {k: v for k, v in out.items() if v})


def symmetrize(t: SparseTensor, slots: Sequence[int]) -> SparseTensor:
    """Average of ``t`` over all permutations of the listed slots."""
    slots = _check_slots(t, slots)
    m = len(slots)
    if m < 2:
        return t
    perms = list(itertools.permutations(range(m)))
    return _permuted_sum(t, slots, perms, mpq(1, math.factorial(m)))


def cyclic_sum(t: SparseTensor, slots: Sequence[int]) -> SparseTensor:
    """Sum (no averaging) of ``t`` over the cyclic rotations of the listed slots."""
    slots = _check_slots(t, slots)
    m = len(slots)
    if m < 2:
        return t
    perms = [tuple((i + r) % m for i in range(m)) for r in range(m)]
    return _permuted_sum(t, slots, perms, ONE)


def antisymmetrize(t: SparseTensor, slots: Sequence[int]) -> SparseTensor:
    """Signed average over permutations of the listed slots."""
    slots = _check_slots(t, slots)
    m = len(slots)
    if m < 2:
        return t
    out = SparseTensor.zeros(t.dims, t.variance)
    for p in itertools.permutations(range(m)):
        inv = sum(1 for i in range(m) for j in range(i + 1, m) if p[i] > p[j])
        part = _permuted_sum(t, slots, [p], mpq(1, math.factorial(m)))
        out = out + (part if inv % 2 == 0 else -part)
    return out


def einsum(spec: str, *operands: SparseTensor, strict: bool = True) -> SparseTensor:
    """Sparse Einstein summation over single-letter index names.

    ``spec`` looks like ``"ail,bjm,ckn,lmn->abcijk"``.  Operands are joined
    pairwise from left to right.  A letter shared by the running product and the
    next operand is summed unless it is still needed later, in which case it is
    kept as a diagonal.  With ``strict`` every summed letter must occur exactly
    twice, once up and once down.
    """
    lhs, out_letters = spec.replace(" ", "").split("->")
    terms = lhs.split(",")
    if len(terms) != len(operands):
        raise TensorError("einsum: operand count does not match spec")
    dim_of: dict = {}
    var_of: dict = {}
    counts: dict = {}
    for term, t in zip(terms, operands):
        if len(term) != t.rank:
            raise TensorError(f"einsum: {term!r} does not match rank {t.rank}")
        for ch, d, v in zip(term, t.dims, t.variance):
            if dim_of.setdefault(ch, d) != d:
                raise TensorError(f"einsum: letter {ch!r} has inconsistent range")
            counts.setdefault(ch, []).append(v)
            var_of.setdefault(ch, v)
    for ch in out_letters:
        if ch not in dim_of:
            raise TensorError(f"einsum: output letter {ch!r} not in inputs")
    if strict:
        for ch, vs in counts.items():
            if ch in out_letters:
                continue
            if len(vs) != 2 or vs[0] == vs[1]:
                raise TensorError(f"einsum: summed letter {ch!r} appears as {vs}")

    cur_letters = terms[0]
    cur = {k: v for k, v in operands[0].entries.items()}
    # repeated letters inside one operand: take the diagonal
    cur_letters, cur = _diag(cur_letters, cur)
    for pos in range(1, len(operands)):
        nxt_letters, nxt = _diag(terms[pos], dict(operands[pos].entries))
        later = set(out_letters)
        for t in terms[pos + 1:]:
            later.update(t)
        shared = [ch for ch in cur_letters if ch in nxt_letters]
        keep_a = [ch for ch in cur_letters if ch not in shared or ch in later]
        keep_b = [ch for ch in nxt_letters if ch not in shared]
        ia = [cur_letters.index(ch) for ch in shared]
        ib = [nxt_letters.index(ch) for ch in shared]
        pa = [cur_letters.index(ch) for ch in keep_a]
        pb = [nxt_letters.index(ch) for ch in keep_b]
        index: dict = {}
        for kb, vb in nxt.items():
            index.setdefault(tuple(kb[j] for j in ib), []).append((tuple(kb[j] for j in pb), vb))
        acc: dict = {}
        for ka, va in cur.items():
            rows = index.get(tuple(ka[i] for i in ia))
            if not rows:
                continue
            fa = tuple(ka[i] for i in pa)
            for fb, vb in rows:
                k = fa + fb
                acc[k] = acc.get(k, ZERO) + va * vb
        cur = {k: v for k, v in acc.items() if v}
        cur_letters = "".join(keep_a + keep_b)
    # sum any letters that are not in the output
    if set(cur_letters) - set(out_letters):
        keep = [cur_letters.index(ch) for ch in cur_letters if ch in out_letters]
        acc = {}
        for k, v in cur.items():
            kk = tuple(k[i] for i in keep)
            acc[kk] = acc.get(kk, ZERO) + v
        cur = {k: v for k, v in acc.items() if v}
        cur_letters = "".join(cur_letters[i] for i in keep)
    perm = [cur_letters.index(ch) for ch in out_letters]
    entries = {tuple(k[i] for i in perm): v for k, v in cur.items()}
    return SparseTensor._raw(tuple(dim_of[ch] for ch in out_letters),
                             tuple(var_of[ch] for ch in out_letters), entries)


def _diag(letters: str, entries: dict):
    if len(set(letters)) == len(letters):
        return letters, entries
    first = {}
    for i, ch in enumerate(letters):
        first.setdefault(ch, i)
    uniq = "".join(ch for i, ch in enumerate(letters) if first[ch] == i)
    out = {}
    for k, v in entries.items():
        if all(k[i] == k[first[ch]] for i, ch in enumerate(letters)):
            out[tuple(k[first[ch]] for ch in uniq)] = v
    return uniq, out


def diff_witness(a: SparseTensor, b: SparseTensor):
    """First index (in sorted order) where ``a`` and ``b`` differ, or None."""
    keys = sorted(set(a.entries) | set(b.entries))
    for k in keys:
        if a[k] != b[k]:
            return k
    return None


def from_dense(rows, variance=(DOWN, UP)) -> SparseTensor:
    """Rank-2 tensor from a nested list."""
    n = len(rows)
    m = len(rows[0]) if n else 0
    return SparseTensor((n, m), variance, {(i, j): Q(v) for i, r in enumerate(rows)
                                           for j, v in enumerate(r) if v})


def sum_tensors(ts: Iterable[SparseTensor], dims=None, variance=None) -> SparseTensor:
    acc = None
    for t in ts:
        acc = t if acc is None else acc + t
    if acc is None:
        return SparseTensor.zeros(dims, variance)
    return acc


def canonical_part(t: SparseTensor, sym_slots: Sequence[int] = (),
                   anti_slots: Sequence[int] = ()) -> SparseTensor:
    """Fold ``t`` onto sorted representatives of the listed slot groups.

    Entries are summed over permutations of ``sym_slots`` and, with the sign of
    the sorting permutation, over permutations of ``anti_slots``.  Two tensors
    have the same (anti)symmetrization exactly when their canonical parts agree,
    and this costs one pass over the entries.
    """
    sym_slots = _check_slots(t, sym_slots)
    anti_slots = _check_slots(t, anti_slots)
    out: dict = {}
    for k, v in t.entries.items():
        new = list(k)
        if sym_slots:
            for s, val in zip(sym_slots, sorted(k[s] for s in sym_slots)):
                new[s] = val
        if anti_slots:
            vals = [k[s] for s in anti_slots]
            if len(set(vals)) < len(vals):
                continue
            inv = sum(1 for i in range(len(vals)) for j in range(i + 1, len(vals)) if vals[i] > vals[j])
            for s, val in zip(anti_slots, sorted(vals)):
                new[s] = val
            if inv % 2:
                v = -v
        new = tuple(new)
        out[new] = out.get(new, ZERO) + v
    return SparseTensor._raw(t.dims, t.variance, {k: v for k, v in out.items() if v})
