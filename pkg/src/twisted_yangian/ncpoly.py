"""Graded noncommutative polynomials with PBW normal ordering.

A polynomial lives in an n-fold tensor power of one ring.  Each term is keyed
by ``(hbar_power, word_1, ..., word_n)`` where ``word_i`` is a tuple of letter
codes for the i-th tensor factor.  Letters are ints ``kind * KIND_BASE + index``:

* kind 0: level-0 generator x_a (grade 0)
* kind 1: J(x_a) (grade 1)
* kind 2: B(Y_p) (grade 1), index taken in the parent/adapted basis
* kind 3: G(x_a) (grade 2)
* kind 4: free symbol (no relations at all)

Normal order: level-0 letters first, sorted by index, then the higher letters
in their original order.  The only rewriting rule is the Lie action
``[x_a, L(x_b)] = alpha_{ab}^c L(x_c)`` (L = x, J, B or G), which is the same
for every kind.  Two higher letters are never reordered.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from .exact_tensor import Q
from .lie_core import LieAlgebraData

KIND_BASE = 1024
X, J, B, G, FREE = 0, 1, 2, 3, 4
KIND_NAMES = {X: "", J: "J", B: "B", G: "G", FREE: "s"}
GRADE = {X: 0, J: 1, B: 1, G: 2, FREE: 0}


def code(kind: int, index: int) -> int:
    return kind * KIND_BASE + index


def kind_of(c: int) -> int:
    return c // KIND_BASE


def index_of(c: int) -> int:
    return c % KIND_BASE


class PBWRing:
    """Multiplication of normal words over U(g) acting on higher letters.

    ``L=None`` gives the free associative algebra (plain concatenation).
    """

    def __init__(self, L: LieAlgebraData | None = None, labels: Sequence[str] | None = None):
        self.L = L
        self.labels = tuple(labels) if labels is not None else (L.labels if L else ())
        self.free = L is None
        br: dict = {}
        if L is not None:
            for (a, b, c), v in L.structure.entries.items():
                br.setdefault((a, b), []).append((c, v))
        self._br = br
        self._sort_memo: dict = {}
        self._mul_memo: dict = {}

    def bracket(self, a: int, b: int):
        return self._br.get((a, b), ())

    def letter_name(self, c: int) -> str:
        k, i = kind_of(c), index_of(c)
        lab = self.labels[i] if i < len(self.labels) else str(i)
        if k == X:
            return lab
        if k == FREE:
            return f"s{i}"
        return f"{KIND_NAMES[k]}({lab})"

    # core rewriting

    def _sort_x(self, xs: tuple, c: int) -> dict:
        """Normal form of (sorted level-0 word xs) * x_c."""
        if not xs or xs[-1] <= c:
            return {xs + (c,): mpq(1)}
        key = (xs, c)
        hit = self._sort_memo.get(key)
        if hit is not None:
            return hit
        ys, a = xs[:-1], xs[-1]
        out: dict = {}
        # ys a c = ys c a + ys [a, c]
        for w, co in self._sort_x(ys, c).items():
            for w2, co2 in self._sort_x(w, a).items():
                _acc(out, w2, co * co2)
        for d, al in self.bracket(a, c):
            for w2, co2 in self._sort_x(ys, d).items():
                _acc(out, w2, al * co2)
        self._sort_memo[key] = out
        return out

    def mul_letter(self, u: tuple, c: int) -> dict:
        if self.free or kind_of(c) != X:
            return {u + (c,): mpq(1)}
        k = 0
        while k < len(u) and u[k] < KIND_BASE:
            k += 1
        xs, hs = u[:k], u[k:]
        if not hs:
            return self._sort_x(xs, c)
        out: dict = {}
        for w, co in self._sort_x(xs, c).items():
            _acc(out, w + hs, co)
        # hs x_c = x_c hs - sum_i h_1..[x_c, h_i]..h_k
        for i, h in enumerate(hs):
            kh = kind_of(h) * KIND_BASE
            for d, al in self.bracket(c, index_of(h)):
                _acc(out, xs + hs[:i] + (kh + d,) + hs[i + 1:], -al)
        return out

    def mul_words(self, u: tuple, v: tuple) -> dict:
        if not v:
            return {u: mpq(1)}
        if not u:
            return {v: mpq(1)}
        key = (u, v)
        hit = self._mul_memo.get(key)
        if hit is not None:
            return hit
        k = 0
        while k < len(v) and v[k] < KIND_BASE:
            k += 1
        if self.free:
            k = 0
        cur = {u: mpq(1)}
        for c in v[:k]:
            nxt: dict = {}
            for w, co in cur.items():
                for w2, co2 in self.mul_letter(w, c).items():
                    _acc(nxt, w2, co * co2)
            cur = nxt
        tail = v[k:]
        out = {w + tail: co for w, co in cur.items()} if tail else cur
        if len(self._mul_memo) < 200000:
            self._mul_memo[key] = out
        return out

    def normal_form_word(self, word: Sequence[int]) -> dict:
        """Normal form of an arbitrary (unordered) word."""
        cur = {(): mpq(1)}
        for c in word:
            nxt: dict = {}
            for w, co in cur.items():
                for w2, co2 in self.mul_letter(w, c).items():
                    _acc(nxt, w2, co * co2)
            cur = nxt
        return cur

    def is_normal(self, word: Sequence[int]) -> bool:
        if self.free:
            return True
        seen_high = False
        prev = -1
        for c in word:
            if c >= KIND_BASE:
                seen_high = True
            elif seen_high or c < prev:
                return False
            else:
                prev = c
        return True


def _acc(d: dict, k, v):
    s = d.get(k)
    s = v if s is None else s + v
    if s:
        d[k] = s
    elif k in d:
        del d[k]


class NcPoly:
    """Element of the n-fold tensor power of a :class:`PBWRing`, with formal hbar."""

    __slots__ = ("ring", "n", "terms")

    def __init__(self, ring: PBWRing, n: int = 1, terms: dict | None = None):
        self.ring = ring
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # constructors

    @classmethod
    def zero(cls, ring, n=1):
        return cls(ring, n)

    @classmethod
    def one(cls, ring, n=1, coeff=1):
        return cls(ring, n, {(0,) + ((),) * n: Q(coeff)})

    @classmethod
    def letter(cls, ring, kind: int, index: int, factor: int = 0, n: int = 1, coeff=1):
        key = [0] + [()] * n
        key[factor + 1] = (code(kind, index),)
        return cls(ring, n, {tuple(key): Q(coeff)})

    @classmethod
    def from_word(cls, ring, word: Sequence[int], hpow: int = 0, coeff=1):
        """Normal form of a single possibly unordered word (one factor)."""
        return cls(ring, 1, {(hpow, w): Q(coeff) * c for w, c in ring.normal_form_word(word).items()})

    # arithmetic

    def _check(self, other):
        if other.ring is not self.ring or other.n != self.n:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            _acc(t, k, v)
        return NcPoly(self.ring, self.n, t)

    def __sub__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            _acc(t, k, -v)
        return NcPoly(self.ring, self.n, t)

    def __neg__(self):
        return NcPoly(self.ring, self.n, {k: -v for k, v in self.terms.items()})

    def scale(self, c):
        c = Q(c)
        if not c:
            return NcPoly(self.ring, self.n)
        return NcPoly(self.ring, self.n, {k: v * c for k, v in self.terms.items()})

    def hbar(self, power: int = 1):
        return NcPoly(self.ring, self.n, {(k[0] + power,) + k[1:]: v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            return self.scale(other)
        self._check(other)
        ring, n = self.ring, self.n
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                h = k1[0] + k2[0]
                parts = [ring.mul_words(k1[i], k2[i]) for i in range(1, n + 1)]
                if all(len(p) == 1 for p in parts):
                    key = (h,) + tuple(next(iter(p)) for p in parts)
                    val = c
                    for p in parts:
                        val *= next(iter(p.values()))
                    _acc(out, key, val)
                    continue
                for combo in itertools.product(*(p.items() for p in parts)):
                    val = c
                    for _, cc in combo:
                        val *= cc
                    _acc(out, (h,) + tuple(w for w, _ in combo), val)
        return NcPoly(ring, n, out)

    __rmul__ = scale

    def comm(self, other):
        return self * other - other * self

    def anticomm(self, other):
        return self * other + other * self

    def tensor(self, other):
        """Outer product; factors of ``other`` are appended."""
        if other.ring is not self.ring:
            raise ValueError("polynomials live in different rings")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[(k1[0] + k2[0],) + k1[1:] + k2[1:]] = c1 * c2
        return NcPoly(self.ring, self.n + other.n, out)

    def permute_factors(self, perm: Sequence[int]):
        """New factor i is old factor perm[i]."""
        return NcPoly(self.ring, self.n,
                      {(k[0],) + tuple(k[1 + p] for p in perm): v for k, v in self.terms.items()})

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def coeff(self, key) -> mpq:
        return self.terms.get(tuple(key), mpq(0))

    def filter(self, pred: Callable[[tuple], bool]):
        return NcPoly(self.ring, self.n, {k: v for k, v in self.terms.items() if pred(k)})

    def hbar_part(self, power: int):
        return self.filter(lambda k: k[0] == power)

    def grade_ok(self, total: int) -> bool:
        """Every term has hbar power + letter grades == total."""
        for k in self.terms:
            g = k[0] + sum(GRADE[kind_of(c)] for w in k[1:] for c in w)
            if g != total:
                return False
        return True

    def first_term(self):
        if not self.terms:
            return None
        k = min(self.terms)
        return (self.key_str(k), str(self.terms[k]))

    def key_str(self, k) -> str:
        words = ["*".join(self.ring.letter_name(c) for c in w) or "1" for w in k[1:]]
        s = " (x) ".join(words)
        return (f"hbar^{k[0]} " if k[0] else "") + s

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v}) {self.key_str(k)}" for k, v in sorted(self.terms.items()))


# helpers for building elements


def sym_product(polys: Sequence[NcPoly]) -> NcPoly:
    """{p_1, ..., p_m} = (1/m!) sum over orderings of the product."""
    m = len(polys)
    if m == 0:
        raise ValueError("empty symmetrized product")
    ring, n = polys[0].ring, polys[0].n
    acc = NcPoly(ring, n)
    for perm in itertools.permutations(range(m)):
        prod = polys[perm[0]]
        for i in perm[1:]:
            prod = prod * polys[i]
        acc = acc + prod
    return acc.scale(mpq(1, math.factorial(m)))


def sym_letters(ring: PBWRing, letters: Sequence[int], factor: int = 0, n: int = 1) -> NcPoly:
    """Symmetrized product of single letters (given as codes) in one factor."""
    polys = [NcPoly.letter(ring, kind_of(c), index_of(c), factor, n) for c in letters]
    return sym_product(polys)


def linear(ring: PBWRing, kind: int, vec, factor: int = 0, n: int = 1) -> NcPoly:
    """sum_i vec[i] L(x_i) for a coefficient mapping or sequence ``vec``."""
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    t = {}
    for i, c in items:
        if c:
            key = [0] + [()] * n
            key[factor + 1] = (code(kind, i),)
            t[tuple(key)] = Q(c)
    return NcPoly(ring, n, t)


def substitute(p: NcPoly, factor: int, image: Callable[[int], NcPoly]) -> NcPoly:
    """Replace factor ``factor`` by the algebra-homomorphic image of its letters.

    ``image(code)`` returns an NcPoly with some number m of factors; the result
    has ``p.n - 1 + m`` factors, the image factors taking the place of ``factor``.
    """
    ring = p.ring
    letter_cache: dict = {}
    word_cache: dict = {}

    def img_letter(c):
        r = letter_cache.get(c)
        if r is None:
            r = letter_cache[c] = image(c)
        return r

    def img_word(w):
        r = word_cache.get(w)
        if r is None:
            r = img_letter(w[0])
            for c in w[1:]:
                r = r * img_letter(c)
            word_cache[w] = r
        return r

    m = None
    out: dict = {}
    for k, v in p.terms.items():
        w = k[1 + factor]
        if not w:
            if m is None:
                m = _image_arity(image, p, factor)
            sub_terms = {(0,) + ((),) * m: mpq(1)}
        else:
            img = img_word(w)
            m = img.n
            sub_terms = img.terms
        left, right = k[1:1 + factor], k[2 + factor:]
        for k2, v2 in sub_terms.items():
            _acc(out, (k[0] + k2[0],) + left + k2[1:] + right, v * v2)
    if m is None:
        m = _image_arity(image, p, factor)
    return NcPoly(ring, p.n - 1 + m, out)


def _image_arity(image, p: NcPoly, factor: int) -> int:
    # probe the image of a letter of that factor to learn how many factors it produces
    for k in p.terms:
        for c in k[1 + factor]:
            return image(c).n
    return image(code(X, 0)).n


def antihom_eval(ring: PBWRing, raw: Iterable[tuple], image: Callable[[int], NcPoly]) -> NcPoly:
    """Evaluate an anti-homomorphism on raw (unnormalized) words.

    ``raw`` yields ``(coeff, hbar_power, word)``; each word is mapped to the
    product of letter images in reversed order.
    """
    acc = None
    for coeff, hp, word in raw:
        term = None
        for c in reversed(word):
            term = image(c) if term is None else term * image(c)
        term = term.hbar(hp).scale(coeff)
        acc = term if acc is None else acc + term
    return acc


def hom_eval(ring: PBWRing, raw: Iterable[tuple], image: Callable[[int], NcPoly]) -> NcPoly:
    """Evaluate a homomorphism on raw words (letters in order)."""
    acc = None
    for coeff, hp, word in raw:
        term = None
        for c in word:
            term = image(c) if term is None else term * image(c)
        term = term.hbar(hp).scale(coeff)
        acc = term if acc is None else acc + term
    return acc


# whole-polynomial operations


def normal_form(p: NcPoly) -> NcPoly:
    """Re-normalize every factor of every term; idempotent on normal input."""
    ring = p.ring
    out: dict = {}
    for k, v in p.terms.items():
        parts = [ring.normal_form_word(w) for w in k[1:]]
        for combo in itertools.product(*(part.items() for part in parts)):
            c = v
            for _, cc in combo:
                c = c * cc
            _acc(out, (k[0],) + tuple(w for w, _ in combo), c)
    return NcPoly(ring, p.n, out)


symmetrized_product = sym_product


def coproduct(p: NcPoly, L: LieAlgebraData, factor: int = 0) -> NcPoly:
    """Coproduct of Y(g) applied to one factor of ``p``."""
    from .hopf import YangianContext
    ctx = YangianContext(L, p.ring)
    return substitute(p, factor, ctx._cached(ctx.coproduct_image))


def coaction_proper(p: NcPoly, P, factor: int = 0) -> NcPoly:
    """Coaction of the proper twisted Yangian; ``p`` is over the adapted ring."""
    from .hopf import ProperCoideal
    ctx = ProperCoideal(P, p.ring)
    return substitute(p, factor, ctx._cached(ctx.coaction_image))


def coaction_even(p: NcPoly, L: LieAlgebraData, factor: int = 0) -> NcPoly:
    """Coaction of the theta = id twisted Yangian."""
    from .hopf import EvenCoideal
    ctx = EvenCoideal(L, ring=p.ring)
    return substitute(p, factor, ctx._cached(ctx.coaction_image))
