"""Named algebras and pairs used by the CLI and the test-suite."""

from __future__ import annotations

from functools import lru_cache

from .lie_core import classical_constructor, sl3_chevalley
from .symmetric_pair import (decompose, diagonal_involution, identity_involution,
                             involution_from_images)

# display names for the adapted bases of the sl3 pairs; f3 keeps its own name
# because the named level-1 generator is -B(f3) (see golden.py)
SO3_NAMES = {"e1-e2": "Ce", "f1-f2": "Cf", "h1+h2": "Ch",
             "e1+e2": "CE", "e3": "CE2", "f1+f2": "CF", "h1-h2": "CH"}
GL2_NAMES = {"e1": "Ce", "f1": "Cf", "h1": "Ch", "h1+2h2": "Ck",
             "e2": "CE2", "f2": "CF2", "e3": "CE3"}


@lru_cache(maxsize=None)
def sl3():
    return sl3_chevalley()


def so3_involution(L):
    return involution_from_images(L, {
        "e1": {"e2": -1}, "e2": {"e1": -1}, "f1": {"f2": -1}, "f2": {"f1": -1},
        "h1": {"h2": 1}, "h2": {"h1": 1}, "e3": {"e3": -1}, "f3": {"f3": -1}})


def gl2_involution(L):
    return involution_from_images(L, {
        "e2": {"e2": -1}, "f2": {"f2": -1}, "e3": {"e3": -1}, "f3": {"f3": -1}})


@lru_cache(maxsize=None)
def sl3_so3():
    L = sl3()
    return decompose(L, so3_involution(L), name="sl3-so3", labels=SO3_NAMES)


@lru_cache(maxsize=None)
def sl3_gl2():
    L = sl3()
    return decompose(L, gl2_involution(L), name="sl3-gl2", labels=GL2_NAMES)


@lru_cache(maxsize=None)
def sl3_even():
    L = sl3()
    return decompose(L, identity_involution(L), name="sl3-even")


@lru_cache(maxsize=None)
def sl4(form="killing"):
    return classical_constructor("sl", 4, form)


@lru_cache(maxsize=None)
def sl4_diag(form="killing"):
    L = sl4(form)
    return decompose(L, diagonal_involution(L, [1, 1, -1, -1]), name="sl4-diag")


PAIRS = {"sl3-so3": sl3_so3, "sl3-gl2": sl3_gl2, "sl3-even": sl3_even, "sl4-diag": sl4_diag}
ALGEBRAS = {"sl3": sl3, "sl4": sl4}
