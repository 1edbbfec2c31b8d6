"""Homomorphisms between finite algebras of one signature.

A :class:`Hom` carries a ``verified`` flag. :func:`check_hom` and
:func:`search_homs` set it after an exhaustive check; constructions that
are homomorphisms for a known mathematical reason (composition, tupling,
projections, ...) set it without re-checking unless the environment
variable ``UALG_DEBUG_RECHECK=1`` is present.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import kernels
from .algebra import FiniteAlgebra, Product, flat_index, induced_algebra, product_algebra, unflatten

__all__ = [
    "Hom",
    "HomCounterexample",
    "MorphismKind",
    "HomImage",
    "NotAHomomorphism",
    "UnverifiedHom",
    "SignatureMismatch",
    "TheoremCheckFailed",
    "debug_recheck",
    "hom_counterexample",
    "check_hom",
    "identity_hom",
    "constant_hom",
    "compose_hom",
    "classify",
    "equalizer",
    "kernel_pairs",
    "image_algebra",
    "search_homs",
    "tuple_hom_into_product",
    "factorwise_product_hom",
    "projection_hom",
]


class SignatureMismatch(ValueError):
    pass


class UnverifiedHom(ValueError):
    pass


class TheoremCheckFailed(AssertionError):
    """A construction that must yield a homomorphism did not (debug re-check)."""


@dataclass(frozen=True)
class HomCounterexample:
    symbol: str
    args: tuple[int, ...]
    lhs: int  # h(f^A(args))
    rhs: int  # f^B(h(args))

    def __str__(self) -> str:
        return f"{self.symbol}{self.args}: h(f(a)) = {self.lhs} but f(h(a)) = {self.rhs}"


class NotAHomomorphism(ValueError):
    def __init__(self, counterexample: HomCounterexample):
        self.counterexample = counterexample
        super().__init__(f"not a homomorphism at {counterexample}")


@dataclass(frozen=True)
class Hom:
    domain: FiniteAlgebra
    codomain: FiniteAlgebra
    map: tuple[int, ...]
    verified: bool = False

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __len__(self) -> int:
        return len(self.map)


@dataclass(frozen=True)
class MorphismKind:
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


@dataclass(frozen=True)
class HomImage:
    subset: tuple[int, ...]
    algebra: FiniteAlgebra
    inclusion: Hom  # image algebra -> codomain, injective
    corestriction: Hom  # domain -> image algebra, surjective


def debug_recheck() -> bool:
    return os.environ.get("UALG_DEBUG_RECHECK", "") not in ("", "0")


def _same_signature(A: FiniteAlgebra, B: FiniteAlgebra) -> None:
    if A.signature != B.signature:
        raise SignatureMismatch("algebras have different signatures")


def _check_shape(A: FiniteAlgebra, B: FiniteAlgebra, hmap: Sequence[int]) -> tuple[int, ...]:
    _same_signature(A, B)
    hmap = tuple(int(v) for v in hmap)
    if len(hmap) != A.size:
        raise ValueError(f"map has length {len(hmap)}, domain has size {A.size}")
    for x, v in enumerate(hmap):
        if not 0 <= v < B.size:
            raise ValueError(f"map sends {x} to {v}, outside [0, {B.size})")
    return hmap


def hom_counterexample(A: FiniteAlgebra, B: FiniteAlgebra,
                       hmap: Sequence[int]) -> HomCounterexample | None:
    """First violated compatibility equation in (symbol, flat index) order."""
    hmap = _check_shape(A, B, hmap)
    found = kernels.hom_violation(
        A.size, B.size, A.signature.arities, A.tables, B.tables, hmap
    )
    if found is None:
        return None
    i, idx = found
    sym, arity = A.signature.symbols[i]
    args = unflatten(idx, A.size, arity)
    image = [hmap[a] for a in args]
    rhs = B.tables[i][flat_index(image, B.size)]
    return HomCounterexample(sym, args, hmap[A.tables[i][idx]], rhs)


def check_hom(A: FiniteAlgebra, B: FiniteAlgebra, hmap: Sequence[int]) -> Hom:
    """Verified :class:`Hom` or :class:`NotAHomomorphism` with the first witness."""
    cx = hom_counterexample(A, B, hmap)
    if cx is not None:
        raise NotAHomomorphism(cx)
    return Hom(A, B, tuple(hmap), True)


def _theorem_hom(A: FiniteAlgebra, B: FiniteAlgebra, hmap: Sequence[int], why: str) -> Hom:
    hmap = tuple(hmap)
    if debug_recheck():
        cx = hom_counterexample(A, B, hmap)
        if cx is not None:
            raise TheoremCheckFailed(f"{why} produced a non-homomorphism: {cx}")
    return Hom(A, B, hmap, True)


def _require_verified(*homs: Hom) -> None:
    for h in homs:
        if not h.verified:
            raise UnverifiedHom("homomorphism has not been verified; use check_hom")


def identity_hom(A: FiniteAlgebra) -> Hom:
    return _theorem_hom(A, A, range(A.size), "identity")


def constant_hom(A: FiniteAlgebra, B: FiniteAlgebra, value: int) -> Hom:
    """Constant map; verified by exhaustive check since it is a hom only
    when ``value`` is fixed by every operation of B."""
    return check_hom(A, B, [value] * A.size)


def compose_hom(g: Hom, h: Hom) -> Hom:
    """``h after g``: first ``g: A -> B``, then ``h: B -> C``."""
    _require_verified(g, h)
    if g.codomain != h.domain:
        raise ValueError("codomain of the first hom is not the domain of the second")
    return _theorem_hom(g.domain, h.codomain, [h.map[v] for v in g.map], "composition")


def classify(h: Hom) -> MorphismKind:
    image = set(h.map)
    return MorphismKind(len(image) == len(h.map), len(image) == h.codomain.size)


def equalizer(g: Hom, h: Hom) -> tuple[int, ...]:
    if g.domain != h.domain or g.codomain != h.codomain:
        raise ValueError("equalizer needs two homs with the same endpoints")
    return tuple(x for x in range(g.domain.size) if g.map[x] == h.map[x])


def kernel_pairs(h: Hom) -> tuple[tuple[int, ...], ...]:
    """Fibers of ``h``, each ascending, ordered by their least element."""
    _require_verified(h)
    fibers: dict[int, list[int]] = {}
    for x, v in enumerate(h.map):
        fibers.setdefault(v, []).append(x)
    return tuple(sorted(tuple(f) for f in fibers.values()))


def image_algebra(h: Hom) -> HomImage:
    _require_verified(h)
    subset = tuple(sorted(set(h.map)))
    B = h.codomain
    violation = kernels.closure_violation(B.size, B.signature.arities, B.tables, subset)
    if violation is not None:
        raise TheoremCheckFailed(f"image of a homomorphism is not closed: {violation}")
    alg = induced_algebra(B, subset)
    position = {x: j for j, x in enumerate(subset)}
    inclusion = _theorem_hom(alg, B, subset, "image inclusion")
    corestriction = _theorem_hom(h.domain, alg, [position[v] for v in h.map], "corestriction")
    return HomImage(subset, alg, inclusion, corestriction)


def search_homs(A: FiniteAlgebra, B: FiniteAlgebra, limit: int | None = None,
                require_injective: bool = False, require_surjective: bool = False,
                fixed: Mapping[int, int] | Sequence[int | None] | None = None) -> list[Hom]:
    """All homs A -> B meeting the constraints, sorted lexicographically by map.

    Backtracks over domain positions in ascending order and checks each
    compatibility equation as soon as all of its positions are assigned.
    ``fixed`` pins some positions (a mapping, or a sequence using None for
    free positions). Complete unless ``limit`` truncates the result.
    """
    _same_signature(A, B)
    pinned = [-1] * A.size
    if fixed is not None:
        items = fixed.items() if isinstance(fixed, Mapping) else enumerate(fixed)
        for x, v in items:
            if v is None:
                continue
            if not 0 <= x < A.size or not 0 <= v < B.size:
                raise ValueError(f"fixed entry {x} -> {v} out of range")
            pinned[x] = v
    maps = kernels.search_homs(
        A.size, B.size, A.signature.arities, A.tables, B.tables,
        -1 if limit is None else limit, require_injective, require_surjective, pinned,
    )
    if debug_recheck():
        return [check_hom(A, B, m) for m in maps]
    return [Hom(A, B, tuple(m), True) for m in maps]


def _as_product(family) -> Product:
    if isinstance(family, Product):
        return family
    return product_algebra(family)


def tuple_hom_into_product(A: FiniteAlgebra, family, homs: Sequence[Hom]) -> Hom:
    """The hom ``a -> (h_0(a), ..., h_{k-1}(a))`` into the product."""
    P = _as_product(family)
    if len(homs) != len(P.factors):
        raise ValueError("need one hom per factor")
    for h, B in zip(homs, P.factors):
        _require_verified(h)
        if h.domain != A or h.codomain != B:
            raise ValueError("hom endpoints do not match the domain and family")
    hmap = [P.encode([h.map[a] for h in homs]) for a in range(A.size)]
    return _theorem_hom(A, P.algebra, hmap, "tupling")


def factorwise_product_hom(familyA, familyB, homs: Sequence[Hom]) -> Hom:
    """Acts as ``homs[i]`` on coordinate i."""
    PA, PB = _as_product(familyA), _as_product(familyB)
    if not len(PA.factors) == len(PB.factors) == len(homs):
        raise ValueError("families and homs must have equal length")
    for h, A, B in zip(homs, PA.factors, PB.factors):
        _require_verified(h)
        if h.domain != A or h.codomain != B:
            raise ValueError("hom endpoints do not match the families")
    hmap = [
        PB.encode([h.map[c] for h, c in zip(homs, PA.decode(e))]) for e in range(PA.algebra.size)
    ]
    return _theorem_hom(PA.algebra, PB.algebra, hmap, "factorwise product")


def projection_hom(family, i: int) -> Hom:
    P = _as_product(family)
    if not 0 <= i < len(P.factors):
        raise IndexError(f"factor index {i} out of range")
    hmap = [P.decode(e)[i] for e in range(P.algebra.size)]
    return _theorem_hom(P.algebra, P.factors[i], hmap, "projection")
