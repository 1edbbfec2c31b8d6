"""Isomorphisms as pairs of mutually inverse homomorphisms."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .algebra import FiniteAlgebra, flat_index, product_algebra, unflatten
from .homs import (
    Hom,
    TheoremCheckFailed,
    _require_verified,
    check_hom,
    compose_hom,
    factorwise_product_hom,
    hom_counterexample,
    identity_hom,
    search_homs,
)

__all__ = [
    "Iso",
    "IsoViolation",
    "NotAnIsomorphism",
    "check_iso",
    "iso_refl",
    "iso_sym",
    "compose_iso",
    "find_iso",
    "product_iso",
    "fixed_point_profile",
]


@dataclass(frozen=True)
class Iso:
    forward: Hom
    backward: Hom

    @property
    def domain(self) -> FiniteAlgebra:
        return self.forward.domain

    @property
    def codomain(self) -> FiniteAlgebra:
        return self.forward.codomain


@dataclass(frozen=True)
class IsoViolation:
    side: str  # "domain": backward(forward(x)) != x; "codomain": the other way
    element: int
    got: int


class NotAnIsomorphism(ValueError):
    def __init__(self, violation: IsoViolation):
        self.violation = violation
        super().__init__(
            f"round trip on the {violation.side} sends {violation.element} to {violation.got}"
        )


def check_iso(f: Hom, g: Hom) -> Iso:
    """Pair ``f: A -> B`` and ``g: B -> A`` if they are mutually inverse.

    Raises :class:`NotAnIsomorphism` at the first element (domain side
    first) where a round trip is not the identity.
    """
    _require_verified(f, g)
    if f.domain != g.codomain or f.codomain != g.domain:
        raise ValueError("endpoints of the two homs do not match up")
    for x in range(f.domain.size):
        y = g.map[f.map[x]]
        if y != x:
            raise NotAnIsomorphism(IsoViolation("domain", x, y))
    for x in range(f.codomain.size):
        y = f.map[g.map[x]]
        if y != x:
            raise NotAnIsomorphism(IsoViolation("codomain", x, y))
    return Iso(f, g)


def iso_refl(A: FiniteAlgebra) -> Iso:
    ident = identity_hom(A)
    return Iso(ident, ident)


def iso_sym(i: Iso) -> Iso:
    return Iso(i.backward, i.forward)


def compose_iso(i1: Iso, i2: Iso) -> Iso:
    """``A ~ B`` and ``B ~ C`` give ``A ~ C``."""
    if i1.codomain != i2.domain:
        raise ValueError("isomorphisms are not composable")
    return check_iso(compose_hom(i1.forward, i2.forward), compose_hom(i2.backward, i1.backward))


def _inverse_map(hmap: Sequence[int]) -> list[int]:
    inv = [0] * len(hmap)
    for x, y in enumerate(hmap):
        inv[y] = x
    return inv


def find_iso(A: FiniteAlgebra, B: FiniteAlgebra) -> Iso | None:
    """Lexicographically least isomorphism ``A -> B``, or None.

    Exhaustive search over bijective homs; the inverse of each candidate is
    checked independently before pairing.
    """
    if A.size != B.size or A.signature != B.signature:
        return None
    for f in search_homs(A, B, require_injective=True, require_surjective=True):
        inv = _inverse_map(f.map)
        if hom_counterexample(B, A, inv) is None:
            return check_iso(f, check_hom(B, A, inv))
    return None


def product_iso(isos: Sequence[Iso]) -> Iso:
    """Factorwise isomorphism between the products of domains and codomains."""
    isos = list(isos)
    if not isos:
        raise ValueError("need at least one isomorphism")
    PA = product_algebra([i.domain for i in isos])
    PB = product_algebra([i.codomain for i in isos])
    forward = factorwise_product_hom(PA, PB, [i.forward for i in isos])
    backward = factorwise_product_hom(PB, PA, [i.backward for i in isos])
    try:
        return check_iso(forward, backward)
    except NotAnIsomorphism as exc:
        raise TheoremCheckFailed(f"product of isomorphisms failed a round trip: {exc}") from exc


def fixed_point_profile(A: FiniteAlgebra) -> dict[str, tuple]:
    """Isomorphism invariant built from fixed points of unary slices.

    For each symbol: the fixed-point count of the diagonal ``x -> f(x,...,x)``,
    then, per argument position, the sorted multiset of fixed-point counts
    of ``x -> f(c_0, ..., x, ..., c_{k-1})`` over all choices of the other
    arguments.
    """
    n = A.size
    profile = {}
    for (sym, k), table in zip(A.signature.symbols, A.tables):
        if k == 0:
            profile[sym] = ()
            continue
        diag = sum(1 for x in range(n) if table[flat_index([x] * k, n)] == x)
        per_position = []
        for pos in range(k):
            counts = Counter()
            for rest_idx in range(n ** (k - 1)):
                rest = list(unflatten(rest_idx, n, k - 1))
                fixed = 0
                for x in range(n):
                    args = rest[:pos] + [x] + rest[pos:]
                    if table[flat_index(args, n)] == x:
                        fixed += 1
                counts[fixed] += 1
            per_position.append(tuple(sorted(counts.items())))
        profile[sym] = (diag, tuple(per_position))
    return profile
