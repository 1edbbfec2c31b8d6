"""The first homomorphism and isomorphism theorems, and factoring of
homomorphisms through surjections, as checked constructions."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FiniteAlgebra
from .congruences import Congruence, kernel_congruence, quotient
from .homs import Hom, TheoremCheckFailed, _require_verified, _theorem_hom, classify
from .isomorphism import Iso, check_iso
from .subalg import SubalgebraWitness

__all__ = [
    "HomDecomposition",
    "NotSurjective",
    "KernelNotContained",
    "first_hom_decomposition",
    "first_isomorphism",
    "hom_factor",
]


class NotSurjective(ValueError):
    def __init__(self, missed: list[int], what: str = "homomorphism"):
        self.missed = missed
        super().__init__(f"{what} is not surjective; missed codomain elements {missed}")


class KernelNotContained(ValueError):
    """``h(x) == h(y)`` but ``g(x) != g(y)``."""

    def __init__(self, x: int, y: int):
        self.witness = (x, y)
        super().__init__(f"kernel containment fails at ({x}, {y})")


@dataclass(frozen=True)
class HomDecomposition:
    """``original = mediating . projection`` through ``A / ker original``."""

    original: Hom
    congruence: Congruence
    quotient_algebra: FiniteAlgebra
    projection: Hom
    mediating: Hom
    embedding_witness: SubalgebraWitness


def _missed(h: Hom) -> list[int]:
    image = set(h.map)
    return [y for y in range(h.codomain.size) if y not in image]


def first_hom_decomposition(h: Hom) -> HomDecomposition:
    _require_verified(h)
    theta = kernel_congruence(h)
    q = quotient(h.domain, theta)
    mediating = _theorem_hom(
        q.algebra, h.codomain, [h.map[r] for r in theta.representatives], "mediating map"
    )
    for x in range(h.domain.size):
        if mediating.map[q.projection.map[x]] != h.map[x]:
            raise TheoremCheckFailed(f"decomposition does not commute at {x}")
    if not classify(mediating).injective:
        raise TheoremCheckFailed("mediating map is not injective")
    if not classify(q.projection).surjective:
        raise TheoremCheckFailed("canonical projection is not surjective")
    return HomDecomposition(h, theta, q.algebra, q.projection, mediating, SubalgebraWitness(mediating))


def first_isomorphism(h: Hom) -> Iso:
    """For surjective ``h: A -> B``, the isomorphism ``A / ker h -> B``."""
    _require_verified(h)
    missed = _missed(h)
    if missed:
        raise NotSurjective(missed)
    d = first_hom_decomposition(h)
    forward = d.mediating
    inverse = [0] * forward.codomain.size
    for c, b in enumerate(forward.map):
        inverse[b] = c
    backward = _theorem_hom(h.codomain, d.quotient_algebra, inverse, "inverse of a bijective hom")
    return check_iso(forward, backward)


def hom_factor(g: Hom, h: Hom, want_epi: bool = False) -> Hom:
    """The hom ``phi: C -> B`` with ``g = phi . h``, given ``g: A -> B`` and a
    surjective ``h: A -> C`` whose kernel is contained in that of ``g``.

    ``phi(c)`` is ``g`` at the least preimage of ``c``. With ``want_epi``,
    ``g`` must be surjective too, and then so is ``phi``.
    """
    _require_verified(g, h)
    if g.domain != h.domain:
        raise ValueError("g and h must share a domain")
    missed = _missed(h)
    if missed:
        raise NotSurjective(missed, "h")
    if want_epi:
        missed_g = _missed(g)
        if missed_g:
            raise NotSurjective(missed_g, "g")
    least: dict[int, int] = {}
    for x, c in enumerate(h.map):
        first = least.setdefault(c, x)
        if g.map[first] != g.map[x]:
            raise KernelNotContained(first, x)
    phi = _theorem_hom(
        h.codomain, g.codomain, [g.map[least[c]] for c in range(h.codomain.size)], "factor map"
    )
    if want_epi and not classify(phi).surjective:
        raise TheoremCheckFailed("factor of surjections is not surjective")
    return phi
