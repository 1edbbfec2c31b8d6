"""Subuniverses, generated subalgebras, the subalgebra preorder, and
class-level membership queries."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .algebra import FiniteAlgebra, induced_algebra
from .homs import (
    Hom,
    SignatureMismatch,
    _require_verified,
    _theorem_hom,
    classify,
    compose_hom,
    identity_hom,
    search_homs,
)
from .isomorphism import Iso, find_iso
from .terms import enumerate_terms, interpret

__all__ = [
    "Subuniverse",
    "ClosureViolation",
    "SubalgebraWitness",
    "ClassWitness",
    "IncompleteSearchWarning",
    "closure_violation",
    "is_closed",
    "sg_closure",
    "subuniv_algebra",
    "all_subuniverses",
    "intersect_subuniverses",
    "term_image_closure",
    "is_subalgebra_of",
    "subalgebra_refl",
    "subalgebra_trans",
    "subalgebra_iso",
    "is_subalgebra_of_class",
    "is_hom_image_of",
    "is_hom_image_of_class",
]

# all_subuniverses is used for class queries up to this carrier size
EXHAUSTIVE_LIMIT = 4


class IncompleteSearchWarning(UserWarning):
    """A negative class-membership answer came from a non-exhaustive scan."""


@dataclass(frozen=True)
class Subuniverse:
    algebra: FiniteAlgebra
    members: tuple[int, ...]

    def __contains__(self, x: object) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClosureViolation:
    symbol: str
    args: tuple[int, ...]
    result: int


@dataclass(frozen=True)
class SubalgebraWitness:
    """An injective hom ``B -> A`` exhibiting ``B`` as a subalgebra of ``A``."""

    embedding: Hom

    def __post_init__(self):
        _require_verified(self.embedding)
        if not classify(self.embedding).injective:
            raise ValueError("subalgebra witness must be injective")


@dataclass(frozen=True)
class ClassWitness:
    member_index: int
    member: FiniteAlgebra
    subuniverse: Subuniverse
    subalgebra: FiniteAlgebra
    iso: Iso  # B -> subalgebra


def _check_subset(A: FiniteAlgebra, subset: Iterable[int]) -> tuple[int, ...]:
    members = tuple(sorted(set(subset)))
    for x in members:
        if not 0 <= x < A.size:
            raise ValueError(f"element {x} out of range [0, {A.size})")
    return members


def closure_violation(A: FiniteAlgebra, subset: Iterable[int]) -> ClosureViolation | None:
    members = _check_subset(A, subset)
    found = kernels.closure_violation(A.size, A.signature.arities, A.tables, members)
    if found is None:
        return None
    i, args, r = found
    return ClosureViolation(A.signature.symbols[i][0], tuple(args), r)


def is_closed(A: FiniteAlgebra, subset: Iterable[int]) -> bool:
    return closure_violation(A, subset) is None


def sg_closure(A: FiniteAlgebra, X: Iterable[int]) -> Subuniverse:
    """Smallest subuniverse of ``A`` containing ``X`` (worklist fixpoint)."""
    seed = _check_subset(A, X)
    members = kernels.closure(A.size, A.signature.arities, A.tables, seed)
    return Subuniverse(A, tuple(members))


def subuniv_algebra(A: FiniteAlgebra, S: Subuniverse) -> tuple[FiniteAlgebra, SubalgebraWitness]:
    if S.algebra != A:
        raise ValueError("subuniverse belongs to a different algebra")
    if not S.members:
        raise ValueError("the empty subuniverse induces no algebra")
    B = induced_algebra(A, S.members)
    return B, SubalgebraWitness(_theorem_hom(B, A, S.members, "subalgebra inclusion"))


def all_subuniverses(A: FiniteAlgebra) -> list[Subuniverse]:
    """Every closed subset, by size and then lexicographically (2^size scan)."""
    out = []
    for r in range(A.size + 1):
        for subset in itertools.combinations(range(A.size), r):
            if kernels.closure_violation(A.size, A.signature.arities, A.tables, subset) is None:
                out.append(Subuniverse(A, subset))
    return out


def intersect_subuniverses(subs: Sequence[Subuniverse]) -> Subuniverse:
    if not subs:
        raise ValueError("need at least one subuniverse")
    A = subs[0].algebra
    common = set(subs[0].members)
    for S in subs[1:]:
        if S.algebra != A:
            raise ValueError("subuniverses of different algebras")
        common &= set(S.members)
    members = tuple(sorted(common))
    v = closure_violation(A, members)
    if v is not None:
        raise AssertionError(f"intersection of subuniverses is not closed: {v}")
    return Subuniverse(A, members)


def term_image_closure(A: FiniteAlgebra, Y: Iterable[int]) -> Subuniverse:
    """Values of all terms evaluated at elements of ``Y``.

    Grows the set by evaluating every height-one term at every assignment
    into the current set until nothing new appears. Deliberately shares no
    code with :func:`sg_closure`.
    """
    current = set(_check_subset(A, Y))
    sig = A.signature
    for t in enumerate_terms(sig, 0, 0):
        current.add(interpret(t, A, ()))
    k = sig.max_arity
    shallow = enumerate_terms(sig, k, 1)
    while True:
        grown = set(current)
        for env in itertools.product(sorted(current), repeat=k):
            for t in shallow:
                grown.add(interpret(t, A, env))
        if grown == current:
            break
        current = grown
    return Subuniverse(A, tuple(sorted(current)))


def is_subalgebra_of(B: FiniteAlgebra, A: FiniteAlgebra) -> SubalgebraWitness | None:
    if A.signature != B.signature:
        raise SignatureMismatch("algebras have different signatures")
    found = search_homs(B, A, limit=1, require_injective=True)
    return SubalgebraWitness(found[0]) if found else None


def subalgebra_refl(A: FiniteAlgebra) -> SubalgebraWitness:
    return SubalgebraWitness(identity_hom(A))


def subalgebra_trans(c_in_b: SubalgebraWitness, b_in_a: SubalgebraWitness) -> SubalgebraWitness:
    return SubalgebraWitness(compose_hom(c_in_b.embedding, b_in_a.embedding))


def subalgebra_iso(iso: Iso, b_in_a: SubalgebraWitness) -> SubalgebraWitness:
    """``C ~ B`` and ``B <= A`` give ``C <= A``."""
    return SubalgebraWitness(compose_hom(iso.forward, b_in_a.embedding))


def _candidate_subuniverses(A: FiniteAlgebra) -> tuple[list[Subuniverse], bool]:
    if A.size <= EXHAUSTIVE_LIMIT:
        return [S for S in all_subuniverses(A) if S.members], True
    seen = {}
    for r in (1, 2):
        for gens in itertools.combinations(range(A.size), r):
            S = sg_closure(A, gens)
            seen.setdefault(S.members, S)
    subs = sorted(seen.values(), key=lambda S: (len(S.members), S.members))
    return subs, False


def is_subalgebra_of_class(B: FiniteAlgebra, klass: Sequence[FiniteAlgebra]) -> ClassWitness | None:
    """First (member, subuniverse) whose induced algebra is isomorphic to ``B``.

    Members of size at most 4 are scanned exhaustively; larger members only
    through subuniverses generated by one or two elements. A negative answer
    that relied on such a partial scan emits :class:`IncompleteSearchWarning`.
    """
    exhaustive = True
    for idx, A in enumerate(klass):
        if A.signature != B.signature:
            raise SignatureMismatch(f"class member {idx} has a different signature")
        subs, complete = _candidate_subuniverses(A)
        exhaustive &= complete
        for S in subs:
            if len(S.members) != B.size:
                continue
            sub, _ = subuniv_algebra(A, S)
            iso = find_iso(B, sub)
            if iso is not None:
                return ClassWitness(idx, A, S, sub, iso)
    if not exhaustive:
        warnings.warn(
            "subalgebra-of-class search was not exhaustive for members larger than "
            f"{EXHAUSTIVE_LIMIT} elements",
            IncompleteSearchWarning,
            stacklevel=2,
        )
    return None


def is_hom_image_of(B: FiniteAlgebra, A: FiniteAlgebra) -> Hom | None:
    """A surjective hom ``A -> B`` if one exists."""
    if A.signature != B.signature:
        raise SignatureMismatch("algebras have different signatures")
    found = search_homs(A, B, limit=1, require_surjective=True)
    return found[0] if found else None


def is_hom_image_of_class(B: FiniteAlgebra,
                          klass: Sequence[FiniteAlgebra]) -> tuple[int, FiniteAlgebra, Hom] | None:
    for idx, A in enumerate(klass):
        h = is_hom_image_of(B, A)
        if h is not None:
            return idx, A, h
    return None
