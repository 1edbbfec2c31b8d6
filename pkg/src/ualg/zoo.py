"""Small named algebras and seeded random generators."""

from __future__ import annotations

import random
from itertools import product
from typing import Sequence

from .algebra import FiniteAlgebra, Signature, make_algebra

__all__ = [
    "cyclic_group",
    "meet_semilattice",
    "trivial_algebra",
    "random_algebra",
    "random_signature",
    "random_structured_algebra",
]


def cyclic_group(n: int, symbol: str = "+") -> FiniteAlgebra:
    """Addition modulo n as a single binary operation."""
    return make_algebra(n, {symbol: (2, [(a + b) % n for a in range(n) for b in range(n)])}, f"Z{n}")


def meet_semilattice(n: int = 2, symbol: str = "+") -> FiniteAlgebra:
    """The chain 0 < 1 < ... < n-1 under min."""
    return make_algebra(n, {symbol: (2, [min(a, b) for a in range(n) for b in range(n)])}, f"M{n}")


def trivial_algebra(signature: Signature) -> FiniteAlgebra:
    return FiniteAlgebra(signature, 1, tuple((0,) for _ in signature.symbols), "1")


def random_signature(rng: random.Random, max_symbols: int = 2, max_arity: int = 2,
                     allow_constants: bool = True) -> Signature:
    count = rng.randint(1, max_symbols)
    low = 0 if allow_constants else 1
    names = ["f", "g", "h", "k", "m", "p"]
    return Signature(tuple((names[i], rng.randint(low, max_arity)) for i in range(count)))


def random_algebra(rng: random.Random, signature: Signature, size: int,
                   name: str | None = None) -> FiniteAlgebra:
    tables = tuple(
        tuple(rng.randrange(size) for _ in range(size**k)) for k in signature.arities
    )
    return FiniteAlgebra(signature, size, tables, name)


def random_structured_algebra(rng: random.Random, signature: Signature, size: int) -> FiniteAlgebra:
    """Random algebra biased toward having many homomorphisms.

    Each operation is drawn from a few well-behaved families (projections,
    constants, semilattice and modular operations) or uniformly at random.
    """
    tables = []
    for k in signature.arities:
        tables.append(tuple(_structured_table(rng, size, k)))
    return FiniteAlgebra(signature, size, tuple(tables))


def _structured_table(rng: random.Random, n: int, k: int) -> Sequence[int]:
    kind = rng.choice(["proj", "const", "min", "max", "sum", "random"])
    if k == 0:
        return [rng.randrange(n)]
    rows = list(product(range(n), repeat=k))
    if kind == "proj":
        i = rng.randrange(k)
        return [r[i] for r in rows]
    if kind == "const":
        c = rng.randrange(n)
        return [c] * len(rows)
    if kind == "min":
        return [min(r) for r in rows]
    if kind == "max":
        return [max(r) for r in rows]
    if kind == "sum":
        return [sum(r) % n for r in rows]
    return [rng.randrange(n) for _ in rows]
