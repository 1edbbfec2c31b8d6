"""Congruences as compatible partitions, kernels, and quotient algebras.

A congruence is stored as a label vector: ``labels[x]`` is the least
element of the block of ``x``. Two congruences are equal exactly when their
label vectors are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .algebra import FiniteAlgebra, unflatten
from .homs import Hom, TheoremCheckFailed, _require_verified, _theorem_hom, debug_recheck

__all__ = [
    "Congruence",
    "CongruenceCounterexample",
    "NotACongruence",
    "NotAPartition",
    "Quotient",
    "normalize_labels",
    "labels_from_blocks",
    "blocks_from_labels",
    "congruence_counterexample",
    "check_congruence",
    "discrete_congruence",
    "total_congruence",
    "kernel_congruence",
    "quotient",
]


class NotAPartition(ValueError):
    pass


@dataclass(frozen=True)
class CongruenceCounterexample:
    """``a`` and ``b`` are related coordinatewise but ``f(a)``, ``f(b)`` are not."""

    symbol: str
    a: tuple[int, ...]
    b: tuple[int, ...]
    fa: int
    fb: int

    def __str__(self) -> str:
        return f"{self.symbol}{self.a} = {self.fa} and {self.symbol}{self.b} = {self.fb} lie in different blocks"


class NotACongruence(ValueError):
    def __init__(self, counterexample: CongruenceCounterexample):
        self.counterexample = counterexample
        super().__init__(f"partition is not compatible: {counterexample}")


@dataclass(frozen=True)
class Congruence:
    algebra: FiniteAlgebra
    labels: tuple[int, ...]

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return blocks_from_labels(self.labels)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(x for x, r in enumerate(self.labels) if r == x)

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def __len__(self) -> int:
        return len(self.representatives)


def normalize_labels(labels: Sequence) -> tuple[int, ...]:
    """Relabel an arbitrary block labelling by least block members."""
    first: dict = {}
    out = []
    for x, lab in enumerate(labels):
        out.append(first.setdefault(lab, x))
    return tuple(out)


def labels_from_blocks(blocks: Iterable[Iterable[int]], size: int) -> tuple[int, ...]:
    labels = [-1] * size
    for block in blocks:
        block = list(block)
        if not block:
            raise NotAPartition("empty block")
        for x in block:
            if not 0 <= x < size:
                raise NotAPartition(f"element {x} out of range [0, {size})")
            if labels[x] != -1:
                raise NotAPartition(f"element {x} appears in more than one block")
            labels[x] = min(block)
    missing = [x for x, lab in enumerate(labels) if lab == -1]
    if missing:
        raise NotAPartition(f"elements {missing} are in no block")
    return tuple(labels)


def blocks_from_labels(labels: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    blocks: dict[int, list[int]] = {}
    for x, lab in enumerate(labels):
        blocks.setdefault(lab, []).append(x)
    return tuple(tuple(b) for _, b in sorted(blocks.items()))


def _counterexample_from_labels(A: FiniteAlgebra, labels) -> CongruenceCounterexample | None:
    found = kernels.congruence_violation(A.size, A.signature.arities, A.tables, labels)
    if found is None:
        return None
    i, idx = found
    sym, arity = A.signature.symbols[i]
    a = unflatten(idx, A.size, arity)
    b = tuple(labels[x] for x in a)
    fa = A.tables[i][idx]
    fb = A.op(sym, *b)
    return CongruenceCounterexample(sym, a, b, fa, fb)


def congruence_counterexample(A: FiniteAlgebra, blocks) -> CongruenceCounterexample | None:
    return _counterexample_from_labels(A, labels_from_blocks(blocks, A.size))


def check_congruence(A: FiniteAlgebra, blocks) -> Congruence:
    """Normalized :class:`Congruence`; raises :class:`NotACongruence` with a
    witness ``(f, a, b)``, or :class:`NotAPartition` for bad input."""
    labels = labels_from_blocks(blocks, A.size)
    cx = _counterexample_from_labels(A, labels)
    if cx is not None:
        raise NotACongruence(cx)
    return Congruence(A, labels)


def discrete_congruence(A: FiniteAlgebra) -> Congruence:
    return Congruence(A, tuple(range(A.size)))


def total_congruence(A: FiniteAlgebra) -> Congruence:
    return Congruence(A, (0,) * A.size)


def kernel_congruence(h: Hom) -> Congruence:
    _require_verified(h)
    labels = normalize_labels(h.map)
    if debug_recheck():
        cx = _counterexample_from_labels(h.domain, labels)
        if cx is not None:
            raise TheoremCheckFailed(f"kernel is not compatible: {cx}")
    return Congruence(h.domain, labels)


@dataclass(frozen=True)
class Quotient:
    algebra: FiniteAlgebra
    projection: Hom
    congruence: Congruence


def quotient(A: FiniteAlgebra, theta: Congruence, name: str | None = None) -> Quotient:
    """Quotient by ``theta``; classes are numbered by ascending least member.

    Operations act on least representatives; ``theta`` must be compatible
    for this to be well defined (see :func:`check_congruence`).
    """
    if theta.algebra != A:
        raise ValueError("congruence belongs to a different algebra")
    reps = theta.representatives
    index = {r: j for j, r in enumerate(reps)}
    n = len(reps)
    tables = []
    for i, (_, arity) in enumerate(A.signature.symbols):
        t = A.tables[i]
        new = []
        for idx in range(n**arity):
            flat = 0
            for j in unflatten(idx, n, arity):
                flat = flat * A.size + reps[j]
            new.append(index[theta.labels[t[flat]]])
        tables.append(tuple(new))
    if name is None and A.name:
        name = f"{A.name}/theta"
    Q = FiniteAlgebra(A.signature, n, tuple(tables), name)
    proj = _theorem_hom(A, Q, [index[lab] for lab in theta.labels], "canonical projection")
    return Quotient(Q, proj, theta)
