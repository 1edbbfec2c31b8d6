"""Terms over a signature and finitely many variables ``x0, x1, ...``.

Terms are immutable trees. The term algebra itself is never built as a
:class:`~ualg.algebra.FiniteAlgebra`: its operations are the :class:`Node`
constructor and :func:`substitute`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from .algebra import FiniteAlgebra, Signature, flat_index

__all__ = [
    "Var",
    "Node",
    "Term",
    "TermSyntaxError",
    "parse_term",
    "format_term",
    "height",
    "variables",
    "check_term",
    "interpret",
    "free_lift",
    "term_operation",
    "substitute",
    "enumerate_terms",
]


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Node:
    symbol: str
    children: tuple["Term", ...] = ()

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Var, Node]


class TermSyntaxError(ValueError):
    """Bad term text or an ill-formed term. ``position`` is a 0-based offset when known."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at offset {position}" if position is not None else ""
        super().__init__(message + where)


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.children:
        return t.symbol
    return t.symbol + "(" + ",".join(format_term(c) for c in t.children) + ")"


_TOKEN = re.compile(r"\s*(?:(?P<punct>[(),])|(?P<atom>[^\s(),]+))")
_VAR = re.compile(r"x([0-9]+)\Z")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermSyntaxError("unexpected character", pos)
        kind = "punct" if m.group("punct") else "atom"
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_term(text: str, signature: Signature, nvars: int | None = None) -> Term:
    """Parse ``f(x0,g(x1))``-style text; nullary symbols are written bare.

    Raises :class:`TermSyntaxError` on bad syntax, unknown symbols, arity
    mismatches, or a variable index ``>= nvars`` (when given).
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def expect(value):
        nonlocal pos
        kind, tok, at = peek()
        if tok != value:
            found = "end of input" if tok is None else repr(tok)
            raise TermSyntaxError(f"expected {value!r}, found {found}", at)
        pos += 1

    def term():
        nonlocal pos
        kind, tok, at = peek()
        if kind != "atom":
            found = "end of input" if tok is None else repr(tok)
            raise TermSyntaxError(f"expected a variable or symbol, found {found}", at)
        pos += 1
        vm = _VAR.match(tok)
        if vm:
            index = int(vm.group(1))
            if nvars is not None and index >= nvars:
                raise TermSyntaxError(f"variable {tok} out of range for {nvars} variables", at)
            return Var(index)
        if tok not in signature:
            raise TermSyntaxError(f"unknown symbol {tok!r}", at)
        arity = signature.arity(tok)
        children = []
        if peek()[1] == "(":
            pos += 1
            children.append(term())
            while peek()[1] == ",":
                pos += 1
                children.append(term())
            expect(")")
        if len(children) != arity:
            raise TermSyntaxError(
                f"symbol {tok!r} has arity {arity} but is applied to {len(children)} arguments", at
            )
        return Node(tok, tuple(children))

    result = term()
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input {tokens[pos][1]!r}", tokens[pos][2])
    return result


def height(t: Term) -> int:
    if isinstance(t, Var) or not t.children:
        return 0
    return 1 + max(height(c) for c in t.children)


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out = set()
    for c in t.children:
        out |= variables(c)
    return out


def check_term(t: Term, signature: Signature, nvars: int | None = None) -> None:
    """Raise :class:`TermSyntaxError` unless ``t`` is well formed."""
    if isinstance(t, Var):
        if t.index < 0 or (nvars is not None and t.index >= nvars):
            raise TermSyntaxError(f"variable x{t.index} out of range")
        return
    if t.symbol not in signature:
        raise TermSyntaxError(f"unknown symbol {t.symbol!r}")
    if len(t.children) != signature.arity(t.symbol):
        raise TermSyntaxError(f"arity mismatch at {t.symbol!r}")
    for c in t.children:
        check_term(c, signature, nvars)


def interpret(t: Term, alg: FiniteAlgebra, env: Sequence[int]) -> int:
    """The term operation of ``t`` in ``alg`` applied to ``env``."""
    if isinstance(t, Var):
        return env[t.index]
    i = alg.signature.index(t.symbol)
    args = [interpret(c, alg, env) for c in t.children]
    return alg.tables[i][flat_index(args, alg.size)]


def free_lift(alg: FiniteAlgebra, h: Sequence[int] | Mapping[int, int] | Callable[[int], int],
              t: Term) -> int:
    """Value of the unique homomorphic extension of ``h`` at ``t``.

    Evaluated bottom-up with an explicit stack, separately from
    :func:`interpret`.
    """
    look = h if callable(h) else h.__getitem__
    stack: list[tuple[Term, bool]] = [(t, False)]
    values: list[int] = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Var):
            values.append(look(node.index))
        elif expanded:
            k = len(node.children)
            args = values[len(values) - k:] if k else []
            del values[len(values) - k:]
            table = alg.table(node.symbol)
            idx = 0
            for a in args:
                idx = idx * alg.size + a
            values.append(table[idx])
        else:
            stack.append((node, True))
            for c in reversed(node.children):
                stack.append((c, False))
    return values[0]


def term_operation(t: Term, alg: FiniteAlgebra, nvars: int) -> list[int]:
    """Flat table of the nvars-ary term operation of ``t``."""
    return [
        interpret(t, alg, env) for env in itertools.product(range(alg.size), repeat=nvars)
    ]


def substitute(t: Term, sigma: Sequence[Term] | Mapping[int, Term]) -> Term:
    """Simultaneous substitution ``x_i -> sigma[i]``."""
    if isinstance(t, Var):
        return sigma[t.index]
    return Node(t.symbol, tuple(substitute(c, sigma) for c in t.children))


def enumerate_terms(signature: Signature, nvars: int, depth: int) -> list[Term]:
    """Every term of height at most ``depth``, in a fixed order.

    Order: by height; height 0 lists variables then constants in symbol
    order; higher levels go by symbol order, then lexicographically by the
    children's positions in this same list.
    """
    if depth < 0:
        return []
    out: list[Term] = [Var(i) for i in range(nvars)]
    out += [Node(s) for s, k in signature.symbols if k == 0]
    level_start = 0
    for _ in range(depth):
        prev_start, prev_end = level_start, len(out)
        if prev_end == prev_start:
            break
        level_start = prev_end
        pool = out[:prev_end]
        new = []
        for s, k in signature.symbols:
            if k == 0:
                continue
            for combo in itertools.product(range(prev_end), repeat=k):
                if max(combo) >= prev_start:
                    new.append(Node(s, tuple(pool[j] for j in combo)))
        out += new
    return out
