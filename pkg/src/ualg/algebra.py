"""Signatures, finite algebras given by operation tables, finite products,
and the JSON algebra document codec."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import prod
from typing import Any, Iterable, Mapping, Sequence

__all__ = [
    "Signature",
    "FiniteAlgebra",
    "Product",
    "ValidationError",
    "CodecError",
    "Violation",
    "validate_algebra",
    "make_algebra",
    "apply_op",
    "flat_index",
    "unflatten",
    "product_algebra",
    "parse_algebra",
    "serialize_algebra",
    "load_algebra",
    "induced_algebra",
    "algebra_to_document",
    "algebra_from_document",
    "dumps_canonical",
]

VAR_PATTERN = re.compile(r"x[0-9]+\Z")
# characters reserved by the term grammar
_RESERVED = re.compile(r"[\s(),]")


class ValidationError(ValueError):
    """Raised when a raw algebra description breaks an invariant.

    ``violations`` lists every problem found, not only the first.
    """

    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid algebra: {lines}")


class CodecError(ValueError):
    """Malformed document. ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class Violation:
    symbol: str | None
    index: int | None
    reason: str

    def __str__(self) -> str:
        parts = []
        if self.symbol is not None:
            parts.append(repr(self.symbol))
        if self.index is not None:
            parts.append(f"[{self.index}]")
        parts.append(self.reason)
        return " ".join(parts)


@dataclass(frozen=True)
class Signature:
    """Ordered operation symbols with finite arities."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        problems = _signature_problems(self.symbols)
        if problems:
            raise ValidationError(problems)

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "Signature":
        return cls(tuple((str(n), int(k)) for n, k in pairs))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    @property
    def arities(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.symbols)

    @property
    def max_arity(self) -> int:
        return max(self.arities, default=0)

    def arity(self, name: str) -> int:
        for n, k in self.symbols:
            if n == name:
                return k
        raise KeyError(f"unknown symbol {name!r}")

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.symbols):
            if n == name:
                return i
        raise KeyError(f"unknown symbol {name!r}")

    def __contains__(self, name: object) -> bool:
        return any(n == name for n, _ in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def has_constants(self) -> bool:
        return any(k == 0 for _, k in self.symbols)


def _signature_problems(symbols) -> list[Violation]:
    problems = []
    seen = set()
    for name, arity in symbols:
        if not isinstance(name, str) or not name:
            problems.append(Violation(None, None, f"symbol name {name!r} is empty or not a string"))
            continue
        if name in seen:
            problems.append(Violation(name, None, "duplicate symbol"))
        seen.add(name)
        if VAR_PATTERN.match(name):
            problems.append(Violation(name, None, "symbol name clashes with variable pattern x<digits>"))
        if _RESERVED.search(name):
            problems.append(Violation(name, None, "symbol name contains whitespace, parenthesis or comma"))
        if isinstance(arity, bool) or not isinstance(arity, int) or arity < 0:
            problems.append(Violation(name, None, f"arity {arity!r} is not a natural number"))
    return problems


@dataclass(frozen=True)
class FiniteAlgebra:
    """An algebra on the carrier ``{0, ..., size-1}``.

    ``tables[i]`` is the flat row-major table of the i-th signature symbol.
    Build instances with :func:`make_algebra` or :func:`validate_algebra`;
    the constructor itself does not validate.
    """

    signature: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def table(self, symbol: str) -> tuple[int, ...]:
        return self.tables[self.signature.index(symbol)]

    def op(self, symbol: str, *args: int) -> int:
        return apply_op(self, symbol, args)

    @property
    def carrier(self) -> range:
        return range(self.size)

    def renamed(self, name: str | None) -> "FiniteAlgebra":
        return FiniteAlgebra(self.signature, self.size, self.tables, name)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteAlgebra{label} size={self.size} symbols={list(self.signature.names)}>"


def flat_index(args: Sequence[int], size: int) -> int:
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


def unflatten(index: int, size: int, arity: int) -> tuple[int, ...]:
    out = [0] * arity
    for i in range(arity - 1, -1, -1):
        index, out[i] = divmod(index, size)
    return tuple(out)


def validate_algebra(candidate: Mapping[str, Any]) -> FiniteAlgebra:
    """Check a raw description ``{"size", "signature", "operations", "name"?}``.

    ``signature`` is a list of ``{"symbol", "arity"}`` objects or
    ``(name, arity)`` pairs (a :class:`Signature` is accepted too);
    ``operations`` maps symbol names to flat tables. Raises
    :class:`ValidationError` listing every violation.
    """
    problems: list[Violation] = []
    size = candidate.get("size")
    if isinstance(size, bool) or not isinstance(size, int):
        problems.append(Violation(None, None, f"size {size!r} is not a natural number"))
        size = None
    elif size < 1:
        problems.append(Violation(None, None, f"size must be at least 1, got {size}"))
        size = None

    raw_sig = candidate.get("signature", ())
    if isinstance(raw_sig, Signature):
        pairs = list(raw_sig.symbols)
    else:
        pairs = []
        for entry in raw_sig:
            if isinstance(entry, Mapping):
                pairs.append((entry.get("symbol"), entry.get("arity")))
            else:
                name, arity = entry
                pairs.append((name, arity))
    problems.extend(_signature_problems(pairs))

    ops = candidate.get("operations", {})
    if not isinstance(ops, Mapping):
        problems.append(Violation(None, None, "operations must be a mapping"))
        ops = {}
    declared = {n for n, _ in pairs if isinstance(n, str)}
    for name in ops:
        if name not in declared:
            problems.append(Violation(name, None, "table for unknown symbol"))

    tables = []
    for name, arity in pairs:
        if not isinstance(name, str) or name not in ops:
            if isinstance(name, str) and name:
                problems.append(Violation(name, None, "missing table"))
            continue
        table = ops[name]
        if not isinstance(table, Sequence) or isinstance(table, str):
            problems.append(Violation(name, None, "table is not a sequence"))
            continue
        table = list(table)
        if size is not None and isinstance(arity, int) and arity >= 0:
            expected = size**arity
            if len(table) != expected:
                problems.append(Violation(name, None, f"table length {len(table)} != {expected}"))
        for i, e in enumerate(table):
            if isinstance(e, bool) or not isinstance(e, int):
                problems.append(Violation(name, i, f"entry {e!r} is not an integer"))
            elif size is not None and not 0 <= e < size:
                problems.append(Violation(name, i, f"entry {e} out of range [0, {size})"))
        tables.append(tuple(table))

    if problems:
        raise ValidationError(problems)
    sig = raw_sig if isinstance(raw_sig, Signature) else Signature(tuple(pairs))
    return FiniteAlgebra(sig, size, tuple(tables), candidate.get("name"))


def make_algebra(size: int, operations: Mapping[str, tuple[int, Sequence[int]]] | Iterable,
                 name: str | None = None) -> FiniteAlgebra:
    """Shorthand: ``make_algebra(2, {"+": (2, [0, 1, 1, 0])})``."""
    items = operations.items() if isinstance(operations, Mapping) else operations
    sig, ops = [], {}
    for sym, (arity, table) in items:
        sig.append((sym, arity))
        ops[sym] = list(table)
    return validate_algebra({"size": size, "signature": sig, "operations": ops, "name": name})


def apply_op(alg: FiniteAlgebra, symbol: str, args: Sequence[int]) -> int:
    try:
        i = alg.signature.index(symbol)
    except KeyError:
        raise KeyError(f"unknown symbol {symbol!r}") from None
    arity = alg.signature.symbols[i][1]
    if len(args) != arity:
        raise ValueError(f"{symbol!r} has arity {arity}, got {len(args)} arguments")
    for a in args:
        if not 0 <= a < alg.size:
            raise ValueError(f"argument {a} out of range [0, {alg.size})")
    return alg.tables[i][flat_index(args, alg.size)]


@dataclass(frozen=True)
class Product:
    """A finite product with its mixed-radix codec (factor 0 most significant)."""

    algebra: FiniteAlgebra
    factors: tuple[FiniteAlgebra, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(f.size for f in self.factors)

    def encode(self, *coords) -> int:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        e = 0
        for c, n in zip(coords, self.sizes):
            if not 0 <= c < n:
                raise ValueError(f"coordinate {c} out of range [0, {n})")
            e = e * n + c
        return e

    def decode(self, element: int) -> tuple[int, ...]:
        if not 0 <= element < self.algebra.size:
            raise ValueError(f"element {element} out of range [0, {self.algebra.size})")
        out = []
        for n in reversed(self.sizes):
            element, c = divmod(element, n)
            out.append(c)
        return tuple(reversed(out))


def product_algebra(family: Sequence[FiniteAlgebra], name: str | None = None) -> Product:
    family = tuple(family)
    if not family:
        raise ValueError("product of an empty family is not defined")
    sig = family[0].signature
    for A in family[1:]:
        if A.signature != sig:
            raise ValueError("all factors must share one signature")
    size = prod(A.size for A in family)
    shell = Product(FiniteAlgebra(sig, size, ()), family)
    decoded = [shell.decode(e) for e in range(size)]
    tables = []
    for i, (_, arity) in enumerate(sig.symbols):
        table = []
        for idx in range(size**arity):
            args = unflatten(idx, size, arity)
            coords = tuple(
                family[j].tables[i][flat_index([decoded[a][j] for a in args], family[j].size)]
                for j in range(len(family))
            )
            table.append(shell.encode(coords))
        tables.append(tuple(table))
    if name is None and all(A.name for A in family):
        name = "x".join(A.name for A in family)
    return Product(FiniteAlgebra(sig, size, tuple(tables), name), family)


# -- codec -------------------------------------------------------------------


def parse_algebra(text: bytes | str) -> FiniteAlgebra:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CodecError(f"document is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise CodecError(f"syntax error: {exc.msg}", exc.lineno, exc.colno) from None
    return algebra_from_document(doc)


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise CodecError(f"duplicate key {k!r}")
        out[k] = v
    return out


def algebra_from_document(doc: Any) -> FiniteAlgebra:
    if not isinstance(doc, dict):
        raise CodecError("algebra document must be a JSON object")
    for key in ("size", "signature", "operations"):
        if key not in doc:
            raise CodecError(f"algebra document is missing {key!r}")
    extra = set(doc) - {"name", "size", "signature", "operations"}
    if extra:
        raise CodecError(f"unexpected keys {sorted(extra)}")
    if not isinstance(doc["signature"], list) or not all(
        isinstance(e, dict) and set(e) == {"symbol", "arity"} for e in doc["signature"]
    ):
        raise CodecError('signature must be a list of {"symbol", "arity"} objects')
    if not isinstance(doc["operations"], dict):
        raise CodecError("operations must be an object")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise CodecError("name must be a string")
    return validate_algebra(doc)


def algebra_to_document(alg: FiniteAlgebra) -> dict:
    doc: dict[str, Any] = {}
    if alg.name is not None:
        doc["name"] = alg.name
    doc["size"] = alg.size
    doc["signature"] = [{"symbol": s, "arity": k} for s, k in alg.signature.symbols]
    doc["operations"] = {s: list(t) for (s, _), t in zip(alg.signature.symbols, alg.tables)}
    return doc


def serialize_algebra(alg: FiniteAlgebra) -> bytes:
    """Canonical form: fixed key order, 2-space indent, one line per table."""
    return dumps_canonical(algebra_to_document(alg)).encode("utf-8")


def dumps_canonical(value: Any) -> str:
    """JSON with 2-space indentation where arrays of scalars stay on one line.

    Key order is the insertion order of the given mappings.
    """
    return _emit(value, 0) + "\n"


def _emit(value: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return "[" + ", ".join(json.dumps(v) for v in value) + "]"
        items = [pad + _emit(v, depth + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(value, ensure_ascii=False)


def load_algebra(path) -> FiniteAlgebra:
    with open(path, "rb") as fh:
        alg = parse_algebra(fh.read())
    return alg


def induced_algebra(alg: FiniteAlgebra, members: Sequence[int], name: str | None = None) -> FiniteAlgebra:
    """Restrict ``alg`` to a closed subset, re-indexed in ascending order.

    The caller guarantees closure; an escaping value raises ``ValueError``.
    """
    members = sorted(set(members))
    if not members:
        raise ValueError("an empty subset induces no algebra (carriers are non-empty)")
    position = {x: j for j, x in enumerate(members)}
    n = len(members)
    tables = []
    for (sym, arity), table in zip(alg.signature.symbols, alg.tables):
        new = []
        for idx in range(n**arity):
            args = [members[j] for j in unflatten(idx, n, arity)]
            r = table[flat_index(args, alg.size)]
            if r not in position:
                raise ValueError(f"subset not closed: {sym}{tuple(args)} = {r}")
            new.append(position[r])
        tables.append(tuple(new))
    return FiniteAlgebra(alg.signature, n, tuple(tables), name)
