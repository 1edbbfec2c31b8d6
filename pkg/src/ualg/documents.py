"""JSON documents for homomorphisms, congruences and classes of algebras.

Algebra references inside these documents are either a path (resolved
relative to the referring document's directory) or an inline algebra
document.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .algebra import (
    CodecError,
    FiniteAlgebra,
    algebra_from_document,
    algebra_to_document,
    dumps_canonical,
    load_algebra,
)
from .congruences import Congruence
from .homs import Hom, check_hom

__all__ = [
    "resolve_algebra",
    "parse_hom_document",
    "serialize_hom",
    "parse_congruence_document",
    "serialize_congruence",
    "parse_class_document",
    "serialize_class",
    "load_json",
]


def load_json(text: bytes | str) -> Any:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"syntax error: {exc.msg}", exc.lineno, exc.colno) from None


def resolve_algebra(ref: Any, base_dir: str = ".") -> FiniteAlgebra:
    if isinstance(ref, dict):
        return algebra_from_document(ref)
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        return load_algebra(path)
    raise CodecError("algebra reference must be a path or an inline algebra document")


def _ref(ref: Any, alg: FiniteAlgebra) -> Any:
    return algebra_to_document(alg) if ref is None else ref


def _require_keys(doc: Any, keys: tuple[str, ...], what: str) -> None:
    if not isinstance(doc, dict):
        raise CodecError(f"{what} document must be a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise CodecError(f"{what} document is missing {missing}")
    extra = set(doc) - set(keys)
    if extra:
        raise CodecError(f"{what} document has unexpected keys {sorted(extra)}")


def parse_hom_document(text: bytes | str, base_dir: str = ".") -> Hom:
    """Parse and verify; raises ``NotAHomomorphism`` if the map is not one."""
    doc = load_json(text)
    _require_keys(doc, ("domain", "codomain", "map"), "hom")
    A = resolve_algebra(doc["domain"], base_dir)
    B = resolve_algebra(doc["codomain"], base_dir)
    hmap = doc["map"]
    if not isinstance(hmap, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in hmap):
        raise CodecError("map must be a list of integers")
    return check_hom(A, B, hmap)


def serialize_hom(h: Hom, domain_ref: Any = None, codomain_ref: Any = None) -> bytes:
    doc = {
        "domain": _ref(domain_ref, h.domain),
        "codomain": _ref(codomain_ref, h.codomain),
        "map": list(h.map),
    }
    return dumps_canonical(doc).encode("utf-8")


def parse_congruence_document(text: bytes | str, base_dir: str = ".") -> tuple[FiniteAlgebra, list]:
    """Algebra and raw blocks; compatibility is left to ``check_congruence``."""
    doc = load_json(text)
    _require_keys(doc, ("algebra", "blocks"), "congruence")
    A = resolve_algebra(doc["algebra"], base_dir)
    blocks = doc["blocks"]
    if not isinstance(blocks, list) or not all(
        isinstance(b, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in b)
        for b in blocks
    ):
        raise CodecError("blocks must be a list of lists of integers")
    return A, blocks


def serialize_congruence(theta: Congruence, algebra_ref: Any = None) -> bytes:
    doc = {
        "algebra": _ref(algebra_ref, theta.algebra),
        "blocks": [list(b) for b in theta.blocks],
    }
    return dumps_canonical(doc).encode("utf-8")


def parse_class_document(text: bytes | str, base_dir: str = ".") -> list[FiniteAlgebra]:
    doc = load_json(text)
    _require_keys(doc, ("algebras",), "class")
    if not isinstance(doc["algebras"], list):
        raise CodecError("algebras must be a list")
    return [resolve_algebra(ref, base_dir) for ref in doc["algebras"]]


def serialize_class(algebras, refs=None) -> bytes:
    refs = refs or [None] * len(algebras)
    doc = {"algebras": [_ref(r, a) for r, a in zip(refs, algebras)]}
    return dumps_canonical(doc).encode("utf-8")
