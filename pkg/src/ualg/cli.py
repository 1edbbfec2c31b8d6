"""``ualg`` command-line interface.

Exit status: 0 on success, 1 when the computed answer is negative (no
homomorphism, not a congruence, counterexample found, ...), 2 when the
input could not be read or validated.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from typing import Callable

from . import kernels
from .algebra import (
    CodecError,
    ValidationError,
    algebra_to_document,
    dumps_canonical,
    load_algebra,
    parse_algebra,
    product_algebra,
    serialize_algebra,
)
from .congruences import NotACongruence, NotAPartition, check_congruence, kernel_congruence, quotient
from .documents import (
    parse_class_document,
    parse_congruence_document,
    parse_hom_document,
    serialize_congruence,
    serialize_hom,
)
from .homs import (
    NotAHomomorphism,
    SignatureMismatch,
    classify,
    compose_hom,
    hom_counterexample,
    image_algebra,
    search_homs,
)
from .isomorphism import find_iso
from .subalg import (
    all_subuniverses,
    is_hom_image_of,
    is_hom_image_of_class,
    is_subalgebra_of,
    is_subalgebra_of_class,
    sg_closure,
    term_image_closure,
)
from .terms import TermSyntaxError, enumerate_terms, free_lift, interpret, parse_term
from .theorems import KernelNotContained, NotSurjective, first_hom_decomposition, hom_factor

NEGATIVE = 1
UNUSABLE = 2


class UsageError(Exception):
    pass


def _ints(text: str | None) -> list[int]:
    if text is None or not text.strip():
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(value) -> None:
    _emit(dumps_canonical(value))


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n} is required for '{args.verb}'")


def _load_hom(path: str):
    with open(path, "rb") as fh:
        return parse_hom_document(fh.read(), os.path.dirname(path) or ".")


def _fmt(values) -> str:
    return ",".join(str(v) for v in values)


# -- verbs -------------------------------------------------------------------


def cmd_inspect(args) -> int:
    _need(args, "algebra")
    A = load_algebra(args.algebra)
    if args.json:
        _emit(serialize_algebra(A).decode("utf-8"))
        return 0
    lines = [f"name: {A.name or '-'}", f"size: {A.size}"]
    for (sym, k), table in zip(A.signature.symbols, A.tables):
        lines.append(f"op {sym}/{k}: {_fmt(table)}")
    if A.size <= 10:
        lines.append(f"subuniverses: {len(all_subuniverses(A))}")
    if A.size <= 8:
        lines.append(f"endomorphisms: {len(search_homs(A, A))}")
        lines.append(
            f"automorphisms: {len(search_homs(A, A, require_injective=True, require_surjective=True))}"
        )
    _emit("\n".join(lines))
    return 0


def cmd_eval(args) -> int:
    _need(args, "algebra", "term")
    A = load_algebra(args.algebra)
    env = _ints(args.env)
    t = parse_term(args.term, A.signature, len(env))
    for v in env:
        if not 0 <= v < A.size:
            raise UsageError(f"environment value {v} out of range [0, {A.size})")
    value = interpret(t, A, env)
    if args.json:
        _emit_json({"term": str(t), "env": env, "value": value})
    else:
        _emit(str(value))
    return 0


def cmd_sg(args) -> int:
    _need(args, "algebra")
    A = load_algebra(args.algebra)
    S = sg_closure(A, _ints(args.set))
    if args.json:
        _emit_json({"generators": sorted(set(_ints(args.set))), "members": list(S.members)})
    else:
        _emit(_fmt(S.members))
    return 0


def cmd_quotient(args) -> int:
    _need(args, "congruence")
    with open(args.congruence, "rb") as fh:
        A, blocks = parse_congruence_document(fh.read(), os.path.dirname(args.congruence) or ".")
    try:
        theta = check_congruence(A, blocks)
    except NotACongruence as exc:
        _emit(f"not a congruence: {exc.counterexample}")
        return NEGATIVE
    q = quotient(A, theta)
    if args.json:
        _emit(serialize_algebra(q.algebra).decode("utf-8"))
    else:
        lines = [f"size: {q.algebra.size}", f"projection: {_fmt(q.projection.map)}"]
        for (sym, k), table in zip(A.signature.symbols, q.algebra.tables):
            lines.append(f"op {sym}/{k}: {_fmt(table)}")
        _emit("\n".join(lines))
    return 0


def cmd_kernel(args) -> int:
    _need(args, "hom")
    h = _load_hom(args.hom)
    theta = kernel_congruence(h)
    if args.json:
        _emit(serialize_congruence(theta).decode("utf-8"))
    else:
        _emit(" | ".join(_fmt(b) for b in theta.blocks))
    return 0


def cmd_homs(args) -> int:
    _need(args, "from_", "to")
    A, B = load_algebra(args.from_), load_algebra(args.to)
    found = search_homs(A, B, limit=args.limit, require_injective=args.injective,
                        require_surjective=args.surjective)
    if args.count:
        if args.json:
            _emit_json({"count": len(found)})
        else:
            _emit(str(len(found)))
    elif args.json:
        _emit_json({"homs": [list(h.map) for h in found]})
    else:
        _emit("\n".join(_fmt(h.map) for h in found) if found else "none")
    return 0 if found else NEGATIVE


def cmd_iso(args) -> int:
    _need(args, "left", "right")
    A, B = load_algebra(args.left), load_algebra(args.right)
    iso = find_iso(A, B)
    if iso is None:
        _emit("null" if args.json else "none")
        return NEGATIVE
    if args.json:
        _emit(serialize_hom(iso.forward, args.left, args.right).decode("utf-8"))
    else:
        _emit(f"forward: {_fmt(iso.forward.map)}\nbackward: {_fmt(iso.backward.map)}")
    return 0


def cmd_product(args) -> int:
    if not args.algebra_list:
        raise UsageError("product needs at least one --algebra")
    P = product_algebra([load_algebra(p) for p in args.algebra_list])
    _emit(serialize_algebra(P.algebra).decode("utf-8"))
    return 0


def cmd_factor(args) -> int:
    """One --hom: first homomorphism decomposition. Two (g then h): g = phi . h."""
    homs = args.hom_list or []
    if len(homs) == 1:
        h = _load_hom(homs[0])
        d = first_hom_decomposition(h)
        if args.json:
            _emit_json({
                "quotient": algebra_to_document(d.quotient_algebra),
                "projection": list(d.projection.map),
                "mediating": list(d.mediating.map),
            })
        else:
            _emit("\n".join([
                f"kernel: {' | '.join(_fmt(b) for b in d.congruence.blocks)}",
                f"projection: {_fmt(d.projection.map)}",
                f"mediating: {_fmt(d.mediating.map)}",
            ]))
        return 0
    if len(homs) == 2:
        g, h = _load_hom(homs[0]), _load_hom(homs[1])
        try:
            phi = hom_factor(g, h, want_epi=args.epi)
        except KernelNotContained as exc:
            _emit(f"kernel containment fails at {exc.witness}")
            return NEGATIVE
        if args.json:
            _emit(serialize_hom(phi).decode("utf-8"))
        else:
            kind = classify(phi)
            _emit(f"{_fmt(phi.map)}\nsurjective: {str(kind.surjective).lower()}")
        return 0
    raise UsageError("factor takes one --hom (decomposition) or two (g then h)")


def cmd_subalg(args) -> int:
    if args.left is None:
        _need(args, "algebra")
        A = load_algebra(args.algebra)
        subs = all_subuniverses(A)
        if args.json:
            _emit_json({"subuniverses": [list(S.members) for S in subs]})
        else:
            _emit("\n".join("{" + _fmt(S.members) + "}" for S in subs))
        return 0
    B = load_algebra(args.left)
    if args.klass is not None:
        with open(args.klass, "rb") as fh:
            klass = parse_class_document(fh.read(), os.path.dirname(args.klass) or ".")
        w = is_subalgebra_of_class(B, klass)
        if w is None:
            _emit("null" if args.json else "none")
            return NEGATIVE
        if args.json:
            _emit_json({"member": w.member_index, "subuniverse": list(w.subuniverse.members),
                        "iso": list(w.iso.forward.map)})
        else:
            _emit(f"member {w.member_index}: subuniverse {{{_fmt(w.subuniverse.members)}}}, "
                  f"iso {_fmt(w.iso.forward.map)}")
        return 0
    _need(args, "right")
    w = is_subalgebra_of(B, load_algebra(args.right))
    if w is None:
        _emit("null" if args.json else "none")
        return NEGATIVE
    if args.json:
        _emit(serialize_hom(w.embedding, args.left, args.right).decode("utf-8"))
    else:
        _emit(_fmt(w.embedding.map))
    return 0


def cmd_image(args) -> int:
    if args.hom is not None:
        img = image_algebra(_load_hom(args.hom))
        if args.json:
            _emit_json({"subset": list(img.subset), "algebra": algebra_to_document(img.algebra)})
        else:
            _emit(f"image: {_fmt(img.subset)}")
        return 0
    _need(args, "left")
    B = load_algebra(args.left)
    if args.klass is not None:
        with open(args.klass, "rb") as fh:
            klass = parse_class_document(fh.read(), os.path.dirname(args.klass) or ".")
        found = is_hom_image_of_class(B, klass)
        if found is None:
            _emit("null" if args.json else "none")
            return NEGATIVE
        idx, _, h = found
        if args.json:
            _emit_json({"member": idx, "map": list(h.map)})
        else:
            _emit(f"member {idx}: {_fmt(h.map)}")
        return 0
    _need(args, "right")
    h = is_hom_image_of(B, load_algebra(args.right))
    if h is None:
        _emit("null" if args.json else "none")
        return NEGATIVE
    if args.json:
        _emit(serialize_hom(h, args.right, args.left).decode("utf-8"))
    else:
        _emit(_fmt(h.map))
    return 0


def _verify_checks(A, rng: random.Random, trials: int) -> list[tuple[str, Callable[[], str | None]]]:
    """Property checks on one algebra; each returns None or a failure message."""
    n = A.size
    endos = search_homs(A, A)

    def identity():
        cx = hom_counterexample(A, A, range(n))
        return None if cx is None else f"identity fails at {cx}"

    def search_oracle():
        if n**n > 50_000:
            return None
        brute = [m for m in itertools.product(range(n), repeat=n) if _brute_is_hom(A, A, m)]
        got = [h.map for h in endos]
        return None if got == brute else f"search found {len(got)}, brute force {len(brute)}"

    def kernels_are_congruences():
        for h in endos:
            try:
                check_congruence(A, kernel_congruence(h).blocks)
            except NotACongruence as exc:
                return f"kernel of {h.map} is not compatible: {exc.counterexample}"
        return None

    def first_hom_theorem():
        for h in endos[:trials]:
            d = first_hom_decomposition(h)
            psis = [
                p for p in search_homs(d.quotient_algebra, A)
                if all(p.map[d.projection.map[x]] == h.map[x] for x in range(n))
            ]
            if [p.map for p in psis] != [d.mediating.map]:
                return f"factoring of {h.map} is not unique"
        return None

    def sg_minimal():
        if n > 8:
            return None
        subs = all_subuniverses(A)
        for _ in range(trials):
            X = {x for x in range(n) if rng.random() < 0.4}
            expected = set(range(n))
            for S in subs:
                if X <= set(S.members):
                    expected &= set(S.members)
            if set(sg_closure(A, X).members) != expected:
                return f"Sg{sorted(X)} is not the least subuniverse"
        return None

    def term_image():
        for _ in range(trials):
            X = {x for x in range(n) if rng.random() < 0.4}
            if sg_closure(A, X).members != term_image_closure(A, X).members:
                return f"term image of {sorted(X)} differs from Sg"
        return None

    def terms_commute():
        nv = 2
        pool = enumerate_terms(A.signature, nv, 2)
        if not pool:
            return None
        for _ in range(trials):
            t = rng.choice(pool)
            env = [rng.randrange(n) for _ in range(nv)]
            if free_lift(A, env, t) != interpret(t, A, env):
                return f"free lift and interpretation differ on {t}"
            for h in endos:
                if h.map[interpret(t, A, env)] != interpret(t, A, [h.map[v] for v in env]):
                    return f"{t} does not commute with {h.map}"
        return None

    def compositions():
        for g in endos[:trials]:
            for h in endos[:trials]:
                if hom_counterexample(A, A, compose_hom(g, h).map) is not None:
                    return f"composite of {g.map} and {h.map} is not a hom"
        return None

    def codec():
        return None if parse_algebra(serialize_algebra(A)) == A else "codec round trip changed the algebra"

    return [
        ("identity-is-hom", identity),
        ("hom-search-oracle", search_oracle),
        ("kernel-is-congruence", kernels_are_congruences),
        ("first-hom-theorem", first_hom_theorem),
        ("composition-is-hom", compositions),
        ("sg-minimality", sg_minimal),
        ("term-image-equals-sg", term_image),
        ("terms-commute-with-homs", terms_commute),
        ("codec-round-trip", codec),
    ]


def _brute_is_hom(A, B, m) -> bool:
    for (sym, k), ta, tb in zip(A.signature.symbols, A.tables, B.tables):
        for idx, args in enumerate(itertools.product(range(A.size), repeat=k)):
            j = 0
            for a in args:
                j = j * B.size + m[a]
            if m[ta[idx]] != tb[j]:
                return False
    return True


def cmd_verify(args) -> int:
    _need(args, "algebra")
    A = load_algebra(args.algebra)
    seed = 0 if args.seed is None else args.seed
    rng = random.Random(seed)
    results = []
    for name, check in _verify_checks(A, rng, args.trials):
        message = check()
        results.append({"check": name, "ok": message is None, "detail": message})
    if args.json:
        _emit_json({"seed": seed, "backend": kernels.BACKEND, "results": results})
    else:
        lines = [f"seed: {seed}"]
        for r in results:
            lines.append(f"{'PASS' if r['ok'] else 'FAIL'} {r['check']}"
                         + (f": {r['detail']}" if r["detail"] else ""))
        _emit("\n".join(lines))
    return 0 if all(r["ok"] for r in results) else NEGATIVE


VERBS = {
    "inspect": cmd_inspect,
    "eval": cmd_eval,
    "sg": cmd_sg,
    "quotient": cmd_quotient,
    "kernel": cmd_kernel,
    "homs": cmd_homs,
    "iso": cmd_iso,
    "product": cmd_product,
    "factor": cmd_factor,
    "subalg": cmd_subalg,
    "image": cmd_image,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ualg", description="Compute with finite algebras.")
    parser.add_argument("verb", choices=sorted(VERBS))
    parser.add_argument("--algebra", action="append", dest="algebra_list", metavar="PATH")
    parser.add_argument("--from", dest="from_", metavar="PATH")
    parser.add_argument("--to", metavar="PATH")
    parser.add_argument("--left", metavar="PATH")
    parser.add_argument("--right", metavar="PATH")
    parser.add_argument("--class", dest="klass", metavar="PATH")
    parser.add_argument("--term")
    parser.add_argument("--env")
    parser.add_argument("--set")
    parser.add_argument("--congruence", metavar="PATH")
    parser.add_argument("--hom", action="append", dest="hom_list", metavar="PATH")
    parser.add_argument("--count", action="store_true")
    parser.add_argument("--limit", type=int)
    parser.add_argument("--injective", action="store_true")
    parser.add_argument("--surjective", action="store_true")
    parser.add_argument("--epi", action="store_true", help="factor: require and report surjectivity")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.algebra = args.algebra_list[0] if args.algebra_list else None
    args.hom = args.hom_list[0] if args.hom_list else None
    try:
        return VERBS[args.verb](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ualg: error: {exc}", file=sys.stderr)
        return UNUSABLE
    except (NotAHomomorphism, NotSurjective) as exc:
        _emit(str(exc))
        return NEGATIVE
    except (OSError, CodecError, ValidationError, TermSyntaxError, NotAPartition,
            SignatureMismatch, json.JSONDecodeError) as exc:
        print(f"ualg: error: {exc}", file=sys.stderr)
        return UNUSABLE


if __name__ == "__main__":
    sys.exit(main())
