"""Brute-force oracles and random generators shared by the test modules.

The oracles use nothing from ``ualg`` beyond the FiniteAlgebra data class:
they read the tables directly and enumerate everything.
"""

import itertools
import random

from ualg.algebra import product_algebra
from ualg.congruences import kernel_congruence, quotient
from ualg.homs import image_algebra, projection_hom, search_homs
from ualg.terms import Node, Var
from ualg.zoo import random_algebra, random_signature, random_structured_algebra

# -- oracles -----------------------------------------------------------------


def tuples(n, k):
    return list(itertools.product(range(n), repeat=k))


def table_lookup(A, i, args):
    idx = 0
    for a in args:
        idx = idx * A.size + a
    return A.tables[i][idx]


def brute_is_hom(A, B, m):
    for i, k in enumerate(A.signature.arities):
        for args in tuples(A.size, k):
            if m[table_lookup(A, i, args)] != table_lookup(B, i, [m[a] for a in args]):
                return False
    return True


def brute_homs(A, B):
    return [m for m in itertools.product(range(B.size), repeat=A.size) if brute_is_hom(A, B, m)]


def brute_is_closed(A, S):
    S = set(S)
    for i, k in enumerate(A.signature.arities):
        for args in itertools.product(sorted(S), repeat=k):
            if table_lookup(A, i, args) not in S:
                return False
    return True


def brute_subuniverses(A):
    out = []
    for r in range(A.size + 1):
        for S in itertools.combinations(range(A.size), r):
            if brute_is_closed(A, S):
                out.append(S)
    return out


def brute_sg(A, X):
    """Intersection of every closed superset of X."""
    result = set(range(A.size))
    for S in brute_subuniverses(A):
        if set(X) <= set(S):
            result &= set(S)
    return tuple(sorted(result))


def brute_is_congruence(A, labels):
    for i, k in enumerate(A.signature.arities):
        for a in tuples(A.size, k):
            for b in tuples(A.size, k):
                if all(labels[x] == labels[y] for x, y in zip(a, b)):
                    if labels[table_lookup(A, i, a)] != labels[table_lookup(A, i, b)]:
                        return False
    return True


def term_count(arities, nvars, depth):
    """Number of terms of height <= depth, by the recurrence
    c(0) = nvars + #constants, c(d) = c(0) + sum_f c(d-1)^arity(f)."""
    c = nvars + sum(1 for k in arities if k == 0)
    base = c
    for _ in range(depth):
        c = base + sum(c**k for k in arities if k > 0)
    return c


def brute_bijections(n):
    return list(itertools.permutations(range(n)))


def brute_isomorphic(A, B):
    if A.size != B.size:
        return False
    for p in brute_bijections(A.size):
        inv = [0] * A.size
        for x, y in enumerate(p):
            inv[y] = x
        if brute_is_hom(A, B, p) and brute_is_hom(B, A, inv):
            return True
    return False


# -- generators --------------------------------------------------------------


def random_alg(rng, max_size=3, max_symbols=2, max_arity=2, signature=None,
               allow_constants=True, structured=None):
    sig = signature or random_signature(rng, max_symbols, max_arity, allow_constants)
    size = rng.randint(1, max_size)
    if structured is None:
        structured = rng.random() < 0.5
    if structured:
        return random_structured_algebra(rng, sig, size)
    return random_algebra(rng, sig, size)


def random_hom(rng, max_size=4, signature=None, allow_identity=True):
    """A verified hom drawn from a mix of constructions."""
    while True:
        A = random_alg(rng, max_size, signature=signature)
        sig = A.signature
        strategy = rng.choice(["search", "endo", "projection", "quotient", "search"])
        if strategy == "search":
            B = random_alg(rng, max_size, signature=sig)
            found = search_homs(A, B)
        elif strategy == "endo":
            found = search_homs(A, A)
        elif strategy == "projection":
            C = random_alg(rng, max(1, max_size // max(A.size, 1)), signature=sig)
            P = product_algebra([A, C])
            if P.algebra.size > max_size * 2:
                continue
            found = [projection_hom(P, rng.randrange(2))]
        else:
            endos = search_homs(A, A)
            h = rng.choice(endos)
            found = [quotient(A, kernel_congruence(h)).projection]
        if not allow_identity:
            found = [h for h in found if h.domain != h.codomain or h.map != tuple(range(h.domain.size))]
        if found:
            return rng.choice(found)


def random_epi(rng, max_size=4, signature=None):
    """A surjective verified hom."""
    h = random_hom(rng, max_size, signature)
    return image_algebra(h).corestriction


def random_term(rng, sig, nvars, depth):
    leaves = [Var(i) for i in range(nvars)] + [Node(s) for s, k in sig.symbols if k == 0]
    ops = [(s, k) for s, k in sig.symbols if k > 0]
    if depth == 0 or not ops or (leaves and rng.random() < 0.3):
        return rng.choice(leaves)
    s, k = rng.choice(ops)
    return Node(s, tuple(random_term(rng, sig, nvars, depth - 1) for _ in range(k)))


def standard_sample(seed, count, max_size=4):
    rng = random.Random(seed)
    return [random_alg(rng, max_size) for _ in range(count)]
