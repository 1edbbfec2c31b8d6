import itertools
import random

import pytest

from ualg.algebra import product_algebra
from ualg.homs import (
    Hom,
    MorphismKind,
    NotAHomomorphism,
    SignatureMismatch,
    TheoremCheckFailed,
    UnverifiedHom,
    check_hom,
    classify,
    compose_hom,
    constant_hom,
    equalizer,
    factorwise_product_hom,
    hom_counterexample,
    identity_hom,
    image_algebra,
    kernel_pairs,
    projection_hom,
    search_homs,
    tuple_hom_into_product,
)
from ualg.subalg import is_closed
from ualg.zoo import cyclic_group, meet_semilattice

from helpers import brute_homs, brute_is_closed, brute_is_hom, random_alg, random_hom


def test_identity_is_a_hom(Z2):
    assert check_hom(Z2, Z2, [0, 1]).verified


def test_constant_zero_is_a_hom(Z2):
    assert check_hom(Z2, Z2, [0, 0]).verified


def test_swap_is_not_a_hom(Z2):
    with pytest.raises(NotAHomomorphism) as info:
        check_hom(Z2, Z2, [1, 0])
    cx = info.value.counterexample
    assert (cx.symbol, cx.args, cx.lhs, cx.rhs) == ("+", (0, 0), 1, 0)


def test_check_hom_shape_errors(Z2, Z3):
    with pytest.raises(ValueError):
        check_hom(Z2, Z2, [0])
    with pytest.raises(ValueError):
        check_hom(Z2, Z2, [0, 2])
    with pytest.raises(SignatureMismatch):
        check_hom(Z2, meet_semilattice(2, "*"), [0, 0])


def test_identity_hom_for_random_algebras():
    rng = random.Random(31)
    for _ in range(50):
        A = random_alg(rng, 5)
        assert hom_counterexample(A, A, range(A.size)) is None


def test_compose_identity_laws():
    rng = random.Random(32)
    for _ in range(30):
        h = random_hom(rng)
        assert compose_hom(identity_hom(h.domain), h) == h
        assert compose_hom(h, identity_hom(h.codomain)) == h


def test_compose_projection_with_constant(Z2, Z2xZ2):
    p1 = projection_hom(Z2xZ2, 0)
    c0 = constant_hom(Z2, Z2, 0)
    assert compose_hom(p1, c0).map == (0, 0, 0, 0)


def test_compose_rejects_unverified_and_mismatch(Z2, Z3):
    raw = Hom(Z2, Z2, (0, 1))
    with pytest.raises(UnverifiedHom):
        compose_hom(raw, identity_hom(Z2))
    with pytest.raises(ValueError):
        compose_hom(identity_hom(Z2), identity_hom(Z3))


def test_composites_recheck():
    rng = random.Random(33)
    checked = 0
    while checked < 300:
        g = random_hom(rng, 3)
        nexts = search_homs(g.codomain, random_alg(rng, 3, signature=g.codomain.signature))
        if not nexts:
            continue
        h = rng.choice(nexts)
        gh = compose_hom(g, h)
        assert brute_is_hom(gh.domain, gh.codomain, gh.map)
        checked += 1


def test_classify_examples(Z2, Z2xZ2):
    assert classify(identity_hom(Z2)) == MorphismKind(True, True)
    kind = classify(constant_hom(Z2, Z2, 0))
    assert not kind.injective and not kind.surjective
    kind = classify(projection_hom(Z2xZ2, 0))
    assert not kind.injective and kind.surjective and not kind.bijective


def test_equalizer_examples(Z2):
    assert equalizer(identity_hom(Z2), identity_hom(Z2)) == (0, 1)
    assert equalizer(identity_hom(Z2), constant_hom(Z2, Z2, 0)) == (0,)


def test_equalizers_are_closed():
    rng = random.Random(34)
    checked = 0
    while checked < 200:
        A = random_alg(rng, 4)
        B = random_alg(rng, 3, signature=A.signature)
        found = search_homs(A, B)
        if not found:
            continue
        g, h = rng.choice(found), rng.choice(found)
        E = equalizer(g, h)
        assert is_closed(A, E) and brute_is_closed(A, E)
        checked += 1


def test_kernel_pairs_examples(Z2, Z2xZ2):
    P = Z2xZ2
    assert kernel_pairs(identity_hom(Z2)) == ((0,), (1,))
    assert kernel_pairs(constant_hom(Z2, Z2, 0)) == ((0, 1),)
    assert kernel_pairs(projection_hom(P, 0)) == (
        (P.encode(0, 0), P.encode(0, 1)),
        (P.encode(1, 0), P.encode(1, 1)),
    )


def test_kernel_image_counting():
    rng = random.Random(35)
    for _ in range(100):
        h = random_hom(rng, 5)
        fibers = kernel_pairs(h)
        assert sum(len(f) for f in fibers) == h.domain.size
        image = set(h.map)
        assert len(image) * max(len(f) for f in fibers) >= h.domain.size
        assert len(fibers) == len(image)


def test_image_of_identity(Z2):
    img = image_algebra(identity_hom(Z2))
    assert img.subset == (0, 1) and img.algebra == Z2


def test_image_of_constant(Z2):
    img = image_algebra(constant_hom(Z2, Z2, 0))
    assert img.subset == (0,) and img.algebra.size == 1


def test_image_of_diagonal(Z2, Z2xZ2):
    diag = tuple_hom_into_product(Z2, Z2xZ2, [identity_hom(Z2)] * 2)
    img = image_algebra(diag)
    assert img.subset == (Z2xZ2.encode(0, 0), Z2xZ2.encode(1, 1))
    assert brute_is_closed(Z2xZ2.algebra, img.subset)
    assert classify(img.corestriction).surjective
    assert classify(img.inclusion).injective


def test_images_are_subuniverses():
    rng = random.Random(36)
    for _ in range(200):
        h = random_hom(rng, 4)
        img = image_algebra(h)
        assert brute_is_closed(h.codomain, img.subset)
        assert brute_is_hom(img.algebra, h.codomain, img.inclusion.map)
        assert brute_is_hom(h.domain, img.algebra, img.corestriction.map)
        assert compose_hom(img.corestriction, img.inclusion).map == h.map


# -- search ------------------------------------------------------------------


def test_search_endomorphisms_of_z2(Z2):
    assert [h.map for h in search_homs(Z2, Z2)] == [(0, 0), (0, 1)]


def test_search_z2_into_square(Z2, Z2xZ2):
    assert len(search_homs(Z2, Z2xZ2.algebra)) == len(brute_homs(Z2, Z2xZ2.algebra)) == 4


def test_search_no_injection_into_m2(Z2, M2):
    assert search_homs(Z2, M2, require_injective=True) == []


def test_search_options(Z4, Z2):
    all_ = search_homs(Z4, Z2)
    assert [h.map for h in all_] == [(0, 0, 0, 0), (0, 1, 0, 1)]
    assert search_homs(Z4, Z2, limit=1) == all_[:1]
    assert [h.map for h in search_homs(Z4, Z2, require_surjective=True)] == [(0, 1, 0, 1)]
    assert [h.map for h in search_homs(Z4, Z2, fixed={1: 1})] == [(0, 1, 0, 1)]
    assert search_homs(Z4, Z2, fixed=[None, 0, None, 1]) == []
    with pytest.raises(ValueError):
        search_homs(Z4, Z2, fixed={0: 5})


def test_search_is_exhaustive_on_small_algebras():
    rng = random.Random(37)
    for _ in range(60):
        A = random_alg(rng, 3)
        B = random_alg(rng, 3, signature=A.signature)
        assert [h.map for h in search_homs(A, B)] == brute_homs(A, B)


# -- products ----------------------------------------------------------------


def test_tuple_of_identities_is_diagonal(Z2, Z2xZ2):
    diag = tuple_hom_into_product(Z2, Z2xZ2, [identity_hom(Z2), identity_hom(Z2)])
    assert diag.map == (Z2xZ2.encode(0, 0), Z2xZ2.encode(1, 1))
    assert brute_is_hom(Z2, Z2xZ2.algebra, diag.map)


def test_tuple_into_singleton_product(Z3):
    h = search_homs(Z3, Z3)[1]
    assert tuple_hom_into_product(Z3, [Z3], [h]).map == h.map


def test_projection_after_tuple_recovers_components():
    rng = random.Random(38)
    for _ in range(50):
        A = random_alg(rng, 3)
        family, homs = [], []
        for _ in range(rng.randint(1, 3)):
            B = random_alg(rng, 3, signature=A.signature)
            found = search_homs(A, B)
            if found:
                family.append(B)
                homs.append(rng.choice(found))
        if not family:
            continue
        P = product_algebra(family)
        t = tuple_hom_into_product(A, P, homs)
        assert brute_is_hom(A, P.algebra, t.map)
        for i, h in enumerate(homs):
            assert compose_hom(t, projection_hom(P, i)).map == h.map


def test_tuple_rejects_mismatches(Z2, Z3, Z2xZ2):
    with pytest.raises(ValueError):
        tuple_hom_into_product(Z2, Z2xZ2, [identity_hom(Z2)])
    with pytest.raises(ValueError):
        tuple_hom_into_product(Z3, Z2xZ2, [identity_hom(Z2), identity_hom(Z2)])


def test_factorwise_identity(Z2, Z3):
    P = product_algebra([Z2, Z3])
    h = factorwise_product_hom(P, P, [identity_hom(Z2), identity_hom(Z3)])
    assert h.map == tuple(range(6))


def test_factorwise_zeroes_first_coordinate(Z2, Z2xZ2):
    h = factorwise_product_hom(Z2xZ2, Z2xZ2, [constant_hom(Z2, Z2, 0), identity_hom(Z2)])
    P = Z2xZ2
    for a, b in itertools.product(range(2), repeat=2):
        assert h.map[P.encode(a, b)] == P.encode(0, b)


def test_factorwise_injective_iff_factors_injective():
    rng = random.Random(39)
    for _ in range(60):
        sig_src = random_alg(rng, 3)
        pairs = []
        for _ in range(2):
            A = random_alg(rng, 3, signature=sig_src.signature)
            B = random_alg(rng, 3, signature=sig_src.signature)
            found = search_homs(A, B)
            if not found:
                break
            pairs.append((A, B, rng.choice(found)))
        if len(pairs) < 2:
            continue
        F = factorwise_product_hom([p[0] for p in pairs], [p[1] for p in pairs], [p[2] for p in pairs])
        assert brute_is_hom(F.domain, F.codomain, F.map)
        assert classify(F).injective == all(classify(p[2]).injective for p in pairs)


def test_projection_examples(Z2, Z3, Z2xZ2):
    p = projection_hom(Z2xZ2, 0)
    assert classify(p).surjective and brute_is_hom(p.domain, p.codomain, p.map)
    single = projection_hom([Z3], 0)
    assert single.map == (0, 1, 2)
    P = product_algebra([Z2, Z3])
    assert projection_hom(P, 1)(P.encode(1, 2)) == 2
    with pytest.raises(IndexError):
        projection_hom(P, 2)


def test_debug_recheck_catches_bad_theorem_output(monkeypatch, Z2):
    from ualg import homs

    monkeypatch.setenv("UALG_DEBUG_RECHECK", "1")
    with pytest.raises(TheoremCheckFailed):
        homs._theorem_hom(Z2, Z2, [1, 0], "deliberately wrong")
    # real constructions pass under re-checking
    P = product_algebra([Z2, cyclic_group(2)])
    projection_hom(P, 1)
    assert len(search_homs(Z2, P.algebra)) == 4
