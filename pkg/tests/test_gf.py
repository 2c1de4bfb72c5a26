import itertools

import pytest

from hexovoid.gf import (
    FieldConfigError,
    eval_quadric,
    make_field,
    quadric_bilinear,
)

SUPPORTED = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]


@pytest.mark.parametrize("p,r", SUPPORTED)
def test_field_axioms_exhaustive(p, r):
    f = make_field(p, r)
    q = f.q
    els = range(q)
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b in itertools.product(els, els):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
    # associativity and distributivity over all triples (q <= 9 keeps this cheap)
    for a, b, c in itertools.product(els, els, els):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("p,r", SUPPORTED)
def test_frobenius_order(p, r):
    f = make_field(p, r)
    for a in range(f.q):
        x = a
        for _ in range(r):
            x = f.frobenius(x)
        assert x == a


def test_gf2_is_xor_and():
    f = make_field(2, 1)
    for a in (0, 1):
        for b in (0, 1):
            assert f.add(a, b) == a ^ b
            assert f.mul(a, b) == a & b


def test_gf4_generator_square():
    # alpha^2 = alpha + 1 with the pinned modulus x^2 + x + 1
    f = make_field(2, 2)
    g = 2
    assert f.mul(g, g) == f.add(g, 1) == 3
    assert f.generator() == g


def test_gf3_inverse():
    f = make_field(3, 1)
    assert f.inv(2) == 2


def test_unsupported_fields_rejected():
    with pytest.raises(FieldConfigError):
        make_field(11, 1)
    with pytest.raises(FieldConfigError):
        make_field(2, 5)
    with pytest.raises(FieldConfigError):
        make_field(5, 2)  # q = 25 > 16


def test_quadric_examples():
    f2 = make_field(2, 1)
    assert eval_quadric(f2, (1, 0, 0, 0, 0, 0, 0)) == 0
    assert eval_quadric(f2, (1, 0, 0, 0, 1, 0, 0)) == 1
    f3 = make_field(3, 1)
    assert eval_quadric(f3, (0, 0, 0, 1, 0, 0, 0)) == 2  # -1 mod 3


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1)])
def test_quadric_homogeneity(p, r):
    # Q(lam*x) = lam^2 * Q(x), exhaustively over scalars for a spread of vectors
    import random

    f = make_field(p, r)
    rng = random.Random(7)
    vecs = [tuple(rng.randrange(f.q) for _ in range(7)) for _ in range(50)]
    for x in vecs:
        qx = eval_quadric(f, x)
        for lam in range(f.q):
            lx = tuple(f.mul(lam, c) for c in x)
            assert eval_quadric(f, lx) == f.mul(f.mul(lam, lam), qx)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1)])
def test_bilinear_is_polarization(p, r):
    import random

    f = make_field(p, r)
    rng = random.Random(11)
    for _ in range(100):
        x = tuple(rng.randrange(f.q) for _ in range(7))
        y = tuple(rng.randrange(f.q) for _ in range(7))
        s = tuple(f.add(a, b) for a, b in zip(x, y))
        lhs = quadric_bilinear(f, x, y)
        rhs = f.sub(f.sub(eval_quadric(f, s), eval_quadric(f, x)), eval_quadric(f, y))
        assert lhs == rhs


def test_vec7_length_checked():
    f = make_field(2, 1)
    with pytest.raises(ValueError):
        eval_quadric(f, (1, 0, 0))
