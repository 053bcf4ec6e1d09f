import itertools
import math
import random

import pytest

from latnc.rings import GaussInt, Z, ZI, ext_gcd
from latnc.smith import (
    RingMatrix,
    determinant,
    invariant_factors_of_quotient,
    matrix_from_json,
    matrix_inverse_unimodular,
    matrix_to_json,
    smith_normal_form,
)


def rand_matrix(rng, ring, m, n, bound=9):
    if ring is Z:
        ent = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]
    else:
        ent = [
            [GaussInt(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(n)]
            for _ in range(m)
        ]
    return RingMatrix(ring, ent)


def check_snf(a):
    res = smith_normal_form(a)
    r = a.ring
    d_mat = res.diagonal_matrix(a.rows, a.cols)
    assert (res.p @ a @ res.q) == d_mat
    # divisibility chain
    for x, y in zip(res.d, res.d[1:]):
        if r.is_zero(x):
            assert r.is_zero(y)
        else:
            assert r.divides(x, y)
    # canonical nonzero entries
    for x in res.d:
        if not r.is_zero(x):
            assert r.eq(r.canon(x), x)
    # unimodular transforms
    assert r.is_unit(determinant(res.p))
    assert r.is_unit(determinant(res.q))
    return res


def test_identity():
    a = RingMatrix.identity(Z, 3)
    res = check_snf(a)
    assert res.d == [1, 1, 1]


def test_spec_2x2_over_z():
    a = RingMatrix(Z, [[2, 1], [0, 2]])
    res = check_snf(a)
    assert res.d == [1, 4]


def test_diag_reorder():
    a = RingMatrix(Z, [[2, 0], [0, 1]])
    res = check_snf(a)
    assert res.d == [1, 2]


def test_gauss_diagonal():
    pi = GaussInt(1, 1)
    a = RingMatrix(ZI, [[pi, ZI.zero()], [ZI.zero(), pi]])
    res = check_snf(a)
    assert res.d == [pi, pi]


def test_snf_idempotent():
    rng = random.Random(1)
    for _ in range(50):
        a = rand_matrix(rng, Z, 4, 4)
        res = smith_normal_form(a)
        again = smith_normal_form(res.diagonal_matrix(4, 4))
        assert again.d == res.d


def test_snf_random_properties():
    rng = random.Random(2)
    for _ in range(200):
        ring = rng.choice([Z, ZI])
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        check_snf(rand_matrix(rng, ring, m, n))


def minor_gcd(a, size):
    """gcd of all size x size minors, 0 if all vanish."""
    r = a.ring
    g = None
    for rows in itertools.combinations(range(a.rows), size):
        for cols in itertools.combinations(range(a.cols), size):
            sub = RingMatrix(r, [[a.entries[i][j] for j in cols] for i in rows])
            d = determinant(sub)
            if r.is_zero(d):
                continue
            g = d if g is None else ext_gcd(g, d, r)[0]
    return r.zero() if g is None else r.canon(g)


def test_minor_gcd_oracle():
    rng = random.Random(3)
    for _ in range(60):
        ring = rng.choice([Z, ZI])
        n = rng.randint(1, 4)
        a = rand_matrix(rng, ring, n, n, bound=5)
        res = smith_normal_form(a)
        prod = ring.one()
        for i in range(n):
            prod = ring.mul(prod, res.d[i])
            assert ring.eq(ring.canon(prod) if not ring.is_zero(prod) else prod,
                           minor_gcd(a, i + 1))


def test_unit_scaling_invariance():
    rng = random.Random(4)
    for _ in range(50):
        a = rand_matrix(rng, ZI, 3, 3)
        base = smith_normal_form(a).d
        for u in ZI.units():
            scaled = RingMatrix(ZI, [[u * x for x in row] for row in a.entries])
            assert smith_normal_form(scaled).d == base


def test_invariant_factors_of_quotient():
    three = GaussInt(3, 0)
    j = RingMatrix.diagonal(ZI, [three, three])
    assert invariant_factors_of_quotient(j) == [three, three]

    swap = RingMatrix(Z, [[0, 1], [1, 0]])
    assert invariant_factors_of_quotient(swap) == []

    j2 = RingMatrix(Z, [[12, 0, 0, 0], [0, 6, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]])
    assert invariant_factors_of_quotient(j2) == [2, 2, 6, 12]

    singular = RingMatrix(Z, [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        invariant_factors_of_quotient(singular)


def test_matrix_inverse_unimodular():
    i3 = RingMatrix.identity(Z, 3)
    assert matrix_inverse_unimodular(i3) == i3

    a = RingMatrix(Z, [[2, -1], [-3, 2]])
    assert matrix_inverse_unimodular(a) == RingMatrix(Z, [[2, 1], [3, 2]])

    e = RingMatrix(ZI, [[GaussInt(1, 0), GaussInt(0, 1)], [GaussInt(0, 0), GaussInt(1, 0)]])
    inv = matrix_inverse_unimodular(e)
    assert (e @ inv) == RingMatrix.identity(ZI, 2)
    assert inv.entries[0][1] == GaussInt(0, -1)

    bad = RingMatrix(Z, [[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        matrix_inverse_unimodular(bad)


def test_inverse_randomized():
    rng = random.Random(5)
    tries = 0
    for _ in range(400):
        a = rand_matrix(rng, ZI, 3, 3, bound=2)
        if not ZI.is_unit(determinant(a)) if not ZI.is_zero(determinant(a)) else True:
            continue
        inv = matrix_inverse_unimodular(a)
        assert (a @ inv) == RingMatrix.identity(ZI, 3)
        tries += 1
    assert tries >= 3


def test_matrix_json_roundtrip():
    a = RingMatrix(Z, [[1, 2], [3, 4]])
    assert matrix_from_json(matrix_to_json(a)) == a
    b = RingMatrix(ZI, [[GaussInt(1, -2), GaussInt(0, 0)], [GaussInt(3, 1), GaussInt(2, 2)]])
    assert matrix_from_json(matrix_to_json(b)) == b


def test_overflow_free_bigints():
    # python ints make overflow impossible; a wide-entry SNF must still verify
    a = RingMatrix(Z, [[10**12, 1], [0, 10**12]])
    res = check_snf(a)
    assert math.prod(res.d) == 10**24
