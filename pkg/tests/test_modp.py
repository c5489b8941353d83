import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewquiver.modp import (
    SingularMatrix,
    charpoly_mod,
    inv_mod,
    matmul_mod,
    nullspace_mod,
    poly_roots_mod,
    rank_mod,
    solve_mod,
)

P = 101


def leibniz_det(m, p):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod = prod * int(m[i][perm[i]]) % p
        total += sign * prod
    return total % p


def minor_rank(m, p):
    rows, cols = m.shape
    for k in range(min(rows, cols), 0, -1):
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                if leibniz_det(m[np.ix_(r, c)], p):
                    return k
    return 0


@st.composite
def matrices(draw, max_dim=4, square=False):
    r = draw(st.integers(1, max_dim))
    c = r if square else draw(st.integers(1, max_dim))
    # low-rank structure shows up often with a small entry range
    vals = draw(st.lists(st.integers(0, 3), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c)


@given(matrices())
def test_rank_equals_largest_nonzero_minor(m):
    assert rank_mod(m, P) == minor_rank(m, P)


@given(matrices())
def test_nullspace_is_kernel_of_right_size(m):
    k = nullspace_mod(m, P)
    assert k.shape == (m.shape[1], m.shape[1] - rank_mod(m, P))
    assert not matmul_mod(m, k, P).any()
    assert rank_mod(k, P) == k.shape[1]


@given(matrices(square=True))
def test_inverse_or_singular(m):
    if leibniz_det(m, P):
        inv = inv_mod(m, P)
        assert (matmul_mod(m, inv, P) == np.eye(len(m), dtype=np.int64)).all()
    else:
        with pytest.raises(SingularMatrix):
            inv_mod(m, P)


@given(matrices(square=True, max_dim=5))
def test_charpoly_matches_determinant(m):
    n = len(m)
    cp = charpoly_mod(m, P)
    assert len(cp) == n + 1 and cp[-1] == 1
    for x in range(n + 1):
        direct = leibniz_det((x * np.eye(n, dtype=np.int64) - m) % P, P)
        assert sum(c * pow(x, k, P) for k, c in enumerate(cp)) % P == direct


@given(st.lists(st.integers(0, P - 1), min_size=1, max_size=5))
def test_roots_with_multiplicity(roots):
    poly = [1]
    for r in roots:
        poly = [(a - r * b) % P for a, b in zip([0] + poly, poly + [0])]
    assert sorted(poly_roots_mod(poly, P)) == sorted(roots)


def test_solve_and_inconsistent():
    a = np.array([[1, 2], [2, 4]])
    x = solve_mod(a, np.array([3, 6]), P)
    assert (matmul_mod(a, x[:, None], P)[:, 0] == [3, 6]).all()
    with pytest.raises(SingularMatrix):
        solve_mod(a, np.array([3, 7]), P)


def test_large_prime_products_do_not_overflow():
    p = 2**31 - 1
    a = np.full((3, 300), p - 1, dtype=np.int64)
    out = matmul_mod(a, a.T, p)
    assert out[0, 0] == 300 % p
