import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewquiver.cyclo import CycloNumber, choose_prime
from skewquiver.groups import from_cayley_table
from skewquiver.mckay import cyclic_sl2
from skewquiver.modp import matmul_mod, rank_mod
from skewquiver.oracle import (
    DegenerateForm,
    build_explicit,
    central_projector,
    check_form_compatibility,
    extended_form,
    graded_isotropic_split,
    maximal_isotropic_split,
    oracle_arrow_count,
    oracle_multiplicities,
    skew_product,
    verify_rG,
)
from skewquiver.preprojective import (
    double_quiver,
    extend_action_contragredient,
    fold_double,
    from_pairing,
    symplectic_data,
)
from skewquiver.quiver import LinearQuiverAction, Quiver, identity_images
from skewquiver.skew import build_skew_quiver
from skewquiver.zoo import cyclic, random_instance

from conftest import twist_duals


def _a2_sign():
    q = Quiver.from_edges(["1", "2"], [("beta", 0, 1)])
    G = cyclic(2)
    action = LinearQuiverAction(q, G, [(0, 1)] * 2, [identity_images(1), ({0: CycloNumber.rational(-1)},)], 1)
    return q, action


def test_small_bimodule_product():
    q, action = _a2_sign()
    emb = choose_prime(2, 10)
    bm = build_explicit(q, action, emb)
    assert bm.dim == 2
    p = emb.p
    b = 1
    prod = skew_product({("e", 0, b): 1, ("e", 1, b): 1}, {("a", 0, 0): 1}, q, action, p, action.matrices(emb))
    assert prod == {("a", 0, b): p - 1}
    # the same product read off the explicit left multiplication
    assert bm.left_group[b][bm.index(0, b), bm.index(0, 0)] == p - 1
    assert (bm.right_group[b][:, bm.index(0, 0)] == np.eye(2, dtype=np.int64)[:, bm.index(0, b)]).all()


def test_dicyclic_bimodule(dicyclic):
    S = dicyclic["skew"]
    bm = build_explicit(dicyclic["quiver"], dicyclic["action"], S.embedding)
    assert bm.dim == 96
    mult, books = oracle_multiplicities(bm, S.tables, S.frame.reps)
    assert mult == S.mult
    assert all(dim == weighted for dim, weighted in books.values())


def test_projectors_on_scalar_loop():
    q = Quiver.from_edges(["x"], [("alpha", 0, 0)])
    G = cyclic(4)
    g = G.generators[0]
    action = LinearQuiverAction.from_generators(q, G, [g], [(0,)], [({0: CycloNumber.zeta(4)},)], 4)
    S = build_skew_quiver(q, action)
    p = S.embedding.p
    bm = build_explicit(q, action, S.embedding)
    table = S.tables[0]
    total = np.zeros((4, 4), dtype=np.int64)
    for k in range(4):
        for side in ("left", "right"):
            P = central_projector(bm, table, k, side).matrix
            assert (matmul_mod(P, P, p) == P).all()
            assert rank_mod(P, p) == 1
            for h in range(4):
                assert (matmul_mod(P, bm.left_group[h], p) == matmul_mod(bm.left_group[h], P, p)).all()
                assert (matmul_mod(P, bm.right_group[h], p) == matmul_mod(bm.right_group[h], P, p)).all()
        total = (total + central_projector(bm, table, k, "right").matrix) % p
    assert (total == np.eye(4, dtype=np.int64)).all()
    # each character is sent to its product with the scalar: a single cycle on four vertices
    assert sorted(map(sorted, S.mult)) == [[0, 0, 0, 1]] * 4
    assert oracle_arrow_count(bm, S.tables, (0, 0), (0, 0)) == 0


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_oracle_matches_formula(seed):
    _, q, action = random_instance(seed)
    S = build_skew_quiver(q, action)
    bm = build_explicit(q, action, S.embedding)
    mult, books = oracle_multiplicities(bm, S.tables, S.frame.reps)
    assert mult == S.mult
    assert all(dim == weighted for dim, weighted in books.values())


def _explicit_double(dq, action):
    S = build_skew_quiver(dq.doubled, action)
    bm = build_explicit(dq.doubled, action, S.embedding)
    gram, rel = symplectic_data(dq).mod(S.embedding.p)
    return S, bm, gram, rel


def test_extended_form_dicyclic(dicyclic):
    dq = from_pairing(dicyclic["quiver"], dicyclic["pairing"])
    S, bm, gram, rel = _explicit_double(dq, dicyclic["action"])
    p = S.embedding.p
    F = extended_form(bm, gram)
    assert ((F + F.T) % p == 0).all()
    assert rank_mod(F, p) == bm.dim
    G = dicyclic["action"].group
    order = G.order
    for u, w in zip(*np.nonzero(F)):
        assert G.mul(u % order, w % order) == 0
    assert check_form_compatibility(bm, F)
    assert verify_rG(bm, gram, rel)
    assert not verify_rG(bm, gram, 2 * rel % p)


def test_verify_rG_small_cases():
    q = Quiver.from_edges(["x", "y"], [("f", 0, 1), ("l", 1, 1)])
    dq = double_quiver(q)
    trivial = LinearQuiverAction(q, from_cayley_table([[0]]), [(0, 1)], [identity_images(2)], 1)
    _, bm, gram, rel = _explicit_double(dq, extend_action_contragredient(dq, trivial))
    assert verify_rG(bm, gram, rel)
    loop = Quiver.from_edges(["x"], [("a", 0, 0)])
    dq = double_quiver(loop)
    neg = LinearQuiverAction(loop, cyclic(2), [(0,)] * 2, [identity_images(1), ({0: CycloNumber.rational(-1)},)], 1)
    S, bm, gram, rel = _explicit_double(dq, extend_action_contragredient(dq, neg))
    assert verify_rG(bm, gram, rel)
    assert not verify_rG(bm, gram, np.zeros_like(rel))


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_verify_rG_random(seed, lam_seed):
    _, q, action = random_instance(seed)
    dq = double_quiver(q)
    ext = extend_action_contragredient(dq, action)
    twisted, _ = twist_duals(dq, ext, lam_seed)
    for act in (ext, twisted):
        S, bm, gram, rel = _explicit_double(dq, act)
        F = extended_form(bm, gram)
        preserved = check_form_compatibility(bm, F)
        if act is ext:
            assert preserved
        if preserved:
            assert verify_rG(bm, gram, rel)


def test_isotropic_split_plane_and_empty():
    p = 101
    form = np.array([[0, 1], [p - 1, 0]])
    U, V = maximal_isotropic_split(np.eye(2, dtype=np.int64), form, p)
    assert U.shape == V.shape == (2, 1)
    assert int(U[:, 0] @ form @ V[:, 0]) % p == 1
    U, V = maximal_isotropic_split(np.zeros((3, 0), dtype=np.int64), np.zeros((3, 3), dtype=np.int64), p)
    assert U.shape == V.shape == (3, 0)
    with pytest.raises(DegenerateForm):
        maximal_isotropic_split(np.eye(2, dtype=np.int64), np.zeros((2, 2), dtype=np.int64), p)


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_isotropic_split_random_symplectic(k, seed):
    import random

    rng = random.Random(seed)
    p = 101
    J = np.zeros((2 * k, 2 * k), dtype=np.int64)
    J[:k, k:] = np.eye(k, dtype=np.int64)
    J[k:, :k] = (p - 1) * np.eye(k, dtype=np.int64)
    while True:
        B = np.array([[rng.randrange(p) for _ in range(2 * k)] for _ in range(2 * k)], dtype=np.int64)
        if rank_mod(B, p) == 2 * k:
            break
    U, V = maximal_isotropic_split(B, J, p)
    assert U.shape[1] == V.shape[1] == k
    pair = lambda X, Y: matmul_mod(matmul_mod(X.T, J, p), Y, p)
    assert not pair(U, U).any() and not pair(V, V).any()
    assert (pair(U, V) == np.eye(k, dtype=np.int64)).all()


def test_graded_split_matches_fold(dicyclic):
    dq = from_pairing(dicyclic["quiver"], dicyclic["pairing"])
    S, bm, gram, _ = _explicit_double(dq, dicyclic["action"])
    _, ds = fold_double(dq, dicyclic["action"], S.embedding)
    split = graded_isotropic_split(bm, S.tables, S.frame.reps, gram)
    assert {k: c for k, c in split.items() if c} == {(v, w): c for v, w, c in ds.arrows()}


def test_graded_split_loop_halves():
    S2 = cyclic_sl2(1)
    dq = from_pairing(S2.quiver, [("alpha", "alpha*")])
    S, bm, gram, _ = _explicit_double(dq, S2.action)
    assert graded_isotropic_split(bm, S.tables, S.frame.reps, gram) == {(0, 0): 1}
