import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewquiver.catalog import DICYCLIC12_EDGES, glued_chains
from skewquiver.groups import from_cayley_table
from skewquiver.quiver import LinearQuiverAction, Quiver, identity_images
from skewquiver.skew import (
    build_skew_quiver,
    check_choices,
    isomorphic_as_labeled,
    safety_bound,
    twist_matching,
)
from skewquiver.zoo import random_instance


def test_trivial_group_returns_quiver():
    q = Quiver.from_edges(["x", "y", "z"], [("f", 0, 1), ("g", 0, 1), ("h", 1, 2), ("l", 2, 2)])
    G = from_cayley_table([[0]])
    S = build_skew_quiver(q, LinearQuiverAction(q, G, [(0, 1, 2)], [identity_images(4)], 1))
    assert S.mult == [[0, 2, 0], [0, 0, 1], [0, 0, 1]]


def test_dicyclic_named_counts(dicyclic):
    S, pos = dicyclic["skew"], dicyclic["pos"]
    m = lambda v, w: S.mult[pos[v]][pos[w]]
    assert m("0_rho", "0_sigma") == 1
    assert m("0_1", "0_sigma") == 0
    assert m("0_i", "0_sigma") == 1
    assert m("1_i", "0_sigma") == 0
    assert m("1_1", "0_sigma") == 1
    assert m("1_1", "0_-1") == 1


def test_dicyclic_full_matrix(dicyclic):
    S, pos = dicyclic["skew"], dicyclic["pos"]
    assert len(S.vertices) == 10
    assert sorted(dicyclic["names"]) == sorted(
        ["0_1", "0_-1", "0_i", "0_-i", "0_rho", "0_sigma", "1_1", "1_-1", "1_i", "1_-i"]
    )
    expected = [[0] * 10 for _ in range(10)]
    for v, w in DICYCLIC12_EDGES:
        expected[pos[v]][pos[w]] = expected[pos[w]][pos[v]] = 1
    assert S.mult == expected
    assert S.num_arrows == 26


def test_glued_chains_fork():
    q, action = glued_chains(3)
    S = build_skew_quiver(q, action)
    assert [v.degree for v in S.vertices] == [1, 1, 1, 1]
    assert S.mult == [[0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 0], [0, 0, 0, 0]]


@pytest.mark.parametrize("n", [2, 4, 6])
def test_glued_chains_shape(n):
    q, action = glued_chains(n)
    S = build_skew_quiver(q, action)
    assert len(S.vertices) == n + 1
    assert S.num_arrows == n
    sink_vertices = [k for k, v in enumerate(S.vertices) if v.orbit_rep == q.num_vertices - 1]
    assert len(sink_vertices) == 2
    assert all(sum(row[k] for row in S.mult) == 1 for k in sink_vertices)


def test_labeled_isomorphism(dicyclic):
    S, pos = dicyclic["skew"], dicyclic["pos"]
    n = len(S.vertices)
    ident = list(range(n))
    assert isomorphic_as_labeled(S, S, ident)
    swap = ident[:]
    swap[pos["0_1"]], swap[pos["0_-1"]] = swap[pos["0_-1"]], swap[pos["0_1"]]
    assert not isomorphic_as_labeled(S, S, swap)
    assert not isomorphic_as_labeled(S, S, [0] * n)


def test_dicyclic_choice_invariance(dicyclic):
    ok, details = check_choices(dicyclic["quiver"], dicyclic["action"], 6, seed=3)
    assert ok and len(details) == 6


def test_safety_bound_exceeds_counts(dicyclic):
    S = dicyclic["skew"]
    bound = safety_bound(dicyclic["quiver"], dicyclic["action"].group)
    assert S.embedding.p > bound >= max(map(max, S.mult))


def dual_matching(S):
    out = []
    for v in S.vertices:
        tab = S.tables[v.orbit_rep]
        chi = tab.irreducibles[v.irr_index]
        H = chi.group
        vals = tuple(chi.at(H.parent.inv(r)) for r in H.classes.reps)
        out.append(S.index(v.orbit_rep, [c.values for c in tab.irreducibles].index(vals)))
    return out


def test_opposite_of_real_instance_is_transpose(dicyclic):
    S = dicyclic["skew"]
    q = dicyclic["quiver"]
    op = q.opposite()
    T = build_skew_quiver(op, dicyclic["action"].restricted_to(op), S.embedding, frame=S.frame)
    assert T.mult == S.mult  # the doubled star is symmetric under reversal


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_structural_invariants(seed):
    _, q, action = random_instance(seed)
    S = build_skew_quiver(q, action)
    assert len(S.vertices) == sum(len(S.frame.stab[i].classes) for i in S.frame.reps)
    n = len(S.vertices)
    for v, w in itertools.product(range(n), repeat=2):
        assert sum(c for _, c in S.provenance.get((v, w), [])) == S.mult[v][w]
    # reversing arrows transposes Q_G once each vertex is paired with its dual character
    op = q.opposite()
    T = build_skew_quiver(op, action.restricted_to(op), S.embedding, frame=S.frame)
    dual = dual_matching(S)
    assert all(T.mult[dual[w]][dual[v]] == S.mult[v][w] for v in range(n) for w in range(n))


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_random_choice_invariance(seed, choice_seed):
    _, q, action = random_instance(seed)
    ok, _ = check_choices(q, action, 2, seed=choice_seed)
    assert ok


def test_twist_matching_is_bijection(dicyclic):
    import random

    S = dicyclic["skew"]
    other = build_skew_quiver(dicyclic["quiver"], dicyclic["action"], S.embedding, rng=random.Random(11))
    m = twist_matching(S, other)
    assert sorted(m) == list(range(len(S.vertices)))
