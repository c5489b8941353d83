import pytest

from skewquiver.catalog import dicyclic12_star, perturb_generator
from skewquiver.cyclo import CycloNumber, choose_prime
from skewquiver.groups import from_cayley_table
from skewquiver.quiver import (
    ActionError,
    LinearQuiverAction,
    Quiver,
    arrow_block,
    identity_images,
    validate_action,
)
from skewquiver.zoo import cyclic


def test_quiver_basics():
    q = Quiver.from_edges(["x", "y"], [("f", 0, 1), ("g", 0, 1), ("h", 1, 1)])
    assert q.num_vertices == 2 and q.num_arrows == 3
    assert q.arrows_between(0, 1) == [0, 1]
    assert q.arrow_index("h") == 2
    op = q.opposite()
    assert op.arrows_between(1, 0) == [0, 1] and op.arrows_between(0, 1) == []
    assert op.opposite() == q
    assert q.adjacency()[0][1] == 2


def test_identity_group_is_valid():
    q = Quiver.from_edges(["x", "y"], [("f", 0, 1), ("l", 1, 1)])
    G = from_cayley_table([[0]])
    action = LinearQuiverAction(q, G, [(0, 1)], [identity_images(2)], 1)
    assert validate_action(q, action) == []


def test_dicyclic_action_is_valid():
    q, action, _ = dicyclic12_star()
    assert action.group.order == 12
    assert validate_action(q, action) == []


def test_flipped_beta_sign_is_rejected():
    q, action, _ = dicyclic12_star()
    bad = perturb_generator(q, action, "b", "beta", [("beta", 1)])
    problems = validate_action(q, bad)
    assert problems
    assert any(p[2] is not None for p in problems)


def test_image_leaving_block_is_rejected():
    q = Quiver.from_edges(["x", "y"], [("f", 0, 1), ("l", 1, 1)])
    G = cyclic(2)
    one = CycloNumber.rational(1)
    images = [identity_images(2), ({1: one}, {0: one})]
    action = LinearQuiverAction(q, G, [(0, 1), (0, 1)], images, 1)
    assert any("leaves the block" in p[3] for p in validate_action(q, action))


def test_from_generators_requires_generation():
    q = Quiver.from_edges(["x"], [("l", 0, 0)])
    G = cyclic(4)
    two = G.power(G.generators[0], 2)
    with pytest.raises(ActionError):
        LinearQuiverAction.from_generators(q, G, [two], [(0,)], [({0: CycloNumber.rational(-1)},)], 2)


def test_from_generators_scalar_loop():
    q = Quiver.from_edges(["x"], [("l", 0, 0)])
    G = cyclic(4)
    g = G.generators[0]
    action = LinearQuiverAction.from_generators(q, G, [g], [(0,)], [({0: CycloNumber.zeta(4)},)], 4)
    assert validate_action(q, action) == []
    assert action.images[G.power(g, 2)][0] == {0: CycloNumber.rational(-1, 4)}


def test_arrow_blocks_small():
    q = Quiver.from_edges(["x", "y"], [("f", 0, 1)])
    G = cyclic(2)
    action = LinearQuiverAction(q, G, [(0, 1)] * 2, [identity_images(1), ({0: CycloNumber.rational(-1)},)], 1)
    emb = choose_prime(2, 10)
    blk = arrow_block(q, action, emb, 0, 1)
    assert blk.dim == 1
    assert blk.matrices[1][0, 0] == emb.p - 1
    assert arrow_block(q, action, emb, 1, 0).dim == 0
