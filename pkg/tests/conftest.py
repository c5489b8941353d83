import math
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

from skewquiver.catalog import dicyclic12_names, dicyclic12_star
from skewquiver.characters import ClassFunction
from skewquiver.cyclo import CycloNumber
from skewquiver.quiver import LinearQuiverAction
from skewquiver.skew import build_skew_quiver
from skewquiver.zoo import group_zoo, random_linear_character

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def zoo():
    return group_zoo()


@pytest.fixture(scope="session")
def dicyclic():
    q, action, pairing = dicyclic12_star()
    S = build_skew_quiver(q, action)
    names = dicyclic12_names(S)
    return {"quiver": q, "action": action, "pairing": pairing, "skew": S, "names": names, "pos": {n: k for k, n in enumerate(names)}}


def twist_duals(dq, ext, seed):
    """Multiply every dual-arrow image of g by lambda(g) for a random linear character lambda.

    The result is still an action; it preserves the form only when lambda is trivial.
    """
    G = ext.group
    lam, e = random_linear_character(G.whole, random.Random(seed))
    level = math.lcm(ext.level, e)
    images = []
    for g in range(G.order):
        scale = CycloNumber.zeta(e, lam[g])
        im = []
        for a, col in enumerate(ext.images[g]):
            im.append({b: c * scale for b, c in col.items()} if dq.starred[a] else dict(col))
        images.append(tuple(im))
    return LinearQuiverAction(dq.doubled, G, ext.vperm, images, level), any(lam.values())


def induce(psi, H):
    """Induced class function on H from psi on a subgroup K (textbook formula)."""
    K = psi.group
    G = H.parent
    p = psi.p
    inv = pow(K.order, -1, p)
    vals = []
    for r in H.classes.reps:
        total = 0
        for x in H.elements:
            y = G.conj(r, G.inv(x))  # x r x^-1
            if y in K:
                total += psi.at(y)
        vals.append(total * inv % p)
    return ClassFunction(H, tuple(vals), p)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not any(mod.RESULTS.values()):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
