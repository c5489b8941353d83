"""Small test groups and seeded random monomial instances."""

from __future__ import annotations

import math
import random

from .cyclo import CycloNumber
from .groups import FiniteGroup, Subgroup, from_permutation_generators, generated_subgroup, group_from_closure
from .quiver import LinearQuiverAction, Quiver

__all__ = ["cyclic", "dihedral", "dicyclic", "symmetric", "alternating4", "klein4", "group_zoo", "random_instance", "random_linear_character"]


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([[0]], labels=["1"])
    return from_permutation_generators(n, [tuple((x + 1) % n for x in range(n))], names=["c"])[0]


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((x + 1) % n for x in range(n))
    ref = tuple((-x) % n for x in range(n))
    return from_permutation_generators(n, [rot, ref], names=["r", "s"])[0]


def dicyclic(n: int) -> FiniteGroup:
    """<a, b | a^2n = 1, b^2 = a^n, b a b^-1 = a^-1>, order 4n. n = 2 is Q8."""
    m = 2 * n

    def mul(x, y):
        (i, e), (j, f) = x, y
        if not e:
            return ((i + j) % m, f)
        # a^i b a^j b^f = a^(i-j) b^(1+f)
        k = (i - j) % m
        return ((k + n) % m, 0) if f else (k, 1)

    return group_from_closure([(1, 0), (0, 1)], mul, (0, 0), names=["a", "b"])[0]


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return cyclic(1)
    swap = tuple([1, 0] + list(range(2, n)))
    cycle = tuple((x + 1) % n for x in range(n))
    gens = [swap] if n == 2 else [swap, cycle]
    return from_permutation_generators(n, gens, names=["s", "c"])[0]


def alternating4() -> FiniteGroup:
    return from_permutation_generators(4, [(1, 2, 0, 3), (1, 0, 3, 2)], names=["t", "v"])[0]


def klein4() -> FiniteGroup:
    return from_permutation_generators(4, [(1, 0, 3, 2), (2, 3, 0, 1)], names=["u", "v"])[0]


def group_zoo() -> dict:
    """Named groups of order at most 24."""
    zoo = {"trivial": cyclic(1)}
    for n in range(2, 9):
        zoo[f"cyclic{n}"] = cyclic(n)
    zoo["klein4"] = klein4()
    for n in range(3, 7):
        zoo[f"dihedral{2 * n}"] = dihedral(n)
    zoo["quaternion8"] = dicyclic(2)
    zoo["dicyclic12"] = dicyclic(3)
    zoo["alternating4"] = alternating4()
    zoo["symmetric4"] = symmetric(4)
    return zoo


def _random_subgroup(G, rng, ngens):
    gens = [rng.randrange(G.order) for _ in range(ngens)]
    return generated_subgroup(G, gens)


def _right_cosets(G, K: Subgroup):
    """Coset representatives t with G = disjoint union of K t, and a lookup g -> (k, t)."""
    reps, where = [], {}
    for g in range(G.order):
        if g in where:
            continue
        reps.append(g)
        for k in K.elements:
            where[G.mul(k, g)] = (k, g)
    return reps, where


def random_linear_character(K: Subgroup, rng):
    """Random homomorphism K -> Z/e (e the exponent of K), as a dict k -> residue."""
    G = K.parent
    e = K.exponent
    gens = []
    span = {0}
    for k in K.elements:
        if k not in span:
            gens.append(k)
            span = set(generated_subgroup(G, gens).elements)
    for _ in range(20):
        vals = [rng.randrange(e) for _ in gens]
        f = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, v in zip(gens, vals):
                    y = G.mul(x, s)
                    val = (f[x] + v) % e
                    if y in f:
                        if f[y] != val:
                            ok = False
                            break
                    else:
                        f[y] = val
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            return f, e
    return {k: 0 for k in K.elements}, 1


def random_instance(seed: int, max_order: int = 24, max_vertices: int = 5, max_arrows: int = 6, zoo=None):
    """Seeded random (quiver, action) with a permutation action on vertices and a
    monomial action on arrows induced from linear characters.

    Returns ``(name, quiver, action)``.
    """
    rng = random.Random(seed)
    zoo = zoo or group_zoo()
    names = sorted(k for k, G in zoo.items() if G.order <= max_order)
    while True:
        name = rng.choice(names)
        G = zoo[name]
        got = _attempt(G, rng, max_vertices, max_arrows)
        if got is not None:
            return (name, *got)


def _attempt(G, rng, max_vertices, max_arrows):
    # vertex orbits: right coset spaces H\G
    orbits = []
    total = 0
    for _ in range(rng.randint(1, 3)):
        H = _random_subgroup(G, rng, rng.randint(0, 2))
        idx = G.order // H.order
        if total + idx > max_vertices:
            continue
        reps, where = _right_cosets(G, H)
        orbits.append((H, reps, where, total))
        total += idx
    if not orbits:
        return None
    nv = total
    vperm = [[0] * nv for _ in range(G.order)]
    for H, reps, where, off in orbits:
        pos = {t: n for n, t in enumerate(reps)}
        for g in range(G.order):
            for n, t in enumerate(reps):
                vperm[g][off + n] = off + pos[where[G.mul(t, g)][1]]
    stabs = [Subgroup(G, tuple(g for g in range(G.order) if vperm[g][v] == v)) for v in range(nv)]

    # arrow orbits: induced from a linear character of K <= G_s ∩ G_t
    edges, blocks, level = [], [], 1
    for _ in range(rng.randint(1, 3)):
        s0, t0 = rng.randrange(nv), rng.randrange(nv)
        inter = stabs[s0]._set & stabs[t0]._set
        cand = [g for g in inter]
        K = generated_subgroup(G, [rng.choice(cand) for _ in range(rng.randint(0, 2))])
        if not set(K.elements) <= inter:
            return None
        reps, where = _right_cosets(G, K)
        if len(edges) + len(reps) > max_arrows:
            continue
        lam, e = random_linear_character(K, rng)
        level = math.lcm(level, e)
        base = len(edges)
        for n, t in enumerate(reps):
            edges.append((f"x{base + n}", vperm[t][s0], vperm[t][t0]))
        blocks.append((base, reps, where, lam, e))
    if not edges:
        return None

    quiver = Quiver.from_edges([str(v) for v in range(nv)], edges)
    images = []
    for g in range(G.order):
        im = [None] * len(edges)
        for base, reps, where, lam, e in blocks:
            pos = {t: n for n, t in enumerate(reps)}
            for n, t in enumerate(reps):
                k, t2 = where[G.mul(t, g)]
                im[base + n] = {base + pos[t2]: CycloNumber.zeta(e, lam[k]).lift(level)}
        images.append(tuple(im))
    action = LinearQuiverAction(quiver, G, vperm, images, level, generator_names=None)
    return quiver, action
