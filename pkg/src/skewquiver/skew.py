"""The quiver Q_G of a skew group algebra (kQ)G, from characters of stabilizers.

Vertices are pairs (i, rho) with i an orbit representative and rho an
irreducible character of its stabilizer G_i. The number of arrows
(i, rho) -> (j, sigma) is

    sum over (i', j') in F_ij of  < (rho.k_i')|H , (sigma.k_j')|H * chi_M >_H

with H = G_i' ∩ G_j', k the transporters, and chi_M the character of the
arrow span M_i'j' as a right H-module.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .characters import (
    action_character,
    compute_character_table,
    conjugate_twist,
    inner_product,
    restrict,
)
from .cyclo import PrimeEmbedding, choose_prime
from .groups import OrbitFrame, diagonal_pair_reps, orbit_frame
from .quiver import ActionError, LinearQuiverAction, Quiver, arrow_block, validate_action

__all__ = [
    "InternalBoundExceeded",
    "SkewVertex",
    "SkewQuiver",
    "default_embedding",
    "build_skew_quiver",
    "isomorphic_as_labeled",
    "twist_matching",
    "check_choices",
]


class InternalBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SkewVertex:
    orbit_rep: int
    irr_index: int
    label: str
    degree: int


@dataclass
class SkewQuiver:
    vertices: list
    mult: list  # mult[v][w] = number of arrows v -> w
    provenance: dict  # (v, w) -> [((i', j'), count), ...]
    frame: OrbitFrame = field(repr=False)
    tables: dict = field(repr=False)  # orbit rep -> CharacterTable of its stabilizer
    embedding: PrimeEmbedding = field(repr=False)

    def index(self, orbit_rep: int, irr_index: int) -> int:
        for k, v in enumerate(self.vertices):
            if v.orbit_rep == orbit_rep and v.irr_index == irr_index:
                return k
        raise KeyError((orbit_rep, irr_index))

    @property
    def num_arrows(self) -> int:
        return sum(map(sum, self.mult))

    def is_symmetric(self) -> bool:
        n = len(self.vertices)
        return all(self.mult[v][w] == self.mult[w][v] for v in range(n) for w in range(n))


def safety_bound(quiver: Quiver, group) -> int:
    """Crude upper bound for every dimension count the pipelines lift from F_p."""
    n = group.order
    return max(2 * quiver.num_arrows * n * n, n + 1, 2)


def default_embedding(quiver: Quiver, action: LinearQuiverAction, bound: int = None) -> PrimeEmbedding:
    level = math.lcm(action.group.exponent, action.level)
    return choose_prime(level, bound if bound is not None else safety_bound(quiver, action.group))


def build_skew_quiver(
    quiver: Quiver,
    action: LinearQuiverAction,
    embedding: PrimeEmbedding = None,
    frame: OrbitFrame = None,
    pair_reps: dict = None,
    rng: random.Random = None,
    validate: bool = True,
) -> SkewQuiver:
    """Compute Q_G. ``rng`` randomizes representatives, transporters and F_ij."""
    G = action.group
    if validate:
        bad = validate_action(quiver, action)
        if bad:
            g, h, arrow, msg = bad[0]
            raise ActionError(f"invalid action: {msg} (g={g}, h={h}, arrow={arrow})")
    if embedding is None:
        embedding = default_embedding(quiver, action)
    p = embedding.p
    if frame is None:
        frame = orbit_frame(G, action.act_vertex, range(quiver.num_vertices), rng=rng)
    if pair_reps is None:
        pair_reps = diagonal_pair_reps(G, frame, rng=rng)

    tables = {i: compute_character_table(frame.stab[i], embedding) for i in frame.reps}
    vertices = []
    for i in frame.reps:
        for k, d in enumerate(tables[i].degrees):
            vertices.append(SkewVertex(i, k, f"{quiver.vertices[i]}_{k}", d))
    pos = {(v.orbit_rep, v.irr_index): n for n, v in enumerate(vertices)}
    n = len(vertices)
    mult = [[0] * n for _ in range(n)]
    provenance = {}

    for i in frame.reps:
        for j in frame.reps:
            for ip, jp in pair_reps[(i, j)]:
                block = arrow_block(quiver, action, embedding, ip, jp)
                if block.dim == 0:
                    continue
                H = block.subgroup
                chi_m = action_character(H, block.matrices, p)
                src = [restrict(conjugate_twist(rho, frame.kappa[ip]), H) for rho in tables[i].irreducibles]
                dst = [restrict(conjugate_twist(sig, frame.kappa[jp]), H) for sig in tables[j].irreducibles]
                for a, rho_h in enumerate(src):
                    for b, sig_h in enumerate(dst):
                        c = inner_product(rho_h, sig_h * chi_m)
                        if c == 0:
                            continue
                        if c > block.dim * H.order:
                            raise InternalBoundExceeded(f"count {c} exceeds dim bound at {(ip, jp)}")
                        v, w = pos[(i, a)], pos[(j, b)]
                        mult[v][w] += c
                        provenance.setdefault((v, w), []).append(((ip, jp), c))
    return SkewQuiver(vertices, mult, provenance, frame, tables, embedding)


def isomorphic_as_labeled(s1: SkewQuiver, s2: SkewQuiver, matching) -> bool:
    """True iff ``s1.mult[v][w] == s2.mult[m(v)][m(w)]`` for the vertex bijection m."""
    n = len(s1.vertices)
    if n != len(s2.vertices) or sorted(matching[v] for v in range(n)) != list(range(n)):
        return False
    return all(s1.mult[v][w] == s2.mult[matching[v]][matching[w]] for v in range(n) for w in range(n))


def twist_matching(ref: SkewQuiver, other: SkewQuiver) -> list:
    """Vertex bijection ref -> other: (i, rho) goes to (i2, rho.c) where i^c = i2."""
    out = []
    for v in ref.vertices:
        i = v.orbit_rep
        i2 = other.frame.rep_of[i]
        c = ref.frame.kappa[i2]  # i^c == i2 since i is a representative of ref
        if ref.frame.act(i, c) != i2:
            raise AssertionError("transporter does not reach the new representative")
        tab2 = other.tables[i2]
        chi = conjugate_twist(ref.tables[i].irreducibles[v.irr_index], c, target=tab2.group)
        out.append(other.index(i2, tab2.index(chi)))
    return out


def check_choices(quiver, action, k: int, seed: int = 0, embedding=None):
    """Rebuild Q_G ``k`` times with random choices; return (ok, details)."""
    ref = build_skew_quiver(quiver, action, embedding)
    rng = random.Random(seed)
    details = []
    for t in range(k):
        other = build_skew_quiver(quiver, action, ref.embedding, rng=rng, validate=False)
        m = twist_matching(ref, other)
        ok = isomorphic_as_labeled(ref, other, m)
        details.append({"trial": t, "reps": list(other.frame.reps), "ok": ok})
    return all(d["ok"] for d in details), details
