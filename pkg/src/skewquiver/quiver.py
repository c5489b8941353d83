"""Quivers and linear group actions on their path algebras.

An action is stored per group element as a vertex permutation ``vperm[g][i] = i^g``
and arrow images ``images[g][a] = {b: coeff}`` meaning ``a^g = sum coeff * b``.
Right-action law: ``x^(gh) = (x^g)^h``; as matrices (column ``a`` holds ``a^g``)
this reads ``T[gh] = T[h] @ T[g]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclo import CycloNumber, PrimeEmbedding, embed
from .groups import FiniteGroup, Subgroup, group_from_closure, subgroup_intersection

__all__ = [
    "Arrow",
    "Quiver",
    "LinearQuiverAction",
    "ArrowBlock",
    "ActionError",
    "BlockNotStable",
    "compose_images",
    "identity_images",
    "validate_action",
    "arrow_block",
]


class ActionError(ValueError):
    pass


class BlockNotStable(RuntimeError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: int
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple  # vertex labels; vertex i is index i
    arrows: tuple

    def __post_init__(self):
        n = len(self.vertices)
        ids = [a.id for a in self.arrows]
        if ids != list(range(len(ids))):
            raise ValueError("arrow ids must be 0..len-1 in order")
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise ValueError(f"arrow {a.label} has an endpoint out of range")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("arrow labels must be unique")

    @classmethod
    def from_edges(cls, vertices, edges):
        """``edges`` is a list of ``(label, source, target)``."""
        if isinstance(vertices, int):
            vertices = [str(k) for k in range(vertices)]
        return cls(tuple(str(v) for v in vertices), tuple(Arrow(k, s, t, str(lab)) for k, (lab, s, t) in enumerate(edges)))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def arrows_between(self, i: int, j: int) -> list[int]:
        return [a.id for a in self.arrows if a.source == i and a.target == j]

    def arrow_index(self, label: str) -> int:
        for a in self.arrows:
            if a.label == label:
                return a.id
        raise KeyError(label)

    def opposite(self) -> Quiver:
        return Quiver(self.vertices, tuple(Arrow(a.id, a.target, a.source, a.label) for a in self.arrows))

    def adjacency(self):
        n = self.num_vertices
        m = [[0] * n for _ in range(n)]
        for a in self.arrows:
            m[a.source][a.target] += 1
        return m


def _clean(col):
    return {b: c for b, c in col.items() if c}


def compose_images(first, second):
    """Images of ``x^(gh)`` given images for g (``first``) and h (``second``)."""
    out = []
    for col in first:
        acc = {}
        for b, c in col.items():
            for d, e in second[b].items():
                acc[d] = acc[d] + c * e if d in acc else c * e
        out.append(_clean(acc))
    return tuple(out)


def identity_images(n, level=1):
    one = CycloNumber.rational(1, level)
    return tuple({a: one} for a in range(n))


def _images_key(images):
    return tuple(tuple(sorted((b, c.coeffs) for b, c in col.items())) for col in images)


def _lift_images(images, level):
    return tuple({b: c.lift(level) if isinstance(c, CycloNumber) else CycloNumber.rational(c, level) for b, c in col.items()} for col in images)


class LinearQuiverAction:
    """A right action of ``group`` on the path algebra of ``quiver``.

    ``vperm`` and ``images`` are indexed by group element. Treat as immutable.
    """

    def __init__(self, quiver: Quiver, group: FiniteGroup, vperm, images, level: int, generator_names=None):
        self.quiver = quiver
        self.group = group
        self.level = level
        self.vperm = tuple(tuple(v) for v in vperm)
        self.images = tuple(_lift_images([_clean(col) for col in im], level) for im in images)
        self.generator_names = generator_names
        self._matrices = {}

    def __repr__(self):
        return f"<LinearQuiverAction of group order {self.group.order} on {self.quiver.num_arrows} arrows>"

    def act_vertex(self, i: int, g: int) -> int:
        return self.vperm[g][i]

    @classmethod
    def from_generators(cls, quiver, group, gen_elements, gen_vperms, gen_images, level, generator_names=None):
        """Extend generator data along words; the generators must generate ``group``.

        Whether the extension is a genuine action is left to ``validate_action``.
        """
        n = quiver.num_arrows
        vperm = [None] * group.order
        images = [None] * group.order
        vperm[0] = tuple(range(quiver.num_vertices))
        images[0] = identity_images(n, level)
        frontier = [0]
        gen_images = [_lift_images(im, level) for im in gen_images]
        while frontier:
            nxt = []
            for g in frontier:
                for s, vp, im in zip(gen_elements, gen_vperms, gen_images):
                    h = group.mul(g, s)
                    if vperm[h] is None:
                        vperm[h] = tuple(vp[vperm[g][i]] for i in range(quiver.num_vertices))
                        images[h] = compose_images(images[g], im)
                        nxt.append(h)
            frontier = nxt
        if any(v is None for v in vperm):
            raise ActionError("action generators do not generate the group")
        return cls(quiver, group, vperm, images, level, generator_names)

    @classmethod
    def from_closure(cls, quiver, gen_vperms, gen_images, level, names=None, cap=10**5):
        """The group is the one generated by the given (vertex perm, arrow images) pairs."""
        gen_images = [_lift_images(im, level) for im in gen_images]
        gens = [(tuple(vp), _images_key(im)) for vp, im in zip(gen_vperms, gen_images)]
        store = {_images_key(im): im for im in gen_images}
        nv = quiver.num_vertices

        def mul(x, y):
            im = compose_images(store[x[1]], store[y[1]])
            key = _images_key(im)
            store.setdefault(key, im)
            return (tuple(y[0][x[0][i]] for i in range(nv)), key)

        ident = identity_images(quiver.num_arrows, level)
        store[_images_key(ident)] = ident
        start = (tuple(range(nv)), _images_key(ident))
        group, elements = group_from_closure(gens, mul, start, names=names, cap=cap)
        return cls(quiver, group, [e[0] for e in elements], [store[e[1]] for e in elements], level, names)

    def matrices(self, emb: PrimeEmbedding):
        """Per-element F_p matrices, ``T[g][b, a]`` = coefficient of b in a^g."""
        if emb not in self._matrices:
            n = self.quiver.num_arrows
            mats = []
            for im in self.images:
                T = np.zeros((n, n), dtype=np.int64)
                for a, col in enumerate(im):
                    for b, c in col.items():
                        T[b, a] = embed(c, emb)
                mats.append(T)
            self._matrices[emb] = mats
        return self._matrices[emb]

    def stabilizer(self, i: int) -> Subgroup:
        return Subgroup(self.group, tuple(g for g in range(self.group.order) if self.vperm[g][i] == i))

    def restricted_to(self, quiver: Quiver) -> LinearQuiverAction:
        return LinearQuiverAction(quiver, self.group, self.vperm, self.images, self.level, self.generator_names)


def validate_action(quiver: Quiver, action: LinearQuiverAction, exhaustive_limit: int = 48) -> list:
    """Collect violations as ``(g, h, arrow, message)``; empty means valid."""
    G = action.group
    nv, na = quiver.num_vertices, quiver.num_arrows
    out = []
    if len(action.vperm) != G.order or len(action.images) != G.order:
        return [(None, None, None, "action data does not cover every group element")]
    for g in range(G.order):
        if sorted(action.vperm[g]) != list(range(nv)):
            out.append((g, None, None, "vertex map is not a permutation"))
        if len(action.images[g]) != na or any(b >= na or b < 0 for col in action.images[g] for b in col):
            out.append((g, None, None, "arrow images have the wrong shape"))
    if out:
        return out
    if action.vperm[0] != tuple(range(nv)):
        out.append((0, None, None, "identity moves a vertex"))
    if _images_key(action.images[0]) != _images_key(identity_images(na, action.level)):
        out.append((0, None, None, "identity moves an arrow"))
    if G.order <= exhaustive_limit:
        pairs = [(g, h) for g in range(G.order) for h in range(G.order)]
    else:
        import random

        rng = random.Random(0)
        pairs = [(g, s) for g in range(G.order) for s in G.generators]
        pairs += [(rng.randrange(G.order), rng.randrange(G.order)) for _ in range(4 * G.order)]
    for g, h in pairs:
        gh = G.mul(g, h)
        vp = tuple(action.vperm[h][action.vperm[g][i]] for i in range(nv))
        if vp != action.vperm[gh]:
            out.append((g, h, None, "vertex permutations violate (x^g)^h = x^(gh)"))
        comp = compose_images(action.images[g], action.images[h])
        for a in range(na):
            if _images_key([comp[a]]) != _images_key([action.images[gh][a]]):
                out.append((g, h, quiver.arrows[a].label, "arrow images violate (x^g)^h = x^(gh)"))
                break
    for g in range(G.order):
        vp = action.vperm[g]
        for a, arr in enumerate(quiver.arrows):
            for b in action.images[g][a]:
                tb = quiver.arrows[b]
                if (tb.source, tb.target) != (vp[arr.source], vp[arr.target]):
                    out.append((g, None, arr.label, f"image of {arr.label} leaves the block {vp[arr.source]}->{vp[arr.target]}"))
                    break
        ginv = G.inv(g)
        comp = compose_images(action.images[g], action.images[ginv])
        if _images_key(comp) != _images_key(identity_images(na, action.level)):
            out.append((g, ginv, None, "arrow matrix is not invertible with inverse given by g^-1"))
    return out


@dataclass(frozen=True)
class ArrowBlock:
    source: int
    target: int
    basis: tuple  # arrow ids from source to target
    subgroup: Subgroup
    matrices: dict = field(repr=False)  # h -> matrix on the block

    @property
    def dim(self) -> int:
        return len(self.basis)


def arrow_block(quiver: Quiver, action: LinearQuiverAction, emb: PrimeEmbedding, i: int, j: int) -> ArrowBlock:
    """The span of arrows i -> j as a right module over G_i ∩ G_j."""
    H = subgroup_intersection(action.stabilizer(i), action.stabilizer(j))
    basis = tuple(quiver.arrows_between(i, j))
    mats = action.matrices(emb)
    idx = np.array(basis, dtype=np.int64)
    blocks = {}
    for h in H.elements:
        T = mats[h]
        if len(basis):
            outside = np.delete(T[:, idx], idx, axis=0)
            if outside.any():
                raise BlockNotStable(f"element {h} moves the block {i}->{j}")
        blocks[h] = T[np.ix_(idx, idx)] if len(basis) else np.zeros((0, 0), dtype=np.int64)
    return ArrowBlock(i, j, basis, H, blocks)


def rational_images(rows):
    """Helper: images from a dense integer/rational matrix (column a = image of a)."""
    n = len(rows)
    return tuple({b: CycloNumber.rational(Fraction(rows[b][a])) for b in range(n) if rows[b][a]} for a in range(n))
