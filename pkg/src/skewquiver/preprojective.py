"""Double quivers, the canonical skew form, the preprojective relation and folding.

On the arrow span of a double quiver the form is <m + f, m' + f'> = f'(m) - f(m'),
so <a, a*> = 1 and <a*, a> = -1. The relation r = sum_i x_i (x) x_i^* uses the left
dual basis <x_i^*, x_j> = delta_ij; with ``gram`` the form matrix its coefficient
matrix is ``R = gram^-1`` (R[a, b] is the coefficient of x_a (x) x_b).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cyclo import PrimeEmbedding
from .modp import inv_mod, matmul_mod
from .quiver import ActionError, Arrow, LinearQuiverAction, Quiver, validate_action
from .skew import build_skew_quiver, default_embedding

__all__ = [
    "NotInvariant",
    "AsymmetricFold",
    "OddLoop",
    "ContragredientMismatch",
    "BadPairing",
    "DoubleQuiver",
    "SymplecticData",
    "InvarianceReport",
    "DoubleStructure",
    "double_quiver",
    "from_pairing",
    "symplectic_data",
    "relation_from_basis",
    "extend_action_contragredient",
    "check_relation_invariance",
    "fold_double",
]


class NotInvariant(ValueError):
    def __init__(self, report):
        super().__init__(f"relation not invariant: generator {report.witness}, entry {report.entry}")
        self.report = report


class AsymmetricFold(RuntimeError):
    pass


class OddLoop(RuntimeError):
    pass


class ContragredientMismatch(RuntimeError):
    pass


class BadPairing(ValueError):
    pass


@dataclass(frozen=True)
class DoubleQuiver:
    base: Quiver
    doubled: Quiver
    partner: tuple  # doubled arrow id -> id of its pair
    starred: tuple  # doubled arrow id -> True for the dual member
    base_ids: tuple  # base arrow id -> doubled arrow id


def double_quiver(quiver: Quiver) -> DoubleQuiver:
    """Append a reversed arrow ``label*`` for every arrow, after the originals."""
    n = quiver.num_arrows
    arrows = list(quiver.arrows)
    for a in quiver.arrows:
        arrows.append(Arrow(n + a.id, a.target, a.source, a.label + "*"))
    doubled = Quiver(quiver.vertices, tuple(arrows))
    partner = tuple(list(range(n, 2 * n)) + list(range(n)))
    return DoubleQuiver(quiver, doubled, partner, tuple([False] * n + [True] * n), tuple(range(n)))


def from_pairing(doubled: Quiver, pairs) -> DoubleQuiver:
    """Declare ``doubled`` a double quiver; ``pairs`` lists (arrow, dual) labels."""
    n = doubled.num_arrows
    partner = [None] * n
    starred = [False] * n
    for x, y in pairs:
        a, b = doubled.arrow_index(x), doubled.arrow_index(y)
        if a == b or partner[a] is not None or partner[b] is not None:
            raise BadPairing(f"pairing ({x}, {y}) is not part of a fixed-point-free involution")
        A, B = doubled.arrows[a], doubled.arrows[b]
        if (A.source, A.target) != (B.target, B.source):
            raise BadPairing(f"{x} and {y} do not have opposite orientations")
        partner[a], partner[b] = b, a
        starred[b] = True
    if None in partner:
        missing = [doubled.arrows[k].label for k in range(n) if partner[k] is None]
        raise BadPairing(f"arrows without a partner: {missing}")
    base_ids = tuple(k for k in range(n) if not starred[k])
    base = Quiver(
        doubled.vertices,
        tuple(Arrow(m, doubled.arrows[k].source, doubled.arrows[k].target, doubled.arrows[k].label) for m, k in enumerate(base_ids)),
    )
    return DoubleQuiver(base, doubled, tuple(partner), tuple(starred), base_ids)


@dataclass(frozen=True)
class SymplecticData:
    gram: np.ndarray = field(repr=False)  # integer entries 0, 1, -1
    relation: np.ndarray = field(repr=False)  # R = gram^-1, also integral

    def relation_terms(self, dq: DoubleQuiver) -> dict:
        """Per vertex i, the terms ((a, b), coeff) of e_i r e_i."""
        out = {}
        for a, b in zip(*np.nonzero(self.relation)):
            a, b = int(a), int(b)
            v = dq.doubled.arrows[a].target
            out.setdefault(v, []).append(((dq.doubled.arrows[a].label, dq.doubled.arrows[b].label), int(self.relation[a, b])))
        return out

    def mod(self, p: int):
        return self.gram % p, self.relation % p


def symplectic_data(dq: DoubleQuiver) -> SymplecticData:
    n = dq.doubled.num_arrows
    gram = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        b = dq.partner[a]
        gram[a, b] = -1 if dq.starred[a] else 1
    # gram is a signed permutation matrix, so its inverse is its transpose
    relation = gram.T.copy()
    if not (gram @ relation == np.eye(n, dtype=np.int64)).all():
        raise AssertionError("relation is not the inverse of the form")
    return SymplecticData(gram, relation)


def relation_from_basis(gram, basis, p: int) -> np.ndarray:
    """r computed from the basis given by the columns of ``basis`` and its left dual,
    written back in arrow coordinates (so it can be compared with ``gram^-1``)."""
    P = np.asarray(basis, dtype=np.int64) % p
    G2 = matmul_mod(matmul_mod(P.T, np.asarray(gram) % p, p), P, p)
    C = inv_mod(G2, p)  # left dual: sum_k C[i, k] <y_k, y_j> = delta_ij
    return matmul_mod(matmul_mod(P, C, p), P.T, p)


def extend_action_contragredient(dq: DoubleQuiver, action: LinearQuiverAction) -> LinearQuiverAction:
    """Extend an action on kQ to kQ-bar, acting on duals by the contragredient.

    With T_g the arrow matrix of g, duals transform by the transpose of T_(g^-1),
    which preserves the form exactly and needs no matrix inversion.
    """
    G = action.group
    n = dq.doubled.num_arrows
    images = []
    for g in range(G.order):
        inv_images = action.images[G.inv(g)]
        im = [None] * n
        for m, k in enumerate(dq.base_ids):
            im[k] = {dq.base_ids[b]: c for b, c in action.images[g][m].items()}
            im[dq.partner[k]] = {}
        for m, k in enumerate(dq.base_ids):
            # coefficient of a in b^(g^-1) becomes the coefficient of b* in (a*)^g
            for b, col in enumerate(inv_images):
                if m in col:
                    im[dq.partner[k]][dq.partner[dq.base_ids[b]]] = col[m]
        images.append(tuple(im))
    ext = LinearQuiverAction(dq.doubled, G, action.vperm, images, action.level, action.generator_names)
    bad = validate_action(dq.doubled, ext)
    if bad:
        raise ActionError(f"contragredient extension failed validation: {bad[0][3]}")
    return ext


@dataclass(frozen=True)
class InvarianceReport:
    ok: bool
    witness: int = None  # generator g with T_g^T gram T_g != gram
    witness_label: str = None
    entry: tuple = None  # (arrow label, arrow label) of a violated entry
    direct_ok: bool = None  # r^g == r checked on the relation itself


def check_relation_invariance(dq: DoubleQuiver, action: LinearQuiverAction, embedding: PrimeEmbedding = None) -> InvarianceReport:
    """Whether every generator preserves the form (equivalently r).

    Both the form test and the direct test on r are run; they must agree.
    """
    if embedding is None:
        embedding = default_embedding(dq.doubled, action)
    p = embedding.p
    sd = symplectic_data(dq)
    gram, rel = sd.mod(p)
    mats = action.matrices(embedding)
    G = action.group
    labels = [a.label for a in dq.doubled.arrows]
    for g in G.generators:
        T = mats[g]
        lhs = matmul_mod(matmul_mod(T.T, gram, p), T, p)
        direct = np.array_equal(matmul_mod(matmul_mod(T, rel, p), T.T, p), rel)
        diff = np.argwhere(lhs != gram)
        if (len(diff) == 0) != direct:
            raise AssertionError("form invariance and relation invariance disagree")
        if len(diff):
            a, b = (int(x) for x in diff[0])
            return InvarianceReport(False, g, G.labels[g], (labels[a], labels[b]), direct)
    return InvarianceReport(True, direct_ok=True)


@dataclass
class DoubleStructure:
    """Q' inside the folded double: ``q_prime[v][w]`` arrows v -> w (v <= w)."""

    q_prime: list
    base_mult: list = None  # fold of the undoubled quiver, for contragredient input

    def arrows(self):
        n = len(self.q_prime)
        return [(v, w, self.q_prime[v][w]) for v in range(n) for w in range(n) if self.q_prime[v][w]]


def fold_double(dq: DoubleQuiver, action: LinearQuiverAction, embedding: PrimeEmbedding = None, base_action: LinearQuiverAction = None, **build_kw):
    """Fold the double quiver and split the result as a double.

    ``base_action`` (the action on the undoubled quiver, when ``action`` is its
    contragredient extension) enables the check mult = mult_M + mult_M^T.
    """
    if embedding is None:
        embedding = default_embedding(dq.doubled, action)
    report = check_relation_invariance(dq, action, embedding)
    if not report.ok:
        raise NotInvariant(report)
    S = build_skew_quiver(dq.doubled, action, embedding, **build_kw)
    n = len(S.vertices)
    for v in range(n):
        if S.mult[v][v] % 2:
            raise OddLoop(f"vertex {S.vertices[v].label} has {S.mult[v][v]} loops")
        for w in range(v + 1, n):
            if S.mult[v][w] != S.mult[w][v]:
                raise AsymmetricFold(
                    f"{S.mult[v][w]} arrows {S.vertices[v].label}->{S.vertices[w].label} but {S.mult[w][v]} back"
                )
    q_prime = [[S.mult[v][w] if v < w else (S.mult[v][v] // 2 if v == w else 0) for w in range(n)] for v in range(n)]
    base_mult = None
    if base_action is not None:
        base = build_skew_quiver(dq.base, base_action, embedding, frame=S.frame, validate=True)
        base_mult = base.mult
        for v in range(n):
            for w in range(n):
                if S.mult[v][w] != base_mult[v][w] + base_mult[w][v]:
                    raise ContragredientMismatch(f"entry ({v}, {w}): {S.mult[v][w]} != {base_mult[v][w]} + {base_mult[w][v]}")
    return S, DoubleStructure(q_prime, base_mult)
