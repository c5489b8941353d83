"""Finite subgroups of SL2 acting on the one-loop double quiver, and McKay graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import CharacterTable, ClassFunction, action_character, compute_character_table, inner_product
from .cyclo import CycloNumber, PrimeEmbedding
from .preprojective import check_relation_invariance, double_quiver, fold_double
from .quiver import LinearQuiverAction, Quiver
from .skew import default_embedding

__all__ = [
    "DeterminantNotOne",
    "UnrecognizedShape",
    "SL2Subgroup",
    "McKayGraph",
    "sl2_subgroup",
    "sl2_loop_instance",
    "mckay_graph",
    "classify_affine",
    "null_root_ok",
    "crosscheck_fold",
    "sl2_zoo",
]


class DeterminantNotOne(ValueError):
    pass


class UnrecognizedShape(RuntimeError):
    pass


def _det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _loop_quiver():
    return Quiver.from_edges(["0"], [("alpha", 0, 0)])


@dataclass
class SL2Subgroup:
    name: str
    generators: list  # 2x2 matrices of CycloNumber acting on span(alpha, alpha*), column = image
    level: int
    quiver: Quiver = field(repr=False)  # the double: loops alpha, alpha*
    action: LinearQuiverAction = field(repr=False)

    @property
    def group(self):
        return self.action.group

    def natural_character(self, embedding: PrimeEmbedding) -> ClassFunction:
        return action_character(self.group.whole, self.action.matrices(embedding), embedding.p)


def sl2_subgroup(name: str, generators, level: int) -> SL2Subgroup:
    """Close the given 2x2 matrices into a group acting on the loops alpha, alpha*."""
    gens = []
    for m in generators:
        m = [[x if isinstance(x, CycloNumber) else CycloNumber.rational(x, level) for x in row] for row in m]
        if _det(m) != 1:
            raise DeterminantNotOne(f"generator {m} has determinant {_det(m)}")
        gens.append(m)
    dq = double_quiver(_loop_quiver())
    images = [tuple({b: m[b][a] for b in range(2) if m[b][a]} for a in range(2)) for m in gens]
    names = [f"g{k}" for k in range(len(gens))]
    action = LinearQuiverAction.from_closure(dq.doubled, [(0,)] * len(gens), images, level, names=names)
    return SL2Subgroup(name, gens, level, dq.doubled, action)


def sl2_loop_instance(S: SL2Subgroup):
    return S.quiver, S.action


@dataclass
class McKayGraph:
    labels: list
    degrees: list
    mult: list
    affine_type: str
    table: CharacterTable = field(repr=False)


def mckay_graph(S: SL2Subgroup, embedding: PrimeEmbedding = None) -> McKayGraph:
    if embedding is None:
        embedding = default_embedding(S.quiver, S.action)
    table = compute_character_table(S.group.whole, embedding)
    nat = S.natural_character(embedding)
    irr = table.irreducibles
    mult = [[inner_product(v, nat * w) for w in irr] for v in irr]
    labels = [f"0_{k}" for k in range(len(irr))]
    return McKayGraph(labels, list(table.degrees), mult, classify_affine(mult), table)


def null_root_ok(mult, degrees) -> bool:
    """(2 I - A) d == 0 for the degree vector d."""
    A = np.array(mult, dtype=np.int64)
    d = np.array(degrees, dtype=np.int64)
    return bool((2 * d - A @ d == 0).all())


def _arm_lengths(adj, center):
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if len(adj[cur]) > 2 or not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def classify_affine(mult) -> str:
    """Affine Dynkin type of a symmetric multiplicity matrix, or UnrecognizedShape."""
    n = len(mult)
    A = [list(r) for r in mult]
    if any(A[v][w] != A[w][v] for v in range(n) for w in range(n)):
        raise UnrecognizedShape("multiplicity matrix is not symmetric")
    if n == 1:
        if A[0][0] == 2:
            return "A~0 (double loop)"
        raise UnrecognizedShape(f"single vertex with {A[0][0]} loops")
    if any(A[v][v] for v in range(n)):
        raise UnrecognizedShape("loops on a graph with more than one vertex")
    if n == 2:
        if A[0][1] == 2:
            return "A~1"
        raise UnrecognizedShape(f"two vertices joined by {A[0][1]} edges")
    if any(A[v][w] > 1 for v in range(n) for w in range(n)):
        raise UnrecognizedShape("multiple edges")
    adj = [[w for w in range(n) if A[v][w]] for v in range(n)]
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise UnrecognizedShape("graph is disconnected")
    deg = sorted(len(a) for a in adj)
    edges = sum(map(len, adj)) // 2
    if deg == [2] * n:
        return f"A~{n - 1}"
    if edges != n - 1:
        raise UnrecognizedShape("not a cycle and not a tree")
    if deg == [1, 1, 1, 1, 4]:
        return "D~4"
    if n >= 6 and deg == [1] * 4 + [2] * (n - 6) + [3, 3]:
        if all(_arm_lengths(adj, v)[:2] == [1, 1] for v in range(n) if len(adj[v]) == 3):
            return f"D~{n - 1}"
    if deg.count(3) == 1 and deg.count(1) == 3 and max(deg) == 3:
        center = next(v for v in range(n) if len(adj[v]) == 3)
        arms = _arm_lengths(adj, center)
        kind = {(2, 2, 2): "E~6", (1, 3, 3): "E~7", (1, 2, 5): "E~8"}.get(tuple(arms))
        if kind:
            return kind
    raise UnrecognizedShape(f"degree sequence {deg} is not affine Dynkin")


def crosscheck_fold(S: SL2Subgroup, embedding: PrimeEmbedding = None) -> bool:
    """Fold of the loop double quiver equals the McKay graph, which is affine with null root."""
    if embedding is None:
        embedding = default_embedding(S.quiver, S.action)
    dq = double_quiver(_loop_quiver())
    if not check_relation_invariance(dq, S.action, embedding).ok:
        return False
    folded, _ = fold_double(dq, S.action, embedding)
    mg = mckay_graph(S, embedding)
    return folded.mult == mg.mult and null_root_ok(mg.mult, mg.degrees)


def _diag(level, k):
    return [[CycloNumber.zeta(level, k), 0], [0, CycloNumber.zeta(level, -k)]]


def cyclic_sl2(m: int) -> SL2Subgroup:
    return sl2_subgroup(f"cyclic{m}", [_diag(m, 1)], m)


def binary_dihedral_sl2(n: int) -> SL2Subgroup:
    """Order 4n: diag(z, z^-1) with z of order 2n, and the quarter turn."""
    level = 2 * n
    b = [[0, -1], [1, 0]]
    return sl2_subgroup(f"binary_dihedral{4 * n}", [_diag(level, -1), b], level)


def binary_tetrahedral_sl2() -> SL2Subgroup:
    i = CycloNumber.zeta(4, 1)
    half = CycloNumber.rational(Fraction(1, 2), 4)
    qi = [[i, 0], [0, -i]]
    qj = [[0, 1], [-1, 0]]
    # (-1 + i + j + k) / 2 with k = ij
    w = [[(i - 1) * half, (i + 1) * half], [(i - 1) * half, (-i - 1) * half]]
    return sl2_subgroup("binary_tetrahedral24", [qi, qj, w], 4)


def sl2_zoo() -> dict:
    zoo = {}
    for m in range(1, 10):
        zoo[f"cyclic{m}"] = cyclic_sl2(m)
    for n in (2, 3, 4):
        S = binary_dihedral_sl2(n)
        zoo[S.name] = S
    zoo["binary_tetrahedral24"] = binary_tetrahedral_sl2()
    return zoo
