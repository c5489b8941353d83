"""Characters of finite groups and their subgroups, valued in a split prime field.

Irreducible characters come from the Burnside-Dixon method: the normalized
central characters are the common eigenvectors of the class-multiplication
matrices, which split completely over F_p when p = 1 mod the exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import PrimeEmbedding
from .groups import ConjugacyClasses, Subgroup
from .modp import charpoly_mod, matmul_mod, nullspace_mod, poly_roots_mod, solve_mod

__all__ = [
    "SplitFailure",
    "NotASubgroup",
    "ConjugationMismatch",
    "NotARepresentation",
    "ClassFunction",
    "CharacterTable",
    "compute_character_table",
    "inner_product",
    "pointwise_product",
    "restrict",
    "conjugate_twist",
    "action_character",
    "decompose",
    "trivial_character",
]


class SplitFailure(RuntimeError):
    pass


class NotASubgroup(ValueError):
    pass


class ConjugationMismatch(ValueError):
    pass


class NotARepresentation(ValueError):
    pass


@dataclass(frozen=True)
class ClassFunction:
    group: Subgroup
    values: tuple
    p: int

    def at(self, g: int) -> int:
        return self.values[self.group.classes.class_of[g]]

    @property
    def degree(self) -> int:
        return self.at(0)

    def __mul__(self, other):
        return pointwise_product(self, other)

    def __add__(self, other):
        _same_group(self, other)
        return ClassFunction(self.group, tuple((a + b) % self.p for a, b in zip(self.values, other.values)), self.p)

    def scale(self, c: int) -> ClassFunction:
        return ClassFunction(self.group, tuple(c * a % self.p for a in self.values), self.p)


def _same_group(chi, psi):
    if chi.group != psi.group or chi.p != psi.p:
        raise ValueError("class functions live on different groups or fields")


def trivial_character(H: Subgroup, p: int) -> ClassFunction:
    return ClassFunction(H, (1,) * len(H.classes), p)


@dataclass(frozen=True)
class CharacterTable:
    group: Subgroup
    classes: ConjugacyClasses
    irreducibles: tuple
    degrees: tuple
    embedding: PrimeEmbedding

    def __len__(self):
        return len(self.irreducibles)

    def index(self, chi: ClassFunction) -> int:
        for k, psi in enumerate(self.irreducibles):
            if psi.values == chi.values and psi.group == chi.group:
                return k
        raise ValueError("not an irreducible character of this table")


def _inverse_classes(H: Subgroup):
    cl = H.classes
    G = H.parent
    return tuple(cl.class_of[G.inv(r)] for r in cl.reps)


def inner_product(chi: ClassFunction, psi: ClassFunction) -> int:
    """Multiplicity pairing |H|^-1 sum_g chi(g) psi(g^-1), lifted to [0, p)."""
    _same_group(chi, psi)
    H, p = chi.group, chi.p
    inv = _inverse_classes(H)
    sizes = H.classes.sizes
    total = 0
    for c, size in enumerate(sizes):
        total += size * chi.values[c] * psi.values[inv[c]]
    return total % p * pow(H.order, -1, p) % p


def pointwise_product(chi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    _same_group(chi, psi)
    return ClassFunction(chi.group, tuple(a * b % chi.p for a, b in zip(chi.values, psi.values)), chi.p)


def restrict(chi: ClassFunction, K: Subgroup) -> ClassFunction:
    if K.parent is not chi.group.parent or not all(k in chi.group for k in K.elements):
        raise NotASubgroup("restriction target is not contained in the character's group")
    return ClassFunction(K, tuple(chi.at(r) for r in K.classes.reps), chi.p)


def conjugate_twist(chi: ClassFunction, kappa: int, target: Subgroup = None) -> ClassFunction:
    """Twist a character of H to one of kappa^-1 H kappa: g -> chi(kappa g kappa^-1)."""
    H = chi.group
    G = H.parent
    image = H.conjugate(kappa)
    if target is not None and target != image:
        raise ConjugationMismatch("target subgroup is not kappa^-1 H kappa")
    kinv = G.inv(kappa)
    return ClassFunction(image, tuple(chi.at(G.conj(r, kinv)) for r in image.classes.reps), chi.p)


def action_character(H: Subgroup, matrices, p: int) -> ClassFunction:
    """Character of a right module: ``matrices[h]`` is the matrix of v -> v^h.

    Right modules compose as ``matrices[g*h] == matrices[h] @ matrices[g]``;
    this is checked on every product with a generator of H.
    """
    G = H.parent
    gens = _subgroup_generators(H)
    for h in H.elements:
        for s in gens:
            lhs = np.asarray(matrices[G.mul(h, s)])
            if lhs.size == 0:
                continue
            rhs = matmul_mod(matrices[s], matrices[h], p)
            if not np.array_equal(lhs % p, rhs):
                raise NotARepresentation(f"matrices fail the right-action law at ({h}, {s})")
    vals = []
    for r in H.classes.reps:
        m = np.asarray(matrices[r])
        vals.append(int(np.trace(m)) % p if m.size else 0)
    return ClassFunction(H, tuple(vals), p)


@lru_cache(maxsize=None)
def _subgroup_generators(H: Subgroup):
    G = H.parent
    gens, span = [], {0}
    for g in H.elements:
        if g not in span:
            gens.append(g)
            frontier = list(span)
            while frontier:
                nxt = []
                for x in frontier:
                    for s in gens:
                        y = G.mul(x, s)
                        if y not in span:
                            span.add(y)
                            nxt.append(y)
                frontier = nxt
    return tuple(gens)


def decompose(chi: ClassFunction, table: CharacterTable) -> list[int]:
    return [inner_product(chi, psi) for psi in table.irreducibles]


def _class_matrices(H: Subgroup):
    """``out[r][s, t]`` = #{x in K_r : x^-1 z_t in K_s} (class-algebra constants)."""
    cl = H.classes
    G = H.parent
    k = len(cl)
    out = np.zeros((k, k, k), dtype=np.int64)
    for r, members in enumerate(cl.members):
        for t, z in enumerate(cl.reps):
            for x in members:
                out[r, cl.class_of[G.mul(G.inv(x), z)], t] += 1
    return out


def _split_spaces(mats, p):
    k = mats.shape[1]
    spaces = [np.eye(k, dtype=np.int64)]
    for r in range(mats.shape[0]):
        if all(s.shape[1] == 1 for s in spaces):
            break
        nxt = []
        for S in spaces:
            if S.shape[1] == 1:
                nxt.append(S)
                continue
            B = solve_mod(S, matmul_mod(mats[r] % p, S, p), p)
            roots = sorted(set(poly_roots_mod(charpoly_mod(B, p), p)))
            pieces = []
            for lam in roots:
                E = nullspace_mod((B - lam * np.eye(B.shape[0], dtype=np.int64)) % p, p)
                pieces.append(matmul_mod(S, E, p))
            if sum(x.shape[1] for x in pieces) != S.shape[1]:
                raise SplitFailure("class matrix not diagonalizable over F_p")
            nxt.extend(pieces)
        spaces = nxt
    if any(s.shape[1] != 1 for s in spaces):
        raise SplitFailure("common eigenspaces did not split into lines")
    return [s[:, 0] for s in spaces]


def _sort_key(values, emb):
    key = []
    for v in values:
        lg = emb.log(v)
        key.append((0, lg) if lg is not None else (1, v))
    return tuple(key)


@lru_cache(maxsize=4096)
def compute_character_table(H: Subgroup, embedding: PrimeEmbedding) -> CharacterTable:
    p = embedding.p
    if embedding.level % H.exponent:
        raise ValueError(f"embedding level {embedding.level} is not a multiple of exponent {H.exponent}")
    if H.order % p == 0:
        raise ValueError("p divides the group order")
    cl = H.classes
    k = len(cl)
    inv = _inverse_classes(H)
    vecs = _split_spaces(_class_matrices(H), p)
    chars = []
    for v in vecs:
        v = [int(x) for x in v]
        if v[0] == 0:
            raise SplitFailure("eigenvector vanishes on the identity class")
        c0 = pow(v[0], -1, p)
        omega = [x * c0 % p for x in v]
        s = sum(omega[c] * omega[inv[c]] * pow(cl.sizes[c], -1, p) for c in range(k)) % p
        d2 = H.order * pow(s, -1, p) % p
        d = math.isqrt(d2)
        if d * d != d2 or d == 0:
            raise SplitFailure(f"degree square {d2} is not a perfect square below p")
        chars.append(tuple(d * omega[c] * pow(cl.sizes[c], -1, p) % p for c in range(k)))
    chars.sort(key=lambda vals: (vals[0], _sort_key(vals, embedding)))
    irr = tuple(ClassFunction(H, vals, p) for vals in chars)
    degrees = tuple(vals[0] for vals in chars)
    table = CharacterTable(H, cl, irr, degrees, embedding)
    _check_table(table)
    return table


def _check_table(table: CharacterTable):
    H = table.group
    if sum(d * d for d in table.degrees) != H.order:
        raise SplitFailure("sum of squared degrees differs from the group order")
    if any(v != 1 for v in table.irreducibles[0].values):
        raise SplitFailure("first character is not the trivial one")
    for a, chi in enumerate(table.irreducibles):
        for b, psi in enumerate(table.irreducibles):
            if inner_product(chi, psi) != (a == b):
                raise SplitFailure(f"rows {a} and {b} are not orthonormal")
