"""Brute-force verification: the skew group algebra bimodule MG built explicitly.

Elements of degree <= 1 in (kQ)G are sparse dicts ``{(kind, index, g): coeff}``
with ``kind`` "e" (vertex idempotent) or "a" (arrow). All multiplication is
derived from the product law (x (x) g)(y (x) h) = x y^(g^-1) (x) gh, with the
path convention e_t a e_s = a for an arrow a: s -> t.

Arrow counts are obtained by projecting e_j (MG) e_i with central idempotents
of the stabilizers and dividing the rank by the product of degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .characters import CharacterTable
from .cyclo import PrimeEmbedding
from .modp import inv_mod, matmul_mod, rank_mod, rref_mod
from .quiver import LinearQuiverAction, Quiver

__all__ = [
    "OracleError",
    "NonIntegerCount",
    "DegenerateForm",
    "ExplicitBimodule",
    "IdempotentProjector",
    "build_explicit",
    "central_projector",
    "block_indices",
    "oracle_arrow_count",
    "oracle_multiplicities",
    "extended_form",
    "check_form_compatibility",
    "verify_rG",
    "maximal_isotropic_split",
    "graded_isotropic_split",
]


class OracleError(RuntimeError):
    pass


class NonIntegerCount(OracleError):
    pass


class DegenerateForm(OracleError):
    pass


def skew_product(x: dict, y: dict, quiver: Quiver, action: LinearQuiverAction, p: int, mats) -> dict:
    """Product of two degree <= 1 elements; arrow * arrow is not supported."""
    G = action.group
    out = {}
    for (k1, i1, g), c1 in x.items():
        ginv = G.inv(g)
        for (k2, i2, h), c2 in y.items():
            gh = G.mul(g, h)
            if k2 == "e":
                # y^(g^-1) for an idempotent is another idempotent
                twisted = [("e", action.vperm[ginv][i2], 1)]
            else:
                T = mats[ginv]
                twisted = [("a", b, int(T[b, i2])) for b in np.nonzero(T[:, i2])[0]]
            for k3, i3, c3 in twisted:
                prod = _path_product(k1, i1, k3, i3, quiver)
                if prod is None:
                    continue
                key = (prod[0], prod[1], gh)
                out[key] = (out.get(key, 0) + c1 * c2 * c3) % p
    return {k: v for k, v in out.items() if v}


def _path_product(k1, i1, k2, i2, quiver):
    if k1 == "e" and k2 == "e":
        return ("e", i1) if i1 == i2 else None
    if k1 == "e":
        return ("a", i2) if quiver.arrows[i2].target == i1 else None
    if k2 == "e":
        return ("a", i1) if quiver.arrows[i1].source == i2 else None
    raise OracleError("degree-two products are outside the bimodule MG")


@dataclass
class ExplicitBimodule:
    """MG with basis (arrow a, element g) at index ``a * |G| + g``; matrices act on columns."""

    quiver: Quiver
    action: LinearQuiverAction
    embedding: PrimeEmbedding
    left_group: list = field(repr=False)  # h -> matrix of x -> (1 (x) h) x
    right_group: list = field(repr=False)  # h -> matrix of x -> x (1 (x) h)
    left_idem: list = field(repr=False)  # i -> diagonal of x -> e_i x
    right_idem: list = field(repr=False)  # i -> diagonal of x -> x e_i

    @property
    def dim(self) -> int:
        return self.quiver.num_arrows * self.action.group.order

    def index(self, arrow: int, g: int) -> int:
        return arrow * self.action.group.order + g

    def basis_element(self, n: int) -> dict:
        order = self.action.group.order
        return {("a", n // order, n % order): 1}


def _to_vector(elem, order, dim, p):
    v = np.zeros(dim, dtype=np.int64)
    for (kind, a, g), c in elem.items():
        if kind != "a":
            raise OracleError("product left the arrow bimodule")
        v[a * order + g] = (v[a * order + g] + c) % p
    return v


def build_explicit(quiver: Quiver, action: LinearQuiverAction, embedding: PrimeEmbedding) -> ExplicitBimodule:
    """Materialize left/right multiplication by 1 (x) h and e_i (x) 1 on MG."""
    G = action.group
    p = embedding.p
    mats = action.matrices(embedding)
    order = G.order
    dim = quiver.num_arrows * order
    basis = [{("a", n // order, n % order): 1} for n in range(dim)]

    def mult_matrix(elem, side):
        M = np.zeros((dim, dim), dtype=np.int64)
        for n, b in enumerate(basis):
            prod = skew_product(elem, b, quiver, action, p, mats) if side == "left" else skew_product(b, elem, quiver, action, p, mats)
            M[:, n] = _to_vector(prod, order, dim, p)
        return M

    one = {("e", i, 0): 1 for i in range(quiver.num_vertices)}
    left_group, right_group = [], []
    for h in range(order):
        gh = {(k, i, h): c for (k, i, _), c in one.items()}
        left_group.append(mult_matrix(gh, "left"))
        right_group.append(mult_matrix(gh, "right"))
    left_idem, right_idem = [], []
    for i in range(quiver.num_vertices):
        e = {("e", i, 0): 1}
        left_idem.append(np.diag(mult_matrix(e, "left")).copy())
        right_idem.append(np.diag(mult_matrix(e, "right")).copy())
    bm = ExplicitBimodule(quiver, action, embedding, left_group, right_group, left_idem, right_idem)
    _check_bimodule(bm)
    return bm


def _check_bimodule(bm: ExplicitBimodule):
    G = bm.action.group
    p = bm.embedding.p
    for s in G.generators:
        for h in range(G.order):
            sh = G.mul(s, h)
            if not np.array_equal(matmul_mod(bm.left_group[s], bm.left_group[h], p), bm.left_group[sh]):
                raise OracleError("left multiplication is not a group action")
            if not np.array_equal(matmul_mod(bm.right_group[h], bm.right_group[s], p), bm.right_group[sh]):
                raise OracleError("right multiplication is not a group action")
            if not np.array_equal(matmul_mod(bm.left_group[s], bm.right_group[h], p), matmul_mod(bm.right_group[h], bm.left_group[s], p)):
                raise OracleError("left and right multiplications do not commute")
    total = sum(bm.left_idem) % p
    if not (total == 1).all():
        raise OracleError("sum of vertex idempotents does not act as the identity")


@dataclass
class IdempotentProjector:
    irr_index: int
    side: str
    matrix: np.ndarray = field(repr=False)


def central_projector(bm: ExplicitBimodule, table: CharacterTable, irr_index: int, side: str, rows=None) -> IdempotentProjector:
    """(deg/|H|) sum_h chi(h^-1) h acting on ``side``, restricted to ``rows`` if given."""
    H = table.group
    G = H.parent
    p = bm.embedding.p
    chi = table.irreducibles[irr_index]
    coef = table.degrees[irr_index] * pow(H.order, -1, p) % p
    mats = bm.left_group if side == "left" else bm.right_group
    idx = np.arange(bm.dim) if rows is None else np.asarray(rows)
    P = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for h in H.elements:
        c = coef * chi.at(G.inv(h)) % p
        if c:
            P = (P + c * mats[h][np.ix_(idx, idx)]) % p
    return IdempotentProjector(irr_index, side, P)


def block_indices(bm: ExplicitBimodule, i: int, j: int):
    """Basis positions spanning e_j (MG) e_i."""
    mask = (bm.left_idem[j] == 1) & (bm.right_idem[i] == 1)
    return np.nonzero(mask)[0]


def _block_projectors(bm, tab_i, tab_j, idx):
    right = [central_projector(bm, tab_i, r, "right", idx).matrix for r in range(len(tab_i))]
    left = [central_projector(bm, tab_j, s, "left", idx).matrix for s in range(len(tab_j))]
    return right, left


def oracle_arrow_count(bm: ExplicitBimodule, tables: dict, src, dst) -> int:
    """Arrows (i, rho) -> (j, sigma) as rank(E_sigma e_j MG e_i E_rho) / (deg rho deg sigma)."""
    (i, rho), (j, sigma) = src, dst
    idx = block_indices(bm, i, j)
    if len(idx) == 0:
        return 0
    p = bm.embedding.p
    R = central_projector(bm, tables[i], rho, "right", idx).matrix
    L = central_projector(bm, tables[j], sigma, "left", idx).matrix
    return _count(matmul_mod(L, R, p), p, tables[i].degrees[rho] * tables[j].degrees[sigma])


def _count(P, p, dd):
    r = rank_mod(P, p)
    if r % dd:
        raise NonIntegerCount(f"rank {r} is not divisible by {dd}")
    return r // dd


def oracle_multiplicities(bm: ExplicitBimodule, tables: dict, reps) -> tuple:
    """Full count matrix over vertices ordered by (rep, irreducible index).

    Also returns per-block bookkeeping ``{(i, j): (dim, weighted_sum)}`` where
    ``weighted_sum`` is sum deg(rho) deg(sigma) count, which must equal ``dim``.
    """
    p = bm.embedding.p
    vertices = [(i, k) for i in reps for k in range(len(tables[i]))]
    pos = {v: n for n, v in enumerate(vertices)}
    n = len(vertices)
    mult = [[0] * n for _ in range(n)]
    books = {}
    for i in reps:
        for j in reps:
            idx = block_indices(bm, i, j)
            weighted = 0
            if len(idx):
                right, left = _block_projectors(bm, tables[i], tables[j], idx)
                for a, R in enumerate(right):
                    for b, L in enumerate(left):
                        dd = tables[i].degrees[a] * tables[j].degrees[b]
                        c = _count(matmul_mod(L, R, p), p, dd)
                        mult[pos[(i, a)]][pos[(j, b)]] = c
                        weighted += dd * c
            books[(i, j)] = (len(idx), weighted)
    return mult, books


def extended_form(bm: ExplicitBimodule, gram) -> np.ndarray:
    """<m (x) g, n (x) h> = <m, n^h> when gh = 1, else 0, on the basis of bm."""
    G = bm.action.group
    p = bm.embedding.p
    mats = bm.action.matrices(bm.embedding)
    gram = np.asarray(gram, dtype=np.int64) % p
    na, order = bm.quiver.num_arrows, G.order
    F = np.zeros((bm.dim, bm.dim), dtype=np.int64)
    for h in range(order):
        g = G.inv(h)
        # <m, n^h> for all arrow pairs: gram @ T_h
        block = matmul_mod(gram, mats[h], p)
        rows = np.arange(na) * order + g
        cols = np.arange(na) * order + h
        F[np.ix_(rows, cols)] = block
    return F


def check_form_compatibility(bm: ExplicitBimodule, F) -> bool:
    """<a m b, n> == <m, b n a> for a, b ranging over generators and idempotents."""
    p = bm.embedding.p
    G = bm.action.group
    ops = [(bm.left_group[s], bm.right_group[s]) for s in G.generators]
    ops += [(np.diag(bm.left_idem[i]), np.diag(bm.right_idem[i])) for i in range(bm.quiver.num_vertices)]
    for La, Ra in ops:
        for Lb, Rb in ops:
            lhs = matmul_mod(matmul_mod(Rb.T, La.T, p), F, p)  # x -> a x b, then pair
            rhs = matmul_mod(F, matmul_mod(Lb, Ra, p), p)  # y -> b y a
            if not np.array_equal(lhs, rhs):
                return False
    return True


def verify_rG(bm: ExplicitBimodule, gram, relation) -> bool:
    """Compare r_G (from the extended form's left dual basis) with #G * r.

    Both sides are mapped into the concrete space MG (x)_R M with basis
    triples (a, k, c), via (x (x) g) (x) (y (x) h) -> (x, gh, y^h).
    """
    G = bm.action.group
    p = bm.embedding.p
    quiver = bm.quiver
    order = G.order
    mats = bm.action.matrices(bm.embedding)
    F = extended_form(bm, gram)
    try:
        rG = inv_mod(F, p)
    except ArithmeticError:
        return False
    vertex_of = [a.source for a in quiver.arrows]
    target_of = [a.target for a in quiver.arrows]

    def composable(a, k, c):
        return target_of[c] == bm.action.vperm[k][vertex_of[a]]

    lhs = {}
    rows, cols = np.nonzero(rG)
    for u, w in zip(rows, cols):
        coeff = int(rG[u, w])
        a, g = divmod(int(u), order)
        b, h = divmod(int(w), order)
        k = G.mul(g, h)
        col = mats[h][:, b]
        for c in np.nonzero(col)[0]:
            c = int(c)
            if composable(a, k, c):
                key = (a, k, c)
                lhs[key] = (lhs.get(key, 0) + coeff * int(col[c])) % p
    rhs = {}
    relation = np.asarray(relation, dtype=np.int64) % p
    for a, c in zip(*np.nonzero(relation)):
        a, c = int(a), int(c)
        if composable(a, 0, c):
            rhs[(a, 0, c)] = order * int(relation[a, c]) % p
    lhs = {k: v for k, v in lhs.items() if v}
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


def maximal_isotropic_split(vectors, form, p):
    """Symplectic Gram-Schmidt on the column span of ``vectors``.

    Returns ``(U, V)`` (columns) with <u_k, v_l> = delta_kl and <u, u'> = <v, v'> = 0.
    """
    X = [np.asarray(v, dtype=np.int64) % p for v in np.asarray(vectors).T]
    form = np.asarray(form, dtype=np.int64) % p
    dim = len(X)

    def pair(x, y):
        return int(x @ (form @ y % p) % p) if len(x) else 0

    U, V = [], []
    while X:
        u = X.pop(0)
        if not u.any():
            continue
        partner = next((k for k, y in enumerate(X) if pair(u, y)), None)
        if partner is None:
            raise DegenerateForm("form is degenerate on the given space")
        w = X.pop(partner)
        v = w * pow(pair(u, w), -1, p) % p
        U.append(u)
        V.append(v)
        X = [(x + pair(v, x) * u - pair(u, x) * v) % p for x in X]
    if 2 * len(U) != dim:
        raise DegenerateForm("vectors are dependent or the form is degenerate")
    shape = (np.asarray(vectors).shape[0], 0)
    Um = np.array(U, dtype=np.int64).T if U else np.zeros(shape, dtype=np.int64)
    Vm = np.array(V, dtype=np.int64).T if V else np.zeros(shape, dtype=np.int64)
    return Um, Vm


def _column_basis(P, p):
    if P.size == 0:
        return P
    _, piv = rref_mod(P, p)
    return P[:, piv]


def graded_isotropic_split(bm: ExplicitBimodule, tables: dict, reps, gram) -> dict:
    """Isotropic splitting of e(MG)e compatible with the central-idempotent blocks.

    For vertices v < w the whole (v, w) block is taken isotropic and paired
    with a dual basis in the (w, v) block; diagonal blocks are split by
    symplectic Gram-Schmidt. Returns ``{(v, w): number of isotropic vectors / (deg v deg w)}``
    keyed by vertex positions in (rep, irreducible) order.
    """
    p = bm.embedding.p
    F = extended_form(bm, gram)
    vertices = [(i, k) for i in reps for k in range(len(tables[i]))]
    spaces = {}
    for v, (i, a) in enumerate(vertices):
        for w, (j, b) in enumerate(vertices):
            idx = block_indices(bm, i, j)
            if not len(idx):
                continue
            R = central_projector(bm, tables[i], a, "right", idx).matrix
            L = central_projector(bm, tables[j], b, "left", idx).matrix
            B = _column_basis(matmul_mod(L, R, p), p)
            if B.shape[1]:
                full = np.zeros((bm.dim, B.shape[1]), dtype=np.int64)
                full[idx] = B
                spaces[(v, w)] = full
    out = {}
    for (v, w), B in spaces.items():
        dd = tables[vertices[v][0]].degrees[vertices[v][1]] * tables[vertices[w][0]].degrees[vertices[w][1]]
        if v == w:
            U, V = maximal_isotropic_split(B, F, p)
            out[(v, w)] = U.shape[1] // dd
        elif v < w:
            D = spaces.get((w, v))
            if D is None:
                raise DegenerateForm(f"block ({v},{w}) has no dual block")
            pairing = matmul_mod(matmul_mod(B.T, F, p), D, p)
            if pairing.shape[0] != pairing.shape[1] or rank_mod(pairing, p) != pairing.shape[0]:
                raise DegenerateForm(f"blocks ({v},{w}) and ({w},{v}) are not in perfect duality")
            out[(v, w)] = B.shape[1] // dd
    return out
