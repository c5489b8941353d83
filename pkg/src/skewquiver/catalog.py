"""Hand-written instances used by the self-test, the bundled files and the tests."""

from __future__ import annotations

from .cyclo import CycloNumber
from .quiver import LinearQuiverAction, Quiver

__all__ = ["dicyclic12_star", "dicyclic12_names", "DICYCLIC12_EDGES", "glued_chains", "perturb_generator"]

ARROW_ORDER = ["alpha", "alpha*", "beta", "beta*", "gamma", "gamma*", "delta", "delta*"]


def _images(quiver, table, level):
    out = []
    for a in quiver.arrows:
        col = {}
        for label, coeff in table[a.label]:
            col[quiver.arrow_index(label)] = coeff if isinstance(coeff, CycloNumber) else CycloNumber.rational(coeff, level)
        out.append(col)
    return tuple(out)


def dicyclic12_star():
    """Binary dihedral group of order 12 acting on the double of a 3-star with a loop pair.

    Vertex 0 carries loops alpha, alpha*; vertices 1, 2, 3 are joined to 0 by
    beta, gamma, delta (pointing into 0) and their duals. The generator a
    scales alpha by z^-1 (z a primitive 6th root of unity) and rotates the
    legs; b swaps alpha with alpha* up to sign and reflects the legs.
    """
    quiver = Quiver.from_edges(
        ["0", "1", "2", "3"],
        [
            ("alpha", 0, 0),
            ("alpha*", 0, 0),
            ("beta", 1, 0),
            ("beta*", 0, 1),
            ("gamma", 2, 0),
            ("gamma*", 0, 2),
            ("delta", 3, 0),
            ("delta*", 0, 3),
        ],
    )
    z = lambda k: CycloNumber.zeta(6, k)
    a = {
        "alpha": [("alpha", z(-1))],
        "alpha*": [("alpha*", z(1))],
        "beta": [("gamma", 1)],
        "beta*": [("gamma*", 1)],
        "gamma": [("delta", 1)],
        "gamma*": [("delta*", 1)],
        "delta": [("beta", 1)],
        "delta*": [("beta*", 1)],
    }
    b = {
        "alpha": [("alpha*", 1)],
        "alpha*": [("alpha", -1)],
        "beta": [("beta", -1)],
        "beta*": [("beta*", -1)],
        "gamma": [("delta", -1)],
        "gamma*": [("delta*", -1)],
        "delta": [("gamma", -1)],
        "delta*": [("gamma*", -1)],
    }
    vperms = [(0, 2, 3, 1), (0, 1, 3, 2)]
    images = [_images(quiver, a, 6), _images(quiver, b, 6)]
    action = LinearQuiverAction.from_closure(quiver, vperms, images, 6, names=["a", "b"])
    pairing = [("alpha", "alpha*"), ("beta", "beta*"), ("gamma", "gamma*"), ("delta", "delta*")]
    return quiver, action, pairing


def glued_chains(n: int):
    """Two oriented A_n chains sharing their last vertex, swapped by Z/2.

    Vertices 0..n-2 are the first chain, n-1..2n-3 the primed copy, and
    2n-2 is the shared sink.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n - 1
    sink = 2 * m
    labels = [str(k + 1) for k in range(m)] + [f"{k + 1}'" for k in range(m)] + [str(n)]
    edges = []
    for k in range(m):
        tgt = k + 1 if k + 1 < m else sink
        edges.append((f"a{k + 1}", k, tgt))
    for k in range(m):
        tgt = m + k + 1 if k + 1 < m else sink
        edges.append((f"a{k + 1}'", m + k, tgt))
    quiver = Quiver.from_edges(labels, edges)
    vperm = tuple([m + k for k in range(m)] + [k for k in range(m)] + [sink])
    one = CycloNumber.rational(1)
    swap = tuple({(a + m) % (2 * m): one} for a in range(2 * m))
    action = LinearQuiverAction.from_closure(quiver, [vperm], [swap], 1, names=["s"])
    return quiver, action


def perturb_generator(quiver, action, gen_name, arrow_label, new_image):
    """Re-extend ``action`` from its generators with one arrow image replaced."""
    G = action.group
    names = list(action.generator_names)
    gens = list(G.generators)
    idx = quiver.arrow_index(arrow_label)
    vperms, images = [], []
    for name, g in zip(names, gens):
        im = [dict(col) for col in action.images[g]]
        if name == gen_name:
            im[idx] = {quiver.arrow_index(lab): c if isinstance(c, CycloNumber) else CycloNumber.rational(c, action.level) for lab, c in new_image}
        vperms.append(action.vperm[g])
        images.append(tuple(im))
    return LinearQuiverAction.from_generators(quiver, G, gens, vperms, images, action.level, names)


# undirected edges of the folded quiver for dicyclic12_star; each is one arrow each way
DICYCLIC12_EDGES = [
    ("1_-1", "0_1"),
    ("1_-1", "0_sigma"),
    ("1_-i", "0_i"),
    ("1_-i", "0_rho"),
    ("0_1", "0_rho"),
    ("0_i", "0_sigma"),
    ("0_rho", "0_-1"),
    ("0_rho", "0_sigma"),
    ("0_rho", "1_i"),
    ("0_sigma", "0_-i"),
    ("0_sigma", "1_1"),
    ("0_-1", "1_1"),
    ("0_-i", "1_i"),
]


def dicyclic12_names(S) -> list:
    """Name each vertex of the folded dicyclic12_star quiver by its character.

    Degree-one characters of the whole group are lambda_x (a -> x^2, b -> x)
    and are named ``0_x``; the two of degree 2 are ``0_rho`` (a -> 1) and
    ``0_sigma`` (a -> -1). Characters of the stabilizer <b> of vertex 1 are
    theta_x (b -> x), named ``1_x``. Here i is the image of zeta_4.
    """
    G = S.frame.group
    emb = S.embedding
    p = emb.p
    a, b = G.labels.index("a"), G.labels.index("b")
    i = emb.root(4, 1)
    scalars = {1: "1", p - 1: "-1", i: "i", p - i: "-i"}
    names = []
    for v in S.vertices:
        chi = S.tables[v.orbit_rep].irreducibles[v.irr_index]
        x = scalars.get(chi.at(b)) if chi.degree == 1 else None
        if v.orbit_rep == 0 and chi.degree == 2:
            names.append("0_rho" if chi.at(a) == 1 else "0_sigma")
        elif v.orbit_rep == 0:
            names.append(f"0_{x}")
        else:
            names.append(f"1_{x}")
    return names
