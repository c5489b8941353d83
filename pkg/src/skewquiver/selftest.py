"""The worked examples, checked end to end."""

from __future__ import annotations

from .catalog import DICYCLIC12_EDGES, dicyclic12_names, dicyclic12_star, glued_chains
from .mckay import crosscheck_fold, cyclic_sl2, mckay_graph
from .oracle import build_explicit, oracle_multiplicities, verify_rG
from .preprojective import check_relation_invariance, fold_double, from_pairing, symplectic_data
from .skew import build_skew_quiver

__all__ = ["run_selftest", "expected_dicyclic12_mult", "fork_ok", "degree_sequence"]


def expected_dicyclic12_mult(names) -> list:
    pos = {n: k for k, n in enumerate(names)}
    m = [[0] * len(names) for _ in names]
    for x, y in DICYCLIC12_EDGES:
        m[pos[x]][pos[y]] += 1
        m[pos[y]][pos[x]] += 1
    return m


def degree_sequence(mult, keep) -> list:
    """Sorted degrees of the undirected simple graph on ``keep`` (one edge per symmetric pair)."""
    return sorted(sum(1 for w in keep if w != v and mult[v][w]) for v in keep)


def fork_ok(S, n: int) -> bool:
    """Q_G is 1 -> 2 -> ... -> n-1 followed by a fork n-1 -> n_+, n-1 -> n_-."""
    if len(S.vertices) != n + 1 or S.num_arrows != n:
        return False
    labels = [v.label for v in S.vertices]
    chain = [labels.index(f"{k}_0") for k in range(1, n)]
    tips = [k for k, lab in enumerate(labels) if lab.startswith(f"{n}_")]
    want = {(chain[k], chain[k + 1]) for k in range(n - 2)} | {(chain[-1], t) for t in tips}
    have = {(v, w) for v in range(n + 1) for w in range(n + 1) for _ in range(S.mult[v][w])}
    return len(tips) == 2 and have == want and S.num_arrows == len(want)


def run_selftest() -> list:
    out = []
    q, action, pairing = dicyclic12_star()
    S = build_skew_quiver(q, action)
    names = dicyclic12_names(S)
    pos = {n: k for k, n in enumerate(names)}
    out.append(("dicyclic12: vertex count is the sum of class numbers", len(S.vertices) == 6 + 4, f"{len(S.vertices)} vertices"))
    prose = [("0_rho", "0_sigma", 1), ("0_1", "0_sigma", 0), ("0_i", "0_sigma", 1), ("1_i", "0_sigma", 0), ("1_1", "0_sigma", 1), ("1_1", "0_-1", 1)]
    out.append(("dicyclic12: six documented multiplicities", all(S.mult[pos[x]][pos[y]] == c for x, y, c in prose), ""))
    out.append(("dicyclic12: full matrix matches the displayed quiver", S.mult == expected_dicyclic12_mult(names), ""))
    zero = [pos[n] for n in names if n.startswith("0_")]
    out.append(("dicyclic12: vertex-0 subgraph has the D~5 degree sequence", degree_sequence(S.mult, zero) == [1, 1, 1, 1, 3, 3], ""))
    bm = build_explicit(q, action, S.embedding)
    omult, _ = oracle_multiplicities(bm, S.tables, S.frame.reps)
    out.append(("dicyclic12: oracle agrees on every pair", omult == S.mult, f"{len(S.vertices) ** 2} entries"))
    dq = from_pairing(q, pairing)
    out.append(("dicyclic12: preprojective relation is invariant", check_relation_invariance(dq, action, S.embedding).ok, ""))
    folded, ds = fold_double(dq, action, S.embedding)
    out.append(("dicyclic12: fold is a double", folded.mult == S.mult and sum(map(sum, ds.q_prime)) * 2 == S.num_arrows, ""))
    sd = symplectic_data(dq)
    out.append(("dicyclic12: r_G = #G r", verify_rG(bm, sd.gram, sd.relation), ""))
    for n in range(3, 7):
        out.append((f"glued chains n={n}: fork with {n + 1} vertices", fork_ok(build_skew_quiver(*glued_chains(n)), n), ""))
    for m in range(2, 9):
        Z = cyclic_sl2(m)
        ok = crosscheck_fold(Z) and mckay_graph(Z).affine_type == f"A~{m - 1}"
        out.append((f"cyclic {m} in SL2: A~{m - 1}", ok, ""))
    return out
