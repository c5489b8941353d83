"""Acceptance gate: one pass/fail line per criterion, printed after the run.

Run with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import json
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import induce, twist_duals  # noqa: E402

from skewquiver.catalog import dicyclic12_names  # noqa: E402
from skewquiver.characters import compute_character_table, inner_product, restrict  # noqa: E402
from skewquiver.cli import bundled_path, main  # noqa: E402
from skewquiver.cyclo import choose_prime  # noqa: E402
from skewquiver.groups import generated_subgroup  # noqa: E402
from skewquiver.io import load_instance, to_structures  # noqa: E402
from skewquiver.mckay import classify_affine, null_root_ok  # noqa: E402
from skewquiver.oracle import build_explicit, oracle_multiplicities, verify_rG  # noqa: E402
from skewquiver.preprojective import (  # noqa: E402
    check_relation_invariance,
    double_quiver,
    extend_action_contragredient,
    fold_double,
    from_pairing,
    symplectic_data,
)
from skewquiver.skew import build_skew_quiver, check_choices  # noqa: E402
from skewquiver.zoo import group_zoo, random_instance  # noqa: E402

CRITERIA = {
    1: "worked dicyclic example reproduced",
    2: "glued A-chains fold to the fork, n = 3..6",
    3: "cyclic SL2 subgroups, m = 2..8: fold = McKay = double cycle",
    4: "binary dihedral 12 in SL2 folds to the double of D~5",
    5: "formula = oracle on 50 random instances",
    6: "choice invariance on the worked example and 10 random instances",
    7: "r_G = #G r and mult = mult_M + mult_M^T",
    8: "character tables and Frobenius reciprocity",
}
RESULTS = {k: {} for k in CRITERIA}


def record(criterion, part, ok):
    RESULTS[criterion][part] = bool(ok)
    assert ok, f"criterion {criterion}: {part}"


def summary_lines():
    lines = []
    for k, title in CRITERIA.items():
        parts = RESULTS[k]
        if not parts:
            lines.append(f"criterion {k}: NOT RUN  {title}")
            continue
        failed = [p for p, ok in parts.items() if not ok]
        status = "FAIL" if failed else "PASS"
        lines.append(f"criterion {k}: {status}  {title}" + (f"  (failed: {'; '.join(failed)})" if failed else ""))
    return lines


def cli_json(capsys, *argv):
    t = time.perf_counter()
    code = main(list(argv))
    elapsed = time.perf_counter() - t
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 and out.startswith("{") else out), elapsed


def _dicyclic_names(result):
    """Names of the CLI result's vertices, matched through their characters."""
    quiver, action = to_structures(load_instance(bundled_path("dicyclic12.json")))
    S = build_skew_quiver(quiver, action)
    chars = [tuple(v["character"]) for v in result["vertices"]]
    own = [tuple(S.tables[v.orbit_rep].irreducibles[v.irr_index].values) for v in S.vertices]
    assert chars == own and result["mult"] == S.mult
    return dicyclic12_names(S)


# criterion 1 -----------------------------------------------------------------


def test_c1_worked_example(capsys):
    code, result, elapsed = cli_json(capsys, "fold", "dicyclic12.json")
    record(1, "fold exits 0", code == 0)
    names = _dicyclic_names(result)
    pos = {n: k for k, n in enumerate(names)}
    m = lambda v, w: result["mult"][pos[v]][pos[w]]
    prose = [("0_rho", "0_sigma", 1), ("0_1", "0_sigma", 0), ("0_i", "0_sigma", 1), ("1_i", "0_sigma", 0), ("1_1", "0_sigma", 1), ("1_1", "0_-1", 1)]
    record(1, "six documented multiplicities", all(m(v, w) == c for v, w, c in prose))
    mult = result["mult"]
    n = len(mult)
    record(1, "symmetric", all(mult[v][w] == mult[w][v] for v in range(n) for w in range(n)))
    record(1, "even diagonal", all(mult[v][v] % 2 == 0 for v in range(n)))
    zero = [pos[x] for x in ("0_1", "0_-1", "0_i", "0_-i", "0_rho", "0_sigma")]
    sub = [[mult[v][w] for w in zero] for v in zero]
    record(1, "0_* restriction is D~5", classify_affine(sub) == "D~5")
    code, ver, vel = cli_json(capsys, "verify", "dicyclic12.json")
    record(1, "oracle agrees on every entry", code == 0 and ver["extra"]["verify"]["disagreements"] == 0)
    record(1, "runtime < 5 s", elapsed + vel < 5)


@pytest.mark.xfail(strict=True, reason="the fold has 10 vertices (6 + 4 stabilizer classes), so 8 and 64 cannot hold")
def test_c1_vertex_and_entry_counts(capsys):
    code, result, _ = cli_json(capsys, "fold", "dicyclic12.json")
    _, ver, _ = cli_json(capsys, "verify", "dicyclic12.json")
    RESULTS[1]["exactly 8 vertices"] = len(result["vertices"]) == 8
    RESULTS[1]["oracle compares 64 entries"] = len(ver["extra"]["verify"]["pairs"]) == 64
    assert len(result["vertices"]) == 8
    assert len(ver["extra"]["verify"]["pairs"]) == 64


# criterion 2 -----------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_c2_fork(capsys, n):
    code, result, elapsed = cli_json(capsys, "fold", f"glued-chains-n{n}.json")
    m = n - 1
    fork = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(m - 1):
        fork[k][k + 1] = 1
    fork[m - 1][m] = fork[m - 1][m + 1] = 1
    ok = code == 0 and len(result["vertices"]) == n + 1 and sum(map(sum, result["mult"])) == n and result["mult"] == fork
    record(2, f"n={n} fork", ok)
    record(2, f"n={n} runtime < 1 s", elapsed < 1)


# criterion 3 -----------------------------------------------------------------


@pytest.mark.parametrize("m", range(2, 9))
def test_c3_cyclic(capsys, m):
    code, result, elapsed = cli_json(capsys, "mckay", f"cyclic{m}")
    mult = result["mult"]
    degrees = [v["degree"] for v in result["vertices"]]
    ok = code == 0 and result["extra"] == {"affine_type": f"A~{m - 1}", "crosscheck": True}
    ok = ok and null_root_ok(mult, degrees)
    record(3, f"m={m} crosscheck and null root", ok)
    record(3, f"m={m} runtime < 2 s", elapsed < 2)


# criterion 4 -----------------------------------------------------------------


def test_c4_binary_dihedral(capsys):
    code, result, elapsed = cli_json(capsys, "mckay", "binary-dihedral12-sl2.json")
    ok = code == 0 and result["extra"] == {"affine_type": "D~5", "crosscheck": True}
    ok = ok and classify_affine(result["mult"]) == "D~5"
    record(4, "loop fold is the double of D~5 and crosscheck passes", ok)
    record(4, "runtime < 5 s", elapsed < 5)


# criterion 5 -----------------------------------------------------------------


def test_c5_oracle_equivalence():
    t = time.perf_counter()
    bad = []
    for seed in range(50):
        _, q, action = random_instance(seed)
        S = build_skew_quiver(q, action)
        bm = build_explicit(q, action, S.embedding)
        mult, books = oracle_multiplicities(bm, S.tables, S.frame.reps)
        if mult != S.mult or any(d != w for d, w in books.values()):
            bad.append(seed)
    record(5, f"all 50 agree (disagreeing seeds: {bad})", not bad)
    record(5, "total runtime < 60 s", time.perf_counter() - t < 60)


# criterion 6 -----------------------------------------------------------------


def test_c6_choice_invariance(capsys):
    code, result, _ = cli_json(capsys, "fold", "dicyclic12.json", "--check-choices", "5")
    record(6, "worked example", code == 0 and result["extra"]["check_choices"] == {"trials": 5, "ok": True})
    bad = []
    for seed in range(100, 110):
        _, q, action = random_instance(seed)
        ok, _ = check_choices(q, action, 5, seed=seed)
        if not ok:
            bad.append(seed)
    record(6, f"10 random instances (failing seeds: {bad})", not bad)


# criterion 7 -----------------------------------------------------------------


def _rG_holds(dq, action):
    S = build_skew_quiver(dq.doubled, action)
    bm = build_explicit(dq.doubled, action, S.embedding)
    gram, rel = symplectic_data(dq).mod(S.embedding.p)
    return verify_rG(bm, gram, rel)


def test_c7_preprojective():
    q, action = to_structures(load_instance(bundled_path("dicyclic12.json")))
    dq = from_pairing(q, load_instance(bundled_path("dicyclic12.json")).options["pairing"])
    record(7, "r_G = #G r on the worked example", _rG_holds(dq, action))
    failures, checked = [], 0
    for seed in range(20):
        _, base, act = random_instance(seed)
        dq = double_quiver(base)
        ext = extend_action_contragredient(dq, act)
        candidates = [ext, twist_duals(dq, ext, seed)[0]]
        for cand in candidates:
            if check_relation_invariance(dq, cand).ok:
                checked += 1
                if not _rG_holds(dq, cand):
                    failures.append(seed)
    record(7, f"r_G = #G r on {checked} invariant random doubles (failing seeds: {failures})", not failures)
    bad = []
    for seed in range(200, 220):
        _, base, act = random_instance(seed)
        dq = double_quiver(base)
        S, ds = fold_double(dq, extend_action_contragredient(dq, act), base_action=act)
        n = len(S.vertices)
        if any(S.mult[v][w] != ds.base_mult[v][w] + ds.base_mult[w][v] for v in range(n) for w in range(n)):
            bad.append(seed)
    record(7, f"mult = mult_M + mult_M^T on 20 contragredient instances (failing: {bad})", not bad)


# criterion 8 -----------------------------------------------------------------


def test_c8_characters():
    zoo = group_zoo()
    bad = []
    for name, G in sorted(zoo.items()):
        t = compute_character_table(G.whole, choose_prime(G.exponent, 2 * G.order))
        irr = t.irreducibles
        ok = sum(d * d for d in t.degrees) == G.order
        ok = ok and all(inner_product(a, b) == (i == j) for i, a in enumerate(irr) for j, b in enumerate(irr))
        if not ok:
            bad.append(name)
    record(8, f"degrees and row orthogonality on {len(zoo)} zoo groups (failing: {bad})", not bad)
    rng = random.Random(2024)
    names = sorted(zoo)
    fails = 0
    for _ in range(100):
        G = zoo[rng.choice(names)]
        K = generated_subgroup(G, [rng.randrange(G.order) for _ in range(rng.randint(1, 2))])
        e = choose_prime(G.exponent, 2 * G.order)
        psi = rng.choice(compute_character_table(K, e).irreducibles)
        chi = rng.choice(compute_character_table(G.whole, e).irreducibles)
        fails += inner_product(restrict(chi, K), psi) != inner_product(chi, induce(psi, G.whole))
    record(8, f"Frobenius reciprocity on 100 random pairs ({fails} failures)", fails == 0)


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider", "-W", "ignore::pytest.PytestAssertRewriteWarning"])
    sys.exit(code)
