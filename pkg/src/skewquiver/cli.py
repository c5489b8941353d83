"""Command line entry point.

Exit codes: 0 success, 1 input or validation error, 2 hypothesis failure
(the relation is not invariant), 3 internal guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

from .characters import NotARepresentation, SplitFailure
from .cyclo import DenominatorNotInvertible, SearchExhausted, parse_cyclo
from .groups import GroupError
from .io import (
    InstanceError,
    ResultFile,
    dumps,
    embedding_for,
    export_dot,
    instance_from_action,
    load_instance,
    result_from_skew,
    serialize_instance,
    to_structures,
)
from .mckay import DeterminantNotOne, UnrecognizedShape, crosscheck_fold, mckay_graph, sl2_subgroup, sl2_zoo
from .oracle import NonIntegerCount, OracleError, build_explicit, oracle_multiplicities
from .preprojective import (
    AsymmetricFold,
    BadPairing,
    ContragredientMismatch,
    NotInvariant,
    OddLoop,
    double_quiver,
    extend_action_contragredient,
    fold_double,
    from_pairing,
)
from .quiver import ActionError, BlockNotStable, validate_action
from .skew import InternalBoundExceeded, build_skew_quiver, check_choices

GUARDS = (
    AsymmetricFold,
    OddLoop,
    ContragredientMismatch,
    NonIntegerCount,
    OracleError,
    InternalBoundExceeded,
    UnrecognizedShape,
    SplitFailure,
    AssertionError,
)
INPUT_ERRORS = (
    InstanceError,
    ActionError,
    BlockNotStable,
    GroupError,
    BadPairing,
    DeterminantNotOne,
    NotARepresentation,
    DenominatorNotInvertible,
    SearchExhausted,
    OSError,
    ValueError,
)


class Failure(Exception):
    def __init__(self, code, message, state=None):
        super().__init__(message)
        self.code = code
        self.state = state


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("skewquiver") / "data" / name))


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    b = bundled_path(path)
    if b.exists():
        return b
    raise InstanceError(f"no such instance file: {path}")


def _load(args):
    inst = load_instance(_resolve(args.instance))
    quiver, action = to_structures(inst)
    bad = validate_action(quiver, action)
    if bad:
        g, h, arrow, msg = bad[0]
        G = action.group
        where = ", ".join(f"{k}={G.labels[x]}" for k, x in (("g", g), ("h", h)) if x is not None)
        raise ActionError(f"invalid action: {msg} ({where}{', arrow=' + arrow if arrow else ''})")
    prime = args.prime if args.prime is not None else inst.options.get("prime")
    return inst, quiver, action, prime


def _emit(args, result: ResultFile):
    text = export_dot(result) if args.emit == "dot" else dumps(result.to_dict())
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _timed(fn, timings, key, *a, **kw):
    t = time.perf_counter()
    out = fn(*a, **kw)
    timings[key] = round(time.perf_counter() - t, 6)
    return out


def _choices(args, quiver, action, emb, extra):
    if args.check_choices:
        ok, details = check_choices(quiver, action, args.check_choices, seed=args.seed or 0, embedding=emb)
        extra["check_choices"] = {"trials": args.check_choices, "ok": ok}
        if not ok:
            raise Failure(3, "multiplicities changed under a different choice of representatives", {"details": details})


def cmd_fold(args):
    inst, quiver, action, prime = _load(args)
    timings = {}
    emb = embedding_for(quiver, action, prime)
    S = _timed(build_skew_quiver, timings, "build", quiver, action, emb)
    extra = {}
    _choices(args, quiver, action, emb, extra)
    _emit(args, result_from_skew("fold", inst.name, quiver, S, extra, timings if args.timings else None))
    return 0


def _fold_double_result(command, inst, dq, action, emb, base_action, args):
    timings = {}
    try:
        S, ds = _timed(fold_double, timings, "fold", dq, action, emb, base_action=base_action)
    except NotInvariant as exc:
        r = exc.report
        raise Failure(2, f"relation is not invariant: generator {r.witness_label} breaks the form at {r.entry}", {"witness": r.witness_label, "entry": list(r.entry)})
    extra = {"double_structure": {"q_prime": ds.q_prime}}
    if ds.base_mult is not None:
        extra["double_structure"]["base_mult"] = ds.base_mult
    _choices(args, dq.doubled, action, emb, extra)
    return result_from_skew(command, inst.name, dq.doubled, S, extra, timings if args.timings else None)


def cmd_fold_double(args):
    inst, quiver, action, prime = _load(args)
    pairing = inst.options.get("pairing")
    if not pairing:
        raise InstanceError("fold-double needs options.pairing declaring (arrow, dual) pairs")
    dq = from_pairing(quiver, pairing)
    emb = embedding_for(quiver, action, prime)
    _emit(args, _fold_double_result("fold-double", inst, dq, action, emb, None, args))
    return 0


def cmd_extend_fold(args):
    inst, quiver, action, prime = _load(args)
    dq = double_quiver(quiver)
    ext = extend_action_contragredient(dq, action)
    emb = embedding_for(dq.doubled, ext, prime)
    _emit(args, _fold_double_result("extend-fold", inst, dq, ext, emb, action, args))
    return 0


def _load_sl2(spec: str):
    zoo = sl2_zoo()
    if spec in zoo:
        return zoo[spec]
    data = json.loads(_resolve(spec).read_text())
    level = int(data["level"])
    gens = [[[parse_cyclo(x, level) for x in row] for row in m] for m in data["generators"]]
    return sl2_subgroup(data.get("name", Path(spec).stem), gens, level)


def cmd_mckay(args):
    S = _load_sl2(args.instance)
    quiver, action = S.quiver, S.action
    emb = embedding_for(quiver, action, args.prime)
    g = mckay_graph(S, emb)
    ok = crosscheck_fold(S, emb)
    vertices = [{"label": lab, "degree": d, "character": list(chi.values)} for lab, d, chi in zip(g.labels, g.degrees, g.table.irreducibles)]
    diag = {"prime": emb.p, "level": emb.level, "omega": emb.omega, "safety_bound": emb.safety_bound, "group_order": S.group.order}
    extra = {"affine_type": g.affine_type, "crosscheck": ok}
    _emit(args, ResultFile("mckay", S.name, vertices, g.mult, [], diag, extra))
    if not ok:
        raise Failure(3, "folded loop quiver differs from the McKay graph", {"mckay": g.mult})
    return 0


def cmd_verify(args):
    inst, quiver, action, prime = _load(args)
    emb = embedding_for(quiver, action, prime)
    S = build_skew_quiver(quiver, action, emb)
    bm = build_explicit(quiver, action, emb)
    mult, books = oracle_multiplicities(bm, S.tables, S.frame.reps)
    pairs = []
    bad = 0
    for v, a in enumerate(S.vertices):
        for w, b in enumerate(S.vertices):
            agree = mult[v][w] == S.mult[v][w]
            bad += not agree
            pairs.append({"from": a.label, "to": b.label, "formula": S.mult[v][w], "oracle": mult[v][w], "agree": agree})
    dims = [{"pair": [quiver.vertices[i], quiver.vertices[j]], "dim": d, "weighted": w} for (i, j), (d, w) in sorted(books.items())]
    extra = {"verify": {"pairs": pairs, "disagreements": bad, "block_dimensions": dims}}
    _emit(args, result_from_skew("verify", inst.name, quiver, S, extra))
    if bad or any(d != w for d, w in books.values()):
        raise Failure(3, f"oracle disagrees with the formula on {bad} vertex pairs", extra)
    return 0


def cmd_generate(args):
    from .zoo import random_instance

    seed = args.seed if args.seed is not None else 0
    name, quiver, action = random_instance(seed)
    inst = instance_from_action(f"random-seed-{seed}", quiver, action)
    text = dumps(serialize_instance(inst))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_selftest(args):
    from .selftest import run_selftest

    results = run_selftest()
    for name, ok, note in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}{'  ' + note if note else ''}")
    return 0 if all(ok for _, ok, _ in results) else 3


def build_parser():
    parser = argparse.ArgumentParser(prog="skewquiver", description="Quivers of skew group algebras of path algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", help="instance file (or the name of a bundled one)")
        p.add_argument("--prime", type=int, default=None, help="override the prime p")
        p.add_argument("--seed", type=int, default=None, help="seed for random choices")
        p.add_argument("--emit", choices=["structured", "dot"], default="structured")
        p.add_argument("--check-choices", type=int, default=0, metavar="K", help="rebuild K times with random representatives")
        p.add_argument("--timings", action="store_true", help="record timings (output is then not reproducible)")
        p.add_argument("-o", "--output", default=None)

    for name, fn, helptext in (
        ("fold", cmd_fold, "compute Q_G"),
        ("fold-double", cmd_fold_double, "fold a declared double quiver and split it"),
        ("extend-fold", cmd_extend_fold, "double Q with the contragredient action and fold"),
        ("mckay", cmd_mckay, "McKay graph of an SL2 subgroup (file or zoo name)"),
        ("verify", cmd_verify, "compare the formula with the brute-force oracle"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.set_defaults(func=fn)
    p = sub.add_parser("generate", help="write a seeded random instance")
    common(p, instance=False)
    p.set_defaults(func=cmd_generate)
    p = sub.add_parser("selftest", help="run the worked examples")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.state is not None:
            sys.stderr.write(dumps(exc.state))
        return exc.code
    except NotInvariant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GUARDS as exc:
        print(f"internal guard tripped: {type(exc).__name__}: {exc}", file=sys.stderr)
        sys.stderr.write(dumps({"command": args.command, "args": {k: v for k, v in vars(args).items() if k != "func"}, "error": repr(exc)}))
        return 3
    except INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
