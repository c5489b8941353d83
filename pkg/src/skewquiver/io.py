"""JSON instance and result files, and DOT export.

An instance file looks like::

    {
      "name": "example",
      "quiver": {"vertices": ["0", "1"], "arrows": [["b", "1", "0"]]},
      "group": {"kind": "action"},
      "level": 2,
      "action": [{"name": "s", "vertices": ["0", "1"], "arrows": {"b": {"b": "-1"}}}],
      "options": {"prime": null, "pairing": null}
    }

``group.kind`` is ``"action"`` (the group generated by the listed action data),
``"cayley"`` (``table`` plus, per action entry, an ``element`` index) or
``"permutations"`` (``degree`` and ``generators``, one per action entry).
Arrow images map each arrow label to ``{label: coefficient}`` with
coefficients written as cyclotomic strings in ``z = exp(2 pi i / level)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .cyclo import PrimeEmbedding, parse_cyclo
from .groups import from_cayley_table, from_permutation_generators
from .quiver import LinearQuiverAction, Quiver
from .skew import SkewQuiver, safety_bound

__all__ = [
    "InstanceError",
    "InstanceFile",
    "ResultFile",
    "parse_instance",
    "serialize_instance",
    "load_instance",
    "instance_from_action",
    "to_structures",
    "embedding_for",
    "result_from_skew",
    "export_dot",
    "dumps",
]


class InstanceError(ValueError):
    pass


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


@dataclass
class GeneratorData:
    name: str
    vertices: list  # image label of each vertex, in vertex order
    arrows: dict  # arrow label -> {arrow label: canonical cyclo string}
    element: int = None  # for cayley groups
    permutation: list = None  # for permutation groups


@dataclass
class InstanceFile:
    name: str
    vertices: list
    arrows: list  # [label, source label, target label]
    group: dict
    level: int
    action: list  # GeneratorData
    options: dict = field(default_factory=dict)


def _canon(value, level):
    return str(parse_cyclo(value, level))


def parse_instance(data: dict) -> InstanceFile:
    try:
        q = data["quiver"]
        vertices = [str(v) for v in q["vertices"]]
        arrows = [[str(a), str(s), str(t)] for a, s, t in q["arrows"]]
        level = int(data.get("level", 1))
        group = dict(data.get("group", {"kind": "action"}))
        if group.get("kind") not in ("action", "cayley", "permutations"):
            raise InstanceError(f"unknown group kind {group.get('kind')!r}")
        gens = []
        for k, entry in enumerate(data["action"]):
            imgs = {}
            for a, col in entry.get("arrows", {}).items():
                imgs[str(a)] = {str(b): _canon(c, level) for b, c in col.items()}
            gens.append(
                GeneratorData(
                    name=str(entry.get("name", f"g{k}")),
                    vertices=[str(v) for v in entry.get("vertices", vertices)],
                    arrows=imgs,
                    element=entry.get("element"),
                    permutation=entry.get("permutation"),
                )
            )
        options = dict(data.get("options", {}))
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"malformed instance file: missing or bad field {exc}") from exc
    options.setdefault("prime", None)
    options.setdefault("pairing", None)
    if options["pairing"] is not None:
        options["pairing"] = [[str(x), str(y)] for x, y in options["pairing"]]
    return InstanceFile(str(data.get("name", "")), vertices, arrows, group, level, gens, options)


def serialize_instance(inst: InstanceFile) -> dict:
    action = []
    for g in inst.action:
        entry = {"name": g.name, "vertices": list(g.vertices), "arrows": {a: dict(col) for a, col in g.arrows.items()}}
        if g.element is not None:
            entry["element"] = g.element
        if g.permutation is not None:
            entry["permutation"] = list(g.permutation)
        action.append(entry)
    return {
        "name": inst.name,
        "quiver": {"vertices": list(inst.vertices), "arrows": [list(a) for a in inst.arrows]},
        "group": dict(inst.group),
        "level": inst.level,
        "action": action,
        "options": dict(inst.options),
    }


def load_instance(path) -> InstanceFile:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: not valid JSON ({exc})") from exc
    return parse_instance(data)


def _generator_data(quiver, inst_level, vperm, images, name):
    vertices = [quiver.vertices[vperm[i]] for i in range(quiver.num_vertices)]
    arrows = {}
    for a, col in enumerate(images):
        arrows[quiver.arrows[a].label] = {quiver.arrows[b].label: str(c.lift(inst_level)) for b, c in sorted(col.items())}
    return GeneratorData(name, vertices, arrows)


def instance_from_action(name: str, quiver: Quiver, action: LinearQuiverAction, pairing=None, group_kind: str = "cayley") -> InstanceFile:
    """Serialize an action through its group's generators."""
    G = action.group
    names = action.generator_names or [G.labels[g] if G.labels else f"g{g}" for g in G.generators]
    gens = []
    for nm, g in zip(names, G.generators):
        gd = _generator_data(quiver, action.level, action.vperm[g], action.images[g], nm)
        if group_kind == "cayley":
            gd.element = int(g)
        gens.append(gd)
    group = {"kind": group_kind}
    if group_kind == "cayley":
        group["table"] = [[int(x) for x in row] for row in G.cayley]
    arrows = [[a.label, quiver.vertices[a.source], quiver.vertices[a.target]] for a in quiver.arrows]
    options = {"prime": None, "pairing": [list(p) for p in pairing] if pairing else None}
    return InstanceFile(name, list(quiver.vertices), arrows, group, action.level, gens, options)


def to_structures(inst: InstanceFile):
    """Build ``(quiver, action)``; validation of the action is left to the caller."""
    vindex = {v: k for k, v in enumerate(inst.vertices)}
    if len(vindex) != len(inst.vertices):
        raise InstanceError("vertex labels must be unique")
    try:
        edges = [(a, vindex[s], vindex[t]) for a, s, t in inst.arrows]
    except KeyError as exc:
        raise InstanceError(f"arrow endpoint {exc} is not a vertex") from exc
    quiver = Quiver.from_edges(inst.vertices, edges)
    level = inst.level
    vperms, images = [], []
    for g in inst.action:
        try:
            vp = tuple(vindex[v] for v in g.vertices)
        except KeyError as exc:
            raise InstanceError(f"generator {g.name}: unknown vertex {exc}") from exc
        if len(vp) != quiver.num_vertices or sorted(vp) != list(range(quiver.num_vertices)):
            raise InstanceError(f"generator {g.name}: vertex map is not a permutation")
        im = []
        for arr in quiver.arrows:
            col = g.arrows.get(arr.label)
            if col is None:
                raise InstanceError(f"generator {g.name}: no image given for arrow {arr.label}")
            try:
                im.append({quiver.arrow_index(b): parse_cyclo(c, level) for b, c in col.items()})
            except KeyError as exc:
                raise InstanceError(f"generator {g.name}: unknown arrow {exc}") from exc
        vperms.append(vp)
        images.append(tuple(im))
    names = [g.name for g in inst.action]
    kind = inst.group.get("kind", "action")
    if kind == "action":
        action = LinearQuiverAction.from_closure(quiver, vperms, images, level, names=names)
    else:
        G, elements = _explicit_group(inst)
        action = LinearQuiverAction.from_generators(quiver, G, elements, vperms, images, level, names)
    return quiver, action


def _explicit_group(inst: InstanceFile):
    kind = inst.group["kind"]
    if kind == "cayley":
        table = inst.group.get("table")
        if table is None:
            raise InstanceError("cayley group needs a table")
        G = from_cayley_table(table)
        # from_cayley_table swaps the identity into slot 0
        n = len(table)
        e = next(x for x in range(n) if all(table[x][y] == y for y in range(n)))
        swap = {0: e, e: 0}
        elements = []
        for g in inst.action:
            if g.element is None:
                raise InstanceError(f"generator {g.name} has no element index")
            elements.append(swap.get(int(g.element), int(g.element)))
        return G, elements
    degree = int(inst.group.get("degree", 0))
    perms = [g.permutation for g in inst.action]
    if any(p is None for p in perms):
        raise InstanceError("permutation group needs a permutation for every generator")
    G, elems = from_permutation_generators(degree, perms, names=[g.name for g in inst.action])
    index = {e: k for k, e in enumerate(elems)}
    return G, [index[tuple(p)] for p in perms]


def embedding_for(quiver: Quiver, action: LinearQuiverAction, prime=None) -> PrimeEmbedding:
    """Default embedding, or one at a user-given prime (validated against the bound)."""
    from .skew import default_embedding

    if prime is None:
        return default_embedding(quiver, action)
    level = math.lcm(action.group.exponent, action.level)
    bound = safety_bound(quiver, action.group)
    if prime <= bound:
        raise InstanceError(f"prime {prime} does not exceed the safety bound {bound}")
    try:
        return PrimeEmbedding.for_prime(prime, level, bound)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc


@dataclass
class ResultFile:
    command: str
    instance: str
    vertices: list  # {label, orbit_rep, irr_index, degree, character}
    mult: list
    provenance: list  # {from, to, contributions: [{pair, count}]}
    diagnostics: dict
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> ResultFile:
        mult = data["mult"]
        if any(not isinstance(x, int) or x < 0 for row in mult for x in row):
            raise InstanceError("multiplicities must be nonnegative integers")
        return cls(data["command"], data["instance"], data["vertices"], mult, data["provenance"], data["diagnostics"], data.get("extra", {}))


def result_from_skew(command: str, instance: str, quiver: Quiver, S: SkewQuiver, extra=None, timings=None) -> ResultFile:
    vertices = []
    for v in S.vertices:
        chi = S.tables[v.orbit_rep].irreducibles[v.irr_index]
        vertices.append(
            {
                "label": v.label,
                "orbit_rep": quiver.vertices[v.orbit_rep],
                "irr_index": v.irr_index,
                "degree": v.degree,
                "stabilizer_order": chi.group.order,
                "character": list(chi.values),
            }
        )
    prov = []
    for (v, w), parts in sorted(S.provenance.items()):
        prov.append(
            {
                "from": S.vertices[v].label,
                "to": S.vertices[w].label,
                "contributions": [{"pair": [quiver.vertices[i], quiver.vertices[j]], "count": c} for (i, j), c in parts],
            }
        )
    e = S.embedding
    diag = {"prime": e.p, "level": e.level, "omega": e.omega, "safety_bound": e.safety_bound, "group_order": S.frame.group.order}
    if timings is not None:
        diag["timings"] = timings
    return ResultFile(command, instance, vertices, [list(r) for r in S.mult], prov, diag, extra or {})


def export_dot(result: ResultFile, name: str = "QG") -> str:
    """DOT digraph with one node per vertex and one edge per arrow."""
    lines = [f"digraph {name} {{"]
    for k, v in enumerate(result.vertices):
        lines.append(f'  v{k} [label="{v["label"]} (deg {v["degree"]})"];')
    for v, row in enumerate(result.mult):
        for w, c in enumerate(row):
            for _ in range(c):
                lines.append(f"  v{v} -> v{w};")
    lines.append("}")
    return "\n".join(lines) + "\n"
