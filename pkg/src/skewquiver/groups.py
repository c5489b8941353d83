"""Finite groups as materialized Cayley tables, with orbit/stabilizer machinery.

Conventions: ``cayley[g][h]`` is the product ``g*h``; actions are right actions,
``act(x, g) = x^g`` with ``act(act(x, g), h) == act(x, g*h)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "GroupError",
    "NotAssociative",
    "NoIdentity",
    "NoInverse",
    "ClosureCapExceeded",
    "DifferentParents",
    "NotAnAction",
    "FiniteGroup",
    "Subgroup",
    "ConjugacyClasses",
    "OrbitFrame",
    "from_cayley_table",
    "from_permutation_generators",
    "closure",
    "subgroup_intersection",
    "generated_subgroup",
    "orbit_frame",
    "diagonal_pair_reps",
]

DEFAULT_CAP = 10**6


class GroupError(ValueError):
    pass


class NotAssociative(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class ClosureCapExceeded(GroupError):
    pass


class DifferentParents(GroupError):
    pass


class NotAnAction(GroupError):
    pass


class FiniteGroup:
    """A validated group on the indices ``0..order-1`` with identity 0.

    Treat instances as immutable; derived data is cached on first use.
    """

    def __init__(self, cayley, labels=None, generators=None):
        self.cayley = np.asarray(cayley, dtype=np.int64)
        self.cayley.setflags(write=False)
        self.order = int(self.cayley.shape[0])
        self.identity = 0
        inv = np.argmin(self.cayley, axis=1)  # identity is index 0
        self.inverse = tuple(int(x) for x in inv)
        self.labels = tuple(labels) if labels is not None else tuple(str(g) for g in range(self.order))
        if generators is None:
            generators = _greedy_generators(self)
        self.generators = tuple(int(g) for g in generators)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<FiniteGroup of order {self.order}>"

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def conj(self, x: int, k: int) -> int:
        """``k^-1 x k``."""
        return self.mul(self.mul(self.inverse[k], x), k)

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inverse[g], -n
        out = 0
        for _ in range(n):
            out = self.mul(out, g)
        return out

    def product(self, *elts: int) -> int:
        out = 0
        for g in elts:
            out = self.mul(out, g)
        return out

    @cached_property
    def element_order(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.order):
            n, x = 1, g
            while x != 0:
                x = self.mul(x, g)
                n += 1
            orders.append(n)
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        out = 1
        for n in set(self.element_order):
            out = out * n // _gcd(out, n)
        return out

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, tuple(range(self.order)))

    def is_abelian(self) -> bool:
        return bool((self.cayley == self.cayley.T).all())


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _greedy_generators(group):
    gens, span = [], {0}
    for g in range(group.order):
        if g not in span:
            gens.append(g)
            span = set(generated_subgroup(group, gens).elements)
    return gens


def from_cayley_table(table, labels=None) -> FiniteGroup:
    """Validate a multiplication table and relabel its identity to index 0."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupError("Cayley table must be a non-empty square table")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise GroupError("Cayley table entries out of range")
    ar = np.arange(n)
    ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]
    if e != 0:
        perm = ar.copy()
        perm[0], perm[e] = e, 0  # perm is its own inverse
        t = perm[t[np.ix_(perm, perm)]]
        if labels is not None:
            labels = list(labels)
            labels[0], labels[e] = labels[e], labels[0]
    for g in range(n):
        if not (t[g] == 0).any() or not (t[:, g] == 0).any():
            raise NoInverse(f"element {g} has no inverse")
        h = int(np.argmin(t[g]))
        if t[h, g] != 0:
            raise NoInverse(f"element {g} has no two-sided inverse")
    if n <= 64:
        left = t[t[:, :, None], ar[None, None, :]]  # (ab)c
        right = t[ar[:, None, None], t[None, :, :]]  # a(bc)
        bad = np.argwhere(left != right)
        if bad.size:
            a, b, c = (int(x) for x in bad[0])
            raise NotAssociative(f"(g{a} g{b}) g{c} != g{a} (g{b} g{c})")
    else:
        rng = np.random.default_rng(0)
        trip = rng.integers(0, n, size=(20000, 3))
        a, b, c = trip.T
        bad = np.nonzero(t[t[a, b], c] != t[a, t[b, c]])[0]
        if bad.size:
            a, b, c = (int(x) for x in trip[bad[0]])
            raise NotAssociative(f"(g{a} g{b}) g{c} != g{a} (g{b} g{c})")
    return FiniteGroup(t, labels=labels)


def closure(gens, mul, identity, names=None, cap=DEFAULT_CAP):
    """Breadth-first closure of hashable generators under ``mul``.

    Returns ``(elements, words)`` with the identity first; ``words[k]`` is a
    generator word (tuple of generator indices) evaluating to ``elements[k]``.
    """
    elements = [identity]
    words = [()]
    index = {identity: 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for s, gen in enumerate(gens):
            y = mul(elements[k], gen)
            if y not in index:
                if len(elements) >= cap:
                    raise ClosureCapExceeded(f"group closure exceeded {cap} elements")
                index[y] = len(elements)
                elements.append(y)
                words.append(words[k] + (s,))
                queue.append(index[y])
    return elements, words, index


def _word_label(word, names):
    if not word:
        return "1"
    out, k = [], 0
    while k < len(word):
        j = k
        while j < len(word) and word[j] == word[k]:
            j += 1
        n = j - k
        out.append(names[word[k]] + (f"^{n}" if n > 1 else ""))
        k = j
    return "".join(out)


def group_from_closure(gens, mul, identity, names=None, cap=DEFAULT_CAP):
    """Build a FiniteGroup from arbitrary hashable generators; returns (G, elements)."""
    elements, words, index = closure(gens, mul, identity, cap=cap)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            table[a, b] = index[mul(elements[a], elements[b])]
    names = names or [f"g{s}" for s in range(len(gens))]
    labels = [_word_label(w, names) for w in words]
    generators = [index[g] for g in gens if index[g] != 0] or []
    return FiniteGroup(table, labels=labels, generators=generators), elements


def from_permutation_generators(degree: int, gens, names=None, cap=DEFAULT_CAP):
    """Group generated by permutations of ``range(degree)`` (``perm[x] = x^g``)."""
    gens = [tuple(int(x) for x in g) for g in gens]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise GroupError(f"{list(g)} is not a permutation of range({degree})")
    ident = tuple(range(degree))

    def mul(g, h):
        return tuple(h[x] for x in g)

    return group_from_closure(gens, mul, ident, names=names, cap=cap)


@dataclass(frozen=True)
class ConjugacyClasses:
    class_of: dict
    reps: tuple
    sizes: tuple
    members: tuple

    def __len__(self):
        return len(self.reps)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(int(x) for x in self.elements)))

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.elements == self.elements
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __iter__(self):
        return iter(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _set(self):
        return frozenset(self.elements)

    @cached_property
    def exponent(self) -> int:
        out = 1
        for g in self.elements:
            n = self.parent.element_order[g]
            out = out * n // _gcd(out, n)
        return out

    @cached_property
    def classes(self) -> ConjugacyClasses:
        G = self.parent
        class_of, reps, members = {}, [], []
        for x in self.elements:
            if x in class_of:
                continue
            cls = sorted({G.conj(x, h) for h in self.elements})
            for y in cls:
                class_of[y] = len(reps)
            reps.append(x)
            members.append(tuple(cls))
        return ConjugacyClasses(class_of, tuple(reps), tuple(len(m) for m in members), tuple(members))

    def conjugate(self, k: int) -> Subgroup:
        """``k^-1 H k``."""
        return Subgroup(self.parent, tuple(self.parent.conj(h, k) for h in self.elements))

    def is_closed(self) -> bool:
        G = self.parent
        s = self._set
        return 0 in s and all(G.mul(a, b) in s for a in s for b in s) and all(G.inv(a) in s for a in s)


def generated_subgroup(G: FiniteGroup, gens) -> Subgroup:
    span = {0}
    frontier = [0]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(span))


def subgroup_intersection(h1: Subgroup, h2: Subgroup) -> Subgroup:
    if h1.parent is not h2.parent:
        raise DifferentParents("subgroups live in different groups")
    return Subgroup(h1.parent, tuple(sorted(h1._set & h2._set)))


@dataclass(frozen=True)
class OrbitFrame:
    """Orbit representatives, transporters and stabilizers for a right action."""

    group: FiniteGroup
    points: tuple
    act: object = field(repr=False)
    orbits: tuple  # tuple of sorted point tuples, in order of their representatives
    reps: tuple  # the chosen representative of each orbit
    rep_of: dict  # point -> its representative
    kappa: dict  # point -> element k with rep^k == point
    stab: dict  # point -> Subgroup

    def orbit_of(self, point):
        return self.orbits[self.reps.index(self.rep_of[point])]


def _check_action(G, act, points, rng):
    pts = list(points)
    for x in pts:
        if act(x, 0) != x:
            raise NotAnAction(f"identity moves point {x}")
    pairs = [(g, h) for g in G.generators for h in G.generators]
    for _ in range(32):
        pairs.append((rng.randrange(G.order), rng.randrange(G.order)))
    for g, h in pairs:
        for x in pts:
            if act(act(x, g), h) != act(x, G.mul(g, h)):
                raise NotAnAction(f"(x^g)^h != x^(gh) for x={x}, g={g}, h={h}")


def orbit_frame(G: FiniteGroup, act, points, reps=None, rng=None) -> OrbitFrame:
    """Orbits of ``act`` on ``points`` with transporters kappa and stabilizers.

    Representatives default to the minimal point of each orbit and kappa is
    found by breadth-first search over the generators. With ``reps`` or
    ``rng`` the choices can be overridden (used for choice-invariance checks).
    """
    points = tuple(points)
    _check_action(G, act, points, random.Random(0))
    seen = {}
    orbit_list = []
    for x in sorted(points):
        if x in seen:
            continue
        orb = tuple(sorted({act(x, g) for g in range(G.order)}))
        for y in orb:
            seen[y] = len(orbit_list)
        orbit_list.append(orb)
    if reps is None:
        chosen = [orb[0] for orb in orbit_list]
        if rng is not None:
            chosen = [rng.choice(orb) for orb in orbit_list]
    else:
        chosen = [None] * len(orbit_list)
        for r in reps:
            k = seen[r]
            if chosen[k] is not None:
                raise ValueError(f"two representatives given for orbit {orbit_list[k]}")
            chosen[k] = r
        if None in chosen:
            raise ValueError("representatives do not cover every orbit")

    stab = {x: Subgroup(G, tuple(g for g in range(G.order) if act(x, g) == x)) for x in points}
    rep_of, kappa = {}, {}
    for orb, r in zip(orbit_list, chosen):
        found = {r: 0}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for s in G.generators:
                y = act(x, s)
                if y not in found:
                    found[y] = G.mul(found[x], s)
                    queue.append(y)
        for y in orb:
            rep_of[y] = r
            k = found[y]
            if rng is not None and y != r:
                h = rng.choice(stab[r].elements)
                k = G.mul(h, k)
            kappa[y] = k
    order = sorted(range(len(orbit_list)), key=lambda k: chosen[k])
    return OrbitFrame(
        group=G,
        points=points,
        act=act,
        orbits=tuple(orbit_list[k] for k in order),
        reps=tuple(chosen[k] for k in order),
        rep_of=rep_of,
        kappa=kappa,
        stab=stab,
    )


def diagonal_pair_reps(G: FiniteGroup, frame: OrbitFrame, rng=None) -> dict:
    """For each pair of representatives (i, j), one pair per diagonal orbit on O_i x O_j."""
    act = frame.act
    out = {}
    for i, oi in zip(frame.reps, frame.orbits):
        for j, oj in zip(frame.reps, frame.orbits):
            seen = set()
            reps = []
            for x in oi:
                for y in oj:
                    if (x, y) in seen:
                        continue
                    orb = sorted({(act(x, g), act(y, g)) for g in range(G.order)})
                    seen.update(orb)
                    reps.append(rng.choice(orb) if rng is not None else orb[0])
            out[(i, j)] = reps
    return out
