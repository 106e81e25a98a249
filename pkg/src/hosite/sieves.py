"""Sieves and Grothendieck topologies on finite categories.

Sieves are stored as explicit member sets (generators are forgotten after
generation) and topologies store every covering sieve, including the upward
closure: the lattices are tiny at this scale and comparison checks need
exact cover-set equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (
    PASS,
    FiniteCategory,
    PresheafMorphism,
    SetPresheaf,
    ValidationReport,
    yoneda,
)
from .core import _fail


@dataclass(frozen=True)
class Sieve:
    """A set of morphisms with codomain ``root`` closed under precomposition."""

    root: str
    members: frozenset[str]

    def sort_key(self):
        return (self.root, len(self.members), tuple(sorted(self.members)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def format_sieve(cat: FiniteCategory, s: Sieve) -> str:
    if s.members == frozenset(cat.arrows_into(s.root)):
        return "maximal"
    return "{" + ", ".join(sorted(s.members)) + "}"


def validate_sieve(cat: FiniteCategory, s: Sieve) -> ValidationReport:
    if s.root not in set(cat.objects):
        return _fail("structure", (s.root,), "sieve root is not an object")
    for f in sorted(s.members):
        if cat.cod.get(f) != s.root:
            return _fail("structure", (f,), f"member {f} does not have codomain {s.root}")
    for f in sorted(s.members):
        for g in cat.arrows_into(cat.dom[f]):
            if cat.compose(f, g) not in s.members:
                return _fail("closure", (f, g), f"{f}∘{g} escapes the sieve")
    return PASS


def maximal_sieve(cat: FiniteCategory, x: str) -> Sieve:
    if x not in set(cat.objects):
        raise ValueError(f"unknown object id: {x}")
    return Sieve(x, frozenset(cat.arrows_into(x)))


def generate_sieve(cat: FiniteCategory, x: str, generators) -> Sieve:
    """Smallest sieve on x containing the generators."""
    if x not in set(cat.objects):
        raise ValueError(f"unknown object id: {x}")
    members = set()
    for f in generators:
        if cat.cod.get(f) != x:
            raise ValueError(f"generator {f} does not have codomain {x}")
        for g in cat.arrows_into(cat.dom[f]):
            members.add(cat.compose(f, g))
    return Sieve(x, frozenset(members))


def pullback_sieve(cat: FiniteCategory, h: str, s: Sieve) -> Sieve:
    """Base change: the sieve {g into dom(h) | h∘g in s}."""
    if cat.cod.get(h) != s.root:
        raise ValueError(f"cannot pull back a sieve on {s.root} along {h}")
    y = cat.dom[h]
    return Sieve(y, frozenset(g for g in cat.arrows_into(y) if cat.compose(h, g) in s.members))


def all_sieves(cat: FiniteCategory, x: str) -> tuple[Sieve, ...]:
    """The full sieve lattice on x, ordered by (size, members)."""
    arrows = sorted(cat.arrows_into(x))
    if len(arrows) > 16:
        raise ValueError("sieve lattice too large to enumerate")
    out = []
    for r in range(len(arrows) + 1):
        for sub in combinations(arrows, r):
            chosen = set(sub)
            if all(cat.compose(f, g) in chosen
                   for f in chosen for g in cat.arrows_into(cat.dom[f])):
                out.append(Sieve(x, frozenset(chosen)))
    out.sort(key=Sieve.sort_key)
    return tuple(out)


def sieve_presheaf(cat: FiniteCategory, s: Sieve) -> SetPresheaf:
    """The sieve as a subpresheaf of yoneda(root); elements are its members."""
    value = {v: tuple(sorted(f for f in s.members if cat.dom[f] == v)) for v in cat.objects}
    restrict = {}
    for g in cat.morphisms:
        restrict[g] = {f: cat.compose(f, g) for f in value[cat.cod[g]]}
    return SetPresheaf(cat, value, restrict)


def sieve_inclusion(cat: FiniteCategory, s: Sieve) -> PresheafMorphism:
    sub = sieve_presheaf(cat, s)
    return PresheafMorphism(sub, yoneda(cat, s.root),
                            {o: {f: f for f in sub.value[o]} for o in cat.objects})


@dataclass(frozen=True)
class GrothendieckTopology:
    base: FiniteCategory
    covers: dict[str, frozenset[Sieve]]

    def covers_of(self, x: str) -> tuple[Sieve, ...]:
        return tuple(sorted(self.covers.get(x, frozenset()), key=Sieve.sort_key))


def trivial_topology(cat: FiniteCategory) -> GrothendieckTopology:
    return GrothendieckTopology(cat, {o: frozenset([maximal_sieve(cat, o)]) for o in cat.objects})


def validate_topology(top: GrothendieckTopology) -> ValidationReport:
    """Check maximality, base-change stability, and local character."""
    cat = top.base
    if not set(top.covers) <= set(cat.objects):
        return _fail("structure", (), "covers filed under an unknown object")
    for x in cat.objects:
        for s in top.covers_of(x):
            if s.root != x:
                return _fail("structure", (x,), f"sieve rooted at {s.root} filed under {x}")
            rep = validate_sieve(cat, s)
            if not rep:
                return _fail("sieve-invariant", (x,) + rep.witness, rep.detail)
    for x in cat.objects:
        if maximal_sieve(cat, x) not in top.covers.get(x, frozenset()):
            return _fail("maximality", (x,), f"the maximal sieve on {x} is not covering")
    for x in cat.objects:
        for s in top.covers_of(x):
            for h in cat.arrows_into(x):
                p = pullback_sieve(cat, h, s)
                if p not in top.covers.get(cat.dom[h], frozenset()):
                    return _fail(
                        "stability", (x, format_sieve(cat, s), h),
                        f"pullback of a cover on {x} along {h} is not covering {cat.dom[h]}")
    for x in cat.objects:
        lattice = all_sieves(cat, x)
        for t in lattice:
            if t in top.covers.get(x, frozenset()):
                continue
            for s in top.covers_of(x):
                if all(pullback_sieve(cat, f, t) in top.covers.get(cat.dom[f], frozenset())
                       for f in sorted(s.members)):
                    return _fail(
                        "local-character", (x, format_sieve(cat, t), format_sieve(cat, s)),
                        f"sieve {format_sieve(cat, t)} on {x} is locally covering over {format_sieve(cat, s)} but not listed")
    return PASS


def saturate_topology(cat: FiniteCategory, generating) -> GrothendieckTopology:
    """Smallest topology whose covers include the sieves generated per object.

    ``generating`` maps object -> iterable of generator families (morphism
    name lists). Runs the closure rules (maximal sieves, base-change
    stability, local character) round-robin to a fixpoint; the sieve lattice
    is finite, so this terminates.
    """
    objset = set(cat.objects)
    for x in generating:
        if x not in objset:
            raise ValueError(f"unknown object id: {x}")
    covers: dict[str, set[Sieve]] = {o: set() for o in cat.objects}
    for x, families in generating.items():
        for family in families:
            covers[x].add(generate_sieve(cat, x, family))
    for o in cat.objects:
        covers[o].add(maximal_sieve(cat, o))
    lattice = {o: all_sieves(cat, o) for o in cat.objects}
    changed = True
    while changed:
        changed = False
        for x in cat.objects:
            for s in sorted(covers[x], key=Sieve.sort_key):
                for h in cat.arrows_into(x):
                    p = pullback_sieve(cat, h, s)
                    if p not in covers[cat.dom[h]]:
                        covers[cat.dom[h]].add(p)
                        changed = True
        for x in cat.objects:
            for t in lattice[x]:
                if t in covers[x]:
                    continue
                for s in sorted(covers[x], key=Sieve.sort_key):
                    if all(pullback_sieve(cat, f, t) in covers[cat.dom[f]] for f in s.members):
                        covers[x].add(t)
                        changed = True
                        break
    return GrothendieckTopology(cat, {o: frozenset(v) for o, v in covers.items()})


def minimal_cover(top: GrothendieckTopology, x: str) -> Sieve:
    """Intersection of all covering sieves on x; covers are closed under
    intersection in a valid topology, so this is itself covering."""
    sieves = top.covers.get(x)
    if not sieves:
        raise ValueError(f"no covering sieves on {x}")
    members = frozenset.intersection(*(s.members for s in sieves))
    smin = Sieve(x, members)
    if smin not in sieves:
        raise ValueError(f"covers of {x} are not closed under intersection; topology invalid")
    return smin
