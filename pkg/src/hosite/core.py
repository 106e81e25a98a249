"""Finite categories, set-valued presheaves, and natural transformations.

Objects, morphisms, and presheaf elements are opaque string ids and all
comparisons go by id. Hom-sets enumerate in morphism declaration order;
set-valued outputs are emitted sorted by id so every report is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True)
class ValidationReport:
    """Pass, or the first violated law together with its witnesses."""

    ok: bool
    law: str = ""
    witness: tuple[str, ...] = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


PASS = ValidationReport(True)


def _fail(law: str, witness, detail: str) -> ValidationReport:
    return ValidationReport(False, law, tuple(witness), detail)


@dataclass(frozen=True)
class FiniteCategory:
    """A category given by explicit tables.

    The composition table is stored, never derived: user-supplied sites must
    be checkable, not trusted, so ``validate_category`` is the single source
    of truth for the laws.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    dom: dict[str, str]
    cod: dict[str, str]
    identity: dict[str, str]
    composition: dict[tuple[str, str], str]

    def __post_init__(self):
        into: dict[str, list[str]] = {o: [] for o in self.objects}
        hom: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            d, c = self.dom.get(m), self.cod.get(m)
            if c in into:
                into[c].append(m)
            hom.setdefault((d, c), []).append(m)
        object.__setattr__(self, "_into", {o: tuple(v) for o, v in into.items()})
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})
        object.__setattr__(self, "_ids", frozenset(self.identity.values()))

    def hom(self, v: str, x: str) -> tuple[str, ...]:
        return self._hom.get((v, x), ())

    def arrows_into(self, x: str) -> tuple[str, ...]:
        return self._into.get(x, ())

    def compose(self, g: str, f: str) -> str:
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise ValueError(f"no composite for {g}∘{f}") from None

    def is_identity(self, m: str) -> bool:
        return m in self._ids

    def composable(self, g: str, f: str) -> bool:
        return self.cod.get(f) == self.dom.get(g)


def make_category(objects, arrows, composition=None, identity_prefix="id_"):
    """Build a FiniteCategory from non-identity arrow data.

    ``arrows`` is a sequence of (name, dom, cod); identities are synthesized
    as ``id_<object>`` and their composites filled in. ``composition`` maps
    (g, f) pairs of non-identity names to the composite name. The result is
    NOT validated here; run validate_category.
    """
    objects = tuple(objects)
    arrow_names = tuple(a[0] for a in arrows)
    identity = {o: identity_prefix + o for o in objects}
    clash = set(arrow_names) & set(identity.values())
    if clash:
        raise ValueError(f"morphism name reserved for identities: {sorted(clash)!r}")
    dom = {a[0]: a[1] for a in arrows}
    cod = {a[0]: a[2] for a in arrows}
    for o, i in identity.items():
        dom[i] = cod[i] = o
    morphisms = arrow_names + tuple(identity[o] for o in objects)
    table: dict[tuple[str, str], str] = {}
    if composition:
        table.update({(g, f): h for (g, f), h in composition.items()})
    for m in morphisms:
        d, c = dom.get(m), cod.get(m)
        if d in identity:
            table[(m, identity[d])] = m
        if c in identity:
            table[(identity[c], m)] = m
    return FiniteCategory(objects, morphisms, dom, cod, identity, table)


def validate_category(cat: FiniteCategory) -> ValidationReport:
    """Check the category laws exhaustively; report the first violation."""
    if len(set(cat.objects)) != len(cat.objects):
        return _fail("structure", (), "duplicate object ids")
    if len(set(cat.morphisms)) != len(cat.morphisms):
        return _fail("structure", (), "duplicate morphism ids")
    objset = set(cat.objects)
    for m in cat.morphisms:
        if cat.dom.get(m) not in objset or cat.cod.get(m) not in objset:
            return _fail("structure", (m,), f"morphism {m} has unknown dom/cod")
    if set(cat.identity) != objset:
        return _fail("structure", (), "identity assignment does not cover the objects")
    for o in cat.objects:
        i = cat.identity[o]
        if i not in cat.dom or cat.dom[i] != o or cat.cod[i] != o:
            return _fail("structure", (o, i), f"identity of {o} is not an endomorphism of {o}")

    index = {m: k for k, m in enumerate(cat.morphisms)}
    for (g, f), h in sorted(cat.composition.items(), key=lambda kv: (index.get(kv[0][0], -1), index.get(kv[0][1], -1))):
        if g not in index or f not in index or h not in index:
            return _fail("composability-table", (g, f), "composition entry names an unknown morphism")
        if cat.cod[f] != cat.dom[g]:
            return _fail("composability-table", (g, f), "composition defined on a non-composable pair")
        if cat.dom[h] != cat.dom[f] or cat.cod[h] != cat.cod[g]:
            return _fail("composability-table", (g, f), f"composite {h} has the wrong endpoints")
    for g in cat.morphisms:
        for f in cat.morphisms:
            if cat.composable(g, f) and (g, f) not in cat.composition:
                return _fail("composability-table", (g, f), "missing composite for a composable pair")

    for f in cat.morphisms:
        left = cat.composition[(cat.identity[cat.cod[f]], f)]
        if left != f:
            return _fail("identity-law", (cat.identity[cat.cod[f]], f), f"id∘{f} = {left} != {f}")
        right = cat.composition[(f, cat.identity[cat.dom[f]])]
        if right != f:
            return _fail("identity-law", (f, cat.identity[cat.dom[f]]), f"{f}∘id = {right} != {f}")

    for h in cat.morphisms:
        for g in cat.morphisms:
            if not cat.composable(h, g):
                continue
            hg = cat.composition[(h, g)]
            for f in cat.morphisms:
                if not cat.composable(g, f):
                    continue
                gf = cat.composition[(g, f)]
                if cat.composition[(h, gf)] != cat.composition[(hg, f)]:
                    return _fail(
                        "associativity", (h, g, f),
                        f"{h}∘({g}∘{f}) = {cat.composition[(h, gf)]} but "
                        f"({h}∘{g})∘{f} = {cat.composition[(hg, f)]}")
    return PASS


@dataclass(frozen=True)
class SetPresheaf:
    """A contravariant functor to finite sets, given by explicit tables.

    ``restrict[f]`` for f: V -> X maps value(X) into value(V).
    """

    cat: FiniteCategory
    value: dict[str, tuple[str, ...]]
    restrict: dict[str, dict[str, str]]

    def apply(self, f: str, s: str) -> str:
        return self.restrict[f][s]


def make_presheaf(cat, value, restrict, fill_identities=True) -> SetPresheaf:
    """Normalize presheaf data: sort values, synthesize identity restrictions."""
    val = {o: tuple(sorted(value.get(o, ()))) for o in cat.objects}
    res = {m: dict(t) for m, t in restrict.items()}
    if fill_identities:
        for o in cat.objects:
            res.setdefault(cat.identity[o], {s: s for s in val[o]})
    return SetPresheaf(cat, val, res)


def constant_presheaf(cat, elements) -> SetPresheaf:
    elems = tuple(sorted(elements))
    return SetPresheaf(
        cat,
        {o: elems for o in cat.objects},
        {m: {s: s for s in elems} for m in cat.morphisms},
    )


def empty_presheaf(cat) -> SetPresheaf:
    return SetPresheaf(cat, {o: () for o in cat.objects}, {m: {} for m in cat.morphisms})


def validate_presheaf(pre: SetPresheaf, cat: FiniteCategory | None = None) -> ValidationReport:
    """Check functoriality exhaustively; report the first violation."""
    if cat is None:
        cat = pre.cat
    elif pre.cat != cat:
        return _fail("structure", (), "presheaf declared over a different category")
    if set(pre.value) != set(cat.objects):
        return _fail("structure", (), "value assignment does not cover the objects")
    if set(pre.restrict) != set(cat.morphisms):
        return _fail("structure", (), "restriction assignment does not cover the morphisms")
    for m in cat.morphisms:
        table = pre.restrict[m]
        src, tgt = set(pre.value[cat.cod[m]]), set(pre.value[cat.dom[m]])
        if set(table) != src or not set(table.values()) <= tgt:
            return _fail("restriction-map", (m,), f"restriction along {m} is not a total map value({cat.cod[m]}) -> value({cat.dom[m]})")
    for o in cat.objects:
        i = cat.identity[o]
        for s in pre.value[o]:
            if pre.restrict[i][s] != s:
                return _fail("identity-law", (i, s), f"restriction along {i} moves {s}")
    for g in cat.morphisms:
        for f in cat.morphisms:
            if not cat.composable(g, f):
                continue
            gf = cat.composition[(g, f)]
            for s in pre.value[cat.cod[g]]:
                if pre.restrict[gf][s] != pre.restrict[f][pre.restrict[g][s]]:
                    return _fail("contravariance", (g, f, s), f"restrict({gf}) != restrict({f})∘restrict({g}) at {s}")
    return PASS


def yoneda(cat: FiniteCategory, x: str) -> SetPresheaf:
    """The representable presheaf Hom(-, x); restriction is precomposition."""
    if x not in set(cat.objects):
        raise ValueError(f"unknown object id: {x}")
    value = {v: tuple(sorted(cat.hom(v, x))) for v in cat.objects}
    restrict = {}
    for g in cat.morphisms:
        restrict[g] = {h: cat.compose(h, g) for h in value[cat.cod[g]]}
    return SetPresheaf(cat, value, restrict)


@dataclass(frozen=True)
class PresheafMorphism:
    source: SetPresheaf
    target: SetPresheaf
    components: dict[str, dict[str, str]]


def validate_presheaf_morphism(m: PresheafMorphism) -> ValidationReport:
    if m.source.cat != m.target.cat:
        return _fail("structure", (), "source and target live over different categories")
    cat = m.source.cat
    if set(m.components) != set(cat.objects):
        return _fail("structure", (), "components do not cover the objects")
    for o in cat.objects:
        comp = m.components[o]
        if set(comp) != set(m.source.value[o]) or not set(comp.values()) <= set(m.target.value[o]):
            return _fail("structure", (o,), f"component at {o} is not a total map into the target value")
    for f in cat.morphisms:
        v, x = cat.dom[f], cat.cod[f]
        for s in m.source.value[x]:
            if m.components[v][m.source.restrict[f][s]] != m.target.restrict[f][m.components[x][s]]:
                return _fail("naturality", (f, s), f"square for {f} fails at {s}")
    return PASS


def identity_morphism(pre: SetPresheaf) -> PresheafMorphism:
    return PresheafMorphism(pre, pre, {o: {s: s for s in pre.value[o]} for o in pre.cat.objects})


def compose_morphisms(m2: PresheafMorphism, m1: PresheafMorphism) -> PresheafMorphism:
    if m1.target != m2.source:
        raise ValueError("morphisms not composable: target/source mismatch")
    comps = {
        o: {s: m2.components[o][m1.components[o][s]] for s in m1.source.value[o]}
        for o in m1.source.cat.objects
    }
    return PresheafMorphism(m1.source, m2.target, comps)


def componentwise_bijection(m: PresheafMorphism):
    """(True, None) if every component is a bijection, else (False, first bad object)."""
    for o in m.source.cat.objects:
        comp = m.components[o]
        if len(set(comp.values())) != len(comp) or len(comp) != len(m.target.value[o]):
            return False, o
    return True, None


def hom_presheaves(u: SetPresheaf, f: SetPresheaf) -> tuple[PresheafMorphism, ...]:
    """Enumerate all natural transformations u -> f.

    Backtracking over objects in declaration order with naturality checked as
    soon as both endpoints of a morphism are assigned; agrees with the plain
    product-filter enumeration and is deterministic.
    """
    if u.cat != f.cat:
        raise ValueError("presheaves live over different categories")
    cat = u.cat
    objs = cat.objects
    n = len(objs)
    oidx = {o: i for i, o in enumerate(objs)}
    checks: list[list[str]] = [[] for _ in range(n)]
    for m in cat.morphisms:
        if cat.is_identity(m):
            continue
        checks[max(oidx[cat.dom[m]], oidx[cat.cod[m]])].append(m)

    found: list[dict[str, dict[str, str]]] = []
    comps: list[dict[str, str]] = [{} for _ in range(n)]

    def assign(i: int):
        if i == n:
            found.append({objs[k]: dict(comps[k]) for k in range(n)})
            return
        src = u.value[objs[i]]
        tgt = f.value[objs[i]]
        for choice in product(tgt, repeat=len(src)):
            comps[i] = dict(zip(src, choice))
            ok = True
            for m in checks[i]:
                cv = comps[oidx[cat.dom[m]]]
                cx = comps[oidx[cat.cod[m]]]
                ru, rf = u.restrict[m], f.restrict[m]
                for s in u.value[cat.cod[m]]:
                    if cv[ru[s]] != rf[cx[s]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                assign(i + 1)

    assign(0)
    return tuple(PresheafMorphism(u, f, c) for c in found)


def product_presheaf(f: SetPresheaf, g: SetPresheaf):
    """Componentwise product with projections; element ids are '(a,b)'."""
    if f.cat != g.cat:
        raise ValueError("presheaves live over different categories")
    cat = f.cat
    pair = lambda a, b: f"({a},{b})"
    value = {
        o: tuple(sorted(pair(a, b) for a in f.value[o] for b in g.value[o]))
        for o in cat.objects
    }
    restrict = {}
    for m in cat.morphisms:
        x = cat.cod[m]
        restrict[m] = {
            pair(a, b): pair(f.restrict[m][a], g.restrict[m][b])
            for a in f.value[x] for b in g.value[x]
        }
    prod = SetPresheaf(cat, value, restrict)
    p1 = PresheafMorphism(prod, f, {o: {pair(a, b): a for a in f.value[o] for b in g.value[o]} for o in cat.objects})
    p2 = PresheafMorphism(prod, g, {o: {pair(a, b): b for a in f.value[o] for b in g.value[o]} for o in cat.objects})
    return prod, p1, p2


def equalizer_presheaf(u: PresheafMorphism, v: PresheafMorphism):
    """The subpresheaf where u and v agree, with its inclusion."""
    if u.source != v.source or u.target != v.target:
        raise ValueError("equalizer needs a parallel pair")
    f = u.source
    cat = f.cat
    value = {
        o: tuple(s for s in f.value[o] if u.components[o][s] == v.components[o][s])
        for o in cat.objects
    }
    restrict = {
        m: {s: f.restrict[m][s] for s in value[cat.cod[m]]}
        for m in cat.morphisms
    }
    eq = SetPresheaf(cat, value, restrict)
    incl = PresheafMorphism(eq, f, {o: {s: s for s in value[o]} for o in cat.objects})
    return eq, incl
