"""Reflexive-graph-enriched categories, homotopy categories, and the three
presheaf functors induced by the quotient.

Enrichment is 1-truncated: hom-sets carry unoriented homotopy edges, every
vertex is tacitly self-connected, and nothing above connected components is
retained. Whisker-compatibility is a validated input precondition — it is
what makes composition descend to the quotient — and inputs violating it
are rejected with the witnessing triple.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    PASS,
    FiniteCategory,
    PresheafMorphism,
    SetPresheaf,
    ValidationReport,
    hom_presheaves,
    yoneda,
)
from .core import _fail
from .util import UnionFind


def pi0(vertices, edges) -> tuple[tuple[str, ...], ...]:
    """Connected components of a reflexive graph (zig-zag closure)."""
    verts = sorted(set(vertices))
    vset = set(verts)
    uf = UnionFind(verts)
    for a, b in edges:
        if a not in vset or b not in vset:
            raise ValueError(f"edge endpoint is not a vertex: {a if a not in vset else b}")
        uf.union(a, b)
    return tuple(tuple(members) for _, members in sorted(uf.classes().items()))


@dataclass(frozen=True)
class EnrichedCategory:
    """A finite category whose hom-sets carry homotopy edges."""

    base: FiniteCategory
    edges: tuple[tuple[str, str], ...]


def _edge_classes(enr: EnrichedCategory) -> UnionFind:
    uf = UnionFind(enr.base.morphisms)
    for a, b in enr.edges:
        uf.union(a, b)
    return uf


def validate_enrichment(enr: EnrichedCategory) -> ValidationReport:
    cat = enr.base
    known = set(cat.morphisms)
    for a, b in enr.edges:
        if a not in known or b not in known:
            return _fail("edge-endpoints", (a, b), "edge endpoint is not a morphism")
        if cat.dom[a] != cat.dom[b] or cat.cod[a] != cat.cod[b]:
            return _fail("edge-endpoints", (a, b), "edge endpoints are not parallel")
    uf = _edge_classes(enr)
    groups = [members for _, members in sorted(uf.classes().items())]
    for members in groups:
        for i, f in enumerate(members):
            for f2 in members[i + 1:]:
                x = cat.cod[f]
                for h in cat.morphisms:
                    if cat.dom[h] != x:
                        continue
                    if uf.find(cat.compose(h, f)) != uf.find(cat.compose(h, f2)):
                        return _fail(
                            "whisker-compatibility", (f, f2, h),
                            f"{f} ~ {f2} but {h}∘{f} and {h}∘{f2} land in different classes")
                v = cat.dom[f]
                for g in cat.morphisms:
                    if cat.cod[g] != v:
                        continue
                    if uf.find(cat.compose(f, g)) != uf.find(cat.compose(f2, g)):
                        return _fail(
                            "whisker-compatibility", (f, f2, g),
                            f"{f} ~ {f2} but {f}∘{g} and {f2}∘{g} land in different classes")
    return PASS


@dataclass(frozen=True)
class HomotopyCategoryData:
    """The quotient category together with the localization assignment.

    gamma is identity on objects and surjective on morphisms; its fibers are
    exactly the edge-generated equivalence classes.
    """

    base: FiniteCategory
    ho: FiniteCategory
    gamma: dict[str, str]


def homotopy_category(enr: EnrichedCategory) -> HomotopyCategoryData:
    """Quotient each hom-set by its connected components.

    Class ids are '[rep]' with rep the lexicographically least member, so the
    quotient morphisms stay readable next to the originals in reports.
    """
    report = validate_enrichment(enr)
    if not report:
        raise ValueError(f"invalid enrichment ({report.law} at {report.witness}): {report.detail}")
    cat = enr.base
    uf = _edge_classes(enr)
    rep_of = {}
    for root, members in uf.classes().items():
        for m in members:
            rep_of[m] = root
    gamma = {m: f"[{rep_of[m]}]" for m in cat.morphisms}

    names: list[str] = []
    dom: dict[str, str] = {}
    cod: dict[str, str] = {}
    for m in cat.morphisms:
        q = gamma[m]
        if q not in dom:
            names.append(q)
            dom[q] = cat.dom[m]
            cod[q] = cat.cod[m]
    identity = {o: gamma[cat.identity[o]] for o in cat.objects}
    composition: dict[tuple[str, str], str] = {}
    reps = {gamma[m]: rep_of[m] for m in cat.morphisms}
    for qg in names:
        for qf in names:
            if cod[qf] == dom[qg]:
                composition[(qg, qf)] = gamma[cat.compose(reps[qg], reps[qf])]
    ho = FiniteCategory(cat.objects, tuple(names), dom, cod, identity, composition)
    return HomotopyCategoryData(cat, ho, gamma)


def gamma_star(h: HomotopyCategoryData, pre: SetPresheaf) -> SetPresheaf:
    """Precomposition: pull a presheaf on the quotient back to the base."""
    if pre.cat != h.ho:
        raise ValueError("presheaf does not live over the homotopy category")
    restrict = {m: dict(pre.restrict[h.gamma[m]]) for m in h.base.morphisms}
    return SetPresheaf(h.base, {o: pre.value[o] for o in h.base.objects}, restrict)


def gamma_star_morphism(h: HomotopyCategoryData, m: PresheafMorphism) -> PresheafMorphism:
    return PresheafMorphism(gamma_star(h, m.source), gamma_star(h, m.target),
                            {o: dict(m.components[o]) for o in h.base.objects})


def _shriek_tables(h: HomotopyCategoryData, pre: SetPresheaf):
    """Per object of the quotient: the coend classes of (object, section,
    quotient-morphism) triples and the canonical representative of each."""
    base, ho, gamma = h.base, h.ho, h.gamma
    tables = {}
    for z in ho.objects:
        triples = [
            (w, s, v)
            for w in base.objects
            for s in pre.value[w]
            for v in ho.hom(z, w)
        ]
        uf = UnionFind(triples)
        for u in base.morphisms:
            if base.is_identity(u):
                continue
            w2, w = base.dom[u], base.cod[u]
            gu = gamma[u]
            for s in pre.value[w]:
                s2 = pre.restrict[u][s]
                for v2 in ho.hom(z, w2):
                    uf.union((w2, s2, v2), (w, s, ho.compose(gu, v2)))
        rep = {}
        for root, members in uf.classes().items():
            for t in members:
                rep[t] = root
        tables[z] = rep
    return tables


def _triple_id(t: tuple[str, str, str]) -> str:
    return "({},{},{})".format(*t)


def gamma_shriek(h: HomotopyCategoryData, pre: SetPresheaf) -> SetPresheaf:
    """Left Kan extension along gamma, computed as a coend: triples
    (W, s, v: Z -> W) modulo (F(u)(s), v) ~ (s, gamma(u)∘v)."""
    if pre.cat != h.base:
        raise ValueError("presheaf does not live over the base category")
    ho = h.ho
    tables = _shriek_tables(h, pre)
    value = {z: tuple(sorted({_triple_id(r) for r in tables[z].values()})) for z in ho.objects}
    restrict: dict[str, dict[str, str]] = {}
    for w in ho.morphisms:
        z2, z = ho.dom[w], ho.cod[w]
        restrict[w] = {
            _triple_id(r): _triple_id(tables[z2][(r[0], r[1], ho.compose(r[2], w))])
            for r in set(tables[z].values())
        }
    return SetPresheaf(ho, value, restrict)


def gamma_shriek_morphism(h: HomotopyCategoryData, m: PresheafMorphism) -> PresheafMorphism:
    src, tgt = gamma_shriek(h, m.source), gamma_shriek(h, m.target)
    src_tables = _shriek_tables(h, m.source)
    tgt_tables = _shriek_tables(h, m.target)
    comps = {}
    for z in h.ho.objects:
        comps[z] = {
            _triple_id(r): _triple_id(tgt_tables[z][(r[0], m.components[r[0]][r[1]], r[2])])
            for r in set(src_tables[z].values())
        }
    return PresheafMorphism(src, tgt, comps)


def nt_key(m: PresheafMorphism) -> str:
    """Canonical id for a natural transformation."""
    parts = []
    for o in m.source.cat.objects:
        inner = ",".join(f"{u}->{t}" for u, t in sorted(m.components[o].items()))
        parts.append(f"{o}:{inner}")
    return "{" + ";".join(parts) + "}"


def gamma_lower_star(h: HomotopyCategoryData, pre: SetPresheaf) -> SetPresheaf:
    """Right Kan extension along gamma, computed as the end: sections over Z
    are the natural transformations gamma^*(y(Z)) -> F."""
    if pre.cat != h.base:
        raise ValueError("presheaf does not live over the base category")
    ho = h.ho
    sections: dict[str, dict[str, PresheafMorphism]] = {}
    for z in ho.objects:
        nts = hom_presheaves(gamma_star(h, yoneda(ho, z)), pre)
        sections[z] = {nt_key(t): t for t in nts}
    value = {z: tuple(sorted(sections[z])) for z in ho.objects}
    restrict: dict[str, dict[str, str]] = {}
    for w in ho.morphisms:
        z2, z = ho.dom[w], ho.cod[w]
        table = {}
        for key, t in sections[z].items():
            comps = {
                v: {u: t.components[v][ho.compose(w, u)] for u in ho.hom(v, z2)}
                for v in ho.objects
            }
            moved = PresheafMorphism(gamma_star(h, yoneda(ho, z2)), pre, comps)
            table[key] = nt_key(moved)
        restrict[w] = table
    return SetPresheaf(ho, value, restrict)
