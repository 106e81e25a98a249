"""Exhaustive and sampled enumeration of presheaves within a value bound."""
from __future__ import annotations

from itertools import product
from random import Random
from typing import Iterator

from .core import FiniteCategory, SetPresheaf

LABELS = ("s0", "s1", "s2", "s3")


def enumerate_presheaves(cat: FiniteCategory, max_card: int) -> Iterator[SetPresheaf]:
    """All presheaves with every value of cardinality <= max_card, on the
    canonical labels. Backtracks over the non-identity restriction maps and
    checks each contravariance constraint as soon as its participants are
    assigned."""
    if max_card > len(LABELS):
        raise ValueError(f"value bound {max_card} exceeds the label pool")
    objs = cat.objects
    nonid = [m for m in cat.morphisms if not cat.is_identity(m)]
    midx = {m: i for i, m in enumerate(nonid)}

    # (g, f, gf) with identity-free operands; triggered once all three maps exist
    constraints = []
    for g in nonid:
        for f in nonid:
            if cat.composable(g, f):
                gf = cat.composition[(g, f)]
                trigger = max(midx[g], midx[f], midx.get(gf, -1))
                constraints.append((trigger, g, f, gf))
    triggers: list[list[tuple[str, str, str]]] = [[] for _ in nonid]
    for trigger, g, f, gf in constraints:
        triggers[trigger].append((g, f, gf))

    for sizes in product(range(max_card + 1), repeat=len(objs)):
        value = {o: tuple(LABELS[:k]) for o, k in zip(objs, sizes)}
        assigned: dict[str, dict[str, str]] = {
            cat.identity[o]: {s: s for s in value[o]} for o in objs
        }

        def rec(i: int) -> Iterator[SetPresheaf]:
            if i == len(nonid):
                yield SetPresheaf(cat, dict(value), {m: dict(t) for m, t in assigned.items()})
                return
            m = nonid[i]
            src = value[cat.cod[m]]
            tgt = value[cat.dom[m]]
            for choice in product(tgt, repeat=len(src)):
                table = dict(zip(src, choice))
                assigned[m] = table
                ok = True
                for g, f, gf in triggers[i]:
                    rg, rf, rgf = assigned[g], assigned[f], assigned[gf]
                    for s in value[cat.cod[g]]:
                        if rgf[s] != rf[rg[s]]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    yield from rec(i + 1)
            assigned.pop(m, None)

        yield from rec(0)


def count_presheaves(cat: FiniteCategory, max_card: int) -> int:
    return sum(1 for _ in enumerate_presheaves(cat, max_card))


def sample_presheaves(cat: FiniteCategory, max_card: int, k: int, rng: Random) -> list[SetPresheaf]:
    """Reservoir-sample k presheaves from the full enumeration."""
    reservoir: list[SetPresheaf] = []
    for i, pre in enumerate(enumerate_presheaves(cat, max_card)):
        if len(reservoir) < k:
            reservoir.append(pre)
        else:
            j = rng.randint(0, i)
            if j < k:
                reservoir[j] = pre
    return reservoir
