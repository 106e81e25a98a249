"""Built-in fixture sites, referenced throughout the test suite.

A: one object, identity only, trivial topology.
B: two objects x, y with parallel f1, f2: x -> y joined by a homotopy edge;
   the family {f1, f2} generates the covers of y.
C: the base of B with discrete enrichment, same covers.
D: a cospan u: a -> c <- b: v, the family {u, v} covering c, discrete.
E: one object z with an idempotent h and an edge id_z ~ h, trivial topology.
"""
from __future__ import annotations

from .siteio import SiteDocument, load_site

_IDENTITY = {"0": "0", "1": "1"}

FIXTURES: dict[str, dict] = {
    "A": {
        "objects": ["p"],
        "morphisms": [],
        "composition": {},
        "edges": [],
        "covers": {},
        "presheaves": {},
    },
    "B": {
        "objects": ["x", "y"],
        "morphisms": [
            {"name": "f1", "dom": "x", "cod": "y"},
            {"name": "f2", "dom": "x", "cod": "y"},
        ],
        "composition": {},
        "edges": [["f1", "f2"]],
        "covers": {"y": [["f1", "f2"]]},
        "presheaves": {
            "K2": {
                "values": {"x": ["0", "1"], "y": ["0", "1"]},
                "restrictions": {"f1": dict(_IDENTITY), "f2": dict(_IDENTITY)},
            },
        },
    },
    "C": {
        "objects": ["x", "y"],
        "morphisms": [
            {"name": "f1", "dom": "x", "cod": "y"},
            {"name": "f2", "dom": "x", "cod": "y"},
        ],
        "composition": {},
        "edges": [],
        "covers": {"y": [["f1", "f2"]]},
        "presheaves": {
            "K2": {
                "values": {"x": ["0", "1"], "y": ["0", "1"]},
                "restrictions": {"f1": dict(_IDENTITY), "f2": dict(_IDENTITY)},
            },
        },
    },
    "D": {
        "objects": ["a", "b", "c"],
        "morphisms": [
            {"name": "u", "dom": "a", "cod": "c"},
            {"name": "v", "dom": "b", "cod": "c"},
        ],
        "composition": {},
        "edges": [],
        "covers": {"c": [["u", "v"]]},
        "presheaves": {
            "F": {
                "values": {"a": ["0", "1"], "b": ["s"], "c": ["s"]},
                "restrictions": {"u": {"s": "0"}, "v": {"s": "s"}},
            },
        },
    },
    "E": {
        "objects": ["z"],
        "morphisms": [{"name": "h", "dom": "z", "cod": "z"}],
        "composition": {"h∘h": "h"},
        "edges": [["id_z", "h"]],
        "covers": {},
        "presheaves": {},
    },
}

FIXTURE_NAMES = tuple(sorted(FIXTURES))


def fixture_doc(name: str) -> dict:
    try:
        return FIXTURES[name]
    except KeyError:
        raise ValueError(f"unknown fixture: {name!r} (have {', '.join(FIXTURE_NAMES)})") from None


def fixture_site(name: str) -> SiteDocument:
    return load_site(fixture_doc(name))
