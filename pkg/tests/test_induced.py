from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hosite import (
    GrothendieckTopology,
    Sieve,
    all_sieves,
    bracket_sieve,
    check_comparison_lemmas,
    check_cover_reflecting,
    check_sheaf_transfer,
    generate_sieve,
    induced_topology,
    is_bracket_cover,
    maximal_sieve,
    random_site,
    saturate_topology,
    thicken_sieve,
    validate_topology,
)
import hosite.induced as induced_mod
from hosite.induced import TheoremViolation


def test_bracket_sieve_examples(site_b):
    h = site_b.homotopy
    j = generate_sieve(h.base, "y", ["f1", "f2"])
    assert bracket_sieve(h, j).members == {"[f1]"}
    j1 = generate_sieve(h.base, "y", ["f1"])
    assert bracket_sieve(h, j1).members == {"[f1]"}
    assert bracket_sieve(h, maximal_sieve(h.base, "y")) == maximal_sieve(h.ho, "y")


def test_thicken_examples(site_b, site_c):
    h = site_b.homotopy
    assert thicken_sieve(h, generate_sieve(h.base, "y", ["f1"])).members == {"f1", "f2"}
    assert thicken_sieve(h, maximal_sieve(h.base, "y")) == maximal_sieve(h.base, "y")
    hc = site_c.homotopy
    for x in hc.base.objects:
        for s in all_sieves(hc.base, x):
            assert thicken_sieve(hc, s) == s


def test_is_bracket_cover_examples(site_b):
    h = site_b.homotopy
    top = site_b.topology
    assert is_bracket_cover(h, top, Sieve("y", frozenset(["[f1]"])))
    assert not is_bracket_cover(h, top, Sieve("y", frozenset()))
    assert is_bracket_cover(h, top, maximal_sieve(h.ho, "y"))


def test_induced_topology_fixture_b(site_b):
    h = site_b.homotopy
    rep = induced_topology(h, site_b.topology)
    assert rep.agreement
    assert rep.induced.covers["y"] == frozenset([
        Sieve("y", frozenset(["[f1]"])), maximal_sieve(h.ho, "y")])
    assert rep.induced.covers["x"] == frozenset([maximal_sieve(h.ho, "x")])
    assert validate_topology(rep.induced)


def test_induced_topology_trivial_on_a(site_a):
    rep = induced_topology(site_a.homotopy, site_a.topology)
    assert rep.induced.covers["p"] == frozenset([maximal_sieve(site_a.homotopy.ho, "p")])


def _relabel_through_gamma(h, top):
    covers = {}
    for x, sieves in top.covers.items():
        covers[x] = frozenset(
            Sieve(x, frozenset(h.gamma[f] for f in s.members)) for s in sieves)
    return GrothendieckTopology(h.ho, covers)


def test_induced_equals_input_on_discrete(site_c):
    h = site_c.homotopy
    rep = induced_topology(h, site_c.topology)
    assert rep.induced == _relabel_through_gamma(h, site_c.topology)


def test_all_topologies_on_discrete_base_are_fixed(site_c):
    # exhaustive over every Grothendieck topology on the base of the
    # discrete control fixture
    cat = site_c.category
    h = site_c.homotopy
    lattices = {x: all_sieves(cat, x) for x in cat.objects}
    candidates = []
    from itertools import product as iproduct
    per_object = []
    for x in cat.objects:
        options = []
        maximal = maximal_sieve(cat, x)
        rest = [s for s in lattices[x] if s != maximal]
        for r in range(len(rest) + 1):
            for chosen in combinations(rest, r):
                options.append(frozenset(chosen) | {maximal})
        per_object.append(options)
    count = 0
    for combo in iproduct(*per_object):
        top = GrothendieckTopology(cat, dict(zip(cat.objects, combo)))
        if not validate_topology(top):
            continue
        count += 1
        rep = induced_topology(h, top)
        assert rep.induced == _relabel_through_gamma(h, top)
    assert count >= 3


def test_cover_reflecting_on_fixtures(all_sites):
    for site in all_sites.values():
        rep = induced_topology(site.homotopy, site.topology)
        result = check_cover_reflecting(site.homotopy, site.topology, rep.induced)
        assert result.verdict == "pass"


def test_cover_reflecting_preimage_example(site_b):
    h = site_b.homotopy
    u = Sieve("y", frozenset(["[f1]"]))
    pre = frozenset(f for f in h.base.arrows_into("y") if h.gamma[f] in u.members)
    assert pre == frozenset(["f1", "f2"])
    assert Sieve("y", pre) in site_b.topology.covers["y"]


def test_comparison_lemmas_on_fixture_b(site_b):
    h = site_b.homotopy
    rep = induced_topology(h, site_b.topology)
    results = {c.name: c for c in check_comparison_lemmas(h, site_b.topology, rep.induced)}
    assert results["iso-comparison"].verdict == "pass"
    assert results["sheaf-implications"].verdict == "pass"
    assert results["converse-witness"].data["found"] is True
    assert results["converse-witness"].data["sections"] == 2
    assert results["converse-witness"].data["families"] == 4
    assert results["thickening"].verdict == "pass"


def test_comparison_lemmas_discrete_has_no_witness(site_c):
    h = site_c.homotopy
    rep = induced_topology(h, site_c.topology)
    results = {c.name: c for c in check_comparison_lemmas(h, site_c.topology, rep.induced)}
    assert results["converse-witness"].data["found"] is False


def test_discrete_implications_hold_with_converses(site_c):
    # with no edges the pullback is an equivalence, so the sheaf-condition
    # implications become equivalences
    from hosite import classify_presheaf, gamma_star
    from hosite.enumeration import enumerate_presheaves
    h = site_c.homotopy
    induced = induced_topology(h, site_c.topology).induced
    for pre in enumerate_presheaves(h.ho, 2):
        assert classify_presheaf(pre, induced).kind == \
            classify_presheaf(gamma_star(h, pre), site_c.topology).kind


def test_sheaf_transfer_on_fixtures(all_sites):
    for site in all_sites.values():
        rep = induced_topology(site.homotopy, site.topology)
        result = check_sheaf_transfer(site.homotopy, site.topology, rep.induced)
        assert result.verdict == "pass"


def test_theorem_violation_raised_on_tampered_test(site_b, monkeypatch):
    # breaking the isomorphism test must surface as a loud theorem violation
    monkeypatch.setattr(induced_mod, "is_bracket_cover", lambda h, t, u: False)
    with pytest.raises(TheoremViolation) as err:
        induced_mod.induced_topology(site_b.homotopy, site_b.topology)
    assert "disagree" in str(err.value)
    assert err.value.counterexample


def test_monotonicity_of_induced(site_b):
    cat = site_b.category
    h = site_b.homotopy
    small = saturate_topology(cat, {"y": [["f1", "f2"]]})
    large = saturate_topology(cat, {"y": [["f1", "f2"]], "x": [[]]})
    for x in cat.objects:
        assert small.covers[x] <= large.covers[x]
    rep_small = induced_topology(h, small)
    rep_large = induced_topology(h, large)
    for x in cat.objects:
        assert rep_small.induced.covers[x] <= rep_large.induced.covers[x]


@settings(max_examples=25, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=5000))
def test_random_site_agreement(seed):
    site = random_site(seed)
    rep = induced_topology(site.homotopy, site.topology)
    assert rep.agreement
    assert validate_topology(rep.induced)
    assert check_cover_reflecting(site.homotopy, site.topology, rep.induced).verdict == "pass"


@settings(max_examples=15, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=3000))
def test_random_discrete_collapse(seed):
    # strip the edges off a random site: the induced topology must be the
    # input topology relabelled through the (bijective) gamma
    from hosite import EnrichedCategory, homotopy_category
    site = random_site(seed)
    h = homotopy_category(EnrichedCategory(site.category, ()))
    rep = induced_topology(h, site.topology)
    assert len(set(h.gamma.values())) == len(site.category.morphisms)
    assert rep.induced == _relabel_through_gamma(h, site.topology)


@settings(max_examples=15, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=3000))
def test_random_site_monotonicity(seed):
    site = random_site(seed)
    cat = site.category
    top = site.topology
    generating = {x: [sorted(s.members) for s in top.covers_of(x)] for x in cat.objects}
    extra = dict(generating)
    first = cat.objects[0]
    extra[first] = extra.get(first, []) + [sorted(cat.arrows_into(first))[:1]]
    bigger = saturate_topology(cat, extra)
    for x in cat.objects:
        assert top.covers[x] <= bigger.covers[x]
    rep_small = induced_topology(site.homotopy, top)
    rep_large = induced_topology(site.homotopy, bigger)
    for x in cat.objects:
        assert rep_small.induced.covers[x] <= rep_large.induced.covers[x]


def test_thickening_properties_on_fixtures(all_sites):
    for site in all_sites.values():
        h = site.homotopy
        for x in h.base.objects:
            for j in site.topology.covers_of(x):
                jd = thicken_sieve(h, j)
                assert j.members <= jd.members
                assert thicken_sieve(h, jd) == jd
                assert bracket_sieve(h, jd) == bracket_sieve(h, j)
