import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import subgroup, w
from protop.abelian import ab_closure, ab_dense_in
from protop.automata import index, stallings_from_generators, whole_group
from protop.enumeration import enumerate_index_subgroups, overgroups
from protop.errors import OracleInconsistency, UnsupportedDescriptor
from protop.finite_quotients import PseudovarietyDescriptor as PV
from protop.metabelian import MetaBudget, meta_closure_validated
from protop.pseudovarieties import (extension_closed_closure, is_closed, is_dense, parse_descriptor,
                                    parse_identities, sk_closure_lower_bound)
from protop.words import Word

word_st = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=5).map(lambda ls: Word(2, ls))
gens_st = st.lists(word_st, min_size=1, max_size=3)


def test_descriptor_grammar():
    assert parse_descriptor("ab") == PV.ab()
    assert parse_descriptor("ab:6") == PV.abm(6)
    assert parse_descriptor("meta") == PV.sk(2)
    assert parse_descriptor("sk:3") == PV.sk(3)
    d = parse_descriptor("id:[x1,x2];x1^4")
    assert d.kind == "identities"
    assert [x.letters for x in d.identities] == [(-1, -2, 1, 2), (1, 1, 1, 1)]
    assert parse_identities("(x1x2)^-1")[0].letters == (-2, -1)
    for bad in ("ab:0", "foo", "id:y1", "id:[x1x2]", "sk:"):
        with pytest.raises(ValueError):
            parse_descriptor(bad)


def test_is_closed_examples(E, K3):
    r = is_closed(E, PV.ab())
    assert r.verdict and r.route == "core-quotient-check" and r.summary["order"] == 2
    assert not is_closed(K3, PV.ab()).verdict
    assert is_closed(K3, PV.sk(2)).verdict
    assert not is_closed(K3, PV.sk(1)).verdict
    r = is_closed(subgroup("a"), PV.from_identities(parse_identities("x1X1")))
    assert r.verdict and r.route == "profinite-trivial"
    r = is_closed(subgroup("aa,b"), PV.meta())
    assert not r.verdict and r.route == "infinite-index-shortcut"


def test_rank_one_rules():
    trivial = stallings_from_generators(1, [])
    assert is_closed(trivial, PV.ab()).verdict
    assert is_closed(trivial, PV.sk(3)).verdict
    assert not is_closed(trivial, PV.abm(2)).verdict
    with pytest.raises(UnsupportedDescriptor):
        is_closed(trivial, PV.from_identities(parse_identities("x1^2")))
    H = stallings_from_generators(1, [Word(1, (1, 1, 1))])
    assert is_closed(H, PV.abm(3)).verdict and not is_closed(H, PV.abm(2)).verdict


def test_is_dense_examples(K3, F2, H2):
    assert is_dense(K3, PV.ab()) is True
    assert is_dense(K3, PV.meta()) is False
    for V in (PV.ab(), PV.abm(4), PV.meta(), PV.nilpotent(), PV.sk(1)):
        assert is_dense(F2, V) is True
    assert is_dense(H2, PV.abm(2)) is False
    with pytest.raises(UnsupportedDescriptor):
        is_dense(K3, PV.sk(3))
    with pytest.raises(UnsupportedDescriptor):
        is_closed(K3, PV.nilpotent())


def test_meta_density_can_exhaust(K3):
    assert is_dense(K3, PV.meta(), MetaBudget(max_length=1, max_index=1)) is None


def finite_index_fixtures():
    out = [subgroup("aa,bb,ab"), whole_group(2)]
    for m in (2, 3, 4):
        out += enumerate_index_subgroups(2, m)
    return out


def test_route_consistency_and_monotonicity():
    for H in finite_index_fixtures():
        ab = is_closed(H, PV.ab()).verdict
        assert ab == (ab_closure(H).automaton == H)
        meta = is_closed(H, PV.meta()).verdict
        s3 = is_closed(H, PV.sk(3)).verdict
        assert (not ab or meta) and (not meta or s3)
        if index(H) <= 3:
            rep = meta_closure_validated(H)
            if rep.status == "verified":
                assert meta == (rep.paper.candidates == [H])


@settings(max_examples=30, deadline=None)
@given(gens_st)
def test_dense_ab_equals_dense_nilpotent(gens):
    H = stallings_from_generators(2, gens)
    assert is_dense(H, PV.ab()) == is_dense(H, PV.nilpotent())


def test_profinite_mock_returns_h():
    rng = random.Random(11)
    for _ in range(50):
        gens = [Word(2, [rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 5))])
                for _ in range(rng.randint(1, 3))]
        H = stallings_from_generators(2, gens)
        if H.num_vertices > 8:
            continue
        got = extension_closed_closure(H, closed_oracle=lambda K: True,
                                       dense_oracle=lambda small, big: small == big)
        assert got == H


def test_only_whole_group_closed(H2, F2):
    for H in (H2, subgroup("a,babaB"), subgroup("ab")):
        overs = overgroups(H)
        if F2 in overs:
            assert extension_closed_closure(H, closed_oracle=lambda K: K == F2) == F2


def test_no_closed_overgroup_is_inconsistent(H2):
    with pytest.raises(OracleInconsistency):
        extension_closed_closure(H2, closed_oracle=lambda K: False)
    with pytest.raises(OracleInconsistency):
        extension_closed_closure(H2, dense_oracle=lambda small, big: True,
                                 closed_oracle=lambda K: K == H2)
    with pytest.raises(ValueError):
        extension_closed_closure(H2)


def ab_closed(K):
    return is_closed(K, PV.ab()).verdict


def test_ab_oracles_on_h2(H2, F2):
    cl = ab_closure(H2).automaton
    # Cl_Ab(H2) has index 2 and is not a folded quotient of A(H2)
    assert cl not in overgroups(H2)
    assert extension_closed_closure(H2, closed_oracle=ab_closed) == F2
    assert extension_closed_closure(H2, dense_oracle=ab_dense_in) == H2
    with pytest.raises(OracleInconsistency):
        extension_closed_closure(H2, closed_oracle=ab_closed, dense_oracle=ab_dense_in)


@settings(max_examples=40, deadline=None)
@given(gens_st)
def test_ab_closure_found_when_it_is_an_overgroup(gens):
    H = stallings_from_generators(2, gens)
    if H.num_vertices > 6:
        return
    cl = ab_closure(H)
    if cl.automaton is None or cl.automaton not in overgroups(H):
        return
    assert extension_closed_closure(H, closed_oracle=ab_closed) == cl.automaton


def test_ab_closure_found_for_closed_input():
    H = subgroup("aa,b,abA")
    assert ab_closure(H).automaton == H
    assert extension_closed_closure(H, closed_oracle=ab_closed) == H


def test_sk_records(K3):
    rec = sk_closure_lower_bound(K3, 1)
    assert rec.kind == "closure" and rec.closure.index == 1
    rec = sk_closure_lower_bound(K3, 2)
    assert rec.kind == "closure" and rec.closure.status == "contradicted"
    rec = sk_closure_lower_bound(K3, 3)
    assert rec.kind == "lower-bound-only" and rec.closure is None
    assert "F^(3)" in rec.statement
