"""Acceptance criteria 1-11; each test records one PASS/FAIL line."""

import json
import os
import random
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import sympy

from cli_cases import CASES, K3_ARGS
from conftest import ACCEPTANCE_LINES, subgroup, w
from oracles import (abelian_quotient_separates, box_lattice_member, exponent, hall_subgroup_counts,
                     magnus_fox, mod_span, reduced_words, sympy_derived_length, sympy_group,
                     sympy_invariants, trace_perms)
from protop.abelian import (ab_closure, ab_is_dense, ab_member, ab_padic_intersection_check,
                            abm_closure, abm_is_dense, image_lattice, prime_power_parts)
from protop.automata import (basis, index, intersect, member, rank_of_subgroup,
                             stallings_from_generators, whole_group)
from protop.enumeration import _enumerate_cached, enumerate_index_subgroups
from protop.finite_quotients import (PseudovarietyDescriptor, coset_action, derp_check,
                                     group_from_permutations)
from protop.laurent import LaurentPoly
from protop.metabelian import fox_derivatives, in_second_derived, meta_is_dense, meta_member, separates
from protop.pseudovarieties import is_closed
from protop.words import Word, commutator, exponent_vector


@contextmanager
def criterion(n: int, text: str):
    try:
        yield
    except BaseException:
        _record(n, "FAIL", text)
        raise
    _record(n, "PASS", text)


def _record(n, status, text):
    line = f"criterion {n}: {status} {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def random_word(rng, rank, max_len, min_len=0):
    letters = [x for i in range(1, rank + 1) for x in (i, -i)]
    return Word(rank, [rng.choice(letters) for _ in range(rng.randint(min_len, max_len))])


def run_cli(argv, seed="0"):
    env = dict(os.environ, PYTHONHASHSEED=seed)
    env.pop("PROTOP_BUDGET_MS", None)
    return subprocess.run([sys.executable, "-m", "protop.cli", *argv], capture_output=True, env=env)


def test_criterion_1_subgroup_counts():
    with criterion(1, "index-m subgroup counts of F2 for m=1..5 match the Hall recursion"):
        expected = hall_subgroup_counts(2, 5)
        assert expected == [1, 3, 13, 71, 461]
        _enumerate_cached.cache_clear()
        for m in range(1, 6):
            start = time.perf_counter()
            subs = enumerate_index_subgroups(2, m)
            elapsed = time.perf_counter() - start
            assert len(subs) == expected[m - 1]
            assert len(set(subs)) == len(subs)
            assert all(index(K) == m and rank_of_subgroup(K) == 1 + m for K in subs)
            if m == 5:
                assert elapsed < 60


def test_criterion_2_example_fixture():
    with criterion(2, "b is not in H_n and H_n has infinite index, n=1..4"):
        for n in range(1, 5):
            gens = [w("a")] + [Word(2, [2] * k + [1] * k + [2, 1] + [-2] * k) for k in range(1, n + 1)]
            H = stallings_from_generators(2, gens)
            assert not member(H, w("b"))
            assert index(H) is None
            assert all(member(H, g) for g in gens)


def test_criterion_3_abelian_closure(H2):
    with criterion(3, "Cl_Ab(<aa,b>) has index 2, factors (2), basis of 3 accepting even-a words"):
        cl = ab_closure(H2)
        assert cl.index == 2
        assert cl.invariant_factors == [2]
        assert cl.invariant_factors == [d for d in sympy_invariants(image_lattice(H2), 2) if d != 1]
        assert len(cl.basis) == 3
        refold = stallings_from_generators(2, cl.basis)
        gens = image_lattice(H2)
        for letters in reduced_words(2, 8):
            v = exponent(letters, 2)
            expected = box_lattice_member(gens, v, 8)
            assert expected == (v[0] % 2 == 0)
            assert member(refold, Word(2, letters)) == expected


def test_criterion_4_abelian_membership_oracle():
    with criterion(4, "ab_member agrees with mod-2..9 separation on 200 random instances"):
        rng = random.Random(2024)
        compared = disagreements = 0
        for _ in range(200):
            gens = [random_word(rng, 2, 6, 1) for _ in range(rng.randint(1, 3))]
            u = random_word(rng, 2, 6)
            H = stallings_from_generators(2, gens)
            rows = [exponent_vector(g) for g in gens]
            inv = sympy_invariants(rows, 2)
            if 0 in inv or max(inv) > 9:
                continue
            compared += 1
            separated = abelian_quotient_separates(rows, exponent_vector(u), range(2, 10))
            disagreements += ab_member(H, u) == separated
        print(f"  compared {compared} instances, {disagreements} disagreements")
        assert compared > 0 and disagreements == 0


def test_criterion_5_abm(H2):
    with criterion(5, "Ab(m) closure and density checks"):
        assert abm_closure(H2, 2).automaton == ab_closure(H2).automaton
        H = subgroup("a,bb")
        rows = image_lattice(H)
        assert abm_is_dense(H, 3).dense and len(mod_span(rows, 3, 2)) == 9
        assert not abm_is_dense(H, 2).dense and len(mod_span(rows, 2, 2)) < 4
        assert not ab_is_dense(H)
        rep = abm_is_dense(H, 6)
        oracle = {p: len(mod_span(rows, p, 2)) == p * p for p in (2, 3)}
        assert rep.per_prime == oracle == {2: False, 3: True}
        assert rep.dense == all(oracle.values()) == (len(mod_span(rows, 6, 2)) == 36)


def test_criterion_6_prime_power_intersection(H2):
    with criterion(6, "prime-power closures intersect to the Ab-closure for <aa,b> and <aa,bbb>"):
        for H in (H2, subgroup("aa,bbb")):
            assert ab_padic_intersection_check(H)
            cl = ab_closure(H)
            inter = whole_group(2)
            for q in prime_power_parts(max(cl.invariant_factors)):
                inter = intersect(inter, abm_closure(H, q).automaton)
            assert inter == cl.automaton
            gens = image_lattice(H)
            for letters in reduced_words(2, 6):
                assert member(inter, Word(2, letters)) == box_lattice_member(gens, exponent(letters, 2), 6)


def test_criterion_7_s3_battery(K3):
    with criterion(7, "S3 fixture K3 verdicts and metabelian certificate"):
        assert not is_closed(K3, PseudovarietyDescriptor.ab()).verdict
        assert is_closed(K3, PseudovarietyDescriptor.sk(2)).verdict
        assert not is_closed(K3, PseudovarietyDescriptor.sk(1)).verdict
        assert ab_is_dense(K3)
        verdict = meta_member(K3, w("b"))
        assert verdict.status == "nonmember"
        K = verdict.certificate
        assert separates(K, basis(K3), w("b"))
        perms = coset_action(K)
        G = sympy_group(perms)
        assert sympy_derived_length(G) is not None and sympy_derived_length(G) <= 2
        assert all(trace_perms(perms, g.letters) == 0 for g in basis(K3))
        assert trace_perms(perms, w("b").letters) != 0
        assert meta_is_dense(K3) is False


def test_criterion_8_discrepancy_harness():
    with criterion(8, "validate-meta: K3 contradicted, E and F2 verified, each under 30 s"):
        cases = [(K3_ARGS, "contradicted"), (["--rank", "2", "--gens", "aa,bb,ab"], "verified"),
                 (["--rank", "2", "--gens", "a,b"], "verified")]
        for args, status in cases:
            start = time.perf_counter()
            proc = run_cli(["validate-meta", *args, "--json"])
            elapsed = time.perf_counter() - start
            assert proc.returncode == 0, proc.stderr
            data = json.loads(proc.stdout)
            assert data["status"] == status
            assert elapsed < 30
            if status == "contradicted":
                assert data["paper_result"]["candidates"]
                certs = [c for c in data["certificates"] if c["word"] == "b"]
                assert certs and certs[0]["status"] == "nonmember" and certs[0]["certificate"]


def test_criterion_9_fox_calculus():
    with criterion(9, "Fox fundamental identity on 500 words; F'' membership of commutators"):
        rng = random.Random(99)
        one = LaurentPoly.one(2)
        for i in range(500):
            u = random_word(rng, 2, 12)
            D = fox_derivatives(u)
            total = LaurentPoly.zero(2)
            for j, Dj in enumerate(D):
                total = total + Dj * (LaurentPoly.monomial(tuple(int(k == j) for k in range(2))) - one)
            assert total == LaurentPoly.monomial(exponent_vector(u)) - one
            if i % 10 == 0:
                expected, xs = magnus_fox(u.letters, 2)
                lhs = sum((e * (x - 1) for e, x in zip(expected, xs)), sympy.Integer(0))
                ab = exponent_vector(u)
                assert sympy.simplify(lhs - (xs[0] ** ab[0] * xs[1] ** ab[1] - 1)) == 0
        for _ in range(20):
            pieces = [random_word(rng, 2, 4, 1) for _ in range(4)]
            cc = commutator(commutator(pieces[0], pieces[1]), commutator(pieces[2], pieces[3]))
            assert in_second_derived(cc)
            assert all(e == 0 for e in magnus_fox(cc.letters, 2)[0])
        made = 0
        while made < 20:
            u, v = random_word(rng, 2, 5, 1), random_word(rng, 2, 5, 1)
            eu, ev = exponent_vector(u), exponent_vector(v)
            if eu[0] * ev[1] - eu[1] * ev[0] == 0:
                continue
            c = commutator(u, v)
            assert not in_second_derived(c)
            assert any(sympy.simplify(e) != 0 for e in magnus_fox(c.letters, 2)[0])
            made += 1


def test_criterion_10_derived_product():
    with criterion(10, "derp_check holds on 20 random finite instances with |Q| <= 24"):
        rng = random.Random(10)
        done = 0
        while done < 20:
            n = rng.randint(2, 5)
            perms = [tuple(rng.sample(range(n), n)) for _ in range(2)]
            Q = group_from_permutations(2, perms)
            if Q.order > 24:
                continue
            G = sympy_group(perms)
            assert G.order() == Q.order
            derived, _ = Q.derived_subgroup(Q.generators())
            assert len(derived) == G.derived_subgroup().order()
            N = sorted(Q.normal_closure([rng.randrange(Q.order)], Q.generators()))
            H = [Q.mul(g, rng.choice(N)) for g in Q.generators()]
            assert derp_check(Q, N, H)
            done += 1


def test_criterion_11_determinism():
    with criterion(11, "every CLI invocation gives byte-identical output across 3 runs"):
        invocations = [a for case in CASES for a in (case, case + ["--json"])]

        def three_runs(argv):
            return argv, [run_cli(argv, seed=str(s)) for s in (0, 1, 2)]

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(three_runs, invocations))
        for argv, runs in results:
            assert runs[0].returncode == 0, (argv, runs[0].stderr)
            outs = {(r.returncode, r.stdout, r.stderr) for r in runs}
            assert len(outs) == 1, argv
