"""Closures for the pro-abelian and pro-Ab(m) topologies.

Everything reduces to the image lattice of H in Z^n.  The closure HF' (or
HF'F^m) is the preimage of that image, so when the quotient is finite its
automaton is the Cayley graph of Z^n / image, built over mixed-radix
coordinates on the invariant factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .automata import (StallingsAutomaton, basis, express_over_basis, fold_edges,
                       intersect, whole_group)
from .errors import InfiniteIndexError
from .intlin import LatticeQuotient, lattice_membership, lattice_quotient
from .words import Word, exponent_vector, format_word, word_to_json

DEFAULT_MAX_CAYLEY_VERTICES = 10**6


@dataclass
class ClosureDescriptor:
    topology: str
    rank: int
    generators: list[Word]
    finitely_generated: bool
    index: int | None
    invariant_factors: list[int]
    free_rank: int
    automaton: StallingsAutomaton | None = None
    basis: list[Word] | None = None
    member: Callable[[Word], bool] | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        from .automata import to_json as aut_json

        return {
            "topology": self.topology,
            "rank": self.rank,
            "generators": [_wj(w) for w in self.generators],
            "finitely_generated": self.finitely_generated,
            "index": self.index,
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "basis": None if self.basis is None else [_wj(w) for w in self.basis],
            "automaton": None if self.automaton is None else aut_json(self.automaton),
        }


def _wj(w: Word):
    try:
        return format_word(w)
    except ValueError:
        return word_to_json(w)


def image_lattice(H: StallingsAutomaton) -> list[tuple[int, ...]]:
    return [exponent_vector(b) for b in basis(H)]


def cayley_automaton(rank: int, q: LatticeQuotient) -> StallingsAutomaton:
    """Cayley graph of the finite group Z^rank / L w.r.t. the standard basis."""
    if q.index is None:
        raise InfiniteIndexError("quotient is infinite")
    radices = [e for e in q.factors if e > 1]
    where = [j for j, e in enumerate(q.factors) if e > 1]
    steps = []
    for i in range(rank):
        unit = [int(k == i) for k in range(rank)]
        c = q.coordinates(unit)
        steps.append([c[j] for j in where])

    def encode(coords):
        n = 0
        for x, r in zip(coords, radices):
            n = n * r + x
        return n

    def decode(n):
        out = []
        for r in reversed(radices):
            n, x = divmod(n, r)
            out.append(x)
        return out[::-1]

    total = q.index
    edges = []
    for v in range(total):
        coords = decode(v)
        for a, step in enumerate(steps, start=1):
            t = encode([(x + s) % r for x, s, r in zip(coords, step, radices)])
            edges.append((v, a, t))
    return fold_edges(rank, total, edges)


def _descriptor(topology: str, H: StallingsAutomaton, rows, modulus: int | None,
                max_vertices: int) -> ClosureDescriptor:
    n = H.rank
    if modulus is not None:
        rows = list(rows) + [tuple(modulus * int(i == j) for j in range(n)) for i in range(n)]
    q = lattice_quotient(rows, n)

    def is_member(w: Word) -> bool:
        if w.rank != n:
            raise ValueError("rank mismatch")
        return lattice_membership(rows, exponent_vector(w))[0]

    desc = ClosureDescriptor(
        topology=topology, rank=n, generators=basis(H),
        finitely_generated=q.index is not None, index=q.index,
        invariant_factors=q.torsion, free_rank=q.free_rank, member=is_member,
    )
    if q.index is not None and q.index <= max_vertices:
        desc.automaton = cayley_automaton(n, q)
        desc.basis = basis(desc.automaton)
    elif q.index is None and n <= 1:
        # F' = 1 in rank <= 1: the closure is H itself
        desc.finitely_generated = True
        desc.automaton = H
        desc.basis = basis(H)
    return desc


def ab_closure(H: StallingsAutomaton, max_vertices: int = DEFAULT_MAX_CAYLEY_VERTICES) -> ClosureDescriptor:
    return _descriptor("ab", H, image_lattice(H), None, max_vertices)


def abm_closure(H: StallingsAutomaton, m: int, max_vertices: int = DEFAULT_MAX_CAYLEY_VERTICES) -> ClosureDescriptor:
    if m < 1:
        raise ValueError("m must be positive")
    return _descriptor(f"ab:{m}", H, image_lattice(H), m, max_vertices)


def ab_member(H: StallingsAutomaton, w: Word) -> bool:
    if w.rank != H.rank:
        raise ValueError("rank mismatch")
    return lattice_membership(image_lattice(H), exponent_vector(w))[0]


def abm_member(H: StallingsAutomaton, w: Word, m: int) -> bool:
    from .intlin import lattice_membership_mod

    if w.rank != H.rank:
        raise ValueError("rank mismatch")
    return lattice_membership_mod(image_lattice(H), exponent_vector(w), m)


def ab_is_dense(H: StallingsAutomaton) -> bool:
    return lattice_quotient(image_lattice(H), H.rank).index == 1


def nilpotent_density(H: StallingsAutomaton) -> bool:
    # N-density coincides with Ab-density for f.g. subgroups of free groups
    return ab_is_dense(H)


def prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def prime_power_parts(m: int) -> list[int]:
    """The prime powers p^k exactly dividing m."""
    out = []
    for p in prime_factors(m):
        q = 1
        while m % (q * p) == 0:
            q *= p
        out.append(q)
    return out


@dataclass(frozen=True)
class DensityReport:
    m: int
    dense: bool
    per_prime: dict[int, bool]

    def to_json(self) -> dict:
        return {"m": self.m, "dense": self.dense,
                "per_prime": {str(p): v for p, v in sorted(self.per_prime.items())}}


def _abm_index(H: StallingsAutomaton, m: int) -> int:
    n = H.rank
    rows = image_lattice(H) + [tuple(m * int(i == j) for j in range(n)) for i in range(n)]
    return lattice_quotient(rows, n).index  # type: ignore[return-value]


def abm_is_dense(H: StallingsAutomaton, m: int) -> DensityReport:
    if m < 1:
        raise ValueError("m must be positive")
    direct = _abm_index(H, m) == 1
    per_prime = {p: _abm_index(H, p) == 1 for p in prime_factors(m)}
    if direct != all(per_prime.values()):
        raise AssertionError(f"Ab({m}) density disagrees with its prime decomposition")
    return DensityReport(m, direct, per_prime)


def ab_padic_intersection_check(H: StallingsAutomaton, exponent_bound: int = 10**4) -> bool:
    """Check Cl_Ab(H) against the intersection of the Ab(p^k)-closures, p^k || exponent."""
    cl = ab_closure(H)
    if cl.index is None:
        raise InfiniteIndexError("the Ab-closure has infinite index")
    e = max(cl.invariant_factors, default=1)
    if e > exponent_bound:
        raise ValueError(f"quotient exponent {e} exceeds the bound {exponent_bound}")
    inter = whole_group(H.rank)
    for q in prime_power_parts(e):
        inter = intersect(inter, abm_closure(H, q).automaton)
    return inter == cl.automaton


def relative_ab_quotient(H: StallingsAutomaton, G: StallingsAutomaton) -> LatticeQuotient:
    """Structure of G / HG' for H <= G, with G written over its own basis."""
    gb = basis(G)
    r = len(gb)
    rows = []
    for h in basis(H):
        vec = [0] * r
        for i in express_over_basis(G, h):
            vec[abs(i) - 1] += 1 if i > 0 else -1
        rows.append(tuple(vec))
    return lattice_quotient(rows, r)


def ab_dense_in(H: StallingsAutomaton, G: StallingsAutomaton) -> bool:
    """Whether H is Ab-dense in the free group G (H <= G assumed)."""
    return relative_ab_quotient(H, G).index == 1
