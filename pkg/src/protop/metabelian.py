"""Pro-metabelian closures Cl_M(H) = HF''.

Membership in HF'' is semi-decided from both sides:

* positive: search products h over a basis of H for one with h^-1 w in F''.
  F'' membership uses abelianised Fox derivatives (Magnus embedding), and the
  search is deduplicated by the image of h in F/F'';
* negative: search finite-index K >= H with w not in K and F/Core(K)
  metabelian, which certifies w outside every M-closed subgroup containing H.

The two searches are interleaved batch by batch until one succeeds or the
budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import budget as wallclock
from .abelian import ClosureDescriptor, ab_closure, ab_is_dense, relative_ab_quotient
from .automata import (StallingsAutomaton, basis, core_subgroup, express_over_basis,
                       index, is_subgroup, member, stallings_from_generators)
from .enumeration import enumerate_index_subgroups
from .finite_quotients import (PseudovarietyDescriptor, coset_action, group_from_permutations,
                               quotient_from_core_automaton, quotient_summary, satisfies)
from .laurent import LaurentPoly
from .words import Word, exponent_vector, product

META = PseudovarietyDescriptor.meta()


def fox_derivatives(w: Word) -> list[LaurentPoly]:
    """Abelianised Fox derivatives D_1(w), ..., D_n(w)."""
    n = w.rank
    ab = [0] * n
    acc: list[dict] = [{} for _ in range(n)]
    for x in w.letters:
        i = abs(x) - 1
        if x > 0:
            mono = tuple(ab)
            acc[i][mono] = acc[i].get(mono, 0) + 1
            ab[i] += 1
        else:
            ab[i] -= 1
            mono = tuple(ab)
            acc[i][mono] = acc[i].get(mono, 0) - 1
    return [LaurentPoly(n, d) for d in acc]


def in_second_derived(w: Word) -> bool:
    return not any(exponent_vector(w)) and all(d.is_zero() for d in fox_derivatives(w))


class _MetaElement:
    """Image of a word in F/F'': exponent vector plus Fox derivatives, flattened
    to a dict ``(i, monomial) -> coefficient``."""

    __slots__ = ("ab", "terms", "key")

    def __init__(self, ab: tuple[int, ...], terms: dict):
        self.ab = ab
        self.terms = terms
        self.key = (ab, frozenset(terms.items()))

    @classmethod
    def of(cls, w: Word) -> "_MetaElement":
        terms = {(i, mono): c for i, d in enumerate(fox_derivatives(w)) for mono, c in d.terms.items()}
        return cls(exponent_vector(w), terms)

    def __mul__(self, other: "_MetaElement") -> "_MetaElement":
        shift = self.ab
        terms = dict(self.terms)
        for (i, mono), c in other.terms.items():
            k = (i, tuple(a + b for a, b in zip(mono, shift)))
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                del terms[k]
        return _MetaElement(tuple(a + b for a, b in zip(self.ab, other.ab)), terms)


def magnus_key(w: Word) -> tuple:
    """A key that identifies the image of w in F/F''."""
    return _MetaElement.of(w).key


@dataclass(frozen=True)
class MetaBudget:
    max_length: int = 12
    max_index: int = 7
    max_states: int = 50_000


@dataclass
class MetaMembershipVerdict:
    status: str
    word: Word
    subgroup_basis: list[Word]
    factorization: list[int] | None = None
    residue: Word | None = None
    certificate: StallingsAutomaton | None = None
    certificate_quotient: dict | None = None
    report: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .abelian import _wj
        from .automata import to_json

        out = {
            "status": self.status,
            "word": _wj(self.word),
            "subgroup_basis": [_wj(b) for b in self.subgroup_basis],
            "factorization": self.factorization,
            "residue": None if self.residue is None else _wj(self.residue),
            "certificate": None,
            "report": self.report,
        }
        if self.certificate is not None:
            out["certificate"] = {
                "automaton": to_json(self.certificate),
                "index": self.certificate.num_vertices,
                "core_quotient": self.certificate_quotient,
            }
        return out


def _multiply_out(B: list[Word], factorization: list[int], rank: int) -> Word:
    return product(rank, [B[abs(i) - 1] if i > 0 else ~B[abs(i) - 1] for i in factorization])


def _member_verdict(H_basis: list[Word], w: Word, factorization: list[int], report: dict) -> MetaMembershipVerdict:
    h = _multiply_out(H_basis, factorization, w.rank)
    residue = ~h * w
    if not in_second_derived(residue):
        raise AssertionError("membership witness does not lie in F''")
    return MetaMembershipVerdict("member", w, H_basis, factorization=factorization, residue=residue, report=report)


def separates(K: StallingsAutomaton, H_basis: list[Word], w: Word) -> bool:
    """K contains H, misses w, and F/Core(K) is metabelian."""
    if index(K) is None or member(K, w):
        return False
    if not all(member(K, b) for b in H_basis):
        return False
    return satisfies(group_from_permutations(K.rank, coset_action(K)), META)


def _nonmember_verdict(H_basis: list[Word], w: Word, K: StallingsAutomaton, report: dict) -> MetaMembershipVerdict:
    if not separates(K, H_basis, w):
        raise AssertionError("separating subgroup failed re-verification")
    Q = group_from_permutations(K.rank, coset_action(K))
    summary = quotient_summary(Q)
    return MetaMembershipVerdict("nonmember", w, H_basis, certificate=K,
                                 certificate_quotient=summary, report=report)


def _low_rank_verdict(H: StallingsAutomaton, w: Word) -> MetaMembershipVerdict:
    # F'' = 1 in rank <= 1, so Cl_M(H) = H
    B = basis(H)
    report = {"route": "rank<=1"}
    if member(H, w):
        return _member_verdict(B, w, express_over_basis(H, w), report)
    if index(H) is not None:
        K = H
    else:
        j = abs(exponent_vector(w)[0])
        K = stallings_from_generators(1, [Word(1, (1,) * (j + 1))])
    return _nonmember_verdict(B, w, K, report)


def meta_member(H: StallingsAutomaton, w: Word, budget: MetaBudget = MetaBudget()) -> MetaMembershipVerdict:
    """Decide w in HF'' by interleaving the positive and negative searches."""
    if w.rank != H.rank:
        raise ValueError("rank mismatch")
    if H.rank <= 1:
        return _low_rank_verdict(H, w)
    rank = H.rank
    B = basis(H)
    steps = []
    for i, b in enumerate(B, start=1):
        steps.append((i, _MetaElement.of(b)))
        steps.append((-i, _MetaElement.of(~b)))
    target = magnus_key(w)
    start = _MetaElement.of(Word(rank, ()))
    seen = {start.key}
    frontier: list[tuple[_MetaElement, list[int]]] = [(start, [])]
    length, next_index = 0, 1
    pos_done = neg_done = False
    stats = {"positive_lengths": 0, "positive_states": 1, "negative_max_index": 0, "subgroups_checked": 0}
    while not (pos_done and neg_done):
        if wallclock.expired():
            stats["stopped"] = "wall-clock"
            break
        if not pos_done:
            if length > 0:
                nxt = []
                for elt, fac in frontier:
                    for j, s in steps:
                        if fac and fac[-1] == -j:
                            continue
                        new = elt * s
                        if new.key not in seen:
                            seen.add(new.key)
                            nxt.append((new, fac + [j]))
                    if len(seen) > budget.max_states:
                        pos_done = True
                        break
                frontier = nxt
            stats["positive_lengths"] = length
            stats["positive_states"] = len(seen)
            for elt, fac in frontier:
                if elt.key == target:
                    return _member_verdict(B, w, fac, stats)
            length += 1
            if length > budget.max_length or not frontier:
                pos_done = True
        if not neg_done:
            for K in enumerate_index_subgroups(rank, next_index):
                stats["subgroups_checked"] += 1
                if separates(K, B, w):
                    stats["negative_max_index"] = next_index
                    return _nonmember_verdict(B, w, K, stats)
            stats["negative_max_index"] = next_index
            next_index += 1
            if next_index > budget.max_index:
                neg_done = True
    return MetaMembershipVerdict("exhausted", w, B, report=stats)


def meta_is_closed(H: StallingsAutomaton) -> bool:
    if H.rank <= 1:
        return True
    if index(H) is None:
        return False
    core, _ = core_subgroup(H)
    return satisfies(quotient_from_core_automaton(core), META)


def meta_is_dense(H: StallingsAutomaton, budget: MetaBudget = MetaBudget()) -> bool | None:
    """True/False, or None when the membership searches ran out of budget."""
    if H.rank == 0:
        return True
    if H.rank == 1:
        return index(H) == 1
    if not ab_is_dense(H):
        return False
    undecided = False
    for i in range(1, H.rank + 1):
        v = meta_member(H, Word(H.rank, (i,)), budget)
        if v.status == "nonmember":
            return False
        if v.status == "exhausted":
            undecided = True
    return None if undecided else True


@dataclass
class PaperMetaReport:
    G: ClosureDescriptor
    g_index: int | None
    hg_index: int | None
    claimed_index: int | None
    candidates: list[StallingsAutomaton] | None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        from .abelian import _wj
        from .automata import to_json

        return {
            "G": self.G.to_json(),
            "G_index": self.g_index,
            "HGprime_index": self.hg_index,
            "claimed_index": self.claimed_index,
            "candidates": None if self.candidates is None else [
                {"automaton": to_json(K), "basis": [_wj(b) for b in basis(K)]} for K in self.candidates],
            "notes": self.notes,
        }


def meta_closure_paper(H: StallingsAutomaton, max_index: int = 8) -> PaperMetaReport:
    """Closure via G = HF', the index product [F:G][G:HG'] and a candidate filter.

    This transcribes the published procedure as is; it asserts HG' = HF'',
    which need not hold (see :func:`meta_closure_validated`).
    """
    G = ab_closure(H)
    if G.index is None:
        return PaperMetaReport(G, None, None, None, [], ["[F:G] is infinite"])
    if G.automaton is None:
        return PaperMetaReport(G, G.index, None, None, None, ["G too large to materialise"])
    rel = relative_ab_quotient(H, G.automaton)
    if rel.index is None:
        return PaperMetaReport(G, G.index, None, None, [], ["[G:HG'] is infinite"])
    claimed = G.index * rel.index
    if claimed > max_index:
        return PaperMetaReport(G, G.index, rel.index, claimed, None,
                               [f"claimed index {claimed} exceeds the enumeration budget {max_index}"])
    candidates = [K for K in enumerate_index_subgroups(H.rank, claimed)
                  if is_subgroup(H, K) and meta_is_closed(K)]
    return PaperMetaReport(G, G.index, rel.index, claimed, candidates)


@dataclass
class ValidatedMetaReport:
    paper: PaperMetaReport
    status: str
    reason: str
    certificates: list[MetaMembershipVerdict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "paper_result": self.paper.to_json(),
            "certificates": [c.to_json() for c in self.certificates],
        }


def meta_closure_validated(H: StallingsAutomaton, budget: MetaBudget = MetaBudget(),
                           max_index: int = 8) -> ValidatedMetaReport:
    """Run the closed-form route and check its answer against membership certificates."""
    paper = meta_closure_paper(H, max_index=max_index)
    if paper.claimed_index is None and paper.candidates is not None:
        return ValidatedMetaReport(paper, "verified",
                                   "HF'' <= HG' <= G, so infinite index of HG' forces infinite index of HF''")
    if paper.candidates is None:
        return ValidatedMetaReport(paper, "unverified", "; ".join(paper.notes))
    if len(paper.candidates) != 1:
        return ValidatedMetaReport(paper, "contradicted",
                                   f"expected a unique candidate of index {paper.claimed_index}, "
                                   f"found {len(paper.candidates)}")
    C = paper.candidates[0]
    if not is_subgroup(H, C):
        return ValidatedMetaReport(paper, "contradicted", "candidate does not contain H")
    certs = []
    exhausted = False
    for b in basis(C):
        v = meta_member(H, b, budget)
        certs.append(v)
        if v.status == "nonmember":
            return ValidatedMetaReport(paper, "contradicted",
                                       f"candidate basis word {b} is outside Cl_M(H)", certs)
        if v.status == "exhausted":
            exhausted = True
    if exhausted:
        return ValidatedMetaReport(paper, "unverified", "membership search exhausted its budget", certs)
    return ValidatedMetaReport(paper, "verified",
                               "every basis word of the M-closed candidate lies in HF''", certs)
