"""Finite quotients F_n / N as concrete permutation groups.

Every quotient keeps a faithful permutation representation.  Elements are
numbered 0, 1, ... in breadth-first order from the identity (right
multiplication by a_1, a_1^-1, a_2, ...), so for a Cayley graph given as a
canonical automaton the element ids coincide with the vertex ids.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automata import StallingsAutomaton, fold_edges, is_complete, is_normal
from .errors import BudgetExceeded, NotCompleteError, NotNormalError, UnsupportedDescriptor
from .words import Word, letter_order

Perm = tuple[int, ...]

IDENTITY_BRUTE_FORCE_CAP = 10**7


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first, then ``q`` (right action)."""
    return tuple(q[i] for i in p)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse 1-based cycle notation such as ``"(1 2)(3)"`` into a 0-based image tuple."""
    text = text.strip()
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"bad cycle notation: {text!r}")
    pts = [[int(x) for x in c.replace(",", " ").split()] for c in cycles]
    top = max((p for c in pts for p in c), default=0)
    if degree is None:
        degree = top
    if top > degree or any(p < 1 for c in pts for p in c):
        raise ValueError(f"points of {text!r} exceed degree {degree}")
    img = list(range(degree))
    used = set()
    for c in pts:
        for p in c:
            if p in used:
                raise ValueError(f"point {p} repeated in {text!r}")
            used.add(p)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def format_cycles(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


@dataclass
class FiniteQuotient:
    rank: int
    gen_perms: list[Perm]
    elements: list[Perm] = field(default_factory=list)
    reps: list[Word] = field(default_factory=list)
    _index: dict[Perm, int] = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return len(self.gen_perms[0]) if self.gen_perms else 1

    def element_of(self, p: Perm) -> int:
        return self._index[p]

    def mul(self, x: int, y: int) -> int:
        return self._index[compose(self.elements[x], self.elements[y])]

    def inv(self, x: int) -> int:
        return self._index[perm_inverse(self.elements[x])]

    def power(self, x: int, k: int) -> int:
        out = 0
        base = x if k >= 0 else self.inv(x)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def comm(self, x: int, y: int) -> int:
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def evaluate(self, w: Word) -> int:
        p = self.elements[0]
        for x in w.letters:
            g = self.gen_perms[abs(x) - 1]
            p = compose(p, g if x > 0 else perm_inverse(g))
        return self._index[p]

    def generators(self) -> list[int]:
        return [self._index[g] for g in self.gen_perms]

    def subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {0}
        queue = [0]
        for x in queue:
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def normal_closure(self, gens: Iterable[int], within: Iterable[int]) -> frozenset[int]:
        """Normal closure of ``gens`` in the subgroup generated by ``within``."""
        conj = list(within)
        gset = list(gens)
        sub = self.subgroup(gset)
        changed = True
        while changed:
            changed = False
            for n in list(gset):
                for t in conj:
                    c = self.mul(self.mul(self.inv(t), n), t)
                    if c not in sub:
                        gset.append(c)
                        sub = self.subgroup(gset)
                        changed = True
        return sub

    def derived_subgroup(self, sub_gens: Sequence[int]) -> tuple[frozenset[int], list[int]]:
        """Derived subgroup of <sub_gens> and a generating set for it."""
        comms = [self.comm(x, y) for x, y in itertools.combinations(sub_gens, 2)]
        comms = [c for c in dict.fromkeys(comms) if c != 0]
        sub = self.normal_closure(comms, sub_gens)
        return sub, _small_generating_set(self, sub)

    def is_abelian(self) -> bool:
        gens = self.generators()
        return all(self.mul(x, y) == self.mul(y, x) for x, y in itertools.combinations(gens, 2))


def _small_generating_set(Q: FiniteQuotient, sub: frozenset[int]) -> list[int]:
    gens: list[int] = []
    cur = frozenset({0})
    for x in sorted(sub):
        if x not in cur:
            gens.append(x)
            cur = Q.subgroup(gens)
            if len(cur) == len(sub):
                break
    return gens


def group_from_permutations(rank: int, perms: Sequence[Perm]) -> FiniteQuotient:
    """The permutation group generated by the images of a_1, ..., a_rank."""
    perms = [tuple(p) for p in perms]
    if len(perms) != rank:
        raise ValueError(f"need {rank} permutations, got {len(perms)}")
    degrees = {len(p) for p in perms}
    if len(degrees) > 1:
        raise ValueError(f"permutations have different degrees {sorted(degrees)}")
    for p in perms:
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"{p} is not a permutation")
    degree = degrees.pop() if degrees else 1
    ident = tuple(range(degree))
    moves = []
    for x in letter_order(rank):
        g = perms[abs(x) - 1]
        moves.append((x, g if x > 0 else perm_inverse(g)))
    elements = [ident]
    reps = [Word(rank, ())]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        cur = elements[i]
        for x, g in moves:
            nxt = compose(cur, g)
            if nxt not in index:
                index[nxt] = len(elements)
                elements.append(nxt)
                reps.append(Word(rank, reps[i].letters + (x,)))
        i += 1
    return FiniteQuotient(rank, perms, elements, reps, index)


def quotient_from_core_automaton(aut: StallingsAutomaton) -> FiniteQuotient:
    """F / N for a normal finite-index N, read off its automaton (the Cayley graph)."""
    if not is_complete(aut):
        raise NotCompleteError("automaton is not complete")
    if not is_normal(aut):
        raise NotNormalError("automaton is not conjugation invariant")
    perms = [tuple(aut.target(v, a) for v in range(aut.num_vertices)) for a in range(1, aut.rank + 1)]
    Q = group_from_permutations(aut.rank, perms)
    if Q.order != aut.num_vertices:
        raise AssertionError("regular action has the wrong order")
    return Q


def coset_action(aut: StallingsAutomaton) -> list[Perm]:
    """Permutations of the cosets induced by the letters of a complete automaton."""
    if not is_complete(aut):
        raise NotCompleteError("automaton is not complete")
    return [tuple(aut.target(v, a) for v in range(aut.num_vertices)) for a in range(1, aut.rank + 1)]


def preimage_subgroup(Q: FiniteQuotient, S: Iterable[int]) -> StallingsAutomaton:
    """Automaton of the preimage in F_n of the subgroup <S> of Q."""
    K = Q.subgroup(S)
    coset_of: dict[int, int] = {}
    cosets: list[int] = []
    for e in range(Q.order):
        if e in coset_of:
            continue
        cid = len(cosets)
        cosets.append(e)
        for k in K:
            coset_of[Q.mul(k, e)] = cid
    edges = []
    for cid, e in enumerate(cosets):
        for a, g in enumerate(Q.generators(), start=1):
            edges.append((cid, a, coset_of[Q.mul(e, g)]))
    return fold_edges(Q.rank, len(cosets), edges, base=coset_of[0])


def derived_series(Q: FiniteQuotient) -> list[int]:
    """Orders of Q, Q', Q'', ... until the series stabilises."""
    orders = [Q.order]
    gens = [g for g in Q.generators() if g != 0]
    while True:
        sub, gens = Q.derived_subgroup(gens)
        if len(sub) == orders[-1]:
            return orders
        orders.append(len(sub))
        if len(sub) == 1:
            return orders


def derived_length(Q: FiniteQuotient) -> int | None:
    """Number of strict steps down to 1, or None if Q is not solvable."""
    series = derived_series(Q)
    if series[-1] != 1:
        return None
    return len(series) - 1


@dataclass(frozen=True)
class PseudovarietyDescriptor:
    """Ab, Ab(m), S_k (M is S_2), or the finite groups satisfying given identities.

    ``nilpotent`` is accepted only by the density entry points.
    """

    kind: str
    param: int | None = None
    identities: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.kind not in ("ab", "abm", "sk", "identities", "nilpotent"):
            raise ValueError(f"unknown pseudovariety kind {self.kind!r}")
        if self.kind in ("abm", "sk") and (self.param is None or self.param < 1):
            raise ValueError(f"{self.kind} needs a positive parameter")

    @classmethod
    def ab(cls):
        return cls("ab")

    @classmethod
    def abm(cls, m: int):
        return cls("abm", m)

    @classmethod
    def sk(cls, k: int):
        return cls("sk", k)

    @classmethod
    def meta(cls):
        return cls("sk", 2)

    @classmethod
    def nilpotent(cls):
        return cls("nilpotent")

    @classmethod
    def from_identities(cls, words: Iterable[Word]):
        return cls("identities", None, tuple(words))

    def is_all_finite_groups(self) -> bool:
        return self.kind == "identities" and all(w.is_identity() for w in self.identities)

    def label(self) -> str:
        if self.kind == "ab":
            return "ab"
        if self.kind == "abm":
            return f"ab:{self.param}"
        if self.kind == "sk":
            return "meta" if self.param == 2 else f"sk:{self.param}"
        if self.kind == "nilpotent":
            return "nilpotent"
        return "id:" + ";".join(format_identity(w) for w in self.identities)


def format_identity(w: Word) -> str:
    if w.is_identity():
        return "1"
    return "".join(f"x{x}" if x > 0 else f"X{-x}" for x in w.letters)


def satisfies_identities(Q: FiniteQuotient, identities: Sequence[Word]) -> bool:
    for w in identities:
        r = w.rank
        if w.is_identity():
            continue
        if Q.order ** r > IDENTITY_BRUTE_FORCE_CAP:
            raise BudgetExceeded(f"{Q.order}^{r} assignments exceed the brute-force cap")
        inverses = [Q.inv(x) for x in range(Q.order)]
        for assignment in itertools.product(range(Q.order), repeat=r):
            acc = 0
            for x in w.letters:
                g = assignment[abs(x) - 1]
                acc = Q.mul(acc, g if x > 0 else inverses[g])
            if acc != 0:
                return False
    return True


def satisfies(Q: FiniteQuotient, V: PseudovarietyDescriptor) -> bool:
    if V.kind == "ab":
        return Q.is_abelian()
    if V.kind == "abm":
        return Q.is_abelian() and all(Q.power(x, V.param) == 0 for x in range(Q.order))
    if V.kind == "sk":
        length = derived_length(Q)
        return length is not None and length <= V.param
    if V.kind == "nilpotent":
        raise UnsupportedDescriptor("nilpotent is only supported for density questions")
    return satisfies_identities(Q, V.identities)


def derp_check(Q: FiniteQuotient, N: Iterable[int], H: Iterable[int]) -> bool:
    """Whether G' equals the product set N'[N,H]H' for G = <N, H> = Q with N normal."""
    Nset = Q.subgroup(N)
    Hset = Q.subgroup(H)
    G = Q.subgroup(list(Nset) + list(Hset))
    if len(G) != Q.order:
        raise ValueError("N and H do not generate Q")
    for n in Nset:
        for g in Q.generators():
            if Q.mul(Q.mul(Q.inv(g), n), g) not in Nset:
                raise NotNormalError("N is not normal in Q")
    G_derived = Q.subgroup({Q.comm(x, y) for x in G for y in G})
    N_derived = Q.subgroup({Q.comm(x, y) for x in Nset for y in Nset})
    H_derived = Q.subgroup({Q.comm(x, y) for x in Hset for y in Hset})
    NH = Q.subgroup({Q.comm(n, h) for n in Nset for h in Hset})
    prod = {Q.mul(Q.mul(a, b), c) for a in N_derived for b in NH for c in H_derived}
    return prod == set(G_derived)


def quotient_summary(Q: FiniteQuotient) -> dict:
    series = derived_series(Q)
    return {
        "order": Q.order,
        "derived_series": series,
        "derived_length": len(series) - 1 if series[-1] == 1 else None,
        "generator_images": [format_cycles(p) for p in Q.gen_perms],
    }
