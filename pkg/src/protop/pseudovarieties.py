"""Closedness and density across pseudovarieties, and the overgroup induction
for extension-closed pseudovarieties with caller-supplied oracles."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .abelian import ab_closure, ab_is_dense, abm_is_dense, nilpotent_density
from .automata import StallingsAutomaton, core_subgroup, index, is_subgroup
from .enumeration import overgroups
from .errors import OracleInconsistency, UnsupportedDescriptor
from .finite_quotients import PseudovarietyDescriptor, quotient_from_core_automaton, quotient_summary, satisfies
from .metabelian import MetaBudget, meta_closure_validated, meta_is_dense
from .words import Word


def _inv(letters: list[int]) -> list[int]:
    return [-x for x in reversed(letters)]


class _IdentityParser:
    """Recursive descent over x1..x9 / X1..X9, (..), [u,v] and ^k."""

    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.used = 0

    def error(self, msg: str):
        raise ValueError(f"{msg} at position {self.pos} in identity {self.text!r}")

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> list[int]:
        letters = self.expr()
        if self.pos != len(self.text):
            self.error("unexpected character")
        return letters

    def expr(self) -> list[int]:
        out: list[int] = []
        while self.peek() and self.peek() in "xX([1":
            out += self.term()
        return out

    def term(self) -> list[int]:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.pos += 1
        m = re.match(r"-?\d+", self.text[self.pos:])
        if not m:
            self.error("expected an exponent")
        self.pos += m.end()
        k = int(m.group())
        if k < 0:
            base = _inv(base)
        return base * abs(k)

    def atom(self) -> list[int]:
        ch = self.peek()
        if ch in ("x", "X"):
            m = re.match(r"[xX]([1-9])", self.text[self.pos:])
            if not m:
                self.error("variables are x1..x9")
            self.pos += 2
            i = int(m.group(1))
            self.used = max(self.used, i)
            return [i if ch == "x" else -i]
        if ch == "1":
            self.pos += 1
            return []
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            u = self.expr()
            self.expect(",")
            v = self.expr()
            self.expect("]")
            return _inv(u) + _inv(v) + u + v
        self.error("unexpected character")


def parse_identities(text: str) -> tuple[Word, ...]:
    """Parse ``;``-separated identity words; all share the rank of the largest variable used."""
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise ValueError("no identities given")
    parsed = []
    rank = 1
    for p in parts:
        parser = _IdentityParser(p)
        parsed.append(parser.parse())
        rank = max(rank, parser.used)
    return tuple(Word(rank, tuple(letters)) for letters in parsed)


def parse_descriptor(text: str) -> PseudovarietyDescriptor:
    t = text.strip()
    if t == "ab":
        return PseudovarietyDescriptor.ab()
    if t == "meta":
        return PseudovarietyDescriptor.meta()
    if t == "nilpotent":
        return PseudovarietyDescriptor.nilpotent()
    m = re.fullmatch(r"(ab|sk):(\d+)", t)
    if m:
        k = int(m.group(2))
        if k < 1:
            raise ValueError(f"parameter must be positive in {text!r}")
        return PseudovarietyDescriptor.abm(k) if m.group(1) == "ab" else PseudovarietyDescriptor.sk(k)
    if t.startswith("id:"):
        return PseudovarietyDescriptor.from_identities(parse_identities(t[3:]))
    raise ValueError(f"unknown pseudovariety {text!r}")


@dataclass(frozen=True)
class ClosednessReport:
    verdict: bool
    route: str
    summary: dict | None = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "route": self.route, "core_quotient": self.summary}


def is_closed(H: StallingsAutomaton, V: PseudovarietyDescriptor) -> ClosednessReport:
    if V.kind == "nilpotent":
        raise UnsupportedDescriptor("closedness for nilpotent is not supported")
    if V.is_all_finite_groups():
        # every f.g. subgroup is closed in the profinite topology
        return ClosednessReport(True, "profinite-trivial")
    if index(H) is None:
        if H.rank >= 2:
            # the closure contains a nontrivial normal (verbal) subgroup
            return ClosednessReport(False, "infinite-index-shortcut")
        # rank 1, H trivial: Z is residually in Ab and S_k, not in Ab(m)
        if V.kind in ("ab", "sk"):
            return ClosednessReport(True, "infinite-index-shortcut")
        if V.kind == "abm":
            return ClosednessReport(False, "infinite-index-shortcut")
        raise UnsupportedDescriptor("trivial subgroup of Z under custom identities")
    core, _ = core_subgroup(H)
    Q = quotient_from_core_automaton(core)
    return ClosednessReport(satisfies(Q, V), "core-quotient-check", quotient_summary(Q))


def is_dense(H: StallingsAutomaton, V: PseudovarietyDescriptor,
             budget: MetaBudget = MetaBudget()) -> bool | None:
    """Density verdict; None means the metabelian search ran out of budget."""
    if V.kind == "ab" or (V.kind == "sk" and V.param == 1):
        return ab_is_dense(H)
    if V.kind == "abm":
        return abm_is_dense(H, V.param).dense
    if V.kind == "nilpotent":
        return nilpotent_density(H)
    if V.kind == "sk" and V.param == 2:
        return meta_is_dense(H, budget)
    raise UnsupportedDescriptor(f"density is not supported for {V.label()}")


ClosedOracle = Callable[[StallingsAutomaton], bool]
DenseOracle = Callable[[StallingsAutomaton, StallingsAutomaton], bool]


def _smallest_closed(overs: list[StallingsAutomaton], closed: ClosedOracle) -> StallingsAutomaton:
    candidates = [K for K in overs if closed(K)]
    if not candidates:
        raise OracleInconsistency("no overgroup is closed")
    smallest = [K for K in candidates if all(is_subgroup(K, L) for L in candidates)]
    if not smallest:
        raise OracleInconsistency("the closed overgroups have no smallest member")
    return smallest[0]


def _dense_induction(overs: list[StallingsAutomaton], dense: DenseOracle) -> StallingsAutomaton:
    # overs[0] is the largest overgroup and overs[-1] is H itself; no entry
    # is contained in a later one
    closure = [0]
    for i in range(1, len(overs)):
        J = [j for j in range(i) if closure[j] == j and is_subgroup(overs[i], overs[j])]
        hits = [j for j in J if dense(overs[i], overs[j])]
        if len(hits) > 1:
            raise OracleInconsistency(f"overgroup {i} is dense in {len(hits)} closed overgroups")
        closure.append(hits[0] if hits else i)
    return overs[closure[-1]]


def extension_closed_closure(H: StallingsAutomaton, closed_oracle: ClosedOracle | None = None,
                             dense_oracle: DenseOracle | None = None,
                             max_vertices: int = 12) -> StallingsAutomaton:
    """Closure of H among its overgroups, driven by the supplied oracles.

    With a closedness oracle the answer is the smallest closed overgroup; with
    a density oracle (``dense_oracle(small, big)``: small is dense in big) it
    is found by induction from the largest overgroup down.  When both are
    given the two answers must agree.
    """
    if closed_oracle is None and dense_oracle is None:
        raise ValueError("need at least one oracle")
    overs = overgroups(H, max_vertices=max_vertices)
    results = []
    if closed_oracle is not None:
        results.append(_smallest_closed(overs, closed_oracle))
    if dense_oracle is not None:
        results.append(_dense_induction(overs, dense_oracle))
    if len(results) == 2 and results[0] != results[1]:
        raise OracleInconsistency("closedness and density oracles select different closures")
    return results[0]


@dataclass
class SkClosureRecord:
    k: int
    kind: str
    closure: object = None
    statement: str = ""

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind,
            "closure": None if self.closure is None else self.closure.to_json(),
            "statement": self.statement,
        }


def sk_closure_lower_bound(H: StallingsAutomaton, k: int, budget: MetaBudget = MetaBudget()) -> SkClosureRecord:
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return SkClosureRecord(1, "closure", ab_closure(H), "Cl_S1(H) = HF'")
    if k == 2:
        return SkClosureRecord(2, "closure", meta_closure_validated(H, budget), "Cl_S2(H) = HF''")
    return SkClosureRecord(k, "lower-bound-only", None,
                           f"Cl_S{k}(H) contains HF^({k}); no further claim is made")

