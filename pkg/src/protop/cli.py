"""Command-line front end: ``protop <subcommand> ...``.

Text output ends with a one-line verdict in capitals; ``--json`` prints a
single JSON document instead.  Exit codes: 0 verdict, 2 usage error,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import budget
from .abelian import ab_closure, abm_closure, ab_member, abm_member
from .automata import (StallingsAutomaton, basis, core_subgroup, index, intersect, member,
                       stallings_from_generators, to_dot, to_json)
from .enumeration import enumerate_index_subgroups, overgroups
from .errors import BudgetExceeded, ProtopError
from .finite_quotients import group_from_permutations, parse_cycles, preimage_subgroup
from .intlin import matrix_to_json, smith_normal_form
from .metabelian import MetaBudget, meta_closure_paper, meta_closure_validated, meta_member
from .pseudovarieties import is_closed, is_dense, parse_descriptor, sk_closure_lower_bound
from .schreier import express_over_schreier_basis, schreier_ball
from .words import format_word, letter_name, parse_word, parse_word_list


class UsageError(Exception):
    pass


def _fmt(w) -> str:
    return format_word(w)


def _quotient_subgroup(rank: int, spec: str, preimage: str | None) -> StallingsAutomaton:
    assigned: dict[int, str] = {}
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"expected letter=(cycles) in {part!r}")
        name, cycles = part.split("=", 1)
        w = parse_word(name.strip(), rank)
        if len(w.letters) != 1 or w.letters[0] < 0:
            raise UsageError(f"{name!r} is not a generator name")
        assigned[w.letters[0]] = cycles
    subgroup_parts = [p for p in (preimage or "").split(";") if p.strip()]
    texts = list(assigned.values()) + subgroup_parts
    degree = max([int(x) for t in texts for x in t.replace("(", " ").replace(")", " ").split()] + [1])
    perms = [parse_cycles(assigned.get(i, "()"), degree) for i in range(1, rank + 1)]
    Q = group_from_permutations(rank, perms)
    try:
        S = [Q.element_of(parse_cycles(p, degree)) for p in subgroup_parts]
    except KeyError:
        raise UsageError("preimage permutation is not in the generated group") from None
    return preimage_subgroup(Q, S)


def _subgroup(args, which: str = "gens") -> StallingsAutomaton:
    rank = args.rank
    text = getattr(args, which, None)
    if which == "gens" and args.gens_from_quotient:
        if text:
            raise UsageError("give either --gens or --gens-from-quotient")
        return _quotient_subgroup(rank, args.gens_from_quotient, args.preimage)
    if text is None:
        if which == "gens":
            raise UsageError("a subgroup is required (--gens or --gens-from-quotient)")
        raise UsageError(f"--{which.replace('_', '-')} is required")
    return stallings_from_generators(rank, parse_word_list(text, rank))


def _word(args):
    if not args.word:
        raise UsageError("--word is required")
    return parse_word(args.word, args.rank)


def _budget(args) -> MetaBudget:
    return MetaBudget(max_length=args.budget_len, max_index=args.budget_index)


def _aut_lines(aut: StallingsAutomaton) -> list[str]:
    lines = [f"vertices: {aut.num_vertices}"]
    lines += [f"  {s} --{letter_name(a)}--> {t}" for s, a, t in aut.edges]
    return lines


class Result:
    def __init__(self, data: dict, lines: list[str], verdict: str, automaton: StallingsAutomaton | None = None):
        self.data = data
        self.lines = lines
        self.verdict = verdict
        self.automaton = automaton


def cmd_stallings(args) -> Result:
    H = _subgroup(args)
    return Result({"automaton": to_json(H)}, _aut_lines(H), f"AUTOMATON WITH {H.num_vertices} VERTICES", H)


def cmd_member(args) -> Result:
    H = _subgroup(args)
    w = _word(args)
    if args.pv is None:
        ok = member(H, w)
        return Result({"topology": "discrete", "word": _fmt(w), "member": ok},
                      [f"word: {_fmt(w)}"], "MEMBER" if ok else "NOT MEMBER")
    V = parse_descriptor(args.pv)
    if V.kind == "ab" or (V.kind == "sk" and V.param == 1):
        ok = ab_member(H, w)
    elif V.kind == "abm":
        ok = abm_member(H, w, V.param)
    elif V.kind == "sk" and V.param == 2:
        v = meta_member(H, w, _budget(args))
        lines = [f"word: {_fmt(w)}", "basis: " + ", ".join(_fmt(b) for b in v.subgroup_basis)]
        if v.status == "member":
            lines.append(f"factorization: {v.factorization}")
            lines.append(f"residue in F'': {_fmt(v.residue)}")
            verdict = "MEMBER"
        elif v.status == "nonmember":
            lines.append(f"separating subgroup of index {v.certificate.num_vertices}:")
            lines += _aut_lines(v.certificate)
            q = v.certificate_quotient
            lines.append(f"core quotient order {q['order']}, derived series {q['derived_series']}")
            verdict = "NOT MEMBER"
        else:
            lines.append(f"search report: {json.dumps(v.report, sort_keys=True)}")
            verdict = "EXHAUSTED"
        data = {"topology": "meta", **v.to_json()}
        return Result(data, lines, verdict, v.certificate)
    else:
        raise UsageError(f"membership is not supported for {V.label()}")
    return Result({"topology": V.label(), "word": _fmt(w), "member": ok},
                  [f"word: {_fmt(w)}", f"topology: {V.label()}"], "MEMBER" if ok else "NOT MEMBER")


def cmd_basis(args) -> Result:
    H = _subgroup(args)
    B = basis(H)
    return Result({"basis": [_fmt(b) for b in B], "rank": len(B)},
                  [_fmt(b) for b in B], f"BASIS OF SIZE {len(B)}")


def cmd_index(args) -> Result:
    H = _subgroup(args)
    k = index(H)
    return Result({"index": k}, [], "INFINITE INDEX" if k is None else f"INDEX {k}")


def cmd_intersect(args) -> Result:
    H1 = _subgroup(args)
    H2 = _subgroup(args, "gens2")
    K = intersect(H1, H2)
    return Result({"automaton": to_json(K), "basis": [_fmt(b) for b in basis(K)]},
                  _aut_lines(K) + ["basis: " + ", ".join(_fmt(b) for b in basis(K))],
                  f"INTERSECTION WITH {K.num_vertices} VERTICES", K)


def cmd_core(args) -> Result:
    H = _subgroup(args)
    if index(H) is None:
        raise UsageError("the core is only computed for finite-index subgroups")
    C, transversal = core_subgroup(H)
    return Result({"automaton": to_json(C), "index": C.num_vertices,
                   "transversal": [_fmt(t) for t in transversal]},
                  _aut_lines(C) + ["transversal: " + ", ".join(_fmt(t) for t in transversal)],
                  f"CORE OF INDEX {C.num_vertices}", C)


def cmd_overgroups(args) -> Result:
    H = _subgroup(args)
    overs = overgroups(H, max_vertices=args.max_vertices)
    lines = []
    for K in overs:
        lines.append(f"[{K.num_vertices} vertices] " + ", ".join(_fmt(b) for b in basis(K)))
    return Result({"overgroups": [to_json(K) for K in overs]}, lines, f"{len(overs)} OVERGROUPS")


def cmd_subgroups_of_index(args) -> Result:
    if args.index is None or args.index < 1:
        raise UsageError("--index must be a positive integer")
    subs = enumerate_index_subgroups(args.rank, args.index)
    lines = [", ".join(_fmt(b) for b in basis(K)) for K in subs]
    return Result({"index": args.index, "count": len(subs), "subgroups": [to_json(K) for K in subs]},
                  lines, f"{len(subs)} SUBGROUPS OF INDEX {args.index}")


def cmd_schreier_basis(args) -> Result:
    H = _subgroup(args)
    if args.pv is None:
        oracle, label = (lambda w: member(H, w)), "discrete"
    else:
        V = parse_descriptor(args.pv)
        if V.kind == "ab" or (V.kind == "sk" and V.param == 1):
            oracle = lambda w: ab_member(H, w)  # noqa: E731
        elif V.kind == "abm":
            oracle = lambda w: abm_member(H, w, V.param)  # noqa: E731
        else:
            raise UsageError(f"schreier-basis oracles are available for ab and ab:m, not {V.label()}")
        label = V.label()
    ball = schreier_ball(oracle, args.rank, args.radius)
    chunks = [[_fmt(b) for b in ball.chunk(m)] for m in range(ball.radius + 1)]
    lines = [f"oracle: {label}", f"cosets in ball: {ball.num_vertices}"]
    lines += [f"B_{m}: " + ", ".join(c) for m, c in enumerate(chunks)]
    data = {"oracle": label, "radius": ball.radius, "num_vertices": ball.num_vertices,
            "chunks": chunks, "basis": [_fmt(b) for b in ball.basis]}
    if args.word:
        w = _word(args)
        fac = express_over_schreier_basis(ball, w)
        data["factorization"] = fac
        lines.append(f"factorization of {_fmt(w)}: {fac}")
    return Result(data, lines, f"BASIS WORDS {len(ball.basis)}")


def _closure_lines(desc) -> list[str]:
    lines = [f"topology: {desc.topology}",
             f"index: {'infinite' if desc.index is None else desc.index}",
             f"invariant factors: {desc.invariant_factors}", f"free rank: {desc.free_rank}",
             f"finitely generated: {desc.finitely_generated}"]
    if desc.basis is not None:
        lines.append("basis: " + ", ".join(_fmt(b) for b in desc.basis))
    return lines


def _meta_lines(p, certificates=(), reason: str | None = None) -> list[str]:
    lines = [f"G = Cl_Ab(H): index {'infinite' if p.g_index is None else p.g_index}",
             f"[G:HG'] = {'infinite' if p.hg_index is None else p.hg_index}",
             f"claimed index: {'infinite' if p.claimed_index is None else p.claimed_index}"]
    if p.candidates is not None:
        for K in p.candidates:
            lines.append("candidate basis: " + ", ".join(_fmt(b) for b in basis(K)))
    lines += [f"note: {n}" for n in p.notes]
    for c in certificates:
        extra = ""
        if c.status == "nonmember":
            extra = f" (separating subgroup of index {c.certificate.num_vertices}, " \
                    f"core quotient order {c.certificate_quotient['order']})"
        lines.append(f"check {_fmt(c.word)}: {c.status}{extra}")
    if reason is not None:
        lines.append(f"reason: {reason}")
    return lines


def cmd_closure(args) -> Result:
    H = _subgroup(args)
    V = parse_descriptor(args.pv or "ab")
    if V.kind == "ab" or (V.kind == "sk" and V.param == 1):
        d = ab_closure(H)
    elif V.kind == "abm":
        d = abm_closure(H, V.param)
    elif V.kind == "sk" and V.param == 2:
        if args.method == "paper":
            rep = meta_closure_paper(H)
            data = {"topology": "meta", "method": "paper", **rep.to_json()}
            verdict = "CLAIMED INDEX " + ("INFINITE" if rep.claimed_index is None else str(rep.claimed_index))
            aut = rep.candidates[0] if rep.candidates and len(rep.candidates) == 1 else None
            return Result(data, _meta_lines(rep), verdict, aut)
        rep = meta_closure_validated(H, _budget(args))
        data = {"topology": "meta", "method": "validated", **rep.to_json()}
        aut = rep.paper.candidates[0] if rep.status == "verified" and rep.paper.candidates else None
        return Result(data, _meta_lines(rep.paper, rep.certificates, rep.reason), rep.status.upper(), aut)
    elif V.kind == "sk":
        rec = sk_closure_lower_bound(H, V.param)
        return Result(rec.to_json(), [rec.statement], "LOWER BOUND ONLY")
    else:
        raise UsageError(f"closure is not supported for {V.label()}")
    verdict = "INFINITE INDEX" if d.index is None else f"INDEX {d.index}"
    return Result(d.to_json(), _closure_lines(d), verdict, d.automaton)


def cmd_is_closed(args) -> Result:
    H = _subgroup(args)
    V = parse_descriptor(args.pv or "ab")
    rep = is_closed(H, V)
    lines = [f"pseudovariety: {V.label()}", f"route: {rep.route}"]
    if rep.summary:
        lines.append(f"core quotient order {rep.summary['order']}, derived series {rep.summary['derived_series']}")
    return Result({"pseudovariety": V.label(), **rep.to_json()}, lines,
                  "CLOSED" if rep.verdict else "NOT CLOSED")


def cmd_is_dense(args) -> Result:
    H = _subgroup(args)
    V = parse_descriptor(args.pv or "ab")
    d = is_dense(H, V, _budget(args))
    verdict = "EXHAUSTED" if d is None else ("DENSE" if d else "NOT DENSE")
    return Result({"pseudovariety": V.label(), "dense": "exhausted" if d is None else d},
                  [f"pseudovariety: {V.label()}"], verdict)


def _parse_matrix(text: str) -> list[list[int]]:
    try:
        rows = [[int(x) for x in r.replace(",", " ").split()] for r in text.split(";") if r.strip()]
    except ValueError:
        raise UsageError(f"bad matrix {text!r}") from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise UsageError("matrix rows must be nonempty and of equal length")
    return rows


def cmd_snf(args) -> Result:
    if not args.matrix:
        raise UsageError("--matrix is required, e.g. --matrix '2,4;6,8'")
    M = _parse_matrix(args.matrix)
    d = smith_normal_form(M)
    data = {"factors": [str(e) for e in d.factors], "U": matrix_to_json(d.U),
            "S": matrix_to_json(d.S), "V": matrix_to_json(d.V)}
    lines = [f"{name}: {mat}" for name, mat in (("U", d.U), ("S", d.S), ("V", d.V))]
    return Result(data, lines, "FACTORS " + " ".join(str(e) for e in d.factors))


def cmd_validate_meta(args) -> Result:
    H = _subgroup(args)
    rep = meta_closure_validated(H, _budget(args))
    return Result(rep.to_json(), _meta_lines(rep.paper, rep.certificates, rep.reason), rep.status.upper())


COMMANDS = {
    "stallings": cmd_stallings,
    "member": cmd_member,
    "basis": cmd_basis,
    "index": cmd_index,
    "intersect": cmd_intersect,
    "core": cmd_core,
    "overgroups": cmd_overgroups,
    "subgroups-of-index": cmd_subgroups_of_index,
    "schreier-basis": cmd_schreier_basis,
    "closure": cmd_closure,
    "is-closed": cmd_is_closed,
    "is-dense": cmd_is_dense,
    "snf": cmd_snf,
    "validate-meta": cmd_validate_meta,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="protop", description="Closures of subgroups of free groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--rank", type=int, default=2)
        p.add_argument("--gens", help="comma-separated generator words, e.g. aa,b")
        p.add_argument("--gens2", help="second subgroup for intersect")
        p.add_argument("--gens-from-quotient", help='generator images, e.g. "a=(1 2);b=(1 2 3)"')
        p.add_argument("--preimage", help='generators of the subgroup of the quotient, e.g. "(1 2)"')
        p.add_argument("--pv", help="ab, ab:m, meta, sk:k, nilpotent or id:<identities>")
        p.add_argument("--word")
        p.add_argument("--index", type=int)
        p.add_argument("--radius", type=int, default=2)
        p.add_argument("--matrix", help="rows separated by ';', entries by ','")
        p.add_argument("--max-vertices", type=int, default=12)
        p.add_argument("--budget-len", type=int, default=12)
        p.add_argument("--budget-index", type=int, default=7)
        p.add_argument("--method", choices=["paper", "validated"], default="validated")
        p.add_argument("--json", action="store_true")
        p.add_argument("--dot", metavar="PATH")
    return parser


def emit(result: Result, as_json: bool) -> str:
    if as_json:
        return json.dumps(result.data, indent=2) + "\n"
    return "\n".join(result.lines + [result.verdict]) + "\n"


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    budget.start_from_env()
    if args.rank < 0:
        err.write("protop: --rank must be nonnegative\n")
        return 2
    try:
        result = COMMANDS[args.command](args)
        if args.dot:
            if result.automaton is None:
                raise UsageError("this result has no automaton to draw")
            with open(args.dot, "w") as fh:
                fh.write(to_dot(result.automaton))
    except BudgetExceeded as e:
        err.write(f"protop: budget exceeded: {e}\n")
        return 3
    except (UsageError, ValueError, ProtopError) as e:
        err.write(f"protop: {e}\n")
        return 2
    finally:
        # an in-process caller must not inherit this run's deadline
        budget.set_deadline_ms(None)
    out.write(emit(result, args.json))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
