"""Balls in the Schreier coset graph of a subgroup given only by a membership oracle.

The ball of radius m around the base coset is built breadth first; its BFS
spanning tree only ever grows, so the basis elements discovered at radius m
stay basis elements at every larger radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import NotMember, WordTooLong
from .words import Word, letter_order

Oracle = Callable[[Word], bool]


@dataclass
class SchreierBall:
    oracle: Oracle
    rank: int
    radius: int
    reps: list[Word] = field(default_factory=list)
    depth: list[int] = field(default_factory=list)
    adj: list[dict[int, int]] = field(default_factory=list)
    tree: set[tuple[int, int, int]] = field(default_factory=set)
    basis: list[Word] = field(default_factory=list)
    basis_edges: list[tuple[int, int, int]] = field(default_factory=list)
    chunk_starts: list[int] = field(default_factory=list)

    @property
    def num_vertices(self) -> int:
        return len(self.reps)

    def chunk(self, m: int) -> list[Word]:
        """Basis elements first seen at radius ``m``."""
        start = self.chunk_starts[m]
        stop = self.chunk_starts[m + 1] if m + 1 < len(self.chunk_starts) else len(self.basis)
        return self.basis[start:stop]

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((v, x, t) for v, d in enumerate(self.adj) for x, t in d.items() if x > 0)


def _copy(ball: SchreierBall) -> SchreierBall:
    return SchreierBall(
        oracle=ball.oracle, rank=ball.rank, radius=ball.radius,
        reps=list(ball.reps), depth=list(ball.depth), adj=[dict(d) for d in ball.adj],
        tree=set(ball.tree), basis=list(ball.basis), basis_edges=list(ball.basis_edges),
        chunk_starts=list(ball.chunk_starts),
    )


def _locate(ball: SchreierBall, u: Word) -> int | None:
    for v, rep in enumerate(ball.reps):
        if ball.oracle(u * ~rep):
            return v
    return None


def _connect(ball: SchreierBall, v: int, x: int, t: int) -> None:
    ball.adj[v][x] = t
    ball.adj[t][-x] = v


def _close_vertex(ball: SchreierBall, v: int, allow_new: bool) -> None:
    for x in letter_order(ball.rank):
        if x in ball.adj[v]:
            continue
        u = ball.reps[v] * Word(ball.rank, (x,))
        t = _locate(ball, u)
        if t is None:
            if not allow_new:
                continue
            t = len(ball.reps)
            ball.reps.append(u)
            ball.depth.append(ball.depth[v] + 1)
            ball.adj.append({})
            ball.tree.add((v, x, t) if x > 0 else (t, -x, v))
        _connect(ball, v, x, t)


def _collect_basis(ball: SchreierBall) -> None:
    known = set(ball.basis_edges)
    ball.chunk_starts.append(len(ball.basis))
    for s, a, t in ball.edges():
        e = (s, a, t)
        if e in ball.tree or e in known:
            continue
        ball.basis_edges.append(e)
        ball.basis.append(ball.reps[s] * Word(ball.rank, (a,)) * ~ball.reps[t])


def schreier_ball(oracle: Oracle, rank: int, m: int, prev: SchreierBall | None = None) -> SchreierBall:
    """Ball of radius ``m`` with spanning tree and basis chunks B_0, ..., B_m."""
    if m < 0:
        raise ValueError("radius must be nonnegative")
    if prev is None or prev.radius > m:
        ball = SchreierBall(oracle=oracle, rank=rank, radius=0,
                            reps=[Word(rank, ())], depth=[0], adj=[{}])
        _close_vertex(ball, 0, allow_new=False)
        _collect_basis(ball)
    else:
        if prev.rank != rank:
            raise ValueError("rank mismatch with previous ball")
        ball = _copy(prev)
        ball.oracle = oracle
    while ball.radius < m:
        r = ball.radius
        for v in [v for v in range(ball.num_vertices) if ball.depth[v] == r]:
            _close_vertex(ball, v, allow_new=True)
        for v in [v for v in range(ball.num_vertices) if ball.depth[v] == r + 1]:
            _close_vertex(ball, v, allow_new=False)
        ball.radius = r + 1
        _collect_basis(ball)
    return ball


def express_over_schreier_basis(ball: SchreierBall, h: Word) -> list[int]:
    """Factor ``h`` over ``ball.basis`` as signed 1-based indices."""
    if len(h) > ball.radius:
        raise WordTooLong(f"|h| = {len(h)} exceeds ball radius {ball.radius}")
    pos = {e: i + 1 for i, e in enumerate(ball.basis_edges)}
    out = []
    v = 0
    for x in h.letters:
        t = ball.adj[v].get(x)
        if t is None:
            raise NotMember(f"{h} leaves the ball")
        e = (v, x, t) if x > 0 else (t, -x, v)
        if e in pos:
            out.append(pos[e] if x > 0 else -pos[e])
        v = t
    if v != 0:
        raise NotMember(f"{h} is not in the subgroup")
    check = Word(ball.rank, ())
    for i in out:
        b = ball.basis[abs(i) - 1]
        check = check * (b if i > 0 else ~b)
    if check != h:
        raise AssertionError("Schreier factorization does not reproduce the word")
    return out
