"""Stallings automata of finitely generated subgroups of F_n.

Vertex 0 is always the base.  Edges are stored as positive triples
``(source, letter, target)``; reading ``-letter`` walks an edge backwards.
Every public constructor returns the automaton in canonical form (vertices
numbered breadth first from the base with letter order 1, -1, 2, -2, ...), so
two automata describe the same subgroup iff they compare equal.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import InfiniteIndexError
from .words import Word, letter_name, letter_order


class StallingsAutomaton:
    __slots__ = ("rank", "num_vertices", "edges", "_out", "_canon")

    def __init__(self, rank: int, num_vertices: int, edges: Iterable[tuple[int, int, int]]):
        self.rank = rank
        self.num_vertices = num_vertices
        out: list[dict[int, int]] = [{} for _ in range(num_vertices)]
        clean = set()
        for s, a, t in edges:
            if a < 0:
                s, a, t = t, -a, s
            if not (1 <= a <= rank) or not (0 <= s < num_vertices) or not (0 <= t < num_vertices):
                raise ValueError(f"bad edge {(s, a, t)}")
            if (s, a, t) in clean:
                continue
            if a in out[s] or -a in out[t]:
                raise ValueError(f"edge {(s, a, t)} breaks determinism")
            out[s][a] = t
            out[t][-a] = s
            clean.add((s, a, t))
        self.edges = tuple(sorted(clean))
        self._out = out
        self._canon = None

    @property
    def base(self) -> int:
        return 0

    def target(self, v: int, x: int) -> int | None:
        return self._out[v].get(x)

    def degree(self, v: int) -> int:
        return len(self._out[v])

    def key(self):
        c = canonical_form(self)
        return (c.rank, c.num_vertices, c.edges)

    def __eq__(self, other):
        if not isinstance(other, StallingsAutomaton):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"StallingsAutomaton(rank={self.rank}, vertices={self.num_vertices}, edges={list(self.edges)})"

    def check_invariants(self) -> None:
        """Raise AssertionError unless this is a connected core graph."""
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for t in self._out[v].values():
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        assert len(seen) == self.num_vertices, "not connected"
        for v in range(1, self.num_vertices):
            assert self.degree(v) >= 2, f"vertex {v} is not in the core"


class _Folder:
    """Union-find over vertices with eager edge folding."""

    def __init__(self, n: int = 0):
        self.parent = list(range(n))
        self.adj: list[dict[int, int]] = [{} for _ in range(n)]
        self.pending: list[tuple[int, int]] = []

    def add_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.adj.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _link(self, s: int, x: int, t: int) -> None:
        w = self.adj[s].get(x)
        if w is None:
            self.adj[s][x] = t
        else:
            w = self.find(w)
            if w != t:
                self.pending.append((w, t))
        w = self.adj[t].get(-x)
        if w is None:
            self.adj[t][-x] = s
        else:
            w = self.find(w)
            if w != s:
                self.pending.append((w, s))

    def add_edge(self, s: int, x: int, t: int) -> None:
        self._link(self.find(s), x, self.find(t))
        self.settle()

    def add_path(self, start: int, letters: Sequence[int], end: int | None = None) -> int:
        v = start
        for i, x in enumerate(letters):
            last = i == len(letters) - 1
            t = end if (last and end is not None) else self.add_vertex()
            self.add_edge(v, x, t)
            v = t
        return v

    def merge(self, u: int, v: int) -> None:
        self.pending.append((u, v))
        self.settle()

    def settle(self) -> None:
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            items, self.adj[b] = self.adj[b], {}
            for x, y in items.items():
                self._link(a, x, self.find(y))

    def root_adjacency(self) -> dict[int, dict[int, int]]:
        return {
            v: {x: self.find(y) for x, y in self.adj[v].items()}
            for v in range(len(self.parent))
            if self.parent[v] == v
        }


def _trim_core(adj: dict[int, dict[int, int]], base: int) -> None:
    stack = [v for v in adj if v != base and len(adj[v]) <= 1]
    while stack:
        v = stack.pop()
        if v not in adj or len(adj[v]) > 1:
            continue
        for x, u in adj.pop(v).items():
            if u in adj:
                adj[u].pop(-x, None)
                if u != base and len(adj[u]) <= 1:
                    stack.append(u)


def _canonical_from_adj(rank: int, adj: dict[int, dict[int, int]], base: int) -> StallingsAutomaton:
    order = letter_order(rank)
    new = {base: 0}
    queue = [base]
    for v in queue:
        for x in order:
            t = adj[v].get(x)
            if t is not None and t not in new:
                new[t] = len(new)
                queue.append(t)
    edges = [(new[v], x, new[t]) for v in queue for x, t in adj[v].items() if x > 0]
    aut = StallingsAutomaton(rank, len(new), edges)
    aut._canon = aut
    return aut


def _finish(rank: int, folder: _Folder, base: int = 0) -> StallingsAutomaton:
    adj = folder.root_adjacency()
    base = folder.find(base)
    _trim_core(adj, base)
    return _canonical_from_adj(rank, adj, base)


def fold_edges(rank: int, num_vertices: int, edges: Iterable[tuple[int, int, int]],
               base: int = 0, merges: Iterable[tuple[int, int]] = ()) -> StallingsAutomaton:
    """Fold an arbitrary labelled graph, identify ``merges``, and return the core at ``base``."""
    folder = _Folder(num_vertices)
    for s, x, t in edges:
        folder.add_edge(s, x, t)
    for u, v in merges:
        folder.merge(u, v)
    return _finish(rank, folder, base)


def canonical_form(aut: StallingsAutomaton) -> StallingsAutomaton:
    if aut._canon is None:
        adj = {v: dict(aut._out[v]) for v in range(aut.num_vertices)}
        aut._canon = _canonical_from_adj(aut.rank, adj, 0)
    return aut._canon


def whole_group(rank: int) -> StallingsAutomaton:
    return stallings_from_generators(rank, [Word(rank, (i,)) for i in range(1, rank + 1)])


def stallings_from_generators(rank: int, gens: Iterable[Word]) -> StallingsAutomaton:
    folder = _Folder(1)
    for g in gens:
        if g.rank != rank:
            raise ValueError(f"generator {g!r} has rank {g.rank}, expected {rank}")
        if g.letters:
            folder.add_path(0, g.letters, end=0)
    return _finish(rank, folder, 0)


def trace(aut: StallingsAutomaton, w: Word, start: int = 0) -> int | None:
    v = start
    for x in w.letters:
        v = aut._out[v].get(x)
        if v is None:
            return None
    return v


def member(aut: StallingsAutomaton, w: Word) -> bool:
    if w.rank != aut.rank:
        raise ValueError(f"rank mismatch: {w.rank} vs {aut.rank}")
    return trace(aut, w) == 0


def spanning_tree(aut: StallingsAutomaton) -> tuple[list[tuple[int, ...]], set[tuple[int, int, int]]]:
    """BFS tree from the base: tree-path labels per vertex and the positive tree edges."""
    reps: list[tuple[int, ...] | None] = [None] * aut.num_vertices
    reps[0] = ()
    tree = set()
    queue = [0]
    for v in queue:
        for x in letter_order(aut.rank):
            t = aut._out[v].get(x)
            if t is not None and reps[t] is None:
                reps[t] = reps[v] + (x,)
                tree.add((v, x, t) if x > 0 else (t, -x, v))
                queue.append(t)
    return reps, tree  # type: ignore[return-value]


def _basis_edges(aut: StallingsAutomaton):
    reps, tree = spanning_tree(aut)
    return reps, [e for e in aut.edges if e not in tree]


def basis(aut: StallingsAutomaton) -> list[Word]:
    reps, extra = _basis_edges(aut)
    inv = lambda t: tuple(-x for x in reversed(t))
    return [Word(aut.rank, reps[s] + (a,) + inv(reps[t])) for s, a, t in extra]


def express_over_basis(aut: StallingsAutomaton, w: Word) -> list[int]:
    """Write a member ``w`` over ``basis(aut)`` as signed 1-based indices."""
    if not member(aut, w):
        raise ValueError(f"{w} is not accepted")
    _, extra = _basis_edges(aut)
    pos = {e: i + 1 for i, e in enumerate(extra)}
    out = []
    v = 0
    for x in w.letters:
        t = aut._out[v][x]
        e = (v, x, t) if x > 0 else (t, -x, v)
        if e in pos:
            out.append(pos[e] if x > 0 else -pos[e])
        v = t
    return out


def is_complete(aut: StallingsAutomaton) -> bool:
    return all(len(d) == 2 * aut.rank for d in aut._out)


def index(aut: StallingsAutomaton) -> int | None:
    """Index of the subgroup in F_n, or None when it is infinite."""
    return aut.num_vertices if is_complete(aut) else None


def rank_of_subgroup(aut: StallingsAutomaton) -> int:
    return len(aut.edges) - aut.num_vertices + 1


def intersect(a1: StallingsAutomaton, a2: StallingsAutomaton) -> StallingsAutomaton:
    if a1.rank != a2.rank:
        raise ValueError("rank mismatch")
    pairs = {(0, 0): 0}
    queue = [(0, 0)]
    edges = []
    for p, q in queue:
        i = pairs[(p, q)]
        for x, t1 in a1._out[p].items():
            t2 = a2._out[q].get(x)
            if t2 is None:
                continue
            if (t1, t2) not in pairs:
                pairs[(t1, t2)] = len(pairs)
                queue.append((t1, t2))
            if x > 0:
                edges.append((i, x, pairs[(t1, t2)]))
    return fold_edges(a1.rank, len(pairs), edges)


def rebase(aut: StallingsAutomaton, v: int) -> StallingsAutomaton:
    return fold_edges(aut.rank, aut.num_vertices, aut.edges, base=v)


def conjugate(aut: StallingsAutomaton, g: Word) -> StallingsAutomaton:
    """Automaton of g^-1 H g."""
    if g.rank != aut.rank:
        raise ValueError("rank mismatch")
    folder = _Folder(aut.num_vertices)
    for s, a, t in aut.edges:
        folder.add_edge(s, a, t)
    end = folder.add_path(0, g.letters) if g.letters else 0
    return _finish(aut.rank, folder, end)


def is_subgroup(small: StallingsAutomaton, big: StallingsAutomaton) -> bool:
    return all(member(big, b) for b in basis(small))


def core_subgroup(aut: StallingsAutomaton) -> tuple[StallingsAutomaton, list[Word]]:
    """Core of a finite-index subgroup and the coset transversal used to build it."""
    if not is_complete(aut):
        raise InfiniteIndexError("core_subgroup needs a finite-index subgroup")
    reps, _ = spanning_tree(aut)
    core = canonical_form(aut)
    for v in range(1, aut.num_vertices):
        core = intersect(core, rebase(aut, v))
    return core, [Word(aut.rank, r) for r in reps]


def is_normal(aut: StallingsAutomaton) -> bool:
    return all(conjugate(aut, Word(aut.rank, (i,))) == aut for i in range(1, aut.rank + 1))


def to_json(aut: StallingsAutomaton) -> dict:
    return {
        "rank": aut.rank,
        "num_vertices": aut.num_vertices,
        "base": 0,
        "edges": [list(e) for e in aut.edges],
    }


def from_json(data: dict) -> StallingsAutomaton:
    if data.get("base", 0) != 0:
        raise ValueError("base must be vertex 0")
    return StallingsAutomaton(int(data["rank"]), int(data["num_vertices"]),
                              [tuple(e) for e in data["edges"]])


def to_dot(aut: StallingsAutomaton, name: str = "A") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(aut.num_vertices):
        shape = "doublecircle" if v == 0 else "circle"
        lines.append(f'  {v} [shape={shape}, label="{v}"];')
    for s, a, t in aut.edges:
        lines.append(f'  {s} -> {t} [label="{letter_name(a)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
