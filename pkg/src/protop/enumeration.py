"""Finite enumerations over automata: overgroups and subgroups of given index."""

from __future__ import annotations

from functools import lru_cache

from . import budget
from .automata import StallingsAutomaton, _Folder, fold_edges
from .errors import BudgetExceeded
from .words import letter_order

DEFAULT_MAX_OVERGROUP_VERTICES = 12


def _close_partition(aut: StallingsAutomaton, labels: tuple[int, ...], extra: tuple[int, int]) -> tuple[int, ...]:
    folder = _Folder(aut.num_vertices)
    for s, a, t in aut.edges:
        folder.add_edge(s, a, t)
    for v, r in enumerate(labels):
        if r != v:
            folder.pending.append((v, r))
    folder.pending.append(extra)
    folder.settle()
    return tuple(folder.find(v) for v in range(aut.num_vertices))


def overgroups(aut: StallingsAutomaton, max_vertices: int = DEFAULT_MAX_OVERGROUP_VERTICES,
               max_partitions: int | None = None) -> list[StallingsAutomaton]:
    """All subgroups whose automaton is a folded quotient of ``aut``.

    The result includes ``aut`` itself and is sorted by (vertex count, edges),
    so no entry contains a later one.  Only partitions closed under folding
    are visited; each such partition corresponds to exactly one overgroup.
    """
    n = aut.num_vertices
    if n > max_vertices:
        raise BudgetExceeded(f"automaton has {n} vertices; overgroup budget is {max_vertices}")
    start = tuple(range(n))
    seen = {start}
    queue = [start]
    for labels in queue:
        if budget.expired():
            raise BudgetExceeded("wall-clock budget exhausted during overgroup enumeration")
        roots = sorted(set(labels))
        for i, r1 in enumerate(roots):
            for r2 in roots[i + 1:]:
                closed = _close_partition(aut, labels, (r1, r2))
                if closed not in seen:
                    seen.add(closed)
                    queue.append(closed)
                    if max_partitions is not None and len(seen) > max_partitions:
                        raise BudgetExceeded(f"more than {max_partitions} closed partitions")
    result = {
        fold_edges(aut.rank, n, aut.edges, merges=[(v, r) for v, r in enumerate(labels) if r != v])
        for labels in queue
    }
    return sorted(result, key=lambda k: (k.num_vertices, k.edges))


def enumerate_index_subgroups(rank: int, m: int, max_results: int | None = None) -> list[StallingsAutomaton]:
    """Every subgroup of index ``m`` in F_rank, as complete automata sorted by edges."""
    if m < 1:
        raise ValueError("index must be at least 1")
    found = _enumerate_cached(rank, m)
    if max_results is not None and len(found) > max_results:
        raise BudgetExceeded(f"{len(found)} subgroups of index {m} exceed the budget {max_results}")
    return list(found)


@lru_cache(maxsize=32)
def _enumerate_cached(rank: int, m: int) -> tuple[StallingsAutomaton, ...]:
    order = letter_order(rank)
    width = len(order)
    inverse_slot = [order.index(-x) for x in order]
    table = [[-1] * width for _ in range(m)]
    out: list[StallingsAutomaton] = []

    # Filling the first undefined slot in scan order, and numbering new cosets
    # consecutively, produces every table exactly once in BFS-canonical form.
    def search(nverts: int, pos: int) -> None:
        while pos < nverts * width and table[pos // width][pos % width] >= 0:
            pos += 1
        if pos == nverts * width:
            if nverts == m:
                edges = [(v, order[s], table[v][s]) for v in range(m) for s in range(width) if order[s] > 0]
                aut = StallingsAutomaton(rank, m, edges)
                aut._canon = aut
                out.append(aut)
            return
        if budget.expired():
            raise BudgetExceeded("wall-clock budget exhausted during subgroup enumeration")
        v, s = divmod(pos, width)
        s_inv = inverse_slot[s]
        targets = [t for t in range(nverts) if table[t][s_inv] < 0]
        if nverts < m:
            targets.append(nverts)
        for t in targets:
            table[v][s] = t
            table[t][s_inv] = v
            search(max(nverts, t + 1), pos + 1)
            table[v][s] = -1
            table[t][s_inv] = -1

    if rank == 0:
        if m == 1:
            aut = StallingsAutomaton(0, 1, [])
            aut._canon = aut
            out.append(aut)
    else:
        search(1, 0)
    out.sort(key=lambda a: a.edges)
    return tuple(out)
