"""Max-min search over N-multisets of grid cells.

The score of a multiset is the smallest triple value among all triples drawn
from it; the answer is the largest score over all multisets. Adding a cell can
only add triples, so a partial multiset whose running minimum is already at or
below the best known score is pruned without loss.

Work is split into root tasks, one per leading pair (c1, c2). Tasks run in a
fixed schedule of batches; every task in a batch prunes against the best value
known when the batch started. That makes the answer, the witness and the node
count independent of the number of worker threads.
"""
from __future__ import annotations

import itertools
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numba
import numpy as np

from .checkpoint import Checkpoint, TaskRecord
from .geometry import Grid, GridSpec, Variant
from .oracle import TripleCache, _rank, _vertex_max, max_cell_triple

log = logging.getLogger(__name__)

MAX_N = 12
DEFAULT_NODE_BUDGET = 10**12
NAIVE_LIMIT = 10**8
BATCH_SIZE = 64


class SearchIncomplete(RuntimeError):
    """The node budget ran out before the search finished."""

    def __init__(self, message, nodes_explored=0, best_so_far=None):
        super().__init__(message)
        self.nodes_explored = nodes_explored
        self.best_so_far = best_so_far


class WarmStartError(RuntimeError):
    """No multiset reached the warm-start value, so the warm start was wrong."""


@dataclass(frozen=True)
class SearchParams:
    grid: GridSpec
    N: int
    use_symmetry: bool = True
    thread_count: int = 1
    initial_bound: int | None = None
    max_n: int = MAX_N

    def __post_init__(self):
        if not 3 <= self.N <= self.max_n:
            raise ValueError(f"N must be in [3, {self.max_n}], got {self.N}")
        if self.thread_count < 1:
            raise ValueError("thread_count must be positive")
        if self.initial_bound is not None and self.initial_bound < 0:
            raise ValueError("initial_bound must be non-negative")


@dataclass
class BoundResult:
    k: int
    P: int
    N: int
    variant: Variant
    witness: tuple[int, ...]
    witness_triple_values: dict[tuple[int, int, int], int]
    nodes_explored: int
    elapsed: float
    complete: bool = True
    tasks_resumed: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def bound(self) -> Fraction:
        return Fraction(self.k, self.P * self.P)

    @property
    def numerator(self) -> int:
        return self.bound.numerator

    @property
    def denominator(self) -> int:
        return self.bound.denominator

    def argmin_triple(self) -> tuple[int, int, int]:
        """Witness triple (by cell id) whose value equals k, smallest first."""
        return min(t for t, v in self.witness_triple_values.items() if v == self.k)


def multiset_triples(cells) -> list[tuple[int, int, int]]:
    """All triples of positions of a sorted multiset, as sorted cell-id keys."""
    return sorted({tuple(sorted(t)) for t in itertools.combinations(sorted(cells), 3)})


def tuple_score(cache: TripleCache, cells) -> int:
    if len(cells) < 3:
        raise ValueError("a tuple needs at least 3 cells")
    return min(cache.get(*t) for t in multiset_triples(cells))


def canonicalize(grid: Grid, cells) -> tuple[int, ...]:
    perms = grid.symmetries
    return min(tuple(sorted(int(perms[s, c]) for c in cells)) for s in range(6))


def root_tasks(grid: Grid, use_symmetry: bool) -> list[tuple[int, int]]:
    """Leading pairs c1 <= c2 that the search must expand.

    With symmetry on, c1 must be the smallest id in its orbit and c2 the
    smallest in its orbit under the stabilizer of c1. Every canonical
    multiset survives this filter.
    """
    n = len(grid)
    if not use_symmetry:
        return [(a, b) for a in range(n) for b in range(a, n)]
    perms = grid.symmetries
    tasks = []
    for a in range(n):
        if perms[:, a].min() < a:
            continue
        stab = [s for s in range(6) if perms[s, a] == a]
        for b in range(a, n):
            if all(perms[s, b] >= b for s in stab):
                tasks.append((a, b))
    return tasks


@numba.njit(cache=True, nogil=True)
def _tv(table, verts, a, b, c):
    if table.shape[0] > 0:
        return table[_rank(a, b, c)]
    return _vertex_max(verts, a, b, c)


@numba.njit(cache=True, nogil=True)
def _search_task(table, verts, N, c1, c2, threshold, budget):
    """Depth-first search below the prefix (c1, c2).

    Returns (best, witness, nodes, finished). best stays at threshold when no
    multiset scores above it; witness is the lexicographically first multiset
    reaching best.
    """
    n = verts.shape[0]
    cand = np.empty((N, n), dtype=np.int64)
    cval = np.empty((N, n), dtype=np.int64)
    clen = np.zeros(N, dtype=np.int64)
    cpos = np.zeros(N, dtype=np.int64)
    curmin = np.empty(N + 1, dtype=np.int64)
    chosen = np.empty(N, dtype=np.int64)
    witness = np.full(N, -1, dtype=np.int64)
    best = threshold
    nodes = 2
    big = np.int64(1) << 62

    chosen[0] = c1
    chosen[1] = c2
    curmin[2] = big
    m = 0
    for y in range(c2, n):
        v = _tv(table, verts, c1, c2, y)
        if v > best:
            cand[2, m] = y
            cval[2, m] = v
            m += 1
    clen[2] = m
    cpos[2] = 0
    d = 2
    while d >= 2:
        if nodes > budget:
            return best, witness, nodes, False
        if d == N - 1:
            # Leaf level: the score of each completion is known directly.
            cm = curmin[d]
            for idx in range(clen[d]):
                s = min(cm, cval[d, idx])
                nodes += 1
                if s > best:
                    best = s
                    for i in range(d):
                        witness[i] = chosen[i]
                    witness[d] = cand[d, idx]
            d -= 1
            continue
        idx = cpos[d]
        if idx >= clen[d]:
            d -= 1
            continue
        cpos[d] = idx + 1
        x = cand[d, idx]
        newmin = min(curmin[d], cval[d, idx])
        assert newmin <= curmin[d]
        if newmin <= best:
            continue
        nodes += 1
        chosen[d] = x
        m = 0
        for j in range(idx, clen[d]):
            y = cand[d, j]
            v = cval[d, j]
            if v <= best:
                continue
            for i in range(d):
                t = _tv(table, verts, chosen[i], x, y)
                if t < v:
                    v = t
                    if v <= best:
                        break
            if v > best:
                cand[d + 1, m] = y
                cval[d + 1, m] = v
                m += 1
        if m == 0:
            continue
        clen[d + 1] = m
        cpos[d + 1] = 0
        curmin[d + 1] = newmin
        d += 1
    return best, witness, nodes, True


def _batches(n_tasks: int):
    """Fixed batch schedule: 1, 1, 2, 4, ... up to BATCH_SIZE tasks."""
    start, size = 0, 1
    first = True
    while start < n_tasks:
        end = min(n_tasks, start + size)
        yield start, end
        start = end
        if first:
            first = False
        else:
            size = min(BATCH_SIZE, size * 2)


def _witness_values(cache: TripleCache, witness) -> dict[tuple[int, int, int], int]:
    return {t: cache.get(*t) for t in multiset_triples(witness)}


def solve(
    params: SearchParams,
    cache: TripleCache | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    checkpoint: Checkpoint | str | os.PathLike | None = None,
    progress=None,
) -> BoundResult:
    """Exact maximum of the tuple score over all N-multisets of cells.

    Raises SearchIncomplete when ``node_budget`` is exhausted (completed
    batches are kept in the checkpoint, if one is given) and WarmStartError
    when ``params.initial_bound`` is not reached by any multiset.
    """
    t0 = time.perf_counter()
    grid = cache.grid if cache is not None else Grid(params.grid)
    if grid.spec != params.grid:
        raise ValueError("cache was built for a different grid")
    if cache is None:
        cache = TripleCache(grid)
    N = params.N
    tasks = root_tasks(grid, params.use_symmetry)
    seed = -1 if params.initial_bound is None else params.initial_bound - 1

    if checkpoint is not None and not isinstance(checkpoint, Checkpoint):
        checkpoint = Checkpoint(checkpoint)
    header = {
        "P": grid.P, "N": N, "variant": grid.variant.value,
        "use_symmetry": params.use_symmetry, "seed": seed,
        "tasks": len(tasks), "batch_size": BATCH_SIZE,
    }
    done: dict[int, TaskRecord] = {}
    if checkpoint is not None:
        done = checkpoint.open(header)

    best = seed
    best_witness: tuple[int, ...] | None = None
    nodes = 0
    resumed = 0
    table, verts = cache.table, cache.verts

    def run(task_id, bound, cap):
        a, b = tasks[task_id]
        k, w, nd, ok = _search_task(table, verts, N, a, b, bound, cap)
        return TaskRecord(task_id, "done" if ok else "budget", int(k), int(nd),
                          tuple(int(c) for c in w) if k > bound else None)

    pool = ThreadPoolExecutor(params.thread_count) if params.thread_count > 1 else None
    try:
        for start, end in _batches(len(tasks)):
            ids = range(start, end)
            if all(i in done for i in ids):
                records = [done[i] for i in ids]
                resumed += len(records)
            else:
                cap = node_budget - nodes
                bound = best
                if pool is None:
                    records = [run(i, bound, cap) for i in ids]
                else:
                    records = list(pool.map(lambda i: run(i, bound, cap), ids))
                used = sum(r.nodes for r in records)
                if any(r.status != "done" for r in records) or nodes + used > node_budget:
                    raise SearchIncomplete(
                        f"node budget {node_budget} exhausted after {nodes} nodes "
                        f"({start}/{len(tasks)} root tasks done)",
                        nodes_explored=nodes + used, best_so_far=best,
                    )
                if checkpoint is not None:
                    checkpoint.append(records)
            for r in records:
                nodes += r.nodes
                if r.witness is not None and r.best > best:
                    best, best_witness = r.best, r.witness
            if progress is not None:
                progress(end, len(tasks), best, nodes)
    finally:
        if pool is not None:
            pool.shutdown()

    if best_witness is None:
        if params.initial_bound is not None:
            raise WarmStartError(
                f"no multiset reaches the warm-start value {params.initial_bound}")
        raise AssertionError("search finished without a witness")
    witness = canonicalize(grid, best_witness)
    values = _witness_values(cache, witness)
    assert min(values.values()) == best
    return BoundResult(
        k=int(best), P=grid.P, N=N, variant=grid.variant, witness=witness,
        witness_triple_values=values, nodes_explored=nodes,
        elapsed=time.perf_counter() - t0, tasks_resumed=resumed,
    )


def solve_naive(params: SearchParams) -> BoundResult:
    """Unpruned reference: score every N-multiset, no symmetry, no table.

    Triple values come straight from vertex enumeration on GridCell objects,
    so this shares no code with the pruned search beyond the grid itself.
    """
    t0 = time.perf_counter()
    grid = Grid(params.grid)
    n, N = len(grid), params.N
    total = comb(n + N - 1, N)
    if total > NAIVE_LIMIT:
        raise ValueError(f"{total} multisets exceeds the naive limit {NAIVE_LIMIT}")
    memo: dict[tuple[int, int, int], int] = {}

    def tv(t):
        v = memo.get(t)
        if v is None:
            v = memo[t] = max_cell_triple(*(grid[i] for i in t)).max_doubled_area
        return v

    best, witness = -1, None
    positions = list(itertools.combinations(range(N), 3))
    for tup in itertools.combinations_with_replacement(range(n), N):
        score = min(tv((tup[i], tup[j], tup[k])) for i, j, k in positions)
        if score > best:
            best, witness = score, tup
    if params.initial_bound is not None and best < params.initial_bound:
        raise WarmStartError(f"no multiset reaches the warm-start value {params.initial_bound}")
    values = {t: tv(t) for t in multiset_triples(witness)}
    return BoundResult(
        k=best, P=grid.P, N=N, variant=grid.variant, witness=tuple(witness),
        witness_triple_values=values, nodes_explored=total,
        elapsed=time.perf_counter() - t0,
    )
