"""Exact edge general position number by branch and bound.

The search works on a re-ranked copy of the edge set: rank 0 is the edge
that lies in the most conflicting triples, and bit r of every mask is the
edge of rank r.  A node holds the chosen edges and the candidate edges that
are still compatible with them; branching takes the lowest-rank candidate,
first including it, then excluding it.  Reported edge sets are translated
back to the graph's own edge indices.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from dataclasses import dataclass, field
from typing import Optional

from .cover import maximal_geodesics
from .edgeset import EdgeSet
from .errors import PreconditionError, SolverLimitError
from .gp_core import conflict_triples, is_edge_gp_set
from .graphs import Graph, fibonacci_cube
from .sequences import fibonacci
from .metric import DistanceMatrix, all_pairs_distances, is_bipartite
from .theta import best_class_pair, theta_partition

log = logging.getLogger(__name__)

BOUND_MODES = ("cover", "counting", "none")
DEFAULT_EDGE_LIMIT = 64
GEODESICS_PER_EDGE = 24


@dataclass
class SolveOptions:
    enumerate_all: bool = False
    bound_mode: str = "cover"
    thread_count: int = 1
    edge_limit: int = DEFAULT_EDGE_LIMIT
    seed_with_theta_pair: bool = True


@dataclass
class SolveResult:
    optimum: int
    witnesses: list[EdgeSet]
    nodes_explored: int
    bound_used: str
    elapsed: float = field(default=0.0, compare=False)
    lower_bound_seed: int = 0


class _Found(Exception):
    pass


class SearchProblem:
    """Precomputed, picklable data for the branch and bound."""

    def __init__(self, g: Graph, d: DistanceMatrix, bound_mode: str = "cover"):
        if bound_mode not in BOUND_MODES:
            raise PreconditionError(f"bound mode must be one of {BOUND_MODES}, got {bound_mode!r}")
        self.m = m = g.size
        self.bound_mode = bound_mode
        triples = conflict_triples(g, d).tolist()
        degree = [0] * m
        for t in triples:
            for e in t:
                degree[e] += 1
        self.edge_of_rank = sorted(range(m), key=lambda e: (-degree[e], e))
        rank = [0] * m
        for r, e in enumerate(self.edge_of_rank):
            rank[e] = r
        self.rank_of_edge = rank
        # forbid[a][b]: candidates that can no longer join once ranks a and b are chosen
        forbid = [[0] * m for _ in range(m)]
        for t in triples:
            a, b, c = (rank[e] for e in t)
            forbid[a][b] |= 1 << c
            forbid[b][a] |= 1 << c
            forbid[a][c] |= 1 << b
            forbid[c][a] |= 1 << b
            forbid[b][c] |= 1 << a
            forbid[c][b] |= 1 << a
        self.forbid = forbid
        self.geodesics: list[list[int]] = [[] for _ in range(m)]
        if bound_mode == "cover":
            self._collect_geodesics(g, d)

    def _collect_geodesics(self, g: Graph, d: DistanceMatrix) -> None:
        rank = self.rank_of_edge
        masks = set()
        for edges in maximal_geodesics(g, d):
            if len(edges) >= 3:
                mask = 0
                for e in edges:
                    mask |= 1 << rank[e]
                masks.add(mask)
        per_edge: list[list[int]] = [[] for _ in range(self.m)]
        for mask in sorted(masks, key=lambda x: (-x.bit_count(), x)):
            rest = mask
            while rest:
                low = rest & -rest
                r = low.bit_length() - 1
                if len(per_edge[r]) < GEODESICS_PER_EDGE:
                    per_edge[r].append(mask)
                rest ^= low
        self.geodesics = per_edge

    def to_edge_set(self, mask: int) -> EdgeSet:
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << self.edge_of_rank[low.bit_length() - 1]
            mask ^= low
        return EdgeSet(self.m, out)

    def to_rank_mask(self, x: EdgeSet) -> int:
        return sum(1 << self.rank_of_edge[e] for e in x)

    def upper_bound(self, chosen: int, cand: int, size: int) -> int:
        if not cand:
            return size
        mode = self.bound_mode
        if mode == "counting":
            return size + cand.bit_count()
        if mode == "none":
            return size + self.m - ((cand & -cand).bit_length() - 1)
        geos = self.geodesics
        ub = size
        rem = cand
        while rem:
            low = rem & -rem
            r = low.bit_length() - 1
            best_save, best_part, best_val = 0, low, 1
            for path in geos[r]:
                part = rem & path
                k = part.bit_count()
                if k <= 1:
                    continue
                cap = 2 - (chosen & path).bit_count()
                val = k if k < cap else max(cap, 0)
                if k - val > best_save:
                    best_save, best_part, best_val = k - val, part, val
            ub += best_val
            rem &= ~best_part
        return ub


class _Search:
    """One depth-first branch and bound over a SearchProblem."""

    def __init__(self, prob: SearchProblem, best: int, target: Optional[int] = None,
                 collect: bool = False, shared=None):
        self.prob = prob
        self.best = best
        self.best_mask: Optional[int] = None
        self.target = target
        self.collect = collect
        self.found: list[int] = []
        self.nodes = 0
        self.shared = shared

    def run(self, chosen: int, chosen_ranks: tuple[int, ...], cand: int, size: int) -> None:
        try:
            self._dfs(chosen, list(chosen_ranks), cand, size)
        except _Found:
            pass

    def _dfs(self, chosen: int, ranks: list[int], cand: int, size: int) -> None:
        self.nodes += 1
        prob = self.prob
        target = self.target
        if cand == 0:
            if target is not None:
                if size == target:
                    self.found.append(chosen)
                    if not self.collect:
                        raise _Found
            elif size > self.best:
                self.best = size
                self.best_mask = chosen
                if self.shared is not None:
                    with self.shared.get_lock():
                        if size > self.shared.value:
                            self.shared.value = size
            return
        ub = prob.upper_bound(chosen, cand, size)
        if target is not None:
            if ub < target:
                return
        elif ub <= self.best or (self.shared is not None and ub <= self.shared.value):
            return
        low = cand & -cand
        r = low.bit_length() - 1
        forbid = prob.forbid[r]
        blocked = 0
        for c in ranks:
            blocked |= forbid[c]
        ranks.append(r)
        self._dfs(chosen | low, ranks, cand & ~low & ~blocked, size + 1)
        ranks.pop()
        self._dfs(chosen, ranks, cand & ~low, size)


# -- process pool plumbing -------------------------------------------------

_WORKER_PROBLEM: Optional[SearchProblem] = None
_WORKER_SHARED = None


def _init_worker(prob, shared):
    global _WORKER_PROBLEM, _WORKER_SHARED
    _WORKER_PROBLEM, _WORKER_SHARED = prob, shared


def _run_subtree(task):
    chosen, ranks, cand, size, best = task
    s = _Search(_WORKER_PROBLEM, best, shared=_WORKER_SHARED)
    s.run(chosen, ranks, cand, size)
    return s.best, s.nodes


def _frontier(prob: SearchProblem, want: int):
    """Split the root into at least ``want`` disjoint subtrees, in DFS order."""
    level = [(0, (), (1 << prob.m) - 1, 0)]
    while len(level) < want:
        nxt = []
        grew = False
        for chosen, ranks, cand, size in level:
            if cand == 0:
                nxt.append((chosen, ranks, cand, size))
                continue
            grew = True
            low = cand & -cand
            r = low.bit_length() - 1
            blocked = 0
            for c in ranks:
                blocked |= prob.forbid[r][c]
            nxt.append((chosen | low, ranks + (r,), cand & ~low & ~blocked, size + 1))
            nxt.append((chosen, ranks, cand & ~low, size))
        level = nxt
        if not grew:
            break
    return level


def _parallel_optimum(prob: SearchProblem, seed: int, threads: int) -> tuple[int, int]:
    ctx = mp.get_context("fork")
    shared = ctx.Value("i", seed)
    tasks = [(c, r, cand, s, seed) for c, r, cand, s in _frontier(prob, 4 * threads)]
    with ctx.Pool(threads, initializer=_init_worker, initargs=(prob, shared)) as pool:
        results = pool.map(_run_subtree, tasks, chunksize=1)
    best = max([seed] + [b for b, _ in results])
    return best, sum(n for _, n in results) + len(tasks)


def _seed(g: Graph, d: DistanceMatrix, prob: SearchProblem) -> int:
    """Size of a feasible set: best Θ-class pair on partial cubes, else a greedy pass."""
    best = min(prob.m, 2)
    if g.size >= 2 and is_bipartite(g):
        part = theta_partition(g, d)
        if part.transitive and len(part) >= 2:
            i, j, size = best_class_pair(part)
            if is_edge_gp_set(g, d, part.union(i, j)):
                best = max(best, size)
    chosen, ranks = 0, []
    cand = (1 << prob.m) - 1
    while cand:
        low = cand & -cand
        r = low.bit_length() - 1
        blocked = 0
        for c in ranks:
            blocked |= prob.forbid[r][c]
        chosen |= low
        ranks.append(r)
        cand &= ~low & ~blocked
    return max(best, chosen.bit_count())


def _check_limits(g: Graph, opts: SolveOptions) -> None:
    if opts.bound_mode not in BOUND_MODES:
        raise PreconditionError(f"bound mode must be one of {BOUND_MODES}")
    if opts.thread_count < 1:
        raise PreconditionError("thread_count must be at least 1")
    if g.size > opts.edge_limit:
        raise SolverLimitError(
            f"graph has {g.size} edges, above the solver limit of {opts.edge_limit}; "
            "raise the edge limit or use a cheaper bound mode to estimate instead"
        )


def solve_gp_e(g: Graph, d: Optional[DistanceMatrix] = None, options: Optional[SolveOptions] = None,
               **kwargs) -> SolveResult:
    """Compute gp_e(G) exactly.

    The reported first witness is the first maximum set met in the
    canonical depth-first order, independent of ``thread_count``.
    """
    opts = options or SolveOptions(**kwargs)
    _check_limits(g, opts)
    g.require_connected()
    if d is None:
        d = all_pairs_distances(g)
    t0 = time.perf_counter()
    prob = SearchProblem(g, d, opts.bound_mode)
    full = (1 << prob.m) - 1
    seed = _seed(g, d, prob) if opts.seed_with_theta_pair else 0
    best_mask = None
    if opts.thread_count == 1:
        s = _Search(prob, seed)
        s.run(0, (), full, 0)
        optimum, nodes, best_mask = s.best, s.nodes, s.best_mask
    else:
        optimum, nodes = _parallel_optimum(prob, seed, opts.thread_count)
    log.debug("optimum %d after %d nodes", optimum, nodes)

    if opts.enumerate_all:
        s = _Search(prob, optimum, target=optimum, collect=True)
        s.run(0, (), full, 0)
        nodes += s.nodes
        witnesses = sorted((prob.to_edge_set(x) for x in s.found), key=EdgeSet.sort_key)
    else:
        if best_mask is None:
            # nothing beat the seed, or subtrees ran in parallel: fetch the
            # first maximum set in canonical order
            s = _Search(prob, optimum, target=optimum)
            s.run(0, (), full, 0)
            nodes += s.nodes
            best_mask = s.found[0]
        witnesses = [prob.to_edge_set(best_mask)]
    return SolveResult(optimum, witnesses, nodes, opts.bound_mode,
                       time.perf_counter() - t0, lower_bound_seed=seed)


def enumerate_maximum_sets(g: Graph, d: Optional[DistanceMatrix] = None, **kwargs) -> list[EdgeSet]:
    """Every maximum edge general position set, sorted by edge indices."""
    kwargs["enumerate_all"] = True
    return solve_gp_e(g, d, **kwargs).witnesses


@dataclass
class SweepRow:
    n: int
    gp_e: int
    target: int  # 2 F_n
    status: str  # EQUAL, GREATER, or LESS (LESS would contradict the lower bound)
    witness: EdgeSet
    nodes_explored: int


def conjecture_sweep(n_max: int = 6, *, n_min: int = 2, thread_count: int = 1, generator=None) -> list[SweepRow]:
    """Exact gp_e of Fibonacci cubes against 2 F_n, reported and never asserted."""
    if generator is None:
        generator = fibonacci_cube
    rows = []
    for n in range(n_min, n_max + 1):
        g = generator(n)
        limit = max(DEFAULT_EDGE_LIMIT, g.size)
        res = solve_gp_e(g, thread_count=thread_count, edge_limit=limit)
        target = 2 * fibonacci(n)
        status = "EQUAL" if res.optimum == target else ("GREATER" if res.optimum > target else "LESS")
        rows.append(SweepRow(n, res.optimum, target, status, res.witnesses[0], res.nodes_explored))
    return rows
